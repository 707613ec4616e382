//! Certificates and constructors for elementary strong shift
//! equivalence (`A = RS`, `B = SR`), SSE chains, shift equivalence,
//! and the moves that generate them: similarity of zero extensions,
//! zero/nilpotent extensions, row/column amalgamations, and a bounded
//! enumeration of ESSE neighbors.

use crate::exact::{Int, IntMatrix, QMatrix};
use crate::structure::NonnegMatrix;
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};

/// Ring over which a certificate is checked. `Zplus` additionally
/// requires every entry of `R` and `S` to be nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ring {
    Zplus,
    Z,
}

/// Witness of an elementary strong shift equivalence: matrices `R, S`
/// with `A = RS` and `B = SR`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EsseWitness {
    pub r: IntMatrix,
    pub s: IntMatrix,
    pub ring: Ring,
}

impl EsseWitness {
    pub fn new(r: IntMatrix, s: IntMatrix, ring: Ring) -> Self {
        EsseWitness { r, s, ring }
    }

    /// The source matrix `RS`.
    pub fn source(&self) -> Result<IntMatrix> {
        self.r.checked_mul(&self.s)
    }

    /// The target matrix `SR`.
    pub fn target(&self) -> Result<IntMatrix> {
        self.s.checked_mul(&self.r)
    }

    /// The reverse edge `(S, R)`.
    pub fn reversed(&self) -> EsseWitness {
        EsseWitness {
            r: self.s.clone(),
            s: self.r.clone(),
            ring: self.ring,
        }
    }
}

/// One oriented edge of an SSE chain. Orientation `+1` reads the ESSE
/// forward (`A_{i-1} = RS`, `A_i = SR`); `-1` reads it backward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseEdge {
    pub witness: EsseWitness,
    pub orientation: i8,
}

impl SseEdge {
    pub fn forward(witness: EsseWitness) -> Self {
        SseEdge {
            witness,
            orientation: 1,
        }
    }

    pub fn backward(witness: EsseWitness) -> Self {
        SseEdge {
            witness,
            orientation: -1,
        }
    }

    /// The witness with orientation folded in, so that
    /// `effective().source()` really is the edge's source.
    pub fn effective(&self) -> EsseWitness {
        if self.orientation >= 0 {
            self.witness.clone()
        } else {
            self.witness.reversed()
        }
    }
}

/// An oriented chain of ESSE edges; consecutive endpoints must match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SseChain {
    pub edges: Vec<SseEdge>,
    pub ring: Ring,
}

/// Witness of a shift equivalence of lag `l`:
/// `A^l = RS`, `B^l = SR`, `AR = RB`, `SA = BS`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeWitness {
    pub r: IntMatrix,
    pub s: IntMatrix,
    pub lag: usize,
    pub ring: Ring,
}

/// Reason a certificate failed to verify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyFailure {
    /// The stated matrices cannot be multiplied in the required shapes.
    Dimension(Error),
    /// An equation does not hold; the label names which one.
    Equation(&'static str),
    /// The ring is `Zplus` but a witness entry is negative.
    Negativity(&'static str),
    /// Edge `index` of a chain failed.
    Edge {
        index: usize,
        reason: Box<VerifyFailure>,
    },
    /// Consecutive chain edges do not share an endpoint.
    ChainBreak { index: usize },
}

impl std::fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerifyFailure::Dimension(e) => write!(f, "{e}"),
            VerifyFailure::Equation(eq) => write!(f, "equation {eq} does not hold"),
            VerifyFailure::Negativity(m) => write!(f, "{m} has a negative entry in Z+ mode"),
            VerifyFailure::Edge { index, reason } => write!(f, "edge {index}: {reason}"),
            VerifyFailure::ChainBreak { index } => {
                write!(
                    f,
                    "edge {index} does not start at the previous edge's target"
                )
            }
        }
    }
}

/// Check `A = RS` and `B = SR` exactly, with positivity in `Zplus`
/// mode. Dimension problems are reported distinctly from equation
/// failures.
pub fn verify_esse(
    a: &IntMatrix,
    b: &IntMatrix,
    w: &EsseWitness,
) -> std::result::Result<(), VerifyFailure> {
    if w.ring == Ring::Zplus {
        if !w.r.is_nonnegative() {
            return Err(VerifyFailure::Negativity("R"));
        }
        if !w.s.is_nonnegative() {
            return Err(VerifyFailure::Negativity("S"));
        }
    }
    let rs = w.r.checked_mul(&w.s).map_err(VerifyFailure::Dimension)?;
    let sr = w.s.checked_mul(&w.r).map_err(VerifyFailure::Dimension)?;
    if &rs != a {
        return Err(VerifyFailure::Equation("A = RS"));
    }
    if &sr != b {
        return Err(VerifyFailure::Equation("B = SR"));
    }
    Ok(())
}

/// Verify every edge of a chain (honoring orientations) and return the
/// endpoints and the lag (= number of edges).
pub fn verify_sse_chain(
    chain: &SseChain,
) -> std::result::Result<(IntMatrix, IntMatrix, usize), VerifyFailure> {
    if chain.edges.is_empty() {
        return Err(VerifyFailure::Equation("chain must be nonempty"));
    }
    let mut source = None;
    let mut current: Option<IntMatrix> = None;
    for (index, edge) in chain.edges.iter().enumerate() {
        let eff = EsseWitness {
            ring: chain.ring,
            ..edge.effective()
        };
        let a = eff.source().map_err(|e| VerifyFailure::Edge {
            index,
            reason: Box::new(VerifyFailure::Dimension(e)),
        })?;
        let b = eff.target().map_err(|e| VerifyFailure::Edge {
            index,
            reason: Box::new(VerifyFailure::Dimension(e)),
        })?;
        verify_esse(&a, &b, &eff).map_err(|reason| VerifyFailure::Edge {
            index,
            reason: Box::new(reason),
        })?;
        if let Some(prev) = &current {
            if prev != &a {
                return Err(VerifyFailure::ChainBreak { index });
            }
        } else {
            source = Some(a);
        }
        current = Some(b);
    }
    Ok((source.unwrap(), current.unwrap(), chain.edges.len()))
}

/// Compress a verified SSE chain into a shift equivalence of the same
/// lag: `R = R_1 ... R_l`, `S = S_l ... S_1`. Backward edges are first
/// flipped by swapping the roles of `R` and `S`.
pub fn compress_sse_to_se(chain: &SseChain) -> Result<SeWitness> {
    let (a, b, lag) =
        verify_sse_chain(chain).map_err(|e| Error::Precondition(format!("chain invalid: {e}")))?;
    let mut r = None;
    let mut s = None;
    for edge in &chain.edges {
        let eff = edge.effective();
        r = Some(match r {
            None => eff.r.clone(),
            Some(acc) => IntMatrix::checked_mul(&acc, &eff.r)?,
        });
        s = Some(match s {
            None => eff.s.clone(),
            Some(acc) => IntMatrix::checked_mul(&eff.s, &acc)?,
        });
    }
    let w = SeWitness {
        r: r.unwrap(),
        s: s.unwrap(),
        lag,
        ring: chain.ring,
    };
    if let Err(e) = verify_se(&a, &b, &w) {
        return Err(Error::Internal(format!(
            "compressed SE failed verification: {e}"
        )));
    }
    Ok(w)
}

/// Check the four shift-equivalence equations exactly.
pub fn verify_se(
    a: &IntMatrix,
    b: &IntMatrix,
    w: &SeWitness,
) -> std::result::Result<(), VerifyFailure> {
    if w.ring == Ring::Zplus {
        if !w.r.is_nonnegative() {
            return Err(VerifyFailure::Negativity("R"));
        }
        if !w.s.is_nonnegative() {
            return Err(VerifyFailure::Negativity("S"));
        }
    }
    if w.lag == 0 {
        return Err(VerifyFailure::Equation("lag must be >= 1"));
    }
    let al = a.pow(w.lag).map_err(VerifyFailure::Dimension)?;
    let bl = b.pow(w.lag).map_err(VerifyFailure::Dimension)?;
    if al != w.r.checked_mul(&w.s).map_err(VerifyFailure::Dimension)? {
        return Err(VerifyFailure::Equation("A^l = RS"));
    }
    if bl != w.s.checked_mul(&w.r).map_err(VerifyFailure::Dimension)? {
        return Err(VerifyFailure::Equation("B^l = SR"));
    }
    if a.checked_mul(&w.r).map_err(VerifyFailure::Dimension)?
        != w.r.checked_mul(b).map_err(VerifyFailure::Dimension)?
    {
        return Err(VerifyFailure::Equation("AR = RB"));
    }
    if w.s.checked_mul(a).map_err(VerifyFailure::Dimension)?
        != b.checked_mul(&w.s).map_err(VerifyFailure::Dimension)?
    {
        return Err(VerifyFailure::Equation("SA = BS"));
    }
    Ok(())
}

/// Arithmetic mode of the rational SE verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithmeticMode {
    /// Witness entries must be integers.
    Integral,
    /// Arbitrary rational witnesses are admitted.
    Rational,
}

/// Verify a shift equivalence with rational witness matrices. In
/// `Integral` mode, non-integral entries are rejected before the
/// equations are checked; `Rational` mode reproduces the SE-Q examples.
pub fn verify_se_rational(
    a: &IntMatrix,
    b: &IntMatrix,
    r: &QMatrix,
    s: &QMatrix,
    lag: usize,
    mode: ArithmeticMode,
) -> std::result::Result<(), VerifyFailure> {
    if mode == ArithmeticMode::Integral {
        if !r.is_integral() {
            return Err(VerifyFailure::Negativity("R is not integral"));
        }
        if !s.is_integral() {
            return Err(VerifyFailure::Negativity("S is not integral"));
        }
    }
    if lag == 0 {
        return Err(VerifyFailure::Equation("lag must be >= 1"));
    }
    let aq = QMatrix::from_int(a);
    let bq = QMatrix::from_int(b);
    let al = aq.pow(lag).map_err(VerifyFailure::Dimension)?;
    let bl = bq.pow(lag).map_err(VerifyFailure::Dimension)?;
    if al != r.mul(s).map_err(VerifyFailure::Dimension)? {
        return Err(VerifyFailure::Equation("A^l = RS"));
    }
    if bl != s.mul(r).map_err(VerifyFailure::Dimension)? {
        return Err(VerifyFailure::Equation("B^l = SR"));
    }
    if aq.mul(r).map_err(VerifyFailure::Dimension)?
        != r.mul(&bq).map_err(VerifyFailure::Dimension)?
    {
        return Err(VerifyFailure::Equation("AR = RB"));
    }
    if s.mul(&aq).map_err(VerifyFailure::Dimension)?
        != bq.mul(s).map_err(VerifyFailure::Dimension)?
    {
        return Err(VerifyFailure::Equation("SA = BS"));
    }
    Ok(())
}

/// The Maller-Shub similarity of zero extensions attached to an ESSE:
/// `U [[A, R], [0, 0]] = [[0, R], [0, B]] U` with `U = [[I, 0], [S, I]]`
/// unimodular.
pub fn maller_shub_witness(w: &EsseWitness) -> Result<(IntMatrix, IntMatrix, IntMatrix)> {
    let a = w.source()?;
    let b = w.target()?;
    let m = a.rows();
    let n = b.rows();
    let u = IntMatrix::from_blocks(
        &IntMatrix::identity(m),
        &IntMatrix::zero(m, n),
        &w.s,
        &IntMatrix::identity(n),
    );
    let m1 = IntMatrix::from_blocks(&a, &w.r, &IntMatrix::zero(n, m), &IntMatrix::zero(n, n));
    let m2 = IntMatrix::from_blocks(&IntMatrix::zero(m, m), &w.r, &IntMatrix::zero(n, m), &b);
    if u.checked_mul(&m1)? != m2.checked_mul(&u)? {
        return Err(Error::Internal("Maller-Shub identity failed".into()));
    }
    Ok((u, m1, m2))
}

/// Placement of the extension block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionSide {
    /// `[[A, X], [0, N]]`.
    UpperRight,
    /// `[[A, 0], [X, N]]`.
    LowerLeft,
}

/// Zero extension of `A` by `X`, together with the ESSE witness
/// realizing it (an identity-block factorization).
pub fn zero_extension(
    a: &IntMatrix,
    x: &IntMatrix,
    side: ExtensionSide,
) -> Result<(IntMatrix, EsseWitness)> {
    let m = a.square_size()?;
    let (ext, witness) = match side {
        ExtensionSide::UpperRight => {
            if x.rows() != m {
                return Err(Error::DimensionMismatch {
                    context: "zero extension",
                    lhs: (m, m),
                    rhs: (x.rows(), x.cols()),
                });
            }
            let k = x.cols();
            let ext = IntMatrix::from_blocks(a, x, &IntMatrix::zero(k, m), &IntMatrix::zero(k, k));
            // A = [A X] [I; 0], ext = [I; 0] [A X].
            let r = IntMatrix::from_blocks(a, x, &IntMatrix::zero(0, m), &IntMatrix::zero(0, k));
            let s = IntMatrix::from_blocks(
                &IntMatrix::identity(m),
                &IntMatrix::zero(m, 0),
                &IntMatrix::zero(k, m),
                &IntMatrix::zero(k, 0),
            );
            (ext, EsseWitness::new(r, s, Ring::Z))
        }
        ExtensionSide::LowerLeft => {
            if x.cols() != m {
                return Err(Error::DimensionMismatch {
                    context: "zero extension",
                    lhs: (m, m),
                    rhs: (x.rows(), x.cols()),
                });
            }
            let k = x.rows();
            let ext = IntMatrix::from_blocks(a, &IntMatrix::zero(m, k), x, &IntMatrix::zero(k, k));
            // A = [I 0] [A; X], ext = [A; X] [I 0].
            let r = IntMatrix::from_blocks(
                &IntMatrix::identity(m),
                &IntMatrix::zero(m, k),
                &IntMatrix::zero(0, m),
                &IntMatrix::zero(0, k),
            );
            let s = IntMatrix::from_blocks(a, &IntMatrix::zero(m, 0), x, &IntMatrix::zero(k, 0));
            (ext, EsseWitness::new(r, s, Ring::Z))
        }
    };
    verify_esse(a, &ext, &witness)
        .map_err(|e| Error::Internal(format!("zero extension witness invalid: {e}")))?;
    Ok((ext, witness))
}

/// Nilpotent extension `[[A, X], [0, N]]` or `[[A, 0], [X, N]]`; `N`
/// must be nilpotent (checked by powering to its size).
pub fn nilpotent_extension(
    a: &IntMatrix,
    x: &IntMatrix,
    n: &IntMatrix,
    side: ExtensionSide,
) -> Result<IntMatrix> {
    let m = a.square_size()?;
    let k = n.square_size()?;
    if nilpotency_index(n).is_none() {
        return Err(Error::NotNilpotent);
    }
    match side {
        ExtensionSide::UpperRight => {
            if x.rows() != m || x.cols() != k {
                return Err(Error::DimensionMismatch {
                    context: "nilpotent extension",
                    lhs: (m, k),
                    rhs: (x.rows(), x.cols()),
                });
            }
            Ok(IntMatrix::from_blocks(a, x, &IntMatrix::zero(k, m), n))
        }
        ExtensionSide::LowerLeft => {
            if x.rows() != k || x.cols() != m {
                return Err(Error::DimensionMismatch {
                    context: "nilpotent extension",
                    lhs: (k, m),
                    rhs: (x.rows(), x.cols()),
                });
            }
            Ok(IntMatrix::from_blocks(a, &IntMatrix::zero(m, k), x, n))
        }
    }
}

/// Smallest `m >= 1` with `N^m = 0`, or `None` when `N` is not
/// nilpotent (equivalently `N^size != 0`).
pub fn nilpotency_index(n: &IntMatrix) -> Option<usize> {
    let size = n.square_size().ok()?;
    if size == 0 {
        return Some(1);
    }
    let mut power = IntMatrix::identity(size);
    for m in 1..=size {
        power = &power * n;
        if power.is_zero() {
            return Some(m);
        }
    }
    None
}

/// Lower bound on the lag of any SSE from a nilpotent matrix to a zero
/// matrix: `m - 1` for nilpotency index `m` (and 0 for the zero
/// matrix itself).
pub fn sse_zero_lag_lower_bound(n: &IntMatrix) -> Result<usize> {
    match nilpotency_index(n) {
        Some(m) => Ok(m.saturating_sub(1)),
        None => Err(Error::NotNilpotent),
    }
}

/// A column (or row) amalgamation move: the `(R, S)` pair of the
/// defining factorization together with the amalgamated matrix.
#[derive(Debug, Clone)]
pub struct AmalgamationMove {
    pub witness: EsseWitness,
    pub result: IntMatrix,
    /// The merged index classes, in order (each class lists the
    /// original columns/rows merged into one).
    pub classes: Vec<Vec<usize>>,
}

/// Enumerate complete column amalgamations of `C`: partition the
/// columns into classes of pairwise equal columns (every class of
/// equal columns merged at once), emit the `C = RS`, `D = SR`
/// factorization with `S` zero-one and column-selecting.
///
/// Moves are emitted one merged pair/class at a time: every maximal
/// set of equal columns of size >= 2 gives one move merging exactly
/// that set (other columns untouched).
pub fn column_amalgamation_moves(c: &NonnegMatrix) -> Vec<AmalgamationMove> {
    let n = c.size();
    let mut moves = Vec::new();
    // Group equal columns.
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for j in 0..n {
        let mut placed = false;
        for (ci, class) in classes.iter_mut().enumerate() {
            let rep = class[0];
            if (0..n).all(|i| c.get(i, j) == c.get(i, rep)) {
                class.push(j);
                class_of[j] = ci;
                placed = true;
                break;
            }
        }
        if !placed {
            class_of[j] = classes.len();
            classes.push(vec![j]);
        }
    }
    for (merge_idx, merge_class) in classes.iter().enumerate() {
        if merge_class.len() < 2 {
            continue;
        }
        // Result indices: one per class for the merged class, one per
        // original column otherwise, in ascending original order of
        // their representative.
        let mut result_cols: Vec<Vec<usize>> = Vec::new();
        for j in 0..n {
            if class_of[j] == merge_idx {
                if j == merge_class[0] {
                    result_cols.push(merge_class.clone());
                }
            } else {
                result_cols.push(vec![j]);
            }
        }
        let m = result_cols.len();
        // R keeps one copy of each merged column; S is zero-one with
        // exactly one nonzero per column, sending original column j to
        // its class position.
        let r = IntMatrix::from_fn(n, m, |i, k| c.get(i, result_cols[k][0]).clone());
        let s = IntMatrix::from_fn(m, n, |k, j| {
            if result_cols[k].contains(&j) {
                Int::one()
            } else {
                Int::zero()
            }
        });
        let witness = EsseWitness::new(r.clone(), s.clone(), Ring::Zplus);
        let result = &s * &r;
        debug_assert_eq!(&r * &s, *c.inner());
        moves.push(AmalgamationMove {
            witness,
            result,
            classes: result_cols,
        });
    }
    moves
}

/// Row amalgamations: the dual of [`column_amalgamation_moves`],
/// merging sets of equal rows.
pub fn row_amalgamation_moves(c: &NonnegMatrix) -> Vec<AmalgamationMove> {
    let transposed = NonnegMatrix::new(c.inner().transpose()).expect("transpose stays nonnegative");
    column_amalgamation_moves(&transposed)
        .into_iter()
        .map(|mv| {
            // (R, S) for C^tr gives (S^tr, R^tr) for C.
            let r = mv.witness.s.transpose();
            let s = mv.witness.r.transpose();
            let result = mv.result.transpose();
            debug_assert_eq!(&r * &s, *c.inner());
            AmalgamationMove {
                witness: EsseWitness::new(r, s, Ring::Zplus),
                result,
                classes: mv.classes,
            }
        })
        .collect()
}

/// Result of the bounded ESSE-neighbor enumeration. `complete` is
/// false when the node budget ran out; the neighbors found so far are
/// still returned.
#[derive(Debug, Clone)]
pub struct NeighborSearch {
    pub neighbors: Vec<(EsseWitness, IntMatrix)>,
    pub complete: bool,
}

/// Canonical form of a square matrix under simultaneous row/column
/// permutation (graph isomorphism of presentations): the minimum entry
/// tuple over all permutations. Factorial in size; sizes <= 5 only.
fn permutation_canonical_form(m: &IntMatrix) -> Vec<Int> {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Int>> = None;
    permute_rec(&mut perm, 0, &mut |p| {
        let cand: Vec<Int> = {
            let permuted = m.permute_symmetric(p);
            permuted.entries().to_vec()
        };
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    });
    best.unwrap_or_default()
}

fn permute_rec(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute_rec(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// Enumerate ESSE neighbors of `A`: all factorizations `A = RS` with
/// `R` of shape `n x k`, `S` of shape `k x n`, `k <= max_inner`, and
/// all entries in `[0, max_entry]`, deduplicated by permutation
/// equivalence of the resulting `B = SR`. Deterministic order.
///
/// For each candidate `R`, the admissible columns of `S` are solved
/// per column of `A` by bounded backtracking, so the search stays far
/// below brute force over all `(R, S)` pairs.
pub fn esse_neighbors(
    a: &NonnegMatrix,
    max_inner: usize,
    max_entry: u32,
    node_budget: u64,
) -> Result<NeighborSearch> {
    let n = a.size();
    if n == 0 {
        return Err(Error::Precondition(
            "neighbor search needs a nonempty matrix".into(),
        ));
    }
    let mut neighbors: Vec<(EsseWitness, IntMatrix)> = Vec::new();
    let mut seen: Vec<Vec<Int>> = Vec::new();
    let mut nodes: u64 = 0;
    let mut complete = true;

    'outer: for k in 1..=max_inner {
        // Enumerate R in row-major counter order.
        let cells = n * k;
        let mut r_entries = vec![0u32; cells];
        loop {
            nodes += 1;
            if nodes > node_budget {
                complete = false;
                break 'outer;
            }
            let r = IntMatrix::from_fn(n, k, |i, j| Int::from(r_entries[i * k + j]));
            // Solve R * s_col = a_col for each column within bounds.
            let mut col_solutions: Vec<Vec<Vec<u32>>> = Vec::with_capacity(n);
            let mut feasible = true;
            for j in 0..n {
                let target: Vec<Int> = a.inner().col(j);
                let sols = solve_bounded_column(&r, &target, max_entry, &mut nodes, node_budget);
                match sols {
                    Some(s) if !s.is_empty() => col_solutions.push(s),
                    Some(_) => {
                        feasible = false;
                        break;
                    }
                    None => {
                        complete = false;
                        break 'outer;
                    }
                }
            }
            if feasible {
                // Cartesian product of per-column solutions.
                let mut choice = vec![0usize; n];
                loop {
                    nodes += 1;
                    if nodes > node_budget {
                        complete = false;
                        break 'outer;
                    }
                    let s =
                        IntMatrix::from_fn(k, n, |i, j| Int::from(col_solutions[j][choice[j]][i]));
                    let b = &s * &r;
                    let canon = permutation_canonical_form(&b);
                    if !seen.contains(&canon) {
                        seen.push(canon);
                        neighbors.push((EsseWitness::new(r.clone(), s, Ring::Zplus), b));
                    }
                    // Advance the product counter.
                    let mut pos = 0;
                    loop {
                        if pos == n {
                            break;
                        }
                        choice[pos] += 1;
                        if choice[pos] < col_solutions[pos].len() {
                            break;
                        }
                        choice[pos] = 0;
                        pos += 1;
                    }
                    if pos == n {
                        break;
                    }
                }
            }
            // Advance the R counter.
            let mut pos = 0;
            loop {
                if pos == cells {
                    break;
                }
                r_entries[pos] += 1;
                if r_entries[pos] <= max_entry {
                    break;
                }
                r_entries[pos] = 0;
                pos += 1;
            }
            if pos == cells {
                break;
            }
        }
    }
    Ok(NeighborSearch {
        neighbors,
        complete,
    })
}

/// All vectors `s` in `[0, max_entry]^k` with `R s = target`.
/// Returns `None` when the node budget is exhausted.
fn solve_bounded_column(
    r: &IntMatrix,
    target: &[Int],
    max_entry: u32,
    nodes: &mut u64,
    node_budget: u64,
) -> Option<Vec<Vec<u32>>> {
    let k = r.cols();
    let n = r.rows();
    let mut out = Vec::new();
    let mut partial = vec![0u32; k];
    // Running remainder of target - R[..][..pos] * partial.
    fn rec(
        r: &IntMatrix,
        target: &[Int],
        max_entry: u32,
        pos: usize,
        partial: &mut Vec<u32>,
        remaining: &mut Vec<Int>,
        out: &mut Vec<Vec<u32>>,
        nodes: &mut u64,
        node_budget: u64,
        n: usize,
        k: usize,
    ) -> bool {
        *nodes += 1;
        if *nodes > node_budget {
            return false;
        }
        if pos == k {
            if remaining.iter().all(|x| x.is_zero()) {
                out.push(partial.clone());
            }
            return true;
        }
        // Nonnegativity prunes: remaining must stay >= 0.
        for v in 0..=max_entry {
            let vi = Int::from(v);
            let mut ok = true;
            let mut next: Vec<Int> = Vec::with_capacity(n);
            for i in 0..n {
                let x = &remaining[i] - r.get(i, pos) * &vi;
                if x.is_negative() {
                    ok = false;
                    break;
                }
                next.push(x);
            }
            if !ok {
                continue;
            }
            partial[pos] = v;
            let mut next_rem = next;
            std::mem::swap(remaining, &mut next_rem);
            let cont = rec(
                r,
                target,
                max_entry,
                pos + 1,
                partial,
                remaining,
                out,
                nodes,
                node_budget,
                n,
                k,
            );
            std::mem::swap(remaining, &mut next_rem);
            if !cont {
                return false;
            }
        }
        true
    }
    let mut remaining: Vec<Int> = target.to_vec();
    if rec(
        r,
        target,
        max_entry,
        0,
        &mut partial,
        &mut remaining,
        &mut out,
        nodes,
        node_budget,
        n,
        k,
    ) {
        Some(out)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{det_one_minus_tA, IntPoly};
    use rand::{Rng, SeedableRng};

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn esse_of_full_two_shift() {
        let a = im(&[&[2]]);
        let b = im(&[&[1, 1], &[1, 1]]);
        let w = EsseWitness::new(im(&[&[1, 1]]), im(&[&[1], &[1]]), Ring::Zplus);
        assert!(verify_esse(&a, &b, &w).is_ok());

        let bad = verify_esse(
            &a,
            &im(&[&[3]]),
            &EsseWitness::new(im(&[&[1]]), im(&[&[2]]), Ring::Zplus),
        );
        assert!(matches!(bad, Err(VerifyFailure::Equation("B = SR"))));

        let dim = verify_esse(
            &a,
            &b,
            &EsseWitness::new(im(&[&[1, 1]]), im(&[&[1, 1]]), Ring::Z),
        );
        assert!(matches!(dim, Err(VerifyFailure::Dimension(_))));
    }

    #[test]
    fn paper_column_amalgamation_verifies() {
        let c = im(&[&[1, 1, 5], &[2, 2, 3], &[1, 1, 2]]);
        let r = im(&[&[1, 5], &[2, 3], &[1, 2]]);
        let s = im(&[&[1, 1, 0], &[0, 0, 1]]);
        let d = im(&[&[3, 8], &[1, 2]]);
        assert!(verify_esse(&c, &d, &EsseWitness::new(r, s, Ring::Zplus)).is_ok());
    }

    #[test]
    fn chain_verification_and_compression() {
        let r = im(&[&[1, 1]]);
        let s = im(&[&[1], &[1]]);
        let w = EsseWitness::new(r, s, Ring::Zplus);
        let chain = SseChain {
            edges: vec![SseEdge::forward(w.clone()), SseEdge::forward(w.reversed())],
            ring: Ring::Zplus,
        };
        let (a, b, lag) = verify_sse_chain(&chain).unwrap();
        assert_eq!(a, im(&[&[2]]));
        assert_eq!(b, im(&[&[2]]));
        assert_eq!(lag, 2);

        let se = compress_sse_to_se(&chain).unwrap();
        assert_eq!(se.lag, 2);
        assert_eq!(&se.r * &se.s, im(&[&[4]]));
        assert!(verify_se(&a, &b, &se).is_ok());

        // A backward edge flips roles.
        let chain2 = SseChain {
            edges: vec![SseEdge::forward(w.clone()), SseEdge::backward(w.clone())],
            ring: Ring::Zplus,
        };
        let (a2, b2, _) = verify_sse_chain(&chain2).unwrap();
        assert_eq!(a2, im(&[&[2]]));
        assert_eq!(b2, im(&[&[2]]));

        // Mismatched endpoints are reported with the edge index.
        let w3 = EsseWitness::new(im(&[&[3]]), im(&[&[1]]), Ring::Zplus);
        let chain3 = SseChain {
            edges: vec![SseEdge::forward(w), SseEdge::forward(w3)],
            ring: Ring::Zplus,
        };
        assert!(matches!(
            verify_sse_chain(&chain3),
            Err(VerifyFailure::ChainBreak { index: 1 })
        ));
    }

    #[test]
    fn identity_se() {
        let a = im(&[&[1, 1], &[1, 0]]);
        let w = SeWitness {
            r: a.clone(),
            s: IntMatrix::identity(2),
            lag: 1,
            ring: Ring::Zplus,
        };
        assert!(verify_se(&a, &a, &w).is_ok());

        let bad = SeWitness {
            r: im(&[&[1]]),
            s: im(&[&[1]]),
            lag: 1,
            ring: Ring::Z,
        };
        assert!(verify_se(&im(&[&[2]]), &im(&[&[3]]), &bad).is_err());
    }

    #[test]
    fn rational_lag_two_se_between_similar_positive_matrices() {
        use num_rational::BigRational;
        // M_x, M_y for q = 5, x = 1, y = 2: SE over Q with lag 2 via
        // the eigenvector change of basis, but with non-integral
        // witness entries (and indeed not SE over Z: 5^k != +-2 mod 4).
        let mx = im(&[&[4, 1], &[3, 2]]);
        let my = im(&[&[3, 2], &[2, 3]]);
        let quarter = |v: i64| BigRational::new(v.into(), 4.into());
        let r = QMatrix::from_fn(2, 2, |i, j| quarter([[11, 9], [7, 13]][i][j]));
        let s = QMatrix::from_fn(2, 2, |i, j| quarter([[17, 3], [13, 7]][i][j]));
        assert!(r.is_nonnegative() && s.is_nonnegative());
        assert!(verify_se_rational(&mx, &my, &r, &s, 2, ArithmeticMode::Rational).is_ok());
        assert!(verify_se_rational(&mx, &my, &r, &s, 2, ArithmeticMode::Integral).is_err());
    }

    #[test]
    fn maller_shub_blocks() {
        let w = EsseWitness::new(im(&[&[1, 1]]), im(&[&[1], &[1]]), Ring::Zplus);
        let (u, m1, m2) = maller_shub_witness(&w).unwrap();
        assert_eq!(u.rows(), 3);
        assert_eq!(&u * &m1, &m2 * &u);
        assert!(u.is_unimodular().unwrap());
    }

    #[test]
    fn maller_shub_random_sweep() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        for _ in 0..500 {
            let m = rng.gen_range(1..=3);
            let n = rng.gen_range(1..=3);
            let r = IntMatrix::from_fn(m, n, |_, _| Int::from(rng.gen_range(0i64..=2)));
            let s = IntMatrix::from_fn(n, m, |_, _| Int::from(rng.gen_range(0i64..=2)));
            let w = EsseWitness::new(r, s, Ring::Zplus);
            let (u, m1, m2) = maller_shub_witness(&w).unwrap();
            assert_eq!(&u * &m1, &m2 * &u);
        }
    }

    #[test]
    fn zero_extensions_match_trivial_variants() {
        let a = im(&[&[2]]);
        let (ext, w) = zero_extension(&a, &im(&[&[0]]), ExtensionSide::UpperRight).unwrap();
        assert_eq!(ext, im(&[&[2, 0], &[0, 0]]));
        assert!(verify_esse(&a, &ext, &w).is_ok());

        let (ext, w) = zero_extension(&a, &im(&[&[1]]), ExtensionSide::UpperRight).unwrap();
        assert_eq!(ext, im(&[&[2, 1], &[0, 0]]));
        assert!(verify_esse(&a, &ext, &w).is_ok());

        let (ext, w) = zero_extension(&a, &im(&[&[1]]), ExtensionSide::LowerLeft).unwrap();
        assert_eq!(ext, im(&[&[2, 0], &[1, 0]]));
        assert!(verify_esse(&a, &ext, &w).is_ok());
    }

    #[test]
    fn nilpotent_extension_checks_nilpotency() {
        let a = im(&[&[2]]);
        let n = im(&[&[0, 1], &[0, 0]]);
        let x = im(&[&[1, 0]]);
        let ext = nilpotent_extension(&a, &x, &n, ExtensionSide::UpperRight).unwrap();
        assert_eq!(ext, im(&[&[2, 1, 0], &[0, 0, 1], &[0, 0, 0]]));

        let not_nil = im(&[&[1]]);
        assert!(matches!(
            nilpotent_extension(&a, &im(&[&[1]]), &not_nil, ExtensionSide::UpperRight),
            Err(Error::NotNilpotent)
        ));
    }

    #[test]
    fn nilpotency_and_lag_bound() {
        let n = im(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(nilpotency_index(&n), Some(3));
        assert_eq!(sse_zero_lag_lower_bound(&n).unwrap(), 2);

        let z = IntMatrix::zero(2, 2);
        assert_eq!(nilpotency_index(&z), Some(1));
        assert_eq!(sse_zero_lag_lower_bound(&z).unwrap(), 0);

        assert_eq!(nilpotency_index(&im(&[&[2]])), None);
        assert!(sse_zero_lag_lower_bound(&im(&[&[2]])).is_err());
    }

    #[test]
    fn esse_nilpotency_index_shifts_by_at_most_one() {
        // For A = RS nilpotent of index m, B = SR has index within
        // {m-1, m, m+1}.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        let mut tested = 0;
        while tested < 30 {
            let m = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=3);
            let r = IntMatrix::from_fn(m, k, |_, _| Int::from(rng.gen_range(0i64..=1)));
            let s = IntMatrix::from_fn(k, m, |_, _| Int::from(rng.gen_range(0i64..=1)));
            let a = &r * &s;
            let Some(idx_a) = nilpotency_index(&a) else {
                continue;
            };
            let b = &s * &r;
            let idx_b = nilpotency_index(&b).expect("SR of nilpotent RS is nilpotent");
            assert!(
                idx_b + 1 >= idx_a && idx_b <= idx_a + 1,
                "indices {idx_a} vs {idx_b}"
            );
            tested += 1;
        }
    }

    #[test]
    fn amalgamation_of_paper_matrix() {
        let c = NonnegMatrix::from_rows(&[&[1, 1, 5], &[2, 2, 3], &[1, 1, 2]]).unwrap();
        let moves = column_amalgamation_moves(&c);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].result, im(&[&[3, 8], &[1, 2]]));
        let a = moves[0].witness.source().unwrap();
        assert_eq!(a, *c.inner());
        assert!(verify_esse(c.inner(), &moves[0].result, &moves[0].witness).is_ok());

        // Identity matrix: no two columns equal.
        let id = NonnegMatrix::new(IntMatrix::identity(3)).unwrap();
        assert!(column_amalgamation_moves(&id).is_empty());

        // [[1,1],[1,1]] amalgamates to (2).
        let ones = NonnegMatrix::from_rows(&[&[1, 1], &[1, 1]]).unwrap();
        let moves = column_amalgamation_moves(&ones);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].result, im(&[&[2]]));
    }

    #[test]
    fn row_amalgamation_dual() {
        let c = NonnegMatrix::from_rows(&[&[1, 2], &[1, 2]]).unwrap();
        let moves = row_amalgamation_moves(&c);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].result, im(&[&[3]]));
        assert!(verify_esse(c.inner(), &moves[0].result, &moves[0].witness).is_ok());
    }

    #[test]
    fn neighbors_of_full_two_shift() {
        let a = NonnegMatrix::from_rows(&[&[2]]).unwrap();
        let found = esse_neighbors(&a, 2, 2, 1_000_000).unwrap();
        assert!(found.complete);
        let ones = im(&[&[1, 1], &[1, 1]]);
        let two = im(&[&[2]]);
        assert!(found.neighbors.iter().any(|(_, b)| *b == ones));
        assert!(found.neighbors.iter().any(|(_, b)| *b == two));
        for (w, b) in &found.neighbors {
            assert!(verify_esse(a.inner(), b, w).is_ok());
        }
    }

    #[test]
    fn neighbors_of_one() {
        let a = NonnegMatrix::from_rows(&[&[1]]).unwrap();
        let found = esse_neighbors(&a, 1, 1, 100_000).unwrap();
        assert!(found.complete);
        assert_eq!(found.neighbors.len(), 1);
        assert_eq!(found.neighbors[0].1, im(&[&[1]]));
    }

    #[test]
    fn neighbors_deterministic_and_invariant_preserving() {
        let a = NonnegMatrix::from_rows(&[&[1, 1], &[1, 0]]).unwrap();
        let run1 = esse_neighbors(&a, 2, 1, 2_000_000).unwrap();
        let run2 = esse_neighbors(&a, 2, 1, 2_000_000).unwrap();
        assert!(run1.complete);
        assert_eq!(run1.neighbors, run2.neighbors);

        let p = det_one_minus_tA(a.inner()).unwrap();
        assert_eq!(p, IntPoly::from_i64(&[1, -1, -1]));
        for (_, b) in &run1.neighbors {
            assert_eq!(det_one_minus_tA(b).unwrap(), p);
            for k in 1..=6 {
                assert_eq!(
                    b.pow(k).unwrap().trace().unwrap(),
                    a.inner().pow(k).unwrap().trace().unwrap()
                );
            }
        }
    }

    #[test]
    fn neighbor_budget_reports_partial() {
        let a = NonnegMatrix::from_rows(&[&[1, 1], &[1, 0]]).unwrap();
        let found = esse_neighbors(&a, 3, 2, 50).unwrap();
        assert!(!found.complete);
    }
}

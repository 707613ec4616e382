//! Structure theory of nonnegative integer matrices as SFT
//! presentations: nondegenerate cores, primitivity and irreducibility,
//! period and cyclic block form, higher-block presentations and path
//! counting.

use crate::exact::{mobius, Int, IntMatrix};
use crate::{Error, Result};
use num_traits::Zero;

/// A square matrix with nonnegative entries, the presentation of an
/// edge shift of finite type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegMatrix {
    inner: IntMatrix,
}

impl NonnegMatrix {
    pub fn new(inner: IntMatrix) -> Result<Self> {
        inner.square_size()?;
        if !inner.is_nonnegative() {
            return Err(Error::Precondition("matrix has a negative entry".into()));
        }
        Ok(NonnegMatrix { inner })
    }

    pub fn from_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn size(&self) -> usize {
        self.inner.rows()
    }

    pub fn inner(&self) -> &IntMatrix {
        &self.inner
    }

    pub fn into_inner(self) -> IntMatrix {
        self.inner
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        self.inner.get(i, j)
    }

    /// True when the matrix has no zero row and no zero column.
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (0..n).any(|j| !self.get(i, j).is_zero()) && (0..n).any(|j| !self.get(j, i).is_zero())
        })
    }
}

/// Outcome of the primitivity test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Primitivity {
    /// `A^exponent > 0`, with the smallest such exponent.
    Primitive { exponent: usize },
    /// Vertex `to` is unreachable from vertex `from` in the support
    /// digraph, so the matrix is not even irreducible.
    Reducible { from: usize, to: usize },
    /// Irreducible with the given period `> 1`.
    ImprimitivePeriod { period: usize },
}

impl Primitivity {
    pub fn is_primitive(&self) -> bool {
        matches!(self, Primitivity::Primitive { .. })
    }
}

/// Cyclic block structure of an irreducible matrix of period `p`:
/// after reordering vertices by `permutation`, the matrix is zero
/// except for blocks `A_1, ..., A_p` shifting class `i-1` into class
/// `i mod p`, and each cyclic product `D_i = A_i ... A_{i+p-1}` is
/// primitive.
#[derive(Debug, Clone)]
pub struct CyclicBlockForm {
    /// New-position -> original-vertex map (classes listed in order).
    pub permutation: Vec<usize>,
    pub period: usize,
    /// Sizes of the cyclic classes, in class order.
    pub class_sizes: Vec<usize>,
    /// `blocks[i]` maps class `i` into class `i+1 mod p`.
    pub blocks: Vec<IntMatrix>,
}

impl CyclicBlockForm {
    /// The cyclic product `D_i = A_{i+1} A_{i+2} ... A_{i+p}` (indices
    /// mod `p`), the diagonal block of `A^p` on class `i`.
    pub fn cyclic_product(&self, i: usize) -> IntMatrix {
        let p = self.period;
        let mut acc = IntMatrix::identity(self.class_sizes[i]);
        for k in 0..p {
            acc = &acc * &self.blocks[(i + k) % p];
        }
        acc
    }
}

/// Periodic-point counts of an edge shift: `fix_counts[n-1]` is
/// `|Fix(sigma^{n})| = trace(A^n)` and `least_period_counts[n-1]` is
/// the number `q_n` of points of least period `n`, recovered by Mobius
/// inversion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodData {
    pub fix_counts: Vec<Int>,
    pub least_period_counts: Vec<Int>,
}

/// Iteratively delete zero rows/columns (together with the matching
/// column/row) until none remain. The surviving principal submatrix
/// presents the same SFT and has the same `det(I-tA)`.
pub fn nondegenerate_core(a: &NonnegMatrix) -> (NonnegMatrix, Vec<usize>) {
    let mut keep: Vec<usize> = (0..a.size()).collect();
    let mut m = a.inner().clone();
    loop {
        let n = m.rows();
        let mut victim = None;
        'scan: for i in 0..n {
            let zero_row = (0..n).all(|j| m.get(i, j).is_zero());
            let zero_col = (0..n).all(|j| m.get(j, i).is_zero());
            if zero_row || zero_col {
                victim = Some(i);
                break 'scan;
            }
        }
        match victim {
            Some(i) => {
                keep.remove(i);
                let rest: Vec<usize> = (0..n).filter(|&x| x != i).collect();
                m = m.principal_submatrix(&rest);
            }
            None => break,
        }
    }
    let core = NonnegMatrix::new(m).expect("principal submatrix of nonnegative is nonnegative");
    (core, keep)
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    let mut out = vec![vec![false; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] {
                for j in 0..n {
                    if b[k][j] {
                        out[i][j] = true;
                    }
                }
            }
        }
    }
    out
}

/// Reachability closure with paths of length >= 1.
fn reachable(support: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = support.len();
    let mut reach = support.to_vec();
    // Floyd-Warshall on the support digraph.
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

/// Primitivity test by boolean powering.
///
/// Positive outcome carries the smallest exponent `k` with `A^k > 0`;
/// the Wielandt bound `n^2 - 2n + 2` caps the search. Negative
/// outcomes carry either an unreachable vertex pair or the period.
pub fn is_primitive(a: &NonnegMatrix) -> Primitivity {
    let n = a.size();
    if n == 0 {
        return Primitivity::Reducible { from: 0, to: 0 };
    }
    let support = a.inner().support();
    let reach = reachable(&support);
    for i in 0..n {
        for j in 0..n {
            if !reach[i][j] {
                return Primitivity::Reducible { from: i, to: j };
            }
        }
    }
    let p = period(a).expect("irreducible matrix has a period");
    if p > 1 {
        return Primitivity::ImprimitivePeriod { period: p };
    }
    let bound = if n == 1 { 1 } else { n * n - 2 * n + 2 };
    let mut power = support.clone();
    for k in 1..=bound {
        if power.iter().all(|row| row.iter().all(|&x| x)) {
            return Primitivity::Primitive { exponent: k };
        }
        power = bool_mul(&power, &support);
    }
    // Wielandt's bound guarantees this is unreachable for primitive
    // input; period 1 plus irreducibility forces primitivity.
    Primitivity::Primitive { exponent: bound }
}

/// Strong connectivity of the support digraph (with nonempty paths).
pub fn is_irreducible(a: &NonnegMatrix) -> bool {
    let n = a.size();
    if n == 0 {
        return false;
    }
    let reach = reachable(&a.inner().support());
    (0..n).all(|i| (0..n).all(|j| reach[i][j]))
}

/// Period of the strong component of vertex 0: BFS levels from vertex
/// 0, then gcd of `level(u) + 1 - level(v)` over edges `u -> v` inside
/// the component. For an irreducible matrix this is the period in the
/// cyclic block structure theorem.
pub fn period(a: &NonnegMatrix) -> Result<usize> {
    let n = a.size();
    if n == 0 {
        return Err(Error::NotIrreducible);
    }
    let support = a.inner().support();
    let reach = reachable(&support);
    // Strong component of vertex 0 (with nonempty paths, so a lone
    // vertex without a self-loop is excluded).
    let comp: Vec<usize> = (0..n).filter(|&v| reach[0][v] && reach[v][0]).collect();
    if comp.is_empty() || !(reach[0][0]) {
        return Err(Error::NotIrreducible);
    }
    let index_in_comp: Vec<Option<usize>> =
        (0..n).map(|v| comp.iter().position(|&c| c == v)).collect();
    // BFS levels within the component.
    let mut level = vec![usize::MAX; comp.len()];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let orig_u = comp[u];
        for orig_v in 0..n {
            if support[orig_u][orig_v] {
                if let Some(v) = index_in_comp[orig_v] {
                    if level[v] == usize::MAX {
                        level[v] = level[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
    }
    let mut g: u64 = 0;
    for (u, &orig_u) in comp.iter().enumerate() {
        for orig_v in 0..n {
            if support[orig_u][orig_v] {
                if let Some(v) = index_in_comp[orig_v] {
                    let diff = (level[u] as i64 + 1 - level[v] as i64).unsigned_abs();
                    g = num_integer::gcd(g, diff);
                }
            }
        }
    }
    debug_assert!(g > 0, "a strong component with a cycle has positive period");
    Ok(g as usize)
}

/// Cyclic block form of an irreducible matrix.
pub fn cyclic_block_form(a: &NonnegMatrix) -> Result<CyclicBlockForm> {
    if !is_irreducible(a) {
        return Err(Error::NotIrreducible);
    }
    let n = a.size();
    let p = period(a)?;
    let support = a.inner().support();
    // BFS levels from vertex 0; class of v = level(v) mod p.
    let mut level = vec![usize::MAX; n];
    level[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if support[u][v] && level[v] == usize::MAX {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); p];
    for v in 0..n {
        classes[level[v] % p].push(v);
    }
    let permutation: Vec<usize> = classes.iter().flatten().copied().collect();
    let class_sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
    let blocks: Vec<IntMatrix> = (0..p)
        .map(|i| a.inner().submatrix(&classes[i], &classes[(i + 1) % p]))
        .collect();

    // The permuted matrix must vanish outside the cyclic band.
    let permuted = a.inner().permute_symmetric(&permutation);
    let mut offsets = vec![0usize; p + 1];
    for i in 0..p {
        offsets[i + 1] = offsets[i] + class_sizes[i];
    }
    let class_of = |idx: usize| (0..p).find(|&c| idx < offsets[c + 1]).unwrap();
    for i in 0..n {
        for j in 0..n {
            if !permuted.get(i, j).is_zero() && class_of(j) != (class_of(i) + 1) % p {
                return Err(Error::Internal(
                    "cyclic block form violates the band pattern".into(),
                ));
            }
        }
    }
    Ok(CyclicBlockForm {
        permutation,
        period: p,
        class_sizes,
        blocks,
    })
}

/// Edges of the graph of `A`, enumerated row-major and then by
/// parallel-copy index. Edge `e` runs `from(e) -> to(e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    pub from: Vec<usize>,
    pub to: Vec<usize>,
}

impl EdgeSet {
    pub fn of(a: &NonnegMatrix) -> Self {
        let n = a.size();
        let mut from = Vec::new();
        let mut to = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = a.get(i, j);
                let mut k = Int::zero();
                while &k < c {
                    from.push(i);
                    to.push(j);
                    k += 1;
                }
            }
        }
        EdgeSet { from, to }
    }

    pub fn len(&self) -> usize {
        self.from.len()
    }

    pub fn is_empty(&self) -> bool {
        self.from.is_empty()
    }
}

/// The higher-block presentation `A^[k]`.
///
/// `A^[1] = A`. For `k >= 2` the vertices are the legal edge words of
/// length `k-1` in lexicographic order on edge indices, the edges are
/// the legal words of length `k`, and the word `e_1 ... e_k` runs from
/// `e_1 ... e_{k-1}` to `e_2 ... e_k`. Presents the same SFT, so
/// `det(I - t A^[k]) = det(I - t A)`.
pub fn higher_block(a: &NonnegMatrix, k: usize) -> Result<NonnegMatrix> {
    if k == 0 {
        return Err(Error::Precondition(
            "block presentation level must be >= 1".into(),
        ));
    }
    if k == 1 {
        return Ok(a.clone());
    }
    let edges = EdgeSet::of(a);
    // Legal words of length k-1, lexicographic by construction.
    let mut words: Vec<Vec<usize>> = edges
        .from
        .iter()
        .enumerate()
        .map(|(e, _)| vec![e])
        .collect();
    for _ in 2..k {
        let mut next = Vec::new();
        for w in &words {
            let last = *w.last().unwrap();
            for e in 0..edges.len() {
                if edges.from[e] == edges.to[last] {
                    let mut w2 = w.clone();
                    w2.push(e);
                    next.push(w2);
                }
            }
        }
        words = next;
    }
    let index_of = |w: &[usize]| words.binary_search_by(|probe| probe.as_slice().cmp(w)).ok();
    let m = words.len();
    let mut out = IntMatrix::zero(m, m);
    for (i, w) in words.iter().enumerate() {
        let last = *w.last().unwrap();
        for e in 0..edges.len() {
            if edges.from[e] == edges.to[last] {
                let mut target = w[1..].to_vec();
                target.push(e);
                let j = index_of(&target)
                    .expect("suffix of a legal word extended by a legal edge is legal");
                let bumped = out.get(i, j) + 1;
                out.set(i, j, bumped);
            }
        }
    }
    NonnegMatrix::new(out)
}

/// `A^n(i, j)`: the number of length-`n` paths from `i` to `j`.
pub fn path_count(a: &NonnegMatrix, i: usize, j: usize, n: usize) -> Result<Int> {
    let size = a.size();
    if i >= size || j >= size {
        return Err(Error::IndexOutOfRange {
            context: "path_count",
            index: i.max(j),
            bound: size,
        });
    }
    Ok(a.inner().pow(n)?.get(i, j).clone())
}

/// Fixed-point counts `trace(A^n)` for `n <= max` and the least-period
/// counts recovered by Mobius inversion.
pub fn fix_counts(a: &NonnegMatrix, max: usize) -> Result<PeriodData> {
    let mut fix = Vec::with_capacity(max);
    let mut power = IntMatrix::identity(a.size());
    for _ in 1..=max {
        power = &power * a.inner();
        fix.push(power.trace()?);
    }
    let mut least = Vec::with_capacity(max);
    for n in 1..=max {
        let mut q = Int::zero();
        for d in 1..=n {
            if n % d == 0 {
                q += Int::from(mobius((n / d) as u64)?) * &fix[d - 1];
            }
        }
        least.push(q);
    }
    Ok(PeriodData {
        fix_counts: fix,
        least_period_counts: least,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::det_one_minus_tA;
    use crate::exact::IntPoly;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};

    fn nn(rows: &[&[i64]]) -> NonnegMatrix {
        NonnegMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn core_removes_stranded_vertices() {
        let (core, kept) = nondegenerate_core(&nn(&[&[2, 0], &[1, 0]]));
        assert_eq!(core.inner(), &IntMatrix::from_rows(&[&[2]]));
        assert_eq!(kept, vec![0]);

        let (core, kept) = nondegenerate_core(&nn(&[&[2]]));
        assert_eq!(core.size(), 1);
        assert_eq!(kept, vec![0]);

        let (core, kept) = nondegenerate_core(&nn(&[&[0]]));
        assert_eq!(core.size(), 0);
        assert!(kept.is_empty());
    }

    #[test]
    fn core_preserves_det_and_traces() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let a = nn_random(&mut rng, n, 2);
            let (core, _) = nondegenerate_core(&a);
            assert_eq!(
                det_one_minus_tA(a.inner()).unwrap(),
                det_one_minus_tA(core.inner()).unwrap()
            );
            for k in 1..=5 {
                assert_eq!(
                    a.inner().pow(k).unwrap().trace().unwrap(),
                    core.inner().pow(k).unwrap().trace().unwrap()
                );
            }
        }
    }

    fn nn_random(rng: &mut impl Rng, n: usize, max: i64) -> NonnegMatrix {
        NonnegMatrix::new(IntMatrix::from_fn(n, n, |_, _| {
            Int::from(rng.gen_range(0..=max))
        }))
        .unwrap()
    }

    #[test]
    fn primitivity_examples() {
        assert_eq!(
            is_primitive(&nn(&[&[1, 1], &[1, 0]])),
            Primitivity::Primitive { exponent: 2 }
        );
        assert_eq!(
            is_primitive(&nn(&[&[0, 1], &[1, 0]])),
            Primitivity::ImprimitivePeriod { period: 2 }
        );
        assert!(matches!(
            is_primitive(&nn(&[&[1, 1], &[0, 1]])),
            Primitivity::Reducible { .. }
        ));
        assert_eq!(
            is_primitive(&nn(&[&[1]])),
            Primitivity::Primitive { exponent: 1 }
        );
    }

    #[test]
    fn irreducibility_and_period_examples() {
        // Cyclic 3-cycle: irreducible of period 3.
        let c = nn(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert!(is_irreducible(&c));
        assert_eq!(period(&c).unwrap(), 3);

        let d = nn(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]]);
        assert!(is_irreducible(&d));
        assert_eq!(period(&d).unwrap(), 2);

        let a = nn(&[&[1, 1, 1], &[1, 1, 1], &[0, 0, 0]]);
        assert!(!is_irreducible(&a));
        let b = nn(&[&[1, 1], &[0, 1]]);
        assert!(!is_irreducible(&b));
    }

    /// Brute-force period oracle: gcd of the lengths of all closed
    /// paths through vertex 0 of length at most 2n.
    fn period_oracle(a: &NonnegMatrix) -> usize {
        let n = a.size();
        let mut g = 0u64;
        for len in 1..=2 * n {
            if !path_count(a, 0, 0, len).unwrap().is_zero() {
                g = num_integer::gcd(g, len as u64);
            }
        }
        g as usize
    }

    #[test]
    fn period_matches_cycle_gcd_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        let mut tested = 0;
        while tested < 25 {
            let n = rng.gen_range(1..=4);
            let a = nn_random(&mut rng, n, 1);
            if !is_irreducible(&a) {
                continue;
            }
            assert_eq!(period(&a).unwrap(), period_oracle(&a));
            tested += 1;
        }
    }

    #[test]
    fn cyclic_block_form_contract() {
        for m in [
            nn(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]),
            nn(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]]),
            nn(&[&[1, 1], &[1, 0]]),
        ] {
            let cbf = cyclic_block_form(&m).unwrap();
            // Each cyclic product is primitive, and equals the
            // corresponding diagonal block of A^p.
            let pow = m.inner().pow(cbf.period).unwrap();
            let permuted_pow = pow.permute_symmetric(&cbf.permutation);
            let mut offset = 0;
            for i in 0..cbf.period {
                let d = cbf.cyclic_product(i);
                assert!(is_primitive(&NonnegMatrix::new(d.clone()).unwrap()).is_primitive());
                let idx: Vec<usize> = (offset..offset + cbf.class_sizes[i]).collect();
                assert_eq!(permuted_pow.principal_submatrix(&idx), d);
                offset += cbf.class_sizes[i];
            }
        }
        assert!(matches!(
            cyclic_block_form(&nn(&[&[1, 1], &[0, 1]])),
            Err(Error::NotIrreducible)
        ));
    }

    #[test]
    fn higher_block_of_full_two_shift() {
        let a = nn(&[&[2]]);
        assert_eq!(higher_block(&a, 1).unwrap(), a);
        assert_eq!(
            higher_block(&a, 2).unwrap().inner(),
            &IntMatrix::from_rows(&[&[1, 1], &[1, 1]])
        );
        assert_eq!(
            higher_block(&a, 3).unwrap().inner(),
            &IntMatrix::from_rows(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[1, 1, 0, 0], &[0, 0, 1, 1]])
        );
        for k in 1..=3 {
            assert_eq!(
                det_one_minus_tA(higher_block(&a, k).unwrap().inner()).unwrap(),
                IntPoly::from_i64(&[1, -2])
            );
        }
    }

    #[test]
    fn higher_block_preserves_invariants() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for _ in 0..20 {
            let n = rng.gen_range(1..=3);
            let a = nn_random(&mut rng, n, 2);
            let p = det_one_minus_tA(a.inner()).unwrap();
            for k in [2usize, 3] {
                let hb = higher_block(&a, k).unwrap();
                assert_eq!(det_one_minus_tA(hb.inner()).unwrap(), p);
                for m in 1..=6 {
                    assert_eq!(
                        hb.inner().pow(m).unwrap().trace().unwrap(),
                        a.inner().pow(m).unwrap().trace().unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn path_and_fix_counts() {
        let a = nn(&[&[2]]);
        assert_eq!(path_count(&a, 0, 0, 5).unwrap(), Int::from(32));
        let b = nn(&[&[1, 2], &[1, 0]]);
        assert_eq!(path_count(&b, 0, 0, 2).unwrap(), Int::from(3));
        assert!(path_count(&b, 0, 2, 1).is_err());

        // q_2 for the full 2-shift: 4 - 2 = 2.
        let pd = fix_counts(&a, 6).unwrap();
        assert_eq!(pd.fix_counts[1], Int::from(4));
        assert_eq!(pd.least_period_counts[1], Int::from(2));
        // q_n >= 0 always.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for _ in 0..20 {
            let n = rng.gen_range(1..=4);
            let m = nn_random(&mut rng, n, 2);
            let pd = fix_counts(&m, 8).unwrap();
            assert!(pd.least_period_counts.iter().all(|q| !q.is_negative()));
        }
    }

    #[test]
    fn primitive_implies_irreducible_aperiodic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let a = nn_random(&mut rng, n, 1);
            if is_primitive(&a).is_primitive() {
                assert!(is_irreducible(&a));
                assert_eq!(period(&a).unwrap(), 1);
            }
        }
    }
}

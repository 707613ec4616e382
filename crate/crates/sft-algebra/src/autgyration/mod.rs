//! Periodic-point combinatorics of edge shifts: orbit tables, sliding
//! block codes, the elementary conjugacies `c(R, S)` attached to an
//! ESSE, gyration and sign-gyration homomorphisms, and the Kim-Roush
//! `sgc2` invariant on SSE(Z) paths.

mod gyration;
mod sgc;

pub use gyration::{sgcc, AutomorphismAction, LevelAction};
pub use sgc::{path_sgc2, random_triangle, sgc2, verify_triangle, SsePath, Triangle};

use crate::exact::{Int, IntMatrix};
use crate::structure::{EdgeSet, NonnegMatrix};
use crate::{Error, Result};
use std::collections::HashMap;

/// A rotation orbit inside a periodic-point table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Index of the lexicographically least point of the orbit.
    pub representative: usize,
    /// Point indices in rotation order: `rep, sigma(rep), ...`.
    pub points: Vec<usize>,
    /// The orbit length (= least period of its points).
    pub least_period: usize,
}

/// All closed edge paths of length `level` of an edge shift, in
/// lexicographic order on edge-index words, partitioned into rotation
/// orbits.
///
/// `points.len()` equals `trace(A^level)`; the points of least period
/// exactly `level` are those in orbits with `least_period == level`.
#[derive(Debug, Clone)]
pub struct PeriodicOrbitTable {
    pub matrix: NonnegMatrix,
    pub edges: EdgeSet,
    pub level: usize,
    pub points: Vec<Vec<usize>>,
    pub orbits: Vec<Orbit>,
    /// Orbit index of each point.
    pub orbit_of: Vec<usize>,
}

impl PeriodicOrbitTable {
    /// Index of a cyclic word, by binary search in the sorted point
    /// list.
    pub fn index_of(&self, word: &[usize]) -> Option<usize> {
        self.points
            .binary_search_by(|p| p.as_slice().cmp(word))
            .ok()
    }

    /// The left rotation (shift action) of a point.
    pub fn rotate(&self, point: usize) -> usize {
        let w = &self.points[point];
        let mut rotated = w[1..].to_vec();
        rotated.push(w[0]);
        self.index_of(&rotated)
            .expect("rotation of a closed word is closed")
    }

    /// Indices of the orbits of full length (`least_period == level`),
    /// i.e. the orbit set `Q_level`.
    pub fn full_orbits(&self) -> Vec<usize> {
        (0..self.orbits.len())
            .filter(|&i| self.orbits[i].least_period == self.level)
            .collect()
    }
}

/// Enumerate all closed edge paths of length `n`, refusing to build
/// tables larger than `max_points`.
pub fn enumerate_periodic(
    a: &NonnegMatrix,
    n: usize,
    max_points: u64,
) -> Result<PeriodicOrbitTable> {
    if n == 0 {
        return Err(Error::Precondition("period level must be >= 1".into()));
    }
    let expected = a.inner().pow(n)?.trace()?;
    if expected > Int::from(max_points) {
        return Err(Error::BudgetExceeded {
            context: "enumerate_periodic",
            budget: max_points,
        });
    }
    let edges = EdgeSet::of(a);
    let mut points: Vec<Vec<usize>> = Vec::new();
    // Depth-first in ascending edge order yields lexicographic output.
    let mut word = Vec::with_capacity(n);
    fn extend(edges: &EdgeSet, n: usize, word: &mut Vec<usize>, points: &mut Vec<Vec<usize>>) {
        if word.len() == n {
            if edges.to[*word.last().unwrap()] == edges.from[word[0]] {
                points.push(word.clone());
            }
            return;
        }
        for e in 0..edges.len() {
            if let Some(&last) = word.last() {
                if edges.from[e] != edges.to[last] {
                    continue;
                }
            }
            word.push(e);
            extend(edges, n, word, points);
            word.pop();
        }
    }
    extend(&edges, n, &mut word, &mut points);
    debug_assert_eq!(Int::from(points.len() as u64), expected);

    // Partition into rotation orbits.
    let index_of = |w: &[usize]| points.binary_search_by(|p| p.as_slice().cmp(w)).unwrap();
    let mut orbit_of = vec![usize::MAX; points.len()];
    let mut orbits = Vec::new();
    for start in 0..points.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        // `start` is the least rotation in its class because points are
        // visited in lexicographic order.
        let mut member_indices = vec![start];
        let mut w = points[start].clone();
        loop {
            let mut rotated = w[1..].to_vec();
            rotated.push(w[0]);
            if rotated == points[start] {
                break;
            }
            member_indices.push(index_of(&rotated));
            w = rotated;
        }
        let orbit_idx = orbits.len();
        for &p in &member_indices {
            orbit_of[p] = orbit_idx;
        }
        let least_period = member_indices.len();
        orbits.push(Orbit {
            representative: start,
            points: member_indices,
            least_period,
        });
    }
    Ok(PeriodicOrbitTable {
        matrix: a.clone(),
        edges,
        level: n,
        points,
        orbits,
        orbit_of,
    })
}

/// A sliding block code between edge shifts: `y_t` is read off the
/// domain word `x_{t+j} ... x_{t+k}` through a total table on legal
/// words.
#[derive(Debug, Clone)]
pub struct BlockCode {
    pub domain: NonnegMatrix,
    pub range: NonnegMatrix,
    /// Window offsets `(j, k)` with `j <= k`.
    pub window: (i64, i64),
    table: HashMap<Vec<usize>, usize>,
}

impl BlockCode {
    /// Build and validate: every legal domain word of the window
    /// length must have an image, and images of overlapping words must
    /// concatenate to legal range words (checked on all legal words
    /// one longer than the window).
    pub fn new(
        domain: NonnegMatrix,
        range: NonnegMatrix,
        window: (i64, i64),
        table: HashMap<Vec<usize>, usize>,
    ) -> Result<Self> {
        if window.0 > window.1 {
            return Err(Error::Precondition("window must satisfy j <= k".into()));
        }
        let code = BlockCode {
            domain,
            range,
            window,
            table,
        };
        code.validate()?;
        Ok(code)
    }

    pub fn window_len(&self) -> usize {
        (self.window.1 - self.window.0) as usize + 1
    }

    pub fn image_of(&self, word: &[usize]) -> Option<usize> {
        self.table.get(word).copied()
    }

    /// The full word map, for serialization.
    pub fn table(&self) -> &HashMap<Vec<usize>, usize> {
        &self.table
    }

    fn legal_words(edges: &EdgeSet, len: usize) -> Vec<Vec<usize>> {
        let mut words: Vec<Vec<usize>> = (0..edges.len()).map(|e| vec![e]).collect();
        for _ in 1..len {
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
        words
    }

    fn validate(&self) -> Result<()> {
        let dom_edges = EdgeSet::of(&self.domain);
        let range_edges = EdgeSet::of(&self.range);
        let len = self.window_len();
        for (w, &img) in &self.table {
            if img >= range_edges.len() {
                return Err(Error::Precondition(format!(
                    "word {w:?} maps to edge {img}, but the range has {} edges",
                    range_edges.len()
                )));
            }
        }
        for w in Self::legal_words(&dom_edges, len) {
            if self.table.get(&w).is_none() {
                return Err(Error::Precondition(format!(
                    "block code table is missing legal word {w:?}"
                )));
            }
        }
        for w in Self::legal_words(&dom_edges, len + 1) {
            let e1 = self.table[&w[..len]];
            let e2 = self.table[&w[1..]];
            if range_edges.to[e1] != range_edges.from[e2] {
                return Err(Error::Precondition(format!(
                    "images of overlapping words do not concatenate at {w:?}"
                )));
            }
        }
        Ok(())
    }

    /// The shift map itself, as the range-(1,1) identity-table code.
    pub fn shift(a: &NonnegMatrix) -> Result<Self> {
        let edges = EdgeSet::of(a);
        let table = (0..edges.len()).map(|e| (vec![e], e)).collect();
        Self::new(a.clone(), a.clone(), (1, 1), table)
    }

    /// The identity code.
    pub fn identity(a: &NonnegMatrix) -> Result<Self> {
        let edges = EdgeSet::of(a);
        let table = (0..edges.len()).map(|e| (vec![e], e)).collect();
        Self::new(a.clone(), a.clone(), (0, 0), table)
    }

    /// Apply around a cyclic word of length `n` (indices mod `n`).
    pub fn apply_cyclic(&self, word: &[usize]) -> Vec<usize> {
        let n = word.len() as i64;
        let len = self.window_len();
        let mut out = Vec::with_capacity(word.len());
        for t in 0..n {
            let mut local = Vec::with_capacity(len);
            for off in self.window.0..=self.window.1 {
                let idx = (t + off).rem_euclid(n) as usize;
                local.push(word[idx]);
            }
            out.push(
                self.image_of(&local)
                    .expect("validated code tables are total on legal words"),
            );
        }
        out
    }
}

/// Apply a block code to every point of a periodic table. Returns the
/// range-side table (at the same level) and the induced point map.
pub fn apply_code_periodic(
    code: &BlockCode,
    table: &PeriodicOrbitTable,
    max_points: u64,
) -> Result<(PeriodicOrbitTable, Vec<usize>)> {
    if code.domain != table.matrix {
        return Err(Error::Precondition(
            "code domain does not match the table".into(),
        ));
    }
    let range_table = enumerate_periodic(&code.range, table.level, max_points)?;
    let mut map = Vec::with_capacity(table.points.len());
    for w in &table.points {
        let image = code.apply_cyclic(w);
        let idx = range_table
            .index_of(&image)
            .ok_or_else(|| Error::Internal("image of a closed word is not closed".into()))?;
        map.push(idx);
    }
    Ok((range_table, map))
}

/// A simple graph symmetry: an edge permutation fixing all endpoints,
/// as a window-(0,0) block code (always an automorphism).
pub fn simple_graph_symmetry(a: &NonnegMatrix, edge_perm: &[usize]) -> Result<BlockCode> {
    let edges = EdgeSet::of(a);
    if edge_perm.len() != edges.len() {
        return Err(Error::Precondition(format!(
            "edge permutation has length {}, graph has {} edges",
            edge_perm.len(),
            edges.len()
        )));
    }
    let mut seen = vec![false; edges.len()];
    for (e, &img) in edge_perm.iter().enumerate() {
        if img >= edges.len() || seen[img] {
            return Err(Error::Precondition("not a permutation of the edges".into()));
        }
        seen[img] = true;
        if edges.from[e] != edges.from[img] || edges.to[e] != edges.to[img] {
            return Err(Error::Precondition(format!(
                "edge {e} maps to a non-parallel edge {img}"
            )));
        }
    }
    let table = (0..edges.len()).map(|e| (vec![e], edge_perm[e])).collect();
    BlockCode::new(a.clone(), a.clone(), (0, 0), table)
}

/// A full automorphism presented as a mutually inverse pair of block
/// codes; the pair is verified inverse on all legal words up to the
/// combined window length plus one.
#[derive(Debug, Clone)]
pub struct Automorphism {
    pub forward: BlockCode,
    pub inverse: BlockCode,
}

impl Automorphism {
    pub fn new(forward: BlockCode, inverse: BlockCode) -> Result<Self> {
        if forward.domain != inverse.range || forward.range != inverse.domain {
            return Err(Error::Precondition(
                "forward and inverse codes must swap domain and range".into(),
            ));
        }
        verify_identity_composition(&inverse, &forward)?;
        verify_identity_composition(&forward, &inverse)?;
        Ok(Automorphism { forward, inverse })
    }

    pub fn shift(a: &NonnegMatrix) -> Result<Self> {
        let edges = EdgeSet::of(a);
        let table: HashMap<Vec<usize>, usize> = (0..edges.len()).map(|e| (vec![e], e)).collect();
        let forward = BlockCode::new(a.clone(), a.clone(), (1, 1), table.clone())?;
        let inverse = BlockCode::new(a.clone(), a.clone(), (-1, -1), table)?;
        Self::new(forward, inverse)
    }

    pub fn identity(a: &NonnegMatrix) -> Result<Self> {
        let id = BlockCode::identity(a)?;
        Self::new(id.clone(), id)
    }

    /// From a simple graph symmetry (inverse = inverse permutation).
    pub fn from_graph_symmetry(a: &NonnegMatrix, edge_perm: &[usize]) -> Result<Self> {
        let forward = simple_graph_symmetry(a, edge_perm)?;
        let mut inv_perm = vec![0usize; edge_perm.len()];
        for (e, &img) in edge_perm.iter().enumerate() {
            inv_perm[img] = e;
        }
        let inverse = simple_graph_symmetry(a, &inv_perm)?;
        Self::new(forward, inverse)
    }
}

/// Check that `second` applied after `first` is the identity on all
/// legal words covering the combined window (plus one).
fn verify_identity_composition(second: &BlockCode, first: &BlockCode) -> Result<()> {
    let (jf, kf) = first.window;
    let (js, ks) = second.window;
    let (jc, kc) = (jf + js, kf + ks);
    if jc > 0 || kc < 0 {
        return Err(Error::Precondition(
            "composed window does not cover offset 0; codes cannot be mutually inverse".into(),
        ));
    }
    let dom_edges = EdgeSet::of(&first.domain);
    let base = (kc - jc) as usize + 1;
    for extra in 0..=1usize {
        let len = base + extra;
        for w in BlockCode::legal_words(&dom_edges, len) {
            // Positions t with the whole composed window inside w:
            // t + jc >= 0 and t + kc <= len - 1.
            let t_lo = (-jc) as usize;
            let t_hi = (len as i64 - 1 - kc) as usize;
            for t in t_lo..=t_hi {
                // Apply `first` wherever `second`'s window needs it.
                let mut mid = Vec::new();
                for u in js..=ks {
                    let mut local = Vec::new();
                    for off in jf..=kf {
                        local.push(w[(t as i64 + u + off) as usize]);
                    }
                    let e = first.image_of(&local).ok_or_else(|| {
                        Error::Precondition("first code is not total on legal words".into())
                    })?;
                    mid.push(e);
                }
                let out = second.image_of(&mid).ok_or_else(|| {
                    Error::Precondition("second code is not total on images of the first".into())
                })?;
                if out != w[t] {
                    return Err(Error::Precondition("codes are not mutually inverse".into()));
                }
            }
        }
    }
    Ok(())
}

/// The elementary conjugacy `c(R, S)` of a verified ESSE over `Z+`,
/// as a window-(0, 1) block code from the shift of `A = RS` to the
/// shift of `B = SR`.
///
/// Writing `A(i, j) = sum_k R(i, k) S(k, j)`, the `A`-edges from `i`
/// to `j` are matched bijectively with triples `(k, r-copy, s-copy)`
/// in lexicographic order, and dually for `B`; the code sends `x0 x1`
/// to the `B`-edge of the `S, R`-path formed by the `S`-half of `x0`
/// and the `R`-half of `x1`.
pub fn conjugacy_from_esse(r: &IntMatrix, s: &IntMatrix) -> Result<BlockCode> {
    if !r.is_nonnegative() || !s.is_nonnegative() {
        return Err(Error::Precondition("c(R, S) needs R, S over Z+".into()));
    }
    let a = NonnegMatrix::new(r.checked_mul(s)?)?;
    let b = NonnegMatrix::new(s.checked_mul(r)?)?;
    if !a.is_nondegenerate() {
        return Err(Error::Precondition(
            "A = RS is degenerate; take the nondegenerate core first".into(),
        ));
    }
    let a_edges = EdgeSet::of(&a);
    let b_edges = EdgeSet::of(&b);

    let small = |x: &Int| -> usize { usize::try_from(x).expect("entry fits in usize") };

    // alpha: A-edge copy c of (i, j) -> the c-th (k, rc, sc) triple.
    let alpha = |i: usize, j: usize, copy: usize| -> (usize, usize, usize) {
        let mut c = copy;
        for k in 0..r.cols() {
            let rk = small(r.get(i, k));
            let sk = small(s.get(k, j));
            let here = rk * sk;
            if c < here {
                return (k, c / sk, c % sk);
            }
            c -= here;
        }
        unreachable!("copy index within A(i, j)")
    };
    // beta^-1: the (j, sc, rc) triple of a B-edge (k, l) -> copy index.
    let beta_inv = |k: usize, l: usize, j: usize, sc: usize, rc: usize| -> usize {
        let mut offset = 0usize;
        for jj in 0..s.cols() {
            let sj = small(s.get(k, jj));
            let rj = small(r.get(jj, l));
            if jj == j {
                return offset + sc * rj + rc;
            }
            offset += sj * rj;
        }
        unreachable!("intermediate vertex contributes to B(k, l)")
    };

    // Edge copy indices within their (from, to) parallel class.
    let copy_index = |edges: &EdgeSet, e: usize| -> usize {
        (0..e)
            .filter(|&d| edges.from[d] == edges.from[e] && edges.to[d] == edges.to[e])
            .count()
    };
    // Index of the B-edge with given endpoints and copy.
    let b_edge_index = |k: usize, l: usize, copy: usize| -> usize {
        let mut seen = 0usize;
        for e in 0..b_edges.len() {
            if b_edges.from[e] == k && b_edges.to[e] == l {
                if seen == copy {
                    return e;
                }
                seen += 1;
            }
        }
        unreachable!("copy index within B(k, l)")
    };

    let mut table = HashMap::new();
    for x0 in 0..a_edges.len() {
        for x1 in 0..a_edges.len() {
            if a_edges.to[x0] != a_edges.from[x1] {
                continue;
            }
            let (i0, j0) = (a_edges.from[x0], a_edges.to[x0]);
            let (k0, _rc0, sc0) = alpha(i0, j0, copy_index(&a_edges, x0));
            let (i1, j1) = (a_edges.from[x1], a_edges.to[x1]);
            debug_assert_eq!(j0, i1);
            let (k1, rc1, _sc1) = alpha(i1, j1, copy_index(&a_edges, x1));
            // y0 is the B-edge of the S,R-path k0 -> (j0 = i1) -> k1.
            let copy = beta_inv(k0, k1, j0, sc0, rc1);
            table.insert(vec![x0, x1], b_edge_index(k0, k1, copy));
        }
    }
    BlockCode::new(a.clone(), b, (0, 1), table)
}

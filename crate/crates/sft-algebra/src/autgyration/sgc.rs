use crate::equivalence::SseChain;
use crate::exact::{Int, IntMatrix};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};

/// An oriented path in the SSE(Z) complex; structurally a chain of
/// oriented ESSE edges over Z.
pub type SsePath = SseChain;

/// The Kim-Roush relative sign-gyration number of a single ESSE edge
/// `(R, S)` over Z, in `Z/2`:
///
/// ```text
/// sgc2(R, S) = sum_{i<j, k>l}  R[i][k] S[k][i] R[j][l] S[l][j]
///            + sum_{i<j, k>=l} R[i][k] S[k][j] R[j][l] S[l][i]
///            + sum_{i, j}      R[i][j] (R[i][j] - 1) / 2 * S[j][i]^2
/// ```
///
/// with `i, j` over the rows of `R` and `k, l` over its columns. The
/// halved term is integral because `R[i][j](R[i][j] - 1)` is even.
pub fn sgc2(r: &IntMatrix, s: &IntMatrix) -> Result<u8> {
    if r.rows() != s.cols() || r.cols() != s.rows() {
        return Err(Error::DimensionMismatch {
            context: "sgc2",
            lhs: (r.rows(), r.cols()),
            rhs: (s.rows(), s.cols()),
        });
    }
    let m = r.rows();
    let n = r.cols();
    let mut total = Int::zero();
    for i in 0..m {
        for j in i + 1..m {
            for k in 0..n {
                for l in 0..n {
                    if k > l {
                        total += r.get(i, k) * s.get(k, i) * r.get(j, l) * s.get(l, j);
                    }
                    if k >= l {
                        total += r.get(i, k) * s.get(k, j) * r.get(j, l) * s.get(l, i);
                    }
                }
            }
        }
    }
    for i in 0..m {
        for j in 0..n {
            let rij = r.get(i, j);
            let half = (rij * (rij - Int::from(1))) / Int::from(2);
            total += half * s.get(j, i) * s.get(j, i);
        }
    }
    Ok(if total.is_even() { 0 } else { 1 })
}

/// The sgc2 value of an oriented path: the signed sum of the edge
/// values mod 2 (signs are kept for the general-modulus form even
/// though they vanish mod 2). The path is verified first.
pub fn path_sgc2(path: &SsePath) -> Result<u8> {
    crate::equivalence::verify_sse_chain(path)
        .map_err(|e| Error::Precondition(format!("path invalid: {e}")))?;
    let mut total = 0i64;
    for edge in &path.edges {
        let v = sgc2(&edge.witness.r, &edge.witness.s)? as i64;
        total += v * edge.orientation as i64;
    }
    Ok((total.rem_euclid(2)) as u8)
}

/// A 2-cell of the SSE complex: three edges satisfying the triangle
/// identities `R1 R2 = R3`, `R2 S3 = S1`, `S3 R1 = S2`.
#[derive(Debug, Clone)]
pub struct Triangle {
    pub r1: IntMatrix,
    pub s1: IntMatrix,
    pub r2: IntMatrix,
    pub s2: IntMatrix,
    pub r3: IntMatrix,
    pub s3: IntMatrix,
}

impl Triangle {
    /// The vertex matrices `A = R1 S1`, `B = S1 R1`, `C = S2 R2`.
    pub fn vertices(&self) -> Result<(IntMatrix, IntMatrix, IntMatrix)> {
        Ok((
            self.r1.checked_mul(&self.s1)?,
            self.s1.checked_mul(&self.r1)?,
            self.s2.checked_mul(&self.r2)?,
        ))
    }
}

/// Check the three triangle identities and the induced vertex
/// equations (`A = R1 S1 = R3 S3`, `B = S1 R1 = R2 S2`,
/// `C = S2 R2 = S3 R3`).
pub fn verify_triangle(t: &Triangle) -> Result<bool> {
    let ok = t.r1.checked_mul(&t.r2)? == t.r3
        && t.r2.checked_mul(&t.s3)? == t.s1
        && t.s3.checked_mul(&t.r1)? == t.s2;
    if !ok {
        return Ok(false);
    }
    let a1 = t.r1.checked_mul(&t.s1)?;
    let a3 = t.r3.checked_mul(&t.s3)?;
    let b1 = t.s1.checked_mul(&t.r1)?;
    let b2 = t.r2.checked_mul(&t.s2)?;
    let c2 = t.s2.checked_mul(&t.r2)?;
    let c3 = t.s3.checked_mul(&t.r3)?;
    Ok(a1 == a3 && b1 == b2 && c2 == c3)
}

/// Draw a seeded triangle: free `R1 (m x n)`, `R2 (n x p)`,
/// `S3 (p x m)` with entries in `[lo, hi]`, the remaining matrices
/// derived so the identities hold by construction.
pub fn random_triangle(max_size: usize, lo: i64, hi: i64, seed: u64) -> Triangle {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(1..=max_size);
    let n = rng.gen_range(1..=max_size);
    let p = rng.gen_range(1..=max_size);
    let mut draw = |rows: usize, cols: usize| {
        IntMatrix::from_fn(rows, cols, |_, _| Int::from(rng.gen_range(lo..=hi)))
    };
    let r1 = draw(m, n);
    let r2 = draw(n, p);
    let s3 = draw(p, m);
    let r3 = &r1 * &r2;
    let s1 = &r2 * &s3;
    let s2 = &s3 * &r1;
    Triangle {
        r1,
        s1,
        r2,
        s2,
        r3,
        s3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::{EsseWitness, Ring, SseEdge};

    fn im(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn sgc2_hand_values() {
        // (1 1) (1; 1): all three sums vanish.
        assert_eq!(sgc2(&im(&[&[1, 1]]), &im(&[&[1], &[1]])).unwrap(), 0);
        // Nilpotent pair with S = I.
        assert_eq!(
            sgc2(&im(&[&[0, 1], &[0, 0]]), &IntMatrix::identity(2)).unwrap(),
            0
        );
        // R = (2), S = (1): only the halved term contributes,
        // 2*1/2 * 1 = 1.
        assert_eq!(sgc2(&im(&[&[2]]), &im(&[&[1]])).unwrap(), 1);
        // Dimension mismatch is an error.
        assert!(sgc2(&im(&[&[1, 1]]), &im(&[&[1, 1]])).is_err());
    }

    #[test]
    fn path_sgc2_cancellation() {
        let w = EsseWitness::new(im(&[&[2]]), im(&[&[1]]), Ring::Z);
        // (2) -> (2) by (R, S) = ((2), (1)); the edge has sgc2 = 1.
        let path = SsePath {
            edges: vec![SseEdge::forward(w.clone())],
            ring: Ring::Z,
        };
        assert_eq!(path_sgc2(&path).unwrap(), 1);
        // A path followed by its reversal cancels.
        let back = SsePath {
            edges: vec![SseEdge::forward(w.clone()), SseEdge::backward(w)],
            ring: Ring::Z,
        };
        assert_eq!(path_sgc2(&back).unwrap(), 0);
    }

    #[test]
    fn triangle_verification() {
        let t = random_triangle(3, -2, 2, 99);
        assert!(verify_triangle(&t).unwrap());
        let mut broken = t.clone();
        let bumped = broken.s2.get(0, 0) + 1;
        broken.s2.set(0, 0, bumped);
        assert!(!verify_triangle(&broken).unwrap());
    }

    #[test]
    fn cocycle_identity_on_seeded_triangles() {
        for seed in 0..300u64 {
            let t = random_triangle(3, -2, 2, seed);
            assert!(verify_triangle(&t).unwrap());
            let lhs = (sgc2(&t.r1, &t.s1).unwrap() + sgc2(&t.r2, &t.s2).unwrap()) % 2;
            let rhs = sgc2(&t.r3, &t.s3).unwrap();
            assert_eq!(lhs, rhs, "cocycle identity failed at seed {seed}");
        }
    }

    #[test]
    fn sgc2_vanishes_on_zplus_edges_of_trace_zero_presentations() {
        // Nilpotent-support presentations have no short periodic
        // orbits, so every Z+ ESSE edge has trivial sign-gyration.
        use crate::equivalence::esse_neighbors;
        use crate::structure::NonnegMatrix;
        let mats = [
            NonnegMatrix::from_rows(&[&[0, 1], &[0, 0]]).unwrap(),
            NonnegMatrix::from_rows(&[&[0, 2], &[0, 0]]).unwrap(),
            NonnegMatrix::from_rows(&[&[0, 3], &[0, 0]]).unwrap(),
            NonnegMatrix::from_rows(&[&[0, 1, 2], &[0, 0, 1], &[0, 0, 0]]).unwrap(),
            NonnegMatrix::from_rows(&[&[0, 2, 1], &[0, 0, 2], &[0, 0, 0]]).unwrap(),
            NonnegMatrix::from_rows(&[&[0, 1, 1], &[0, 0, 2], &[0, 0, 0]]).unwrap(),
        ];
        let mut edges = 0;
        for a in &mats {
            let found = esse_neighbors(a, 3, 2, 30_000_000).unwrap();
            assert!(found.complete);
            for (w, _) in &found.neighbors {
                assert_eq!(sgc2(&w.r, &w.s).unwrap(), 0);
                edges += 1;
            }
        }
        assert!(
            edges >= 50,
            "enough edges to make the sweep meaningful, got {edges}"
        );
    }
}

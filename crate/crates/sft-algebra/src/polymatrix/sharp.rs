use super::PolyMatrix;
use crate::exact::{det_one_minus_tA, Int, IntMatrix};
use crate::structure::NonnegMatrix;
use crate::{Error, Result};
use num_traits::Zero;

/// Where a vertex of the expanded graph came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SharpVertex {
    /// Original index of the polynomial presentation (the rome).
    Rome(usize),
    /// Auxiliary vertex: `position`-th interior vertex (1-based) of the
    /// `copy`-th elementary path of degree `degree` for entry
    /// `(row, col)`.
    Aux {
        row: usize,
        col: usize,
        degree: usize,
        copy: usize,
        position: usize,
    },
}

/// The graph expansion of a polynomial presentation.
#[derive(Debug, Clone)]
pub struct SharpExpansion {
    pub matrix: NonnegMatrix,
    pub vertices: Vec<SharpVertex>,
}

/// Expand `A` over `t Z+[t]` into the adjacency matrix `A#` of its
/// graph: rome vertices first, then for each monomial `t^k` of
/// `A(i, j)` (row-major, ascending degree, then copy index) an
/// elementary path of `k` edges through `k - 1` fresh vertices.
pub fn sharp_expand(a: &PolyMatrix) -> Result<SharpExpansion> {
    let n = a.size();
    for i in 0..n {
        for j in 0..n {
            let p = a.get(i, j);
            if !p.is_nonnegative() {
                return Err(Error::NotOverZPlusT { row: i, col: j });
            }
            if !p.coeff(0).is_zero() {
                return Err(Error::NonzeroConstantTerm { row: i, col: j });
            }
        }
    }
    let mut vertices: Vec<SharpVertex> = (0..n).map(SharpVertex::Rome).collect();
    // Edges collected as (from, to) before sizing the matrix.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let p = a.get(i, j);
            let deg = p.degree().unwrap_or(0);
            for k in 1..=deg {
                let count = p.coeff(k);
                let mut copy = Int::zero();
                let mut copy_idx = 0usize;
                while copy < count {
                    // Path of k edges through k - 1 fresh vertices.
                    let mut prev = i;
                    for pos in 1..k {
                        let v = vertices.len();
                        vertices.push(SharpVertex::Aux {
                            row: i,
                            col: j,
                            degree: k,
                            copy: copy_idx,
                            position: pos,
                        });
                        edges.push((prev, v));
                        prev = v;
                    }
                    edges.push((prev, j));
                    copy += 1;
                    copy_idx += 1;
                }
            }
        }
    }
    let total = vertices.len();
    let mut adj = IntMatrix::zero(total, total);
    for (u, v) in edges {
        let bumped = adj.get(u, v) + 1;
        adj.set(u, v, bumped);
    }
    Ok(SharpExpansion {
        matrix: NonnegMatrix::new(adj)?,
        vertices,
    })
}

/// The defining identity of the expansion:
/// `det(I - A) = det(I - t A#)`, checked exactly by two independent
/// routes (cofactor determinant over Z[t] on the polynomial side,
/// division-free characteristic polynomial on the integer side).
pub fn verify_sharp(a: &PolyMatrix) -> Result<bool> {
    let lhs = a.i_minus().det();
    let expansion = sharp_expand(a)?;
    let rhs = det_one_minus_tA(expansion.matrix.inner())?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntPoly;
    use crate::polymatrix::pm;
    use rand::{Rng, SeedableRng};

    #[test]
    fn six_by_six_expansion() {
        // A = [[2t, t^2 + t^3], [t^2, 0]]: 2 rome vertices plus
        // 1 + 2 + 1 auxiliary vertices.
        let a = pm(2, &[&[0, 2], &[0, 0, 1, 1], &[0, 0, 1], &[]]);
        let ex = sharp_expand(&a).unwrap();
        assert_eq!(ex.matrix.size(), 6);
        assert_eq!(
            ex.matrix.inner(),
            &IntMatrix::from_rows(&[
                &[2, 0, 1, 1, 0, 0],
                &[0, 0, 0, 0, 0, 1],
                &[0, 1, 0, 0, 0, 0],
                &[0, 0, 0, 0, 1, 0],
                &[0, 1, 0, 0, 0, 0],
                &[1, 0, 0, 0, 0, 0],
            ])
        );
        assert_eq!(ex.vertices[0], SharpVertex::Rome(0));
        assert_eq!(
            ex.vertices[2],
            SharpVertex::Aux {
                row: 0,
                col: 1,
                degree: 2,
                copy: 0,
                position: 1
            }
        );
        assert!(verify_sharp(&a).unwrap());
    }

    #[test]
    fn linear_entries_expand_to_the_scalar_matrix() {
        // A = t*M: A# = M.
        let m = IntMatrix::from_rows(&[&[1, 2], &[1, 0]]);
        let a = PolyMatrix::scalar_t_times(&m);
        let ex = sharp_expand(&a).unwrap();
        assert_eq!(ex.matrix.inner(), &m);
        assert!(verify_sharp(&a).unwrap());
    }

    #[test]
    fn single_square_becomes_two_cycle() {
        let a = pm(1, &[&[0, 0, 1]]);
        let ex = sharp_expand(&a).unwrap();
        assert_eq!(
            ex.matrix.inner(),
            &IntMatrix::from_rows(&[&[0, 1], &[1, 0]])
        );
    }

    #[test]
    fn constant_terms_are_rejected() {
        let a = pm(1, &[&[1, 1]]);
        assert!(matches!(
            sharp_expand(&a),
            Err(Error::NonzeroConstantTerm { .. })
        ));
    }

    #[test]
    fn random_sweep_det_and_traces() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(97);
        for _ in 0..100 {
            let n = rng.gen_range(1..=3);
            let a = PolyMatrix::from_fn(n, |_, _| {
                let mut coeffs = vec![0i64];
                for _ in 0..3 {
                    coeffs.push(if rng.gen_bool(0.5) {
                        rng.gen_range(0..=2)
                    } else {
                        0
                    });
                }
                IntPoly::from_i64(&coeffs)
            });
            assert!(verify_sharp(&a).unwrap());
            // trace((A#)^m) agrees with the coefficient-derived traces
            // of det(I - A).
            let ex = sharp_expand(&a).unwrap();
            let p = a.i_minus().det();
            let taus = crate::exact::traces_from_poly(&p, 8).unwrap();
            for (m, tau) in taus.iter().enumerate() {
                assert_eq!(ex.matrix.inner().pow(m + 1).unwrap().trace().unwrap(), *tau);
            }
        }
    }
}

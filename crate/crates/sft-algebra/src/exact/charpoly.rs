use super::{Int, IntMatrix, IntPoly};
use crate::Result;
use num_traits::{One, Zero};

/// Characteristic polynomial `det(tI - A)` of a square integer matrix,
/// monic, by the Berkowitz algorithm.
///
/// The algorithm is division-free, so every intermediate value stays in
/// the integers. It iterates over leading principal submatrices: the
/// coefficient vector of the r x r submatrix is a lower-triangular
/// Toeplitz image of the (r-1) x (r-1) vector, with first column built
/// from `1, -a, -R C, -R M C, -R M^2 C, ...` where `M` is the previous
/// principal submatrix, `R` and `C` the new row and column, and `a` the
/// new diagonal entry.
pub fn char_poly(a: &IntMatrix) -> Result<IntPoly> {
    let n = a.square_size()?;
    if n == 0 {
        return Ok(IntPoly::one());
    }
    // Coefficients in descending degree order: p[0] t^r + ... + p[r].
    let mut p: Vec<Int> = vec![Int::one(), -a.get(0, 0).clone()];
    for r in 2..=n {
        // Toeplitz column: 1, -a_rr, -(R C), -(R M C), -(R M^2 C), ...
        let mut col: Vec<Int> = Vec::with_capacity(r + 1);
        col.push(Int::one());
        col.push(-a.get(r - 1, r - 1).clone());
        // v starts as C and is repeatedly hit with M.
        let mut v: Vec<Int> = (0..r - 1).map(|i| a.get(i, r - 1).clone()).collect();
        for _ in 0..r - 1 {
            let dot: Int = (0..r - 1).map(|j| a.get(r - 1, j) * &v[j]).sum();
            col.push(-dot);
            let next: Vec<Int> = (0..r - 1)
                .map(|i| (0..r - 1).map(|j| a.get(i, j) * &v[j]).sum())
                .collect();
            v = next;
        }
        // p_new = T * p, T the (r+1) x r Toeplitz matrix from `col`:
        // the convolution of `col` and `p` truncated to degree r.
        let mut next = vec![Int::zero(); r + 1];
        for (i, ci) in col.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, pj) in p.iter().enumerate() {
                if i + j <= r {
                    next[i + j] += ci * pj;
                }
            }
        }
        p = next;
    }
    p.reverse();
    Ok(IntPoly::from_coeffs(p))
}

/// `det(I - tA)`: the reversed characteristic polynomial, which carries
/// exactly the nonzero spectrum of `A`. Constant term 1, degree at most
/// the size of `A`.
#[allow(non_snake_case)]
pub fn det_one_minus_tA(a: &IntMatrix) -> Result<IntPoly> {
    let n = a.square_size()?;
    Ok(char_poly(a)?.reversal(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntMatrix;

    /// Independent oracle: determinant of `tI - A` expanded by cofactors
    /// over Z[t]. Exponential, used only on small test matrices.
    fn char_poly_cofactor(a: &IntMatrix) -> IntPoly {
        fn det(rows: &[usize], cols: &[usize], a: &IntMatrix) -> IntPoly {
            if rows.is_empty() {
                return IntPoly::one();
            }
            let r = rows[0];
            let rest: Vec<usize> = rows[1..].to_vec();
            let mut acc = IntPoly::zero();
            for (pos, &c) in cols.iter().enumerate() {
                let entry = if r == c {
                    &IntPoly::from_i64(&[0, 1]) - &IntPoly::constant(a.get(r, c).clone())
                } else {
                    -&IntPoly::constant(a.get(r, c).clone())
                };
                if entry.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det(&rest, &sub_cols, a);
                let term = &entry * &minor;
                if pos % 2 == 0 {
                    acc = &acc + &term;
                } else {
                    acc = &acc - &term;
                }
            }
            acc
        }
        let n = a.rows();
        let idx: Vec<usize> = (0..n).collect();
        det(&idx, &idx, a)
    }

    #[test]
    fn one_by_one() {
        let a = IntMatrix::from_rows(&[&[2]]);
        assert_eq!(char_poly(&a).unwrap(), IntPoly::from_i64(&[-2, 1]));
        assert_eq!(det_one_minus_tA(&a).unwrap(), IntPoly::from_i64(&[1, -2]));
    }

    #[test]
    fn riedel_two_by_two() {
        // [[k,2],[1,k]] has characteristic polynomial t^2 - 2kt + (k^2-2).
        let k = 3i64;
        let a = IntMatrix::from_rows(&[&[k, 2], &[1, k]]);
        assert_eq!(char_poly(&a).unwrap(), IntPoly::from_i64(&[7, -6, 1]));
    }

    #[test]
    fn nilpotent_shift() {
        let a = IntMatrix::from_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(char_poly(&a).unwrap(), IntPoly::from_i64(&[0, 0, 0, 1]));
        assert_eq!(det_one_minus_tA(&a).unwrap(), IntPoly::one());
    }

    #[test]
    fn displayed_diagonal_example() {
        // diag(3,3,5,0): det(I-tA) = (1-3t)^2 (1-5t) = 1 - 11t + 39t^2 - 45t^3.
        let a = IntMatrix::diagonal(&[3.into(), 3.into(), 5.into(), 0.into()]);
        assert_eq!(
            det_one_minus_tA(&a).unwrap(),
            IntPoly::from_i64(&[1, -11, 39, -45])
        );
    }

    #[test]
    fn agrees_with_cofactor_oracle_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.gen_range(1..=5);
            let a = IntMatrix::from_fn(n, n, |_, _| Int::from(rng.gen_range(-4i64..=4)));
            assert_eq!(char_poly(&a).unwrap(), char_poly_cofactor(&a));
        }
    }

    #[test]
    fn empty_matrix() {
        let a = IntMatrix::zero(0, 0);
        assert_eq!(char_poly(&a).unwrap(), IntPoly::one());
        assert_eq!(det_one_minus_tA(&a).unwrap(), IntPoly::one());
    }
}

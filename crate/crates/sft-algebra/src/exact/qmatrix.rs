use super::{Int, IntMatrix};
use crate::{Error, Result};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Exact rational number.
pub type Rat = BigRational;

/// A small exact-rational matrix. Used where the integers are not
/// enough: rational shift-equivalence witnesses, eigenvector solves in
/// the 2x2 triangular reduction, and rational-mode spectra.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl QMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        QMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rat::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rat::one() } else { Rat::zero() })
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| {
            Rat::from_integer(m.get(i, j).clone())
        })
    }

    /// Integer matrix divided by a common denominator.
    pub fn from_int_scaled(m: &IntMatrix, denom: &Int) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| {
            Rat::new(m.get(i, j).clone(), denom.clone())
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    /// Exact integer image; requires [`Self::is_integral`].
    pub fn to_int(&self) -> Result<IntMatrix> {
        if !self.is_integral() {
            return Err(Error::Precondition(
                "matrix has non-integral entries".into(),
            ));
        }
        Ok(IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).to_integer()
        }))
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "rational matrix product",
                lhs: (self.rows, self.cols),
                rhs: (rhs.rows, rhs.cols),
            });
        }
        let mut out = QMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k).is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let x = out.get(i, j) + self.get(i, k) * rhs.get(k, j);
                    out.set(i, j, x);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: usize) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Inverse by Gauss-Jordan elimination over the rationals.
    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = QMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| Error::Precondition("matrix is singular".into()))?;
            if pivot != col {
                for j in 0..n {
                    let (x, y) = (a.get(col, j).clone(), a.get(pivot, j).clone());
                    a.set(col, j, y);
                    a.set(pivot, j, x);
                    let (x, y) = (inv.get(col, j).clone(), inv.get(pivot, j).clone());
                    inv.set(col, j, y);
                    inv.set(pivot, j, x);
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                let x = a.get(col, j) / &p;
                a.set(col, j, x);
                let x = inv.get(col, j) / &p;
                inv.set(col, j, x);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let x = a.get(r, j) - &factor * a.get(col, j);
                    a.set(r, j, x);
                    let x = inv.get(r, j) - &factor * inv.get(col, j);
                    inv.set(r, j, x);
                }
            }
        }
        Ok(inv)
    }

    /// A basis of the rational kernel, by elimination. Each vector is
    /// scaled to primitive integer form (gcd of entries 1, first
    /// nonzero entry positive).
    pub fn kernel_basis(&self) -> Vec<Vec<Int>> {
        let mut a = self.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    let (x, y) = (a.get(r, j).clone(), a.get(p, j).clone());
                    a.set(r, j, y);
                    a.set(p, j, x);
                }
            }
            let pv = a.get(r, c).clone();
            for j in 0..cols {
                let x = a.get(r, j) / &pv;
                a.set(r, j, x);
            }
            for i in 0..rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..cols {
                    let x = a.get(i, j) - &f * a.get(r, j);
                    a.set(i, j, x);
                }
            }
            pivot_of_col[c] = Some(r);
            r += 1;
            if r == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![Rat::zero(); cols];
            v[free] = Rat::one();
            for (c, pr) in pivot_of_col.iter().enumerate() {
                if let Some(pr) = pr {
                    v[c] = -a.get(*pr, free).clone();
                }
            }
            basis.push(primitive_integer_vector(&v));
        }
        basis
    }
}

/// Scale a rational vector to a primitive integer vector with positive
/// leading nonzero entry.
pub fn primitive_integer_vector(v: &[Rat]) -> Vec<Int> {
    use num_integer::Integer;
    let mut denom_lcm = Int::one();
    for x in v {
        denom_lcm = denom_lcm.lcm(x.denom());
    }
    let mut ints: Vec<Int> = v
        .iter()
        .map(|x| (x * Rat::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let mut g = Int::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if !g.is_zero() && !g.is_one() {
        for x in &mut ints {
            *x /= &g;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in &mut ints {
                *x = -&*x;
            }
        }
    }
    ints
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix({}x{}) [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_int(&IntMatrix::from_rows(&[&[2, 1], &[1, 1]]));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
    }

    #[test]
    fn singular_inverse_fails() {
        let m = QMatrix::from_int(&IntMatrix::from_rows(&[&[1, 1], &[1, 1]]));
        assert!(m.inverse().is_err());
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        // [[-7, 7], [248, -248]] has kernel spanned by (1, 1).
        let m = QMatrix::from_int(&IntMatrix::from_rows(&[&[-7, 7], &[248, -248]]));
        let basis = m.kernel_basis();
        assert_eq!(basis, vec![vec![Int::one(), Int::one()]]);
    }

    #[test]
    fn primitive_vector_normalization() {
        let v = vec![
            Rat::new((-4).into(), 6.into()),
            Rat::new(2.into(), 6.into()),
        ];
        assert_eq!(
            primitive_integer_vector(&v),
            vec![Int::from(2), Int::from(-1)]
        );
    }
}

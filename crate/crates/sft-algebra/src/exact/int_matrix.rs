use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Arbitrary-precision integer, the entry type used throughout.
pub type Int = BigInt;

/// A rectangular matrix of arbitrary-precision integers, stored
/// row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Int>,
}

impl IntMatrix {
    /// Build from an explicit row-major entry vector.
    ///
    /// Panics if `entries.len() != rows * cols`; construction from raw
    /// data is a programming-error boundary, not an input boundary.
    pub fn new(rows: usize, cols: usize, entries: Vec<Int>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Convenience constructor from machine integers.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        Self::from_fn(r, c, |i, j| Int::from(rows[i][j]))
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Int::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Int::one() } else { Int::zero() })
    }

    pub fn diagonal(diag: &[Int]) -> Self {
        let n = diag.len();
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { diag[i].clone() } else { Int::zero() },
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length, or an error for non-square input.
    pub fn square_size(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Int] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.entries.iter().all(|e| e.is_positive())
    }

    /// True when every entry is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero() || e.is_one())
    }

    pub fn transpose(&self) -> IntMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn trace(&self) -> Result<Int> {
        let n = self.square_size()?;
        let mut t = Int::zero();
        for i in 0..n {
            t += self.get(i, i);
        }
        Ok(t)
    }

    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "matrix product",
                lhs: (self.rows, self.cols),
                rhs: (rhs.rows, rhs.cols),
            });
        }
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let add = a * rhs.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix sum",
                lhs: (self.rows, self.cols),
                rhs: (rhs.rows, rhs.cols),
            });
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + rhs.get(i, j)
        }))
    }

    pub fn checked_sub(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                context: "matrix difference",
                lhs: (self.rows, self.cols),
                rhs: (rhs.rows, rhs.cols),
            });
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - rhs.get(i, j)
        }))
    }

    pub fn scale(&self, c: &Int) -> IntMatrix {
        Self::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    /// Exact n-th power of a square matrix (`pow(0)` is the identity).
    pub fn pow(&self, n: usize) -> Result<IntMatrix> {
        let size = self.square_size()?;
        let mut acc = IntMatrix::identity(size);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `I - self` for square matrices.
    pub fn i_minus(&self) -> Result<IntMatrix> {
        let n = self.square_size()?;
        IntMatrix::identity(n).checked_sub(self)
    }

    /// Principal submatrix keeping the given (strictly increasing) indices.
    pub fn principal_submatrix(&self, keep: &[usize]) -> IntMatrix {
        Self::from_fn(keep.len(), keep.len(), |i, j| {
            self.get(keep[i], keep[j]).clone()
        })
    }

    pub fn submatrix(&self, row_keep: &[usize], col_keep: &[usize]) -> IntMatrix {
        Self::from_fn(row_keep.len(), col_keep.len(), |i, j| {
            self.get(row_keep[i], col_keep[j]).clone()
        })
    }

    /// Stack four blocks `[[a, b], [c, d]]` with matching edge sizes.
    pub fn from_blocks(a: &IntMatrix, b: &IntMatrix, c: &IntMatrix, d: &IntMatrix) -> IntMatrix {
        assert_eq!(a.rows, b.rows, "top blocks must share row count");
        assert_eq!(c.rows, d.rows, "bottom blocks must share row count");
        assert_eq!(a.cols, c.cols, "left blocks must share column count");
        assert_eq!(b.cols, d.cols, "right blocks must share column count");
        Self::from_fn(a.rows + c.rows, a.cols + b.cols, |i, j| {
            match (i < a.rows, j < a.cols) {
                (true, true) => a.get(i, j).clone(),
                (true, false) => b.get(i, j - a.cols).clone(),
                (false, true) => c.get(i - a.rows, j).clone(),
                (false, false) => d.get(i - a.rows, j - a.cols).clone(),
            }
        })
    }

    /// Permute rows and columns simultaneously: entry `(i,j)` of the
    /// result is `self[perm[i]][perm[j]]` (i.e. `P^-1 A P` for the
    /// permutation matrix sending basis vector `i` to `perm[i]`).
    pub fn permute_symmetric(&self, perm: &[usize]) -> IntMatrix {
        assert_eq!(perm.len(), self.rows);
        Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(perm[i], perm[j]).clone()
        })
    }

    /// Exact determinant by cofactor expansion. Intended for the small
    /// matrices that appear in unimodularity checks; O(n!) in general.
    pub fn det_cofactor(&self) -> Result<Int> {
        let n = self.square_size()?;
        if n == 0 {
            return Ok(Int::one());
        }
        if n == 1 {
            return Ok(self.get(0, 0).clone());
        }
        let mut det = Int::zero();
        let rest: Vec<usize> = (1..n).collect();
        for (j, sign) in (0..n).zip([1i64, -1].iter().cycle()) {
            if self.get(0, j).is_zero() {
                continue;
            }
            let keep_cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = self.submatrix(&rest, &keep_cols);
            det += Int::from(*sign) * self.get(0, j) * minor.det_cofactor()?;
        }
        Ok(det)
    }

    /// True when `|det| = 1`.
    pub fn is_unimodular(&self) -> Result<bool> {
        Ok(self.det_cofactor()?.abs().is_one())
    }

    /// Boolean support pattern: `true` where the entry is nonzero.
    pub fn support(&self) -> Vec<Vec<bool>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| !self.get(i, j).is_zero()).collect())
            .collect()
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_add(rhs)
            .expect("matrix sum dimension mismatch")
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_sub(rhs)
            .expect("matrix difference dimension mismatch")
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs)
            .expect("matrix product dimension mismatch")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{}) {}", self.rows, self.cols, self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
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

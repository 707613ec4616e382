//! Polynomial matrix presentations of SFTs.
//!
//! A square matrix `A` over `t Z+[t]` (or, slightly more generally, in
//! the class NZC: over `Z+[t]` with nilpotent constant term) presents
//! an SFT via the graph expansion `A#`. Multiplying `I - A` by
//! elementary matrices inside the class realizes topological
//! conjugacies; adding the change-positive-powers relation realizes
//! flow equivalence, with `cok(I - A(1))` the Bowen-Franks group.

mod moves;
mod psse;
mod sharp;

pub use moves::{
    change_power, positive_move, stabilize, unstabilize, ElementaryMoveSpec, Move, MoveLog,
    MoveSide, PresentationClass,
};
pub use psse::{elementary_equivalence_from_sse, psse_chain, ElementaryEquivalence};
pub use sharp::{sharp_expand, verify_sharp, SharpExpansion, SharpVertex};

use crate::exact::{cokernel, FGAbelianGroup, Int, IntMatrix, IntPoly};
use crate::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;

/// A square matrix with integer polynomial entries.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    entries: Vec<IntPoly>,
}

impl PolyMatrix {
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> IntPoly) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { size, entries }
    }

    pub fn from_entries(size: usize, entries: Vec<IntPoly>) -> Self {
        assert_eq!(entries.len(), size * size, "entry count must be size^2");
        PolyMatrix { size, entries }
    }

    pub fn zero(size: usize) -> Self {
        Self::from_fn(size, |_, _| IntPoly::zero())
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, |i, j| {
            if i == j {
                IntPoly::one()
            } else {
                IntPoly::zero()
            }
        })
    }

    /// `t * M` for an integer matrix `M`.
    pub fn scalar_t_times(m: &IntMatrix) -> Self {
        assert!(m.is_square());
        Self::from_fn(m.rows(), |i, j| IntPoly::monomial(m.get(i, j).clone(), 1))
    }

    /// The elementary matrix `E_{ij}(p)`.
    pub fn elementary(size: usize, i: usize, j: usize, p: IntPoly) -> Self {
        assert!(
            i != j && i < size && j < size,
            "elementary matrix needs distinct indices"
        );
        let mut e = Self::identity(size);
        e.set(i, j, p);
        e
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPoly {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: IntPoly) {
        self.entries[i * self.size + j] = p;
    }

    pub fn entries(&self) -> &[IntPoly] {
        &self.entries
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> Result<PolyMatrix> {
        if self.size != rhs.size {
            return Err(Error::DimensionMismatch {
                context: "polynomial matrix product",
                lhs: (self.size, self.size),
                rhs: (rhs.size, rhs.size),
            });
        }
        let n = self.size;
        Ok(Self::from_fn(n, |i, j| {
            let mut acc = IntPoly::zero();
            for k in 0..n {
                if self.get(i, k).is_zero() || rhs.get(k, j).is_zero() {
                    continue;
                }
                acc = &acc + &(self.get(i, k) * rhs.get(k, j));
            }
            acc
        }))
    }

    /// `I - self`.
    pub fn i_minus(&self) -> PolyMatrix {
        let mut out = self.clone();
        for i in 0..self.size {
            for j in 0..self.size {
                let e = if i == j {
                    &IntPoly::one() - self.get(i, j)
                } else {
                    -self.get(i, j)
                };
                out.set(i, j, e);
            }
        }
        out
    }

    /// Direct sum with the `k x k` identity.
    pub fn directsum_identity(&self, k: usize) -> PolyMatrix {
        let n = self.size;
        Self::from_fn(n + k, |i, j| {
            if i < n && j < n {
                self.get(i, j).clone()
            } else if i == j {
                IntPoly::one()
            } else {
                IntPoly::zero()
            }
        })
    }

    /// Constant-term matrix `A(0)`.
    pub fn constant_term(&self) -> IntMatrix {
        IntMatrix::from_fn(self.size, self.size, |i, j| self.get(i, j).coeff(0))
    }

    /// Entrywise evaluation at `t = 1`.
    pub fn evaluate_at_one(&self) -> IntMatrix {
        IntMatrix::from_fn(self.size, self.size, |i, j| self.get(i, j).eval_at_one())
    }

    /// True when every coefficient of every entry is nonnegative.
    pub fn is_over_zplus_t(&self) -> bool {
        self.entries.iter().all(|p| p.is_nonnegative())
    }

    /// True when additionally every constant term vanishes.
    pub fn is_over_t_zplus_t(&self) -> bool {
        self.is_over_zplus_t() && self.entries.iter().all(|p| p.coeff(0).is_zero())
    }

    /// Exact determinant over Z[t] by cofactor expansion; exponential,
    /// fine at presentation sizes.
    pub fn det(&self) -> IntPoly {
        fn det_rec(rows: &[usize], cols: &[usize], m: &PolyMatrix) -> IntPoly {
            if rows.is_empty() {
                return IntPoly::one();
            }
            let r = rows[0];
            let rest = &rows[1..];
            let mut acc = IntPoly::zero();
            for (pos, &c) in cols.iter().enumerate() {
                let e = m.get(r, c);
                if e.is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = det_rec(rest, &sub_cols, m);
                let term = &(e * &minor);
                acc = if pos % 2 == 0 {
                    &acc + term
                } else {
                    &acc - term
                };
            }
            acc
        }
        let idx: Vec<usize> = (0..self.size).collect();
        det_rec(&idx, &idx, self)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix({}) {self}", self.size)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.size {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.size {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// NZC membership: entries over `Z+[t]` and nilpotent constant-term
/// matrix, cross-checked against `det(I-A)` having constant term 1.
pub fn is_nzc(a: &PolyMatrix) -> Result<bool> {
    for i in 0..a.size() {
        for j in 0..a.size() {
            if !a.get(i, j).is_nonnegative() {
                return Err(Error::NotOverZPlusT { row: i, col: j });
            }
        }
    }
    let nilpotent = crate::equivalence::nilpotency_index(&a.constant_term()).is_some();
    let det_const = a.i_minus().det().coeff(0);
    debug_assert_eq!(
        nilpotent,
        det_const.is_one(),
        "nilpotency of A(0) must match det(I-A) having constant term 1"
    );
    Ok(nilpotent && det_const.is_one())
}

/// Flow-equivalence invariants of a presentation `A` in NZC: the
/// Bowen-Franks group `cok(I - A(1))` and `det(I - A(1))`.
pub fn flow_invariants(a: &PolyMatrix) -> Result<(FGAbelianGroup, Int)> {
    let at_one = a.evaluate_at_one();
    let i_minus = at_one.i_minus()?;
    let group = cokernel(&i_minus)?;
    let det = i_minus.det_cofactor()?;
    Ok((group, det))
}

#[cfg(test)]
pub(crate) fn pm(size: usize, entries: &[&[i64]]) -> PolyMatrix {
    // Each entry is an ascending coefficient list.
    assert_eq!(entries.len(), size * size);
    PolyMatrix::from_entries(size, entries.iter().map(|c| IntPoly::from_i64(c)).collect())
}

use super::Int;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A dense univariate polynomial over the integers.
///
/// Coefficients are stored in ascending degree order: `coeffs[i]` is
/// the coefficient of `t^i`. The representation is canonical: the
/// vector is empty for the zero polynomial and otherwise ends in a
/// nonzero coefficient, so equality is plain list equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<Int>,
}

impl IntPoly {
    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly {
            coeffs: vec![Int::one()],
        }
    }

    pub fn constant(c: Int) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monomial `c * t^deg`.
    pub fn monomial(c: Int, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Int::zero(); deg + 1];
        coeffs[deg] = c;
        IntPoly { coeffs }
    }

    /// Construct from ascending coefficients, stripping trailing zeros.
    pub fn from_coeffs(coeffs: Vec<Int>) -> Self {
        let mut p = IntPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Int {
        self.coeffs.get(i).cloned().unwrap_or_else(Int::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn eval(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_at_one(&self) -> Int {
        self.coeffs.iter().sum()
    }

    /// Substitute `t -> t^p`.
    pub fn substitute_power(&self, p: usize) -> IntPoly {
        assert!(p >= 1, "substitution power must be at least 1");
        let mut coeffs = vec![Int::zero(); self.coeffs.len().saturating_sub(1) * p + 1];
        if self.coeffs.is_empty() {
            return IntPoly::zero();
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * p] = c.clone();
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Reverse the coefficients relative to a stated degree:
    /// `t^n * p(1/t)` for `n >= deg(p)`.
    pub fn reversal(&self, n: usize) -> IntPoly {
        let mut coeffs = vec![Int::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= n, "reversal degree smaller than polynomial degree");
            coeffs[n - i] = c.clone();
        }
        IntPoly::from_coeffs(coeffs)
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for IntPoly {
    /// Human-readable form, e.g. `1-11t+39t^2-45t^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let a = c.abs();
            if i == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}")?;
                }
                if i == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{i}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_strips_trailing_zeros() {
        let p = IntPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p, IntPoly::from_i64(&[1, 2]));
        assert!(IntPoly::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let p = IntPoly::from_i64(&[1, -2]); // 1 - 2t
        let q = IntPoly::from_i64(&[1, 1]); // 1 + t
        assert_eq!(&p * &q, IntPoly::from_i64(&[1, -1, -2]));
        assert_eq!(&p + &q, IntPoly::from_i64(&[2, -1]));
        assert_eq!(&p - &p, IntPoly::zero());
        assert_eq!(p.eval(&Int::from(3)), Int::from(-5));
    }

    #[test]
    fn reversal_and_substitution() {
        // char poly of (2) on 1x1: t - 2, reversed at degree 1: 1 - 2t.
        let chi = IntPoly::from_i64(&[-2, 1]);
        assert_eq!(chi.reversal(1), IntPoly::from_i64(&[1, -2]));
        let p = IntPoly::from_i64(&[1, -2]);
        assert_eq!(p.substitute_power(3), IntPoly::from_i64(&[1, 0, 0, -2]));
    }

    #[test]
    fn display_matches_paper_style() {
        let p = IntPoly::from_i64(&[1, -11, 39, -45]);
        assert_eq!(p.to_string(), "1-11t+39t^2-45t^3");
        assert_eq!(IntPoly::from_i64(&[0, 1]).to_string(), "t");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }
}

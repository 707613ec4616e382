use super::{det_one_minus_tA, traces_from_poly, IntMatrix, IntPoly};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A truncated power series with exact rational coefficients.
///
/// All arithmetic is exact modulo `t^(order+1)`; `coeffs` always holds
/// exactly `order + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn new(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        RationalSeries { order, coeffs }
    }

    pub fn from_poly(p: &IntPoly, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|i| BigRational::from_integer(p.coeff(i)))
            .collect();
        RationalSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn mul(&self, rhs: &RationalSeries) -> RationalSeries {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![BigRational::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=order - i {
                if self.coeffs[i].is_zero() {
                    break;
                }
                coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        RationalSeries { order, coeffs }
    }

    /// Multiplicative inverse; requires constant term 1.
    pub fn reciprocal(&self) -> Result<RationalSeries> {
        if !self.coeffs[0].is_one() {
            return Err(Error::MalformedInput(
                "series reciprocal requires constant term 1".into(),
            ));
        }
        let mut inv = vec![BigRational::zero(); self.order + 1];
        inv[0] = BigRational::one();
        for n in 1..=self.order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &inv[n - k];
            }
            inv[n] = -acc;
        }
        Ok(RationalSeries {
            order: self.order,
            coeffs: inv,
        })
    }

    /// Exponential of a series with zero constant term, via the
    /// derivative recurrence `E' = f' E`:
    /// `n e_n = sum_{k=1..n} k f_k e_{n-k}`.
    pub fn exp(&self) -> Result<RationalSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::MalformedInput(
                "series exp requires zero constant term".into(),
            ));
        }
        let mut e = vec![BigRational::zero(); self.order + 1];
        e[0] = BigRational::one();
        for n in 1..=self.order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += BigRational::from_integer(BigInt::from(k)) * &self.coeffs[k] * &e[n - k];
            }
            e[n] = acc / BigRational::from_integer(BigInt::from(n));
        }
        Ok(RationalSeries {
            order: self.order,
            coeffs: e,
        })
    }
}

/// The two sides of the zeta identity
/// `1/det(I-tA) = exp(sum_n trace(A^n) t^n / n)`, each truncated to the
/// requested order. The proposition says they agree; [`zeta_series`]
/// computes both so the identity can be checked exactly.
#[derive(Debug, Clone)]
pub struct ZetaSeries {
    /// `1/det(I-tA)` mod `t^(order+1)`.
    pub reciprocal: RationalSeries,
    /// `exp(sum trace(A^n) t^n / n)` mod `t^(order+1)`.
    pub exp_side: RationalSeries,
}

impl ZetaSeries {
    pub fn identity_holds(&self) -> bool {
        self.reciprocal == self.exp_side
    }
}

/// Zeta function of the edge shift of `A`, truncated to order `n`.
pub fn zeta_series(a: &IntMatrix, order: usize) -> Result<ZetaSeries> {
    let p = det_one_minus_tA(a)?;
    let reciprocal = RationalSeries::from_poly(&p, order).reciprocal()?;
    let taus = traces_from_poly(&p, order)?;
    let mut log_coeffs = vec![BigRational::zero(); order + 1];
    for (k, tau) in taus.iter().enumerate() {
        let n = k + 1;
        log_coeffs[n] = BigRational::new(tau.clone(), BigInt::from(n));
    }
    let exp_side = RationalSeries::new(order, log_coeffs).exp()?;
    Ok(ZetaSeries {
        reciprocal,
        exp_side,
    })
}

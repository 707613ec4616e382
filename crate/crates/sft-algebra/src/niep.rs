//! Spectral-realization toolkit: the necessary conditions for a
//! candidate nonzero spectrum to come from a primitive nonnegative
//! matrix (Perron, coefficients, trace and net-trace conditions), the
//! JLL trace inequalities and the minimum-size bounds they force,
//! Suleimanova companion realization, period-p inflation, eventual
//! positivity, and the Laffey gap/floor quantities.
//!
//! Candidate spectra are carried exactly as monic integer polynomials;
//! a rational spectrum is scaled by the lcm of its denominators (the
//! conditions checked here are invariant under positive scaling, which
//! is tracked in `scale`). Root positions are the one place floating
//! point appears, and only behind a three-valued verdict with an
//! explicit tolerance; whenever the dominant root is an exact integer
//! root the verdict says so.

use crate::exact::{
    char_poly, det_one_minus_tA, mobius, traces_from_poly, Int, IntMatrix, IntPoly, Rat,
};
use crate::structure::NonnegMatrix;
use crate::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A candidate nonzero spectrum, as the monic polynomial
/// `prod (t - scale * lambda_i)` with integer coefficients and nonzero
/// constant term. `scale >= 1`; the spectrum itself is the root
/// multiset divided by `scale`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSpectrum {
    poly: IntPoly,
    scale: Int,
}

impl CandidateSpectrum {
    /// From a monic integer polynomial with nonzero constant term.
    pub fn from_int_poly(poly: IntPoly) -> Result<Self> {
        if !poly.is_monic() {
            return Err(Error::MalformedInput(
                "candidate spectrum polynomial must be monic".into(),
            ));
        }
        if poly.coeff(0).is_zero() {
            return Err(Error::MalformedInput(
                "candidate spectrum must have all roots nonzero (p(0) != 0)".into(),
            ));
        }
        Ok(CandidateSpectrum {
            poly,
            scale: Int::one(),
        })
    }

    /// From integer roots: expand `prod (t - lambda_i)`.
    pub fn from_integer_roots(roots: &[i64]) -> Result<Self> {
        let mut p = IntPoly::one();
        for &r in roots {
            p = &p * &IntPoly::from_coeffs(vec![Int::from(-r), Int::one()]);
        }
        Self::from_int_poly(p)
    }

    /// From a monic polynomial with rational coefficients (ascending,
    /// including the leading 1): denominators are cleared by scaling
    /// the roots by their lcm `c`, i.e. the stored polynomial is
    /// `c^k p(t/c)`.
    pub fn from_rational_poly(coeffs: &[Rat]) -> Result<Self> {
        let Some(last) = coeffs.last() else {
            return Err(Error::MalformedInput("empty polynomial".into()));
        };
        if !last.is_one() {
            return Err(Error::MalformedInput(
                "rational spectrum polynomial must be monic".into(),
            ));
        }
        let k = coeffs.len() - 1;
        let mut c = Int::one();
        for a in coeffs {
            c = c.lcm(a.denom());
        }
        let scaled: Vec<Int> = coeffs
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let factor = num_traits::pow::pow(c.clone(), k - j);
                let v = a * Rat::from_integer(factor);
                debug_assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        let spectrum = CandidateSpectrum {
            poly: IntPoly::from_coeffs(scaled),
            scale: c,
        };
        if spectrum.poly.coeff(0).is_zero() {
            return Err(Error::MalformedInput(
                "candidate spectrum must have all roots nonzero (p(0) != 0)".into(),
            ));
        }
        Ok(spectrum)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn scale(&self) -> &Int {
        &self.scale
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    /// Power sums of the scaled (integer) spectrum, exactly.
    pub fn scaled_power_sums(&self, n: usize) -> Vec<Int> {
        let k = self.degree();
        let reversed = self.poly.reversal(k);
        traces_from_poly(&reversed, n).expect("monic reversal has constant term 1")
    }

    /// Power sums of the spectrum itself, as exact rationals.
    pub fn power_sums(&self, n: usize) -> Vec<Rat> {
        self.scaled_power_sums(n)
            .into_iter()
            .enumerate()
            .map(|(i, s)| Rat::new(s, num_traits::pow::pow(self.scale.clone(), i + 1)))
            .collect()
    }

    /// Numeric roots of the spectrum (scaled back down).
    pub fn approximate_roots(&self) -> Vec<Complex64> {
        let c = self.scale.to_f64().expect("scale fits in f64");
        durand_kerner(&self.poly)
            .into_iter()
            .map(|z| z / c)
            .collect()
    }

    /// The exact integer roots of the scaled polynomial, with
    /// multiplicity, plus the (integer-rootless) remaining cofactor.
    pub fn integer_roots_of_scaled(&self) -> (Vec<Int>, IntPoly) {
        let mut rest = self.poly.clone();
        let mut roots = Vec::new();
        loop {
            let Some(c0) = rest.coeffs().first().cloned() else {
                break;
            };
            if c0.is_zero() || rest.degree().unwrap_or(0) == 0 {
                break;
            }
            let mut found = None;
            for d in divisors(&c0.abs()) {
                for cand in [d.clone(), -d] {
                    if rest.eval(&cand).is_zero() {
                        found = Some(cand);
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
            }
            match found {
                Some(r) => {
                    rest = deflate(&rest, &r);
                    roots.push(r);
                }
                None => break,
            }
        }
        (roots, rest)
    }
}

fn divisors(n: &Int) -> Vec<Int> {
    let mut out = Vec::new();
    let mut d = Int::one();
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

/// Divide a monic polynomial by `(t - r)` exactly (synthetic
/// division); `r` must be a root.
fn deflate(p: &IntPoly, r: &Int) -> IntPoly {
    let k = p.degree().expect("nonzero polynomial");
    let mut out = vec![Int::zero(); k];
    let mut carry = Int::zero();
    for i in (0..k).rev() {
        carry = p.coeff(i + 1) + r * &carry;
        out[i] = carry.clone();
    }
    debug_assert!((p.coeff(0) + r * carry).is_zero(), "r must be a root");
    IntPoly::from_coeffs(out)
}

/// Durand-Kerner simultaneous root iteration on a monic polynomial.
fn durand_kerner(p: &IntPoly) -> Vec<Complex64> {
    let k = p.degree().unwrap_or(0);
    if k == 0 {
        return Vec::new();
    }
    let coeffs: Vec<f64> = (0..=k)
        .map(|i| p.coeff(i).to_f64().unwrap_or(0.0))
        .collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..k).map(|i| seed.powu(i as u32 + 1)).collect();
    for _ in 0..400 {
        let mut delta: f64 = 0.0;
        for i in 0..k {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..k {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-13 {
            break;
        }
    }
    roots
}

/// Three-valued Perron verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum PerronVerdict {
    /// A simple positive real root strictly dominates; `exact` is set
    /// when that root is an exact integer root of the scaled
    /// polynomial (so its value is certified and only the gap is
    /// numeric).
    Pass {
        exact: bool,
    },
    Fail,
    /// Dominance could not be decided at the stated tolerance.
    NumericUncertain,
}

/// Check the Perron condition of a candidate spectrum at a numeric
/// tolerance.
pub fn check_perron(spec: &CandidateSpectrum, tolerance: f64) -> PerronVerdict {
    let roots = durand_kerner(&spec.poly);
    if roots.is_empty() {
        return PerronVerdict::Fail;
    }
    // Candidate dominant roots: near-real, positive.
    let mut best: Option<usize> = None;
    for (i, z) in roots.iter().enumerate() {
        if z.im.abs() <= tolerance && z.re > tolerance {
            if best.is_none_or(|b| roots[b].re < z.re) {
                best = Some(i);
            }
        }
    }
    let Some(dominant) = best else {
        return PerronVerdict::Fail;
    };
    let dom = roots[dominant].re;
    let mut max_other: f64 = 0.0;
    for (i, z) in roots.iter().enumerate() {
        if i != dominant {
            max_other = max_other.max(z.norm());
        }
    }
    if dom <= max_other + tolerance {
        return if dom < max_other - tolerance {
            PerronVerdict::Fail
        } else {
            PerronVerdict::NumericUncertain
        };
    }
    // Simplicity: no other root within tolerance of the dominant one.
    for (i, z) in roots.iter().enumerate() {
        if i != dominant && (z - roots[dominant]).norm() <= tolerance {
            return PerronVerdict::NumericUncertain;
        }
    }
    let (int_roots, _) = spec.integer_roots_of_scaled();
    let exact = int_roots
        .iter()
        .any(|r| r.is_positive() && (r.to_f64().unwrap_or(f64::NAN) - dom).abs() <= tolerance);
    PerronVerdict::Pass { exact }
}

/// Which ring the trace conditions are checked over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckRing {
    /// Integer matrices: Mobius net traces must be nonnegative.
    Z,
    /// A dense subring of the reals: plain trace nonnegativity plus
    /// persistence of positivity along powers.
    Dense,
}

/// First failure of the dense-ring trace conditions.
#[derive(Debug, Clone, PartialEq)]
pub enum DenseTraceFailure {
    /// Condition (i): `s_n < 0`.
    Negative { n: usize, value: Rat },
    /// Condition (ii): `s_n > 0` but `s_{nk}` is not.
    PowerVanished { n: usize, nk: usize },
}

/// The outcome of [`check_conditions`]; every "pass" is certified only
/// up to the stated horizon.
#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub ring: CheckRing,
    pub horizon: usize,
    pub perron: PerronVerdict,
    /// Integrality of the defining polynomial; true by construction
    /// for integer-mode spectra and reported for the record.
    pub coefficients_ok: bool,
    /// First `n <= horizon` with net trace < 0 (ring Z only).
    pub net_trace_failure: Option<(usize, Int)>,
    /// First dense-mode failure (dense ring only).
    pub dense_trace_failure: Option<DenseTraceFailure>,
    /// Lower bound on the size of any nonnegative realization, from
    /// the JLL inequalities.
    pub jll_min_size: usize,
}

impl SpectrumReport {
    pub fn passes(&self) -> bool {
        !matches!(self.perron, PerronVerdict::Fail)
            && self.coefficients_ok
            && self.net_trace_failure.is_none()
            && self.dense_trace_failure.is_none()
    }
}

/// Net trace of a power-sum sequence: `sum_{d | n} mu(n/d) s_d`.
fn net_trace_rational(sums: &[Rat], n: usize) -> Rat {
    let mut acc = Rat::zero();
    for d in 1..=n {
        if n % d == 0 {
            let mu = mobius((n / d) as u64).expect("positive argument");
            acc += Rat::from_integer(Int::from(mu)) * &sums[d - 1];
        }
    }
    acc
}

/// Check the necessary realization conditions of a candidate spectrum
/// up to the horizon.
pub fn check_conditions(
    spec: &CandidateSpectrum,
    ring: CheckRing,
    horizon: usize,
) -> Result<SpectrumReport> {
    if horizon == 0 {
        return Err(Error::Precondition("horizon must be >= 1".into()));
    }
    if ring == CheckRing::Z && !spec.scale.is_one() {
        return Err(Error::Precondition(
            "ring-Z conditions apply to integer spectra; this one carries a scale".into(),
        ));
    }
    let sums = spec.power_sums(horizon);
    let mut net_trace_failure = None;
    let mut dense_trace_failure = None;
    match ring {
        CheckRing::Z => {
            for n in 1..=horizon {
                let nt = net_trace_rational(&sums, n);
                if nt.is_negative() {
                    net_trace_failure = Some((n, nt.to_integer()));
                    break;
                }
            }
        }
        CheckRing::Dense => {
            'dense: for n in 1..=horizon {
                if sums[n - 1].is_negative() {
                    dense_trace_failure = Some(DenseTraceFailure::Negative {
                        n,
                        value: sums[n - 1].clone(),
                    });
                    break 'dense;
                }
                if sums[n - 1].is_positive() {
                    let mut nk = 2 * n;
                    while nk <= horizon {
                        if !sums[nk - 1].is_positive() {
                            dense_trace_failure = Some(DenseTraceFailure::PowerVanished { n, nk });
                            break 'dense;
                        }
                        nk += n;
                    }
                }
            }
        }
    }
    Ok(SpectrumReport {
        ring,
        horizon,
        perron: check_perron(spec, 1e-6),
        coefficients_ok: true,
        net_trace_failure,
        dense_trace_failure,
        jll_min_size: jll_min_size_bound(spec, horizon.min(16)),
    })
}

/// Verify the JLL inequalities
/// `n^{k-1} trace(A^{mk}) >= trace(A^m)^k` in exact integers for all
/// `m <= max_m`, `k <= max_k`; returns the first violating pair
/// (never, for genuinely nonnegative input).
pub fn jll_check(a: &NonnegMatrix, max_m: usize, max_k: usize) -> Result<Option<(usize, usize)>> {
    let n = Int::from(a.size() as u64);
    let mut traces = Vec::new();
    let mut power = IntMatrix::identity(a.size());
    for _ in 0..max_m * max_k {
        power = &power * a.inner();
        traces.push(power.trace()?);
    }
    for m in 1..=max_m {
        for k in 1..=max_k {
            let lhs = num_traits::pow::pow(n.clone(), k - 1) * &traces[m * k - 1];
            let rhs = num_traits::pow::pow(traces[m - 1].clone(), k);
            if lhs < rhs {
                return Ok(Some((m, k)));
            }
        }
    }
    Ok(None)
}

/// Lower bound on the size of a nonnegative matrix with the candidate
/// nonzero spectrum, from the JLL inequality at `m = 1`: the smallest
/// `n` with `n^{k-1} s_k >= s_1^k`, maximized over `2 <= k <= max_k`
/// with `s_k > 0`. Returns 1 (no information) when `s_1 <= 0`.
pub fn jll_min_size_bound(spec: &CandidateSpectrum, max_k: usize) -> usize {
    let sums = spec.scaled_power_sums(max_k.max(1));
    if !sums[0].is_positive() {
        return 1;
    }
    let mut best = 1usize;
    for k in 2..=max_k {
        let sk = &sums[k - 1];
        if !sk.is_positive() {
            continue;
        }
        let s1k = num_traits::pow::pow(sums[0].clone(), k);
        // Smallest n with n^{k-1} sk >= s1^k.
        let ratio: Int = s1k.div_ceil(sk);
        let mut n = ratio.nth_root((k - 1) as u32);
        while num_traits::pow::pow(n.clone(), k - 1) * sk < s1k {
            n += 1;
        }
        if let Ok(n_usize) = usize::try_from(&n) {
            best = best.max(n_usize);
        }
    }
    best
}

/// Realize a Suleimanova spectrum (one positive value, all others
/// negative, positive sum) by the companion matrix of
/// `prod (t - lambda_i)`, which is nonnegative under these hypotheses.
/// The construction is verified: entries nonnegative and
/// characteristic polynomial exactly the expanded product.
pub fn suleimanova_realize(lams: &[Int]) -> Result<NonnegMatrix> {
    if lams.is_empty() {
        return Err(Error::Precondition("spectrum must be nonempty".into()));
    }
    if !lams[0].is_positive() {
        return Err(Error::Precondition(
            "the first value must be positive".into(),
        ));
    }
    for l in &lams[1..] {
        if !l.is_negative() {
            return Err(Error::Precondition(
                "all values after the first must be negative".into(),
            ));
        }
    }
    // The boundary case of zero sum still yields a nonnegative
    // companion (the trace coefficient just vanishes), so it is
    // admitted; a negative sum is rejected.
    let total: Int = lams.iter().sum();
    if total.is_negative() {
        return Err(Error::Precondition(
            "the spectrum must have nonnegative sum".into(),
        ));
    }
    let mut p = IntPoly::one();
    for l in lams {
        p = &p * &IntPoly::from_coeffs(vec![-l, Int::one()]);
    }
    let n = lams.len();
    let companion = IntMatrix::from_fn(n, n, |i, j| {
        if i + 1 == n {
            -p.coeff(j)
        } else if j == i + 1 {
            Int::one()
        } else {
            Int::zero()
        }
    });
    let nn = NonnegMatrix::new(companion)
        .map_err(|_| Error::Internal("companion matrix has a negative entry".into()))?;
    if char_poly(nn.inner())? != p {
        return Err(Error::Internal(
            "companion characteristic polynomial mismatch".into(),
        ));
    }
    Ok(nn)
}

/// The period-`p` inflation of `D`: the `p x p` block cyclic matrix
/// with `D` in the top band and identities elsewhere, satisfying
/// `det(I - tA) = q(t^p)` for `q = det(I - tD)` (verified).
pub fn inflate_period(d: &NonnegMatrix, p: usize) -> Result<NonnegMatrix> {
    if p == 0 {
        return Err(Error::Precondition("inflation period must be >= 1".into()));
    }
    if p == 1 {
        return Ok(d.clone());
    }
    let n = d.size();
    let total = n * p;
    let a = IntMatrix::from_fn(total, total, |i, j| {
        let (bi, ri) = (i / n, i % n);
        let (bj, rj) = (j / n, j % n);
        if bi == 0 && bj == 1 {
            d.get(ri, rj).clone()
        } else if bi >= 1 && bi + 1 == bj {
            if ri == rj {
                Int::one()
            } else {
                Int::zero()
            }
        } else if bi + 1 == p && bj == 0 {
            if ri == rj {
                Int::one()
            } else {
                Int::zero()
            }
        } else {
            Int::zero()
        }
    });
    let q = det_one_minus_tA(d.inner())?;
    if det_one_minus_tA(&a)? != q.substitute_power(p) {
        return Err(Error::Internal("inflation lost the spectrum".into()));
    }
    NonnegMatrix::new(a)
}

/// `q(t^p)`: the polynomial of the `p`-th-root spectrum.
pub fn spectrum_pth_root_poly(q: &IntPoly, p: usize) -> IntPoly {
    q.substitute_power(p)
}

/// Smallest `k <= kmax` with `A^k` entrywise positive, or `None`
/// (undetermined: the check is finite).
pub fn eventually_positive(a: &IntMatrix, kmax: usize) -> Result<Option<usize>> {
    a.square_size()?;
    let mut power = a.clone();
    for k in 1..=kmax {
        if power.is_positive() {
            return Ok(Some(k));
        }
        if k < kmax {
            power = &power * a;
        }
    }
    Ok(None)
}

/// An exact rational when the subdominant modulus is rational, or a
/// floating-point estimate otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum GapValue {
    Exact(Rat),
    Approximate(f64),
}

/// The Laffey quantities of a spectrum normalized to Perron value 1:
/// the spectral gap `G = 1 - max_{i >= 2} |lambda_i|` and the tracial
/// floor `M = min_{2 <= n <= N} trace(Lambda^n)`, plus the shape of
/// the size bound `N <= kappa_n (1/(MG))^n` with `kappa_n` left
/// symbolic.
#[derive(Debug, Clone)]
pub struct LaffeyQuantities {
    pub g: GapValue,
    /// `None` for the degenerate one-point spectrum.
    pub m: Option<Rat>,
    pub horizon: usize,
    /// Number of spectrum values.
    pub n: usize,
}

impl LaffeyQuantities {
    /// The symbolic bound statement.
    pub fn bound_description(&self) -> String {
        let g = match &self.g {
            GapValue::Exact(g) => format!("{g}"),
            GapValue::Approximate(g) => format!("~{g:.6}"),
        };
        match &self.m {
            Some(m) => format!(
                "N <= kappa_{n} * (1/(M*G))^{n} with G = {g}, M = {m} (kappa_{n} symbolic, kappa_n >= n^n)",
                n = self.n
            ),
            None => format!("degenerate spectrum: G = {g}, tracial floor inapplicable"),
        }
    }
}

/// Compute the Laffey quantities. The Perron value must be exactly 1
/// (callers rescale), i.e. the scale must be an exact root of the
/// scaled polynomial.
pub fn laffey_quantities(spec: &CandidateSpectrum, horizon: usize) -> Result<LaffeyQuantities> {
    if horizon < 2 {
        return Err(Error::Precondition("Laffey horizon must be >= 2".into()));
    }
    // Perron value 1 means the scale is a root of the scaled
    // polynomial and dominates every other root's modulus.
    if !spec.poly.eval(&spec.scale).is_zero() {
        return Err(Error::Precondition(
            "Perron value must be exactly 1 (the scale must be a root)".into(),
        ));
    }
    let scale_f = spec.scale.to_f64().unwrap_or(1.0);
    let max_mod = durand_kerner(&spec.poly)
        .into_iter()
        .map(|z| z.norm())
        .fold(0.0f64, f64::max);
    if max_mod > scale_f + 1e-6 {
        return Err(Error::Precondition(
            "Perron value must be exactly 1 (a larger root dominates)".into(),
        ));
    }
    let k = spec.degree();
    // Degenerate single-value spectrum: G = 1 by the empty-max
    // convention, no tracial floor.
    if k == 1 {
        return Ok(LaffeyQuantities {
            g: GapValue::Exact(Rat::one()),
            m: None,
            horizon,
            n: 1,
        });
    }
    // Deflate the Perron value once and look at what remains.
    let rest = deflate(&spec.poly, &spec.scale);
    let (int_roots, cofactor) = CandidateSpectrum {
        poly: rest.clone(),
        scale: spec.scale.clone(),
    }
    .integer_roots_of_scaled();
    let g = if cofactor.degree().unwrap_or(0) == 0 {
        // All subdominant roots are integers (of the scaled poly).
        let max_mod = int_roots
            .iter()
            .map(|r| r.abs())
            .max()
            .unwrap_or_else(Int::zero);
        GapValue::Exact(Rat::one() - Rat::new(max_mod, spec.scale.clone()))
    } else {
        let c = spec.scale.to_f64().unwrap_or(1.0);
        let max_mod = durand_kerner(&rest)
            .into_iter()
            .map(|z| z.norm() / c)
            .fold(0.0f64, f64::max);
        GapValue::Approximate(1.0 - max_mod)
    };
    let sums = spec.power_sums(horizon);
    let m = sums[1..].iter().min().cloned();
    Ok(LaffeyQuantities {
        g,
        m,
        horizon,
        n: k,
    })
}

use super::{Int, IntPoly};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Zero};

/// Trace sequence `(trace(A^1), ..., trace(A^N))` recovered from
/// `p = det(I - tA)` by Newton's identities, valid over any
/// commutative ring.
///
/// Writing `p = 1 - f_1 t - ... - f_N t^N`,
/// `tau_k = k f_k + sum_{i<k} f_i tau_{k-i}` for `k <= N` and
/// `tau_k = sum_{i<=N} f_i tau_{k-i}` beyond the degree.
pub fn traces_from_poly(p: &IntPoly, n: usize) -> Result<Vec<Int>> {
    if !p.coeff(0).is_one() {
        return Err(Error::MalformedInput(format!(
            "det(I-tA) must have constant term 1, found {}",
            p.coeff(0)
        )));
    }
    let deg = p.degree().unwrap_or(0);
    let f: Vec<Int> = (1..=deg).map(|i| -p.coeff(i)).collect();
    let mut taus: Vec<Int> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut tau = Int::zero();
        for i in 1..k.min(deg + 1) {
            if i <= deg {
                tau += &f[i - 1] * &taus[k - i - 1];
            }
        }
        if k <= deg {
            tau += Int::from(k as u64) * &f[k - 1];
        }
        taus.push(tau);
    }
    Ok(taus)
}

/// Invert Newton's identities over the integers: recover
/// `det(I - tA) = 1 - f_1 t - ... - f_N t^N` from the first `N` traces.
///
/// Fails when some `f_k = (tau_k - sum f_i tau_{k-i}) / k` is not an
/// integer, i.e. the sequence is not the trace sequence of any integer
/// matrix of nonzero spectrum size at most `N`.
pub fn poly_from_traces(taus: &[Int]) -> Result<IntPoly> {
    if taus.is_empty() {
        return Err(Error::MalformedInput("empty trace sequence".into()));
    }
    let n = taus.len();
    let mut f: Vec<Int> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut rhs = taus[k - 1].clone();
        for i in 1..k {
            rhs -= &f[i - 1] * &taus[k - i - 1];
        }
        let kk = Int::from(k as u64);
        let (q, r) = rhs.div_rem(&kk);
        if !r.is_zero() {
            return Err(Error::NotRealizableOverZ {
                index: k,
                detail: format!("f_{k} = {rhs}/{k} is not an integer"),
            });
        }
        f.push(q);
    }
    let mut coeffs = vec![Int::one()];
    coeffs.extend(f.into_iter().map(|fi| -fi));
    Ok(IntPoly::from_coeffs(coeffs))
}

/// Mobius function: 0 on non-squarefree `n`, otherwise `(-1)^e` with
/// `e` the number of distinct prime factors.
pub fn mobius(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::Precondition(
            "mobius is defined on positive integers".into(),
        ));
    }
    let mut n = n;
    let mut factors = 0;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return Ok(0);
            }
            factors += 1;
        }
        d += 1;
    }
    if n > 1 {
        factors += 1;
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}

/// The `n`-th net trace `sum_{d|n} mu(n/d) tau_d`: the number of
/// minimal loops of length `n` when the traces come from a matrix over
/// `Z+`. Nonnegativity of every net trace is the integer-ring trace
/// condition for spectral realization.
pub fn net_trace(taus: &[Int], n: usize) -> Result<Int> {
    if n == 0 || n > taus.len() {
        return Err(Error::IndexOutOfRange {
            context: "net_trace",
            index: n,
            bound: taus.len(),
        });
    }
    let mut acc = Int::zero();
    for d in 1..=n {
        if n % d == 0 {
            let mu = mobius((n / d) as u64)?;
            acc += Int::from(mu) * &taus[d - 1];
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{det_one_minus_tA, IntMatrix};
    use rand::{Rng, SeedableRng};

    #[test]
    fn full_two_shift_traces() {
        let p = IntPoly::from_i64(&[1, -2]);
        let taus = traces_from_poly(&p, 4).unwrap();
        assert_eq!(taus, vec![2.into(), 4.into(), 8.into(), 16.into()]);
    }

    #[test]
    fn diagonal_example_traces() {
        // diag(3,3,5,0): tau_1 = 11, tau_2 = 9+9+25 = 43.
        let p = IntPoly::from_i64(&[1, -11, 39, -45]);
        assert_eq!(traces_from_poly(&p, 2).unwrap(), vec![11.into(), 43.into()]);
    }

    #[test]
    fn empty_spectrum() {
        let taus = traces_from_poly(&IntPoly::one(), 3).unwrap();
        assert_eq!(taus, vec![Int::zero(), Int::zero(), Int::zero()]);
    }

    #[test]
    fn constant_term_must_be_one() {
        let p = IntPoly::from_i64(&[2, -2]);
        assert!(matches!(
            traces_from_poly(&p, 1),
            Err(Error::MalformedInput(_))
        ));
    }

    #[test]
    fn poly_from_traces_inverts() {
        assert_eq!(
            poly_from_traces(&[2.into(), 4.into(), 8.into()]).unwrap(),
            IntPoly::from_i64(&[1, -2])
        );
        let p = IntPoly::from_i64(&[1, -11, 39, -45]);
        let taus = traces_from_poly(&p, 3).unwrap();
        assert_eq!(poly_from_traces(&taus).unwrap(), p);
    }

    #[test]
    fn non_integral_inversion_fails() {
        // (1, 0): f_2 = (0 - 1)/2 is not an integer.
        let err = poly_from_traces(&[1.into(), 0.into()]).unwrap_err();
        assert!(matches!(err, Error::NotRealizableOverZ { index: 2, .. }));
    }

    #[test]
    fn traces_match_matrix_powers() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(1..=5);
            let a = IntMatrix::from_fn(n, n, |_, _| Int::from(rng.gen_range(0i64..=3)));
            let p = det_one_minus_tA(&a).unwrap();
            let taus = traces_from_poly(&p, 8).unwrap();
            for (k, tau) in taus.iter().enumerate() {
                assert_eq!(*tau, a.pow(k + 1).unwrap().trace().unwrap());
            }
        }
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(6).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(mobius(2).unwrap(), -1);
        assert_eq!(mobius(30).unwrap(), -1);
        assert!(mobius(0).is_err());
    }

    #[test]
    fn net_trace_examples() {
        // tau = (3, 1): net trace at 2 is 1 - 3 = -2.
        let taus: Vec<Int> = vec![3.into(), 1.into()];
        assert_eq!(net_trace(&taus, 2).unwrap(), Int::from(-2));

        // Full 2-shift: q_6 = tau_6 - tau_3 - tau_2 + tau_1 = 54.
        let taus: Vec<Int> = (1..=6u32).map(|k| Int::from(2u64.pow(k))).collect();
        assert_eq!(net_trace(&taus, 1).unwrap(), Int::from(2));
        assert_eq!(net_trace(&taus, 6).unwrap(), Int::from(54));
        assert!(net_trace(&taus, 7).is_err());
    }
}

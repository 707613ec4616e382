//! Assembled conjugacy/SE/flow invariants of a presentation, and the
//! complete SIM-Z / SE-Z classification inside the family of 2x2
//! integer matrices with fixed integer eigenvalues `a > |b| > 0`.
//!
//! In that family every matrix is similar over Z to a triangular
//! `M_x = [[a, x], [0, b]]`; `M_x ~ M_y` under SIM-Z iff `x = +-y mod
//! (a-b)`, and under SE-Z iff `x` and `y` are connected by the
//! relation generated by `x ~ +-qx` for primes `q` dividing `a` or
//! `b`. A bounded brute-force similarity search is provided as an
//! independent ground truth for small moduli.

use crate::exact::{
    char_poly, cokernel, det_one_minus_tA, traces_from_poly, FGAbelianGroup, Int, IntMatrix,
    IntPoly, QMatrix,
};
use crate::structure::{is_irreducible, is_primitive, period, NonnegMatrix};
use crate::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// The stable-algebra invariants of a square integer matrix, with the
/// nonnegative-only fields filled when they apply.
#[derive(Debug, Clone)]
pub struct InvariantReport {
    /// `det(I - tA)`, carrying the nonzero spectrum.
    pub det_i_ta: IntPoly,
    /// Multiplicity of the zero eigenvalue.
    pub zero_multiplicity: usize,
    /// Bowen-Franks group `cok(I - A)`.
    pub bowen_franks: FGAbelianGroup,
    /// `det(I - A)`, i.e. `det_i_ta` evaluated at `t = 1`.
    pub det_i_a: Int,
    /// `trace(A^n)` for `n = 1..=N`.
    pub traces: Vec<Int>,
    /// Primitivity, when `A` is nonnegative.
    pub primitive: Option<bool>,
    /// Period, when `A` is nonnegative and irreducible.
    pub period: Option<usize>,
}

/// The family of 2x2 integer matrices with eigenvalues `a > |b| > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularFamily {
    a: Int,
    b: Int,
}

impl TriangularFamily {
    pub fn new(a: impl Into<Int>, b: impl Into<Int>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if !(a > b.abs() && !b.is_zero()) {
            return Err(Error::Precondition(format!(
                "triangular family requires a > |b| > 0, got a={a}, b={b}"
            )));
        }
        Ok(TriangularFamily { a, b })
    }

    pub fn a(&self) -> &Int {
        &self.a
    }

    pub fn b(&self) -> &Int {
        &self.b
    }

    /// The modulus `a - b` of the classification.
    pub fn modulus(&self) -> Int {
        &self.a - &self.b
    }

    /// The triangular representative `M_x = [[a, x], [0, b]]`.
    pub fn triangular(&self, x: impl Into<Int>) -> IntMatrix {
        let x = x.into();
        IntMatrix::new(2, 2, vec![self.a.clone(), x, Int::zero(), self.b.clone()])
    }

    /// Expected characteristic polynomial `(t - a)(t - b)`.
    pub fn char_poly(&self) -> IntPoly {
        &IntPoly::from_coeffs(vec![-&self.a, Int::one()])
            * &IntPoly::from_coeffs(vec![-&self.b, Int::one()])
    }

    fn canonical_residue(&self, x: &Int) -> Int {
        let d = self.modulus();
        let r1 = x.mod_floor(&d);
        let r2 = (-x).mod_floor(&d);
        r1.min(r2)
    }
}

/// Compute every invariant in one pass; `n_traces` controls the length
/// of the reported trace sequence.
pub fn invariant_report(a: &IntMatrix, n_traces: usize) -> Result<InvariantReport> {
    let n = a.square_size()?;
    let det_i_ta = det_one_minus_tA(a)?;
    let zero_multiplicity = n - det_i_ta.degree().unwrap_or(0);
    let bowen_franks = cokernel(&a.i_minus()?)?;
    let det_i_a = det_i_ta.eval_at_one();
    let traces = traces_from_poly(&det_i_ta, n_traces)?;
    let (primitive, per) = if a.is_nonnegative() {
        let nn = NonnegMatrix::new(a.clone())?;
        let prim = is_primitive(&nn).is_primitive();
        let per = if is_irreducible(&nn) {
            Some(period(&nn)?)
        } else {
            None
        };
        (Some(prim), per)
    } else {
        (None, None)
    };
    Ok(InvariantReport {
        det_i_ta,
        zero_multiplicity,
        bowen_franks,
        det_i_a,
        traces,
        primitive,
        period: per,
    })
}

/// Reduce a 2x2 matrix with characteristic polynomial `(t-a)(t-b)` to
/// the triangular form of its family: returns unimodular `U` and the
/// canonical residue `x` with `U^-1 A U = M_x` exactly.
///
/// A primitive integer right eigenvector for `a` is completed to a
/// unimodular basis by extended gcd; column shears and a sign flip
/// then move the corner entry to the canonical representative
/// `min(x mod d, -x mod d)`.
pub fn reduce_to_triangular(a: &IntMatrix, fam: &TriangularFamily) -> Result<(IntMatrix, Int)> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(Error::Precondition(
            "triangular reduction needs a 2x2 matrix".into(),
        ));
    }
    let chi = char_poly(a)?;
    let expected = fam.char_poly();
    if chi != expected {
        return Err(Error::FamilyMismatch {
            expected: expected.to_string(),
            found: chi.to_string(),
        });
    }
    // Primitive integer kernel vector of A - aI.
    let shifted = a.checked_sub(&IntMatrix::diagonal(&[fam.a.clone(), fam.a.clone()]))?;
    let kernel = QMatrix::from_int(&shifted).kernel_basis();
    let v = kernel
        .first()
        .ok_or_else(|| Error::Internal("eigenvalue of the family has no eigenvector".into()))?;
    // Complete (v0, v1) to a unimodular basis: x*v0 + y*v1 = 1 gives
    // columns (v, (-y, x)) with determinant 1.
    let gcd = v[0].extended_gcd(&v[1]);
    debug_assert!(gcd.gcd.is_one(), "kernel vector is primitive");
    let w = [-gcd.y.clone(), gcd.x.clone()];
    let mut u = IntMatrix::new(
        2,
        2,
        vec![v[0].clone(), w[0].clone(), v[1].clone(), w[1].clone()],
    );

    let conj = |u: &IntMatrix| -> Result<IntMatrix> {
        let ui = QMatrix::from_int(u).inverse()?;
        ui.mul(&QMatrix::from_int(a))?
            .mul(&QMatrix::from_int(u))?
            .to_int()
    };
    let t = conj(&u)?;
    debug_assert_eq!(*t.get(1, 0), Int::zero());
    debug_assert_eq!(*t.get(0, 0), fam.a);
    let x_raw = t.get(0, 1).clone();

    let d = fam.modulus();
    let x_canon = fam.canonical_residue(&x_raw);
    // Either x_canon = x_raw + k d (column shear), or
    // x_canon = -x_raw + k d (sign flip followed by a shear).
    let needs_flip = !(&x_canon - &x_raw).is_multiple_of(&d);
    if needs_flip {
        let flip = IntMatrix::new(2, 2, vec![1.into(), 0.into(), 0.into(), (-1).into()]);
        u = &u * &flip;
    }
    let x_now = if needs_flip { -&x_raw } else { x_raw.clone() };
    let k = (&x_canon - &x_now).div_floor(&d);
    let shear = IntMatrix::new(2, 2, vec![1.into(), k, 0.into(), 1.into()]);
    u = &u * &shear;

    let final_t = conj(&u)?;
    if final_t != fam.triangular(x_canon.clone()) {
        return Err(Error::Internal(
            "triangular reduction failed verification".into(),
        ));
    }
    Ok((u, x_canon))
}

/// `M_x ~ M_y` under similarity over Z iff `x = +-y mod (a-b)`.
pub fn sim_z_equivalent(fam: &TriangularFamily, x: &Int, y: &Int) -> bool {
    let d = fam.modulus();
    (x - y).is_multiple_of(&d) || (x + y).is_multiple_of(&d)
}

fn prime_divisors(n: &Int) -> Vec<Int> {
    let mut n = n.abs();
    let mut primes = Vec::new();
    let mut d = Int::from(2);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            primes.push(d.clone());
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > Int::one() {
        primes.push(n);
    }
    primes
}

/// Union-find components of the SE relation graph on residues
/// `0..d-1`: edges `x ~ -x` and `x ~ qx` for each prime `q | ab`.
struct SeComponents {
    parent: Vec<usize>,
}

impl SeComponents {
    fn build(fam: &TriangularFamily) -> Self {
        let d_int = fam.modulus();
        let d: usize = usize::try_from(&d_int).expect("family modulus fits in usize");
        let mut primes = prime_divisors(&fam.a);
        for p in prime_divisors(&fam.b) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
        let mut uf = SeComponents {
            parent: (0..d).collect(),
        };
        for x in 0..d {
            let neg = (d - x) % d;
            uf.union(x, neg);
            for q in &primes {
                let qx: usize = usize::try_from(&(Int::from(x as u64) * q).mod_floor(&d_int))
                    .expect("residue fits in usize");
                uf.union(x, qx);
            }
        }
        uf
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            self.parent[rx] = ry;
        }
    }
}

/// `M_x ~ M_y` under shift equivalence over Z: same component of the
/// relation graph generated by negation and prime multiplication.
pub fn se_z_equivalent(fam: &TriangularFamily, x: &Int, y: &Int) -> bool {
    let d = fam.modulus();
    let mut uf = SeComponents::build(fam);
    let xr: usize = usize::try_from(&x.mod_floor(&d)).expect("residue fits in usize");
    let yr: usize = usize::try_from(&y.mod_floor(&d)).expect("residue fits in usize");
    uf.find(xr) == uf.find(yr)
}

/// Number of SIM-Z classes and SE-Z classes in the family.
pub fn class_counts(fam: &TriangularFamily) -> (usize, usize) {
    let d: usize = usize::try_from(&fam.modulus()).expect("modulus fits in usize");
    // SIM classes are the orbits of x -> -x on Z/d.
    let sim = (0..d).filter(|&x| (d - x) % d >= x).count();
    let mut uf = SeComponents::build(fam);
    let mut roots: Vec<usize> = (0..d).map(|x| uf.find(x)).collect();
    roots.sort_unstable();
    roots.dedup();
    (sim, roots.len())
}

/// Is `M_x` shift equivalent over Z to its transpose?
///
/// `(M_x)^tr` is similar over Z to `M_y` whenever `xy = 1 mod (a-b)`,
/// so the test reduces to `se_z_equivalent(x, x^-1)`. Inapplicable
/// when `x` is not invertible mod `a - b`.
pub fn transpose_se_test(fam: &TriangularFamily, x: &Int) -> Result<bool> {
    let d = fam.modulus();
    let gcd = x.extended_gcd(&d);
    if !gcd.gcd.is_one() {
        return Err(Error::Inapplicable(format!(
            "x = {x} is not invertible mod {d} (gcd {})",
            gcd.gcd
        )));
    }
    let y = gcd.x.mod_floor(&d);
    debug_assert!((x * &y).mod_floor(&d).is_one());
    Ok(se_z_equivalent(fam, x, &y))
}

/// Brute-force SIM-Z oracle: search all unimodular `U` with entries in
/// `[-bound, bound]` for `A U = U B`. Complete only relative to the
/// bound, so a found witness is a certificate while an empty result is
/// evidence; for the small families studied here the bound 6 already
/// separates the classes.
pub fn sim_z_brute_force(a: &IntMatrix, b: &IntMatrix, bound: i64) -> Result<Option<IntMatrix>> {
    if a.rows() != 2 || a.cols() != 2 || b.rows() != 2 || b.cols() != 2 {
        return Err(Error::Precondition(
            "brute-force similarity search is 2x2 only".into(),
        ));
    }
    for e00 in -bound..=bound {
        for e01 in -bound..=bound {
            for e10 in -bound..=bound {
                for e11 in -bound..=bound {
                    let det = e00 * e11 - e01 * e10;
                    if det != 1 && det != -1 {
                        continue;
                    }
                    let u = IntMatrix::from_rows(&[&[e00, e01], &[e10, e11]]);
                    if a.checked_mul(&u)? == u.checked_mul(b)? {
                        return Ok(Some(u));
                    }
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn report_for_full_two_shift() {
        let a = IntMatrix::from_rows(&[&[2]]);
        let r = invariant_report(&a, 4).unwrap();
        assert_eq!(r.det_i_ta, IntPoly::from_i64(&[1, -2]));
        assert_eq!(r.zero_multiplicity, 0);
        assert!(r.bowen_franks.is_trivial(), "cok(-1) is trivial");
        assert_eq!(r.det_i_a, Int::from(-1));
        assert_eq!(r.primitive, Some(true));
        assert_eq!(r.period, Some(1));
    }

    #[test]
    fn report_for_zero_matrix() {
        let r = invariant_report(&IntMatrix::zero(3, 3), 2).unwrap();
        assert_eq!(r.det_i_ta, IntPoly::one());
        assert_eq!(r.zero_multiplicity, 3);
        // I - 0 = I has trivial cokernel.
        assert!(r.bowen_franks.is_trivial());
        assert_eq!(r.det_i_a, Int::one());
    }

    #[test]
    fn report_det_consistency_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = rng.gen_range(1..=4);
            let a = IntMatrix::from_fn(n, n, |_, _| Int::from(rng.gen_range(-3i64..=3)));
            let r = invariant_report(&a, 3).unwrap();
            assert_eq!(r.det_i_a, r.det_i_ta.eval_at_one());
        }
    }

    #[test]
    fn triangular_reduction_examples() {
        let fam = TriangularFamily::new(256, 1).unwrap();
        let m = IntMatrix::from_rows(&[&[256, 7], &[0, 1]]);
        let (u, x) = reduce_to_triangular(&m, &fam).unwrap();
        assert_eq!(x, Int::from(7));
        assert!(u.is_unimodular().unwrap());

        let b = IntMatrix::from_rows(&[&[249, 7], &[248, 8]]);
        let (u, x) = reduce_to_triangular(&b, &fam).unwrap();
        assert_eq!(x, Int::from(7), "class of 7, canonical representative");
        assert!(u.is_unimodular().unwrap());

        let fam61 = TriangularFamily::new(6, 1).unwrap();
        let d = IntMatrix::from_rows(&[&[6, 0], &[0, 1]]);
        let (_, x) = reduce_to_triangular(&d, &fam61).unwrap();
        assert_eq!(x, Int::zero());
    }

    #[test]
    fn triangular_reduction_rejects_wrong_family() {
        let fam = TriangularFamily::new(6, 1).unwrap();
        let m = IntMatrix::from_rows(&[&[2, 0], &[0, 1]]);
        assert!(matches!(
            reduce_to_triangular(&m, &fam),
            Err(Error::FamilyMismatch { .. })
        ));
    }

    #[test]
    fn triangular_reduction_random_contract() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let mut done = 0;
        while done < 50 {
            let a_val = rng.gen_range(2i64..=9);
            let b_val = rng.gen_range(-(a_val - 1)..=(a_val - 1));
            if b_val == 0 {
                continue;
            }
            let fam = TriangularFamily::new(a_val, b_val).unwrap();
            // Conjugate a random triangular representative by a random
            // unimodular matrix.
            let x0 = rng.gen_range(0..=(a_val - b_val - 1));
            let mut u = IntMatrix::identity(2);
            for _ in 0..4 {
                let mut e = IntMatrix::identity(2);
                if rng.gen_bool(0.5) {
                    e.set(0, 1, Int::from(rng.gen_range(-2i64..=2)));
                } else {
                    e.set(1, 0, Int::from(rng.gen_range(-2i64..=2)));
                }
                u = &u * &e;
            }
            let ui = QMatrix::from_int(&u).inverse().unwrap().to_int().unwrap();
            let a = &(&u * &fam.triangular(x0)) * &ui;
            let (w, x) = reduce_to_triangular(&a, &fam).unwrap();
            assert!(w.is_unimodular().unwrap());
            // The verified equation U^-1 A U = M_x is checked inside
            // the call; the residue class must match the seed class.
            assert!(sim_z_equivalent(&fam, &x, &Int::from(x0)));
            done += 1;
        }
    }

    #[test]
    fn sim_examples() {
        let fam = TriangularFamily::new(6, 1).unwrap();
        assert!(sim_z_equivalent(&fam, &1.into(), &4.into()), "4 = -1 mod 5");
        assert!(!sim_z_equivalent(&fam, &1.into(), &2.into()));
        assert!(sim_z_equivalent(&fam, &3.into(), &3.into()));
    }

    #[test]
    fn class_counts_match_paper_families() {
        // Family (6, 1): three SIM-Z classes, two SE-Z classes.
        let fam = TriangularFamily::new(6, 1).unwrap();
        assert_eq!(class_counts(&fam), (3, 2));

        // Family (6, 2): the residue rule gives SIM classes {0}, {1,3},
        // {2} and a single SE class.
        let fam62 = TriangularFamily::new(6, 2).unwrap();
        assert_eq!(class_counts(&fam62), (3, 1));
    }

    #[test]
    fn transpose_test_examples() {
        let fam = TriangularFamily::new(256, 1).unwrap();
        assert!(!transpose_se_test(&fam, &7.into()).unwrap());
        assert!(transpose_se_test(&fam, &1.into()).unwrap());

        let fam61 = TriangularFamily::new(6, 1).unwrap();
        assert!(transpose_se_test(&fam61, &2.into()).unwrap());
        // gcd(5, 5) = 5: no inverse.
        assert!(matches!(
            transpose_se_test(&fam61, &5.into()),
            Err(Error::Inapplicable(_))
        ));
    }

    #[test]
    fn se_equivalence_is_equivalence_relation() {
        // Moduli up to 30 = (31, 1).
        for (a, b) in [(6i64, 1i64), (6, 2), (5, 2), (16, 1), (31, 1)] {
            let fam = TriangularFamily::new(a, b).unwrap();
            let d = a - b;
            for x in 0..d {
                assert!(se_z_equivalent(&fam, &x.into(), &x.into()));
                for y in 0..d {
                    let xy = se_z_equivalent(&fam, &x.into(), &y.into());
                    assert_eq!(xy, se_z_equivalent(&fam, &y.into(), &x.into()));
                    for z in 0..d {
                        if xy && se_z_equivalent(&fam, &y.into(), &z.into()) {
                            assert!(se_z_equivalent(&fam, &x.into(), &z.into()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sim_rule_matches_brute_force_oracle() {
        for (a, b) in [(6i64, 1i64), (6, 2), (5, 2)] {
            let fam = TriangularFamily::new(a, b).unwrap();
            let d = a - b;
            for x in 0..d {
                for y in 0..d {
                    let rule = sim_z_equivalent(&fam, &x.into(), &y.into());
                    let oracle = sim_z_brute_force(&fam.triangular(x), &fam.triangular(y), 6)
                        .unwrap()
                        .is_some();
                    assert_eq!(
                        rule, oracle,
                        "family ({a},{b}), x={x}, y={y}: rule {rule} vs oracle {oracle}"
                    );
                }
            }
        }
    }
}

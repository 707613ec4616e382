//! The inverse spectral problem for nonnegative matrices: checking
//! the necessary realization conditions on candidate spectra, JLL
//! size bounds, a Suleimanova companion realization, period inflation,
//! and the Laffey gap/floor quantities.
//!
//! Run with `cargo run --example spectral_conditions`.

use sft_algebra::exact::{det_one_minus_tA, IntPoly, Rat};
use sft_algebra::niep::{
    check_conditions, eventually_positive, inflate_period, jll_min_size_bound, laffey_quantities,
    spectrum_pth_root_poly, suleimanova_realize, CandidateSpectrum, CheckRing,
};
use sft_algebra::structure::NonnegMatrix;

fn main() {
    // (2, i, -i, i, -i, 1): passes the dense-ring conditions, but the
    // Mobius net trace at n = 2 is 1 - 3 = -2, so no matrix over Z+
    // has this nonzero spectrum.
    let spec =
        CandidateSpectrum::from_int_poly(IntPoly::from_i64(&[2, -3, 5, -6, 4, -3, 1])).unwrap();
    let z = check_conditions(&spec, CheckRing::Z, 16).unwrap();
    println!(
        "(2, i, -i, i, -i, 1) over Z: net trace failure at {:?}",
        z.net_trace_failure
    );
    let dense = check_conditions(&spec, CheckRing::Dense, 16).unwrap();
    println!(
        "same spectrum over a dense subring: passes = {}",
        dense.passes()
    );

    // The shrinking-epsilon family: realizable over R, but the JLL
    // inequality forces the realization size to at least 1/epsilon.
    let rat = |n: i64, d: i64| Rat::new(n.into(), d.into());
    let eps =
        CandidateSpectrum::from_rational_poly(&[rat(-9, 20), rat(9, 20), rat(-1, 1), rat(1, 1)])
            .unwrap();
    println!(
        "\nLambda_(1/10): JLL minimum realization size >= {}",
        jll_min_size_bound(&eps, 8)
    );

    // Suleimanova spectra are realized by their companion matrices.
    let m = suleimanova_realize(&[5.into(), (-1).into(), (-2).into()]).unwrap();
    println!("\ncompanion realization of (5, -1, -2) = {}", m.inner());

    // Period inflation: an irreducible period-3 matrix whose nonzero
    // spectrum is the cube root of (8, 7, 7).
    let d = NonnegMatrix::new(sft_algebra::exact::IntMatrix::diagonal(&[
        8.into(),
        7.into(),
        7.into(),
    ]))
    .unwrap();
    let q = det_one_minus_tA(d.inner()).unwrap();
    let a = inflate_period(&d, 3).unwrap();
    println!("\nq = det(I-tD) = {q}");
    println!(
        "det(I-tA) of the period-3 inflation = {}",
        det_one_minus_tA(a.inner()).unwrap()
    );
    assert_eq!(
        det_one_minus_tA(a.inner()).unwrap(),
        spectrum_pth_root_poly(&q, 3)
    );

    // Eventual positivity is the matrix-side shadow of the Perron
    // condition.
    let fib = sft_algebra::exact::IntMatrix::from_rows(&[&[1, 1], &[1, 0]]);
    println!(
        "\n[[1,1],[1,0]] is positive from power {:?}",
        eventually_positive(&fib, 10).unwrap()
    );

    // Laffey quantities of a Perron-1 spectrum: spectral gap G and
    // tracial floor M govern the known size bound.
    let lam =
        CandidateSpectrum::from_rational_poly(&[rat(-1, 4), rat(5, 4), rat(-2, 1), rat(1, 1)])
            .unwrap();
    let lq = laffey_quantities(&lam, 6).unwrap();
    println!("\n(1, 1/2, 1/2): {}", lq.bound_description());
}

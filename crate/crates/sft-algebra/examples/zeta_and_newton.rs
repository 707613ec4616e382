//! The determinant / trace-sequence / zeta-function dictionary:
//! `det(I-tA)`, Newton's identities in both directions, Mobius net
//! traces, and the zeta identity checked in exact rational arithmetic.
//!
//! Run with `cargo run --example zeta_and_newton`.

use sft_algebra::exact::{
    det_one_minus_tA, mobius, net_trace, poly_from_traces, traces_from_poly, zeta_series, Int,
    IntMatrix,
};

fn main() {
    // The displayed diagonal example: nonzero spectrum (3, 3, 5).
    let a = IntMatrix::diagonal(&[3.into(), 3.into(), 5.into(), 0.into()]);
    let p = det_one_minus_tA(&a).unwrap();
    println!("det(I-tA) for diag(3,3,5,0) = {p}");

    // Traces recovered from the polynomial alone.
    let taus = traces_from_poly(&p, 6).unwrap();
    println!("traces tau_1..tau_6 = {taus:?}");
    assert_eq!(taus[1], Int::from(43), "3^2 + 3^2 + 5^2");

    // And inverted back.
    let back = poly_from_traces(&taus[..3]).unwrap();
    println!("recovered from three traces: {back}");
    assert_eq!(back, p);

    // A sequence that is NOT a trace sequence over Z: (1, 0) forces
    // the non-integer f_2 = -1/2.
    match poly_from_traces(&[Int::from(1), Int::from(0)]) {
        Err(e) => println!("(1, 0) is not realizable over Z: {e}"),
        Ok(_) => unreachable!(),
    }

    // Mobius net traces count minimal loops: for the full 2-shift,
    // q_6 = tau_6 - tau_3 - tau_2 + tau_1 = 54.
    let two_taus: Vec<Int> = (1..=6u32).map(|k| Int::from(2u64.pow(k))).collect();
    println!(
        "full 2-shift: net trace at 6 = {} (mobius(1,2,3,6) = {},{},{},{})",
        net_trace(&two_taus, 6).unwrap(),
        mobius(6).unwrap(),
        mobius(3).unwrap(),
        mobius(2).unwrap(),
        mobius(1).unwrap(),
    );

    // The zeta identity 1/det(I-tA) = exp(sum trace(A^n) t^n / n),
    // both sides as exact rational series.
    let golden = IntMatrix::from_rows(&[&[1, 2], &[1, 0]]);
    let z = zeta_series(&golden, 8).unwrap();
    println!(
        "zeta of [[1,2],[1,0]] through order 8: {:?}",
        z.reciprocal
            .coeffs()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
    );
    assert!(z.identity_holds());
    println!("zeta identity holds exactly");
}

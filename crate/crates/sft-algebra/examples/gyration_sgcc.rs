//! Gyration and sign-gyration on periodic orbits, and the lifting
//! obstruction on the full 2-shift: the one-orbit-shift on the
//! period-6 points has SGCC_6 = 1, but everything in the image of the
//! automorphism group has SGCC_6 in {0, 3}.
//!
//! Run with `cargo run --example gyration_sgcc`.

use sft_algebra::autgyration::{
    apply_code_periodic, enumerate_periodic, sgcc, simple_graph_symmetry, AutomorphismAction,
    LevelAction,
};
use sft_algebra::structure::NonnegMatrix;

fn main() {
    let two = NonnegMatrix::from_rows(&[&[2]]).unwrap();

    // Periodic points of the 2-shift at level 6.
    let table = enumerate_periodic(&two, 6, 1000).unwrap();
    println!(
        "level 6: {} points, {} orbits of full length",
        table.points.len(),
        table.full_orbits().len()
    );

    // The shift advances every orbit once: g_6 = |Q_6| mod 6 = 3.
    let sigma = AutomorphismAction::shift(&two, [1, 2, 3, 6], 1000).unwrap();
    let la = sigma.level(6).unwrap();
    println!(
        "shift: g_6 = {}, sign xi_6 = {}, SGCC_6 = {}",
        la.gyration(),
        la.orbit_sign(),
        sgcc(&sigma, 6).unwrap()
    );

    // The one-orbit-shift: advance a single orbit, fix the rest.
    let orbit = table.full_orbits()[0];
    let mut alpha = AutomorphismAction::new(two.clone(), 1000);
    alpha
        .set_level(6, LevelAction::one_orbit_shift(table, orbit).unwrap())
        .unwrap();
    let s = sgcc(&alpha, 6).unwrap();
    println!("one-orbit-shift: SGCC_6 = {s}");
    println!(
        "=> SGCC_6 of genuine automorphisms lies in {{0, 3}}, so the one-orbit-shift ({s}) does not lift"
    );

    // A simple graph symmetry: swapping the two edges of the 2-shift
    // is the symbol exchange automorphism.
    let swap = simple_graph_symmetry(&two, &[1, 0]).unwrap();
    let table3 = enumerate_periodic(&two, 3, 1000).unwrap();
    let (_, map) = apply_code_periodic(&swap, &table3, 1000).unwrap();
    let la = LevelAction::new(table3, map).unwrap();
    println!(
        "\nsymbol exchange at level 3: g_3 = {}, sign xi_3 = {}",
        la.gyration(),
        la.orbit_sign()
    );
}

//! Complete SIM-Z / SE-Z classification inside a 2x2 integer-spectrum
//! family, and the transpose non-equivalence example.
//!
//! Run with `cargo run --example classify_2x2`.

use sft_algebra::exact::Int;
use sft_algebra::invariants::{
    class_counts, reduce_to_triangular, se_z_equivalent, sim_z_brute_force, sim_z_equivalent,
    transpose_se_test, TriangularFamily,
};

fn main() {
    // Eigenvalues (6, 1): modulus 5. Residues split into SIM classes
    // {0}, {1,4}, {2,3}; multiplication by the primes 2, 3 merges the
    // nonzero classes into one SE class.
    let fam = TriangularFamily::new(6, 1).unwrap();
    let (sim, se) = class_counts(&fam);
    println!("family (6, 1): SIM classes = {sim}, SE classes = {se}");
    for (x, y) in [(1i64, 4i64), (1, 2)] {
        println!(
            "  x = {x}, y = {y}: SIM-Z {}  SE-Z {}",
            sim_z_equivalent(&fam, &x.into(), &y.into()),
            se_z_equivalent(&fam, &x.into(), &y.into())
        );
    }

    // Eigenvalues (6, 2): the residue rule gives three SIM classes,
    // and the bounded unimodular search agrees that M_0, M_1, M_2 are
    // pairwise non-similar.
    let fam62 = TriangularFamily::new(6, 2).unwrap();
    let (sim, se) = class_counts(&fam62);
    println!("family (6, 2): SIM classes = {sim}, SE classes = {se}");
    for (x, y) in [(0i64, 1i64), (0, 2), (1, 3)] {
        let witness = sim_z_brute_force(&fam62.triangular(x), &fam62.triangular(y), 6).unwrap();
        println!("  brute-force M_{x} ~ M_{y}: {}", witness.is_some());
    }

    // Eigenvalues (256, 1): M_7 is not shift equivalent over Z to its
    // transpose, because the transpose lands in the class of
    // M_{7^-1 mod 255} and 49 is not +-2^n mod 255.
    let fam256 = TriangularFamily::new(256, 1).unwrap();
    let t = transpose_se_test(&fam256, &Int::from(7)).unwrap();
    println!("family (256, 1): M_7 SE-Z to its transpose: {t}");

    // The similar primitive matrix [[249, 7], [248, 8]] reduces back
    // to the canonical residue 7.
    let b = sft_algebra::exact::IntMatrix::from_rows(&[&[249, 7], &[248, 8]]);
    let (u, x) = reduce_to_triangular(&b, &fam256).unwrap();
    println!("[[249, 7], [248, 8]] reduces to M_{x} via U = {u}");
}

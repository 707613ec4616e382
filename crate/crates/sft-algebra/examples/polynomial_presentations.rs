//! Polynomial matrices as SFT presentations: the NZC class, the graph
//! expansion `A#` with its rome, and the determinant identity
//! `det(I - A) = det(I - tA#)`.
//!
//! Run with `cargo run --example polynomial_presentations`.

use sft_algebra::exact::{det_one_minus_tA, IntPoly};
use sft_algebra::polymatrix::{is_nzc, sharp_expand, verify_sharp, PolyMatrix, SharpVertex};

fn pm(size: usize, entries: &[&[i64]]) -> PolyMatrix {
    PolyMatrix::from_entries(size, entries.iter().map(|c| IntPoly::from_i64(c)).collect())
}

fn main() {
    // NZC = nonnegative polynomial entries + nilpotent constant term
    // ("no zero cycles").
    let a = pm(
        2,
        &[
            &[0, 1, 0, 1],
            &[0, 0, 0, 0, 0, 3],
            &[0, 1],
            &[0, 0, 0, 0, 0, 3],
        ],
    );
    let b = pm(2, &[&[0, 0, 0, 1], &[1], &[0, 1], &[0, 0, 0, 0, 0, 3]]);
    let c = pm(1, &[&[1]]);
    println!("A = {a}: NZC = {}", is_nzc(&a).unwrap());
    println!("B = {b}: NZC = {}", is_nzc(&b).unwrap());
    println!("C = {c}: NZC = {}", is_nzc(&c).unwrap());

    // The displayed expansion example: five elementary paths, 6x6
    // adjacency matrix, rome = the two original vertices.
    let m = pm(2, &[&[0, 2], &[0, 0, 1, 1], &[0, 0, 1], &[]]);
    let exp = sharp_expand(&m).unwrap();
    println!("\nA = {m}");
    println!("A# = {}", exp.matrix.inner());
    for (v, label) in exp.vertices.iter().enumerate() {
        match label {
            SharpVertex::Rome(i) => println!("  vertex {v}: rome {i}"),
            SharpVertex::Aux { row, col, degree, copy, position } => println!(
                "  vertex {v}: interior point {position} of path {copy} for t^{degree} in entry ({row}, {col})"
            ),
        }
    }
    println!("det(I - A)   = {}", m.i_minus().det());
    println!(
        "det(I - tA#) = {}",
        det_one_minus_tA(exp.matrix.inner()).unwrap()
    );
    assert!(verify_sharp(&m).unwrap());

    // Degree-one entries change nothing: A = tM expands to M itself.
    let linear = PolyMatrix::scalar_t_times(&sft_algebra::exact::IntMatrix::from_rows(&[
        &[1, 2],
        &[1, 0],
    ]));
    let exp = sharp_expand(&linear).unwrap();
    println!("\nA = tM expands back to M = {}", exp.matrix.inner());
}

//! Invariant reports for presentations that look different but share
//! (or are separated by) their stable-algebra invariants.
//!
//! Run with `cargo run --example invariant_reports`.

use sft_algebra::exact::{char_poly, det_one_minus_tA, IntMatrix};
use sft_algebra::invariants::invariant_report;

fn report(name: &str, a: &IntMatrix) {
    let r = invariant_report(a, 6).unwrap();
    println!("--- {name} ---");
    println!("det(I-tA)    = {}", r.det_i_ta);
    println!("Bowen-Franks = {}", r.bowen_franks);
    println!("det(I-A)     = {}", r.det_i_a);
    println!(
        "primitive    = {}",
        r.primitive.map_or("n/a".to_string(), |p| p.to_string())
    );
    println!();
}

fn main() {
    // A primitive 4x4 with nonzero spectrum (2, 1): it cannot be shift
    // equivalent over Z+ to any nonsingular (2x2) matrix, yet all the
    // listed invariants are those of the spectrum.
    let nonplussed =
        IntMatrix::from_rows(&[&[1, 0, 0, 1], &[0, 1, 0, 1], &[0, 1, 1, 0], &[1, 0, 1, 0]]);
    report("4x4 with nonzero spectrum (2, 1)", &nonplussed);

    // Ashley's eight-by-eight: the sum of the permutation matrices of
    // (12345678) and (8)(1)(263754). Its det(I-tA) is 1 - 2t, so it is
    // shift equivalent over Z to the 1x1 matrix (2) -- whether it is
    // strong shift equivalent over Z+ to (2) is open.
    let sigma1: [usize; 8] = [2, 3, 4, 5, 6, 7, 8, 1];
    let sigma2: [usize; 8] = [1, 6, 7, 2, 4, 3, 5, 8];
    let mut ashley = IntMatrix::zero(8, 8);
    for perm in [sigma1, sigma2] {
        for (i, &img) in perm.iter().enumerate() {
            let bumped = ashley.get(i, img - 1) + 1;
            ashley.set(i, img - 1, bumped);
        }
    }
    report("Ashley's eight-by-eight", &ashley);
    assert_eq!(det_one_minus_tA(&ashley).unwrap().to_string(), "1-2t");

    // The Riedel family: A_k and B_k share the characteristic
    // polynomial t^2 - 2kt + (k^2 - 2) for every k, and are in fact
    // strong shift equivalent over Z+ -- but with lag going to
    // infinity with k.
    println!("--- Riedel family ---");
    for k in 1..=5i64 {
        let a = IntMatrix::from_rows(&[&[k, 2], &[1, k]]);
        let b = IntMatrix::from_rows(&[&[k - 1, 1], &[1, k + 1]]);
        let pa = char_poly(&a).unwrap();
        assert_eq!(pa, char_poly(&b).unwrap());
        println!("k = {k}: char(A_k) = char(B_k) = {pa}");
    }
}

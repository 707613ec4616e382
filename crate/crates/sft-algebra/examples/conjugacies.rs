//! The elementary conjugacy c(R, S) of an ESSE as a sliding block
//! code, checked dynamically on periodic points: c(I, A) is the
//! identity, c(A, I) is the shift, and composing c(S, R) after
//! c(R, S) is the shift.
//!
//! Run with `cargo run --example conjugacies`.

use sft_algebra::autgyration::{apply_code_periodic, conjugacy_from_esse, enumerate_periodic};
use sft_algebra::exact::IntMatrix;
use sft_algebra::structure::NonnegMatrix;

fn main() {
    let a = IntMatrix::from_rows(&[&[1, 1], &[1, 0]]);
    let nn_a = NonnegMatrix::new(a.clone()).unwrap();
    let id = IntMatrix::identity(2);

    // c(I, A) fixes every periodic point; c(A, I) rotates them.
    let c_ia = conjugacy_from_esse(&id, &a).unwrap();
    let c_ai = conjugacy_from_esse(&a, &id).unwrap();
    for level in 1..=6 {
        let table = enumerate_periodic(&nn_a, level, 2000).unwrap();
        let (_, fix) = apply_code_periodic(&c_ia, &table, 2000).unwrap();
        let (_, rot) = apply_code_periodic(&c_ai, &table, 2000).unwrap();
        let is_id = fix.iter().enumerate().all(|(i, &p)| i == p);
        let is_shift = (0..table.points.len()).all(|p| rot[p] == table.rotate(p));
        println!(
            "level {level}: {} points, c(I,A) = Id: {is_id}, c(A,I) = shift: {is_shift}",
            table.points.len()
        );
    }

    // A genuine change of presentation: R, S with A = RS and B = SR
    // both zero-one, where the composite c(S,R) . c(R,S) is the shift.
    let r = IntMatrix::from_rows(&[&[1, 0], &[1, 1]]);
    let s = IntMatrix::from_rows(&[&[0, 1], &[1, 0]]);
    let b = &s * &r;
    println!("\nA = {a}, B = {b}");
    let c_rs = conjugacy_from_esse(&r, &s).unwrap();
    let c_sr = conjugacy_from_esse(&s, &r).unwrap();
    let src = NonnegMatrix::new(&r * &s).unwrap();
    for level in [4usize, 6] {
        let table = enumerate_periodic(&src, level, 2000).unwrap();
        let (b_table, first) = apply_code_periodic(&c_rs, &table, 2000).unwrap();
        let (_, second) = apply_code_periodic(&c_sr, &b_table, 2000).unwrap();
        let composite_is_shift =
            (0..table.points.len()).all(|p| second[first[p]] == table.rotate(p));
        println!("level {level}: c(S,R) . c(R,S) = shift: {composite_is_shift}");
    }
}

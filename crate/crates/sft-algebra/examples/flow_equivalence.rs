//! Flow equivalence in the polynomial setting: changing positive
//! powers of t preserves the Bowen-Franks group `cok(I - A(1))` and
//! `det(I - A(1))`, and distinguishes presentations that conjugacy
//! invariants cannot identify.
//!
//! Run with `cargo run --example flow_equivalence`.

use sft_algebra::exact::IntPoly;
use sft_algebra::polymatrix::{
    change_power, flow_invariants, Move, MoveLog, PolyMatrix, PresentationClass,
};

fn pm(size: usize, entries: &[&[i64]]) -> PolyMatrix {
    PolyMatrix::from_entries(size, entries.iter().map(|c| IntPoly::from_i64(c)).collect())
}

fn main() {
    // (3t) and (t^2 + 2t^3) present non-conjugate SFTs (different
    // det(I - A)), but the flow invariants agree.
    let a = pm(1, &[&[0, 3]]);
    let b = pm(1, &[&[0, 0, 1, 2]]);
    for (name, m) in [("A = (3t)", &a), ("B = (t^2 + 2t^3)", &b)] {
        let (group, det) = flow_invariants(m).unwrap();
        println!("{name}: Bowen-Franks = {group}, det(I - A(1)) = {det}");
        println!("   det(I - A) over Z[t] = {}", m.i_minus().det());
    }

    // A is carried to B by rewriting one monomial unit at a time.
    let mut log = MoveLog::new(PresentationClass::Nzc, a.i_minus()).unwrap();
    log.push(Move::ChangePower {
        i: 0,
        j: 0,
        from: 1,
        to: 2,
    })
    .unwrap();
    log.push(Move::ChangePower {
        i: 0,
        j: 0,
        from: 1,
        to: 3,
    })
    .unwrap();
    log.push(Move::ChangePower {
        i: 0,
        j: 0,
        from: 1,
        to: 3,
    })
    .unwrap();
    println!("\nrewriting (3t) one unit at a time: end = {}", log.end);
    assert_eq!(log.end, b.i_minus());
    log.replay().unwrap();

    // A larger displayed rewrite: two 2x2 presentations connected by
    // power changes.
    let first = pm(2, &[&[0, 0, 1, 0, 0, 1], &[0, 1, 0, 1], &[0, 0, 1], &[]]);
    let second = pm(
        2,
        &[
            &[0, 0, 1, 1],
            &[0, 0, 0, 0, 1, 1],
            &[0, 0, 0, 0, 0, 0, 0, 1],
            &[],
        ],
    );
    let (g1, d1) = flow_invariants(&first).unwrap();
    let (g2, d2) = flow_invariants(&second).unwrap();
    println!("\n2x2 rewrite endpoints share invariants: {g1} = {g2}, {d1} = {d2}");
    let one_unit = change_power(&first.i_minus(), 0, 0, 5, 3).unwrap();
    println!("after one unit rewrite t^5 -> t^3: {}", one_unit.i_minus());
}

//! Positive equivalence of polynomial presentations: the worked
//! stabilize-and-move computation, the PSSE equations turning an ESSE
//! into a move log inside I-NZC, and the resulting elementary
//! equivalence over Z[t].
//!
//! Run with `cargo run --example positive_equivalence`.

use sft_algebra::equivalence::{EsseWitness, Ring, SseChain, SseEdge};
use sft_algebra::exact::{IntMatrix, IntPoly};
use sft_algebra::polymatrix::{
    elementary_equivalence_from_sse, psse_chain, ElementaryMoveSpec, Move, MoveLog, MoveSide,
    PolyMatrix, PresentationClass,
};

fn main() {
    // Splitting a t^4 path off an entry: the 3x3 presentation B
    // reduces to (I - A) + 1 by one right move and one left move.
    let t = |c: &[i64]| IntPoly::from_i64(c);
    let b = PolyMatrix::from_entries(
        3,
        vec![
            t(&[0, 2]),
            t(&[0, 1]),
            t(&[0, 1]),
            t(&[0, 0, 1]),
            t(&[]),
            t(&[]),
            t(&[]),
            t(&[0, 0, 0, 1]),
            t(&[]),
        ],
    );
    let a = PolyMatrix::from_entries(
        2,
        vec![t(&[0, 2]), t(&[0, 1, 0, 0, 1]), t(&[0, 0, 1]), t(&[])],
    );
    let mut log = MoveLog::new(PresentationClass::TZplusT, b.i_minus()).unwrap();
    log.push(Move::Elementary(ElementaryMoveSpec {
        i: 2,
        j: 1,
        poly: t(&[0, 0, 0, 1]),
        side: MoveSide::Right,
    }))
    .unwrap();
    log.push(Move::Elementary(ElementaryMoveSpec {
        i: 0,
        j: 2,
        poly: t(&[0, 1]),
        side: MoveSide::Left,
    }))
    .unwrap();
    println!("worked 3x3 -> 2x2 computation:");
    println!("start = {}", log.start);
    println!("end   = {}", log.end);
    assert_eq!(log.end, a.i_minus().directsum_identity(1));
    println!("end equals (I - A) + 1 with A = {a}\n");

    // The PSSE equations of the (2) <-> [[1,1],[1,1]] elementary
    // equivalence, decomposed into single-entry moves that never leave
    // I-NZC.
    let r = IntMatrix::from_rows(&[&[1, 1]]);
    let s = IntMatrix::from_rows(&[&[1], &[1]]);
    let log = psse_chain(&r, &s).unwrap();
    println!("PSSE chain for R = {r}, S = {s}: {} moves", log.moves.len());
    println!("start = {}", log.start);
    println!("end   = {}", log.end);
    log.replay().unwrap();
    println!("replay verified; det along the log: {}", log.start.det());

    // The same ESSE as an elementary equivalence over Z[t]:
    // E ((I - tA) + I) F = (I - tB) + I with E, F products of
    // elementary matrices.
    let chain = SseChain {
        edges: vec![SseEdge::forward(EsseWitness::new(r, s, Ring::Z))],
        ring: Ring::Z,
    };
    let eq = elementary_equivalence_from_sse(&chain).unwrap();
    println!("\nelementary equivalence at stabilized size {}:", eq.size);
    println!("E = {} ({} factors)", eq.e, eq.e_factors.len());
    println!("F = {} ({} factors)", eq.f, eq.f_factors.len());
    println!("det E = {}, det F = {}", eq.e.det(), eq.f.det());
}

//! Elementary strong shift equivalences and what they generate: chain
//! verification, compression to a shift equivalence, the Maller-Shub
//! similarity of zero extensions, amalgamations, nilpotency lag bounds
//! and bounded neighbor enumeration.
//!
//! Run with `cargo run --example esse_chains`.

use sft_algebra::equivalence::{
    column_amalgamation_moves, compress_sse_to_se, esse_neighbors, maller_shub_witness,
    nilpotency_index, sse_zero_lag_lower_bound, verify_esse, verify_sse_chain, EsseWitness, Ring,
    SseChain, SseEdge,
};
use sft_algebra::exact::IntMatrix;
use sft_algebra::structure::NonnegMatrix;

fn main() {
    // The source of all examples: (2) = (1 1)(1; 1) and
    // [[1,1],[1,1]] = (1; 1)(1 1).
    let r = IntMatrix::from_rows(&[&[1, 1]]);
    let s = IntMatrix::from_rows(&[&[1], &[1]]);
    let w = EsseWitness::new(r, s, Ring::Zplus);
    let a = w.source().unwrap();
    let b = w.target().unwrap();
    println!("ESSE: A = {a}, B = {b}");
    assert!(verify_esse(&a, &b, &w).is_ok());

    // Out and back: a lag-2 chain from (2) to itself.
    let chain = SseChain {
        edges: vec![SseEdge::forward(w.clone()), SseEdge::forward(w.reversed())],
        ring: Ring::Zplus,
    };
    let (src, dst, lag) = verify_sse_chain(&chain).unwrap();
    println!("chain verified: lag {lag}, {src} -> {dst}");

    // Compression gives a shift equivalence of the same lag.
    let se = compress_sse_to_se(&chain).unwrap();
    println!(
        "compressed: R = {}, S = {}, lag {} (RS = A^2 = {})",
        se.r,
        se.s,
        se.lag,
        &se.r * &se.s
    );

    // The similarity of zero extensions behind every ESSE.
    let (u, m1, m2) = maller_shub_witness(&w).unwrap();
    println!("Maller-Shub: U = {u}");
    println!("             U M1 = M2 U with M1 = {m1}, M2 = {m2}");

    // A column amalgamation: merging the equal columns of a 3x3
    // presentation down to 2x2.
    let c = NonnegMatrix::from_rows(&[&[1, 1, 5], &[2, 2, 3], &[1, 1, 2]]).unwrap();
    let moves = column_amalgamation_moves(&c);
    println!(
        "\ncolumn amalgamation of {}: D = {} via R = {}, S = {}",
        c.inner(),
        moves[0].result,
        moves[0].witness.r,
        moves[0].witness.s
    );

    // Nilpotency forces a lag: the 3x3 shift block needs lag >= 2 to
    // reach the zero matrix.
    let n = IntMatrix::from_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    println!(
        "\nnilpotency index of the 3x3 shift block: {}, SSE-to-zero lag bound: {}",
        nilpotency_index(&n).unwrap(),
        sse_zero_lag_lower_bound(&n).unwrap()
    );

    // Bounded ESSE-neighbor enumeration from (2).
    let two = NonnegMatrix::from_rows(&[&[2]]).unwrap();
    let found = esse_neighbors(&two, 2, 2, 1_000_000).unwrap();
    println!("\nESSE neighbors of (2) with inner size <= 2, entries <= 2:");
    for (w, b) in &found.neighbors {
        println!("  B = {b} via R = {}, S = {}", w.r, w.s);
    }
}

//! The Kim-Roush sgc2 invariant: edge values from the matrix formula,
//! additivity over the triangles of the SSE complex (the Cocycle
//! Lemma), signed path sums, and vanishing on Z+ edges in trace-zero
//! components -- the mechanism behind the counterexamples to the
//! shift equivalence conjecture.
//!
//! Run with `cargo run --example sgc2_cocycle`.

use sft_algebra::autgyration::{path_sgc2, random_triangle, sgc2, verify_triangle, SsePath};
use sft_algebra::equivalence::{esse_neighbors, EsseWitness, Ring, SseEdge};
use sft_algebra::exact::IntMatrix;
use sft_algebra::structure::NonnegMatrix;

fn main() {
    // Hand values of the edge formula.
    let pairs = [
        (
            IntMatrix::from_rows(&[&[1, 1]]),
            IntMatrix::from_rows(&[&[1], &[1]]),
        ),
        (
            IntMatrix::from_rows(&[&[0, 1], &[0, 0]]),
            IntMatrix::identity(2),
        ),
        (IntMatrix::from_rows(&[&[2]]), IntMatrix::from_rows(&[&[1]])),
    ];
    for (r, s) in &pairs {
        println!("sgc2(R = {r}, S = {s}) = {}", sgc2(r, s).unwrap());
    }

    // The Cocycle Lemma on seeded triangles: the value of the long
    // edge is the sum of the values of the two short edges.
    let mut checked = 0;
    for seed in 0..200 {
        let t = random_triangle(3, -2, 2, seed);
        assert!(verify_triangle(&t).unwrap());
        let lhs = (sgc2(&t.r1, &t.s1).unwrap() + sgc2(&t.r2, &t.s2).unwrap()) % 2;
        assert_eq!(lhs, sgc2(&t.r3, &t.s3).unwrap());
        checked += 1;
    }
    println!("\ncocycle identity verified on {checked} seeded triangles");

    // Signed sums over paths: an edge followed by its reversal
    // cancels.
    let w = EsseWitness::new(
        IntMatrix::from_rows(&[&[2]]),
        IntMatrix::from_rows(&[&[1]]),
        Ring::Z,
    );
    let there = SsePath {
        edges: vec![SseEdge::forward(w.clone())],
        ring: Ring::Z,
    };
    let back = SsePath {
        edges: vec![SseEdge::forward(w.clone()), SseEdge::backward(w)],
        ring: Ring::Z,
    };
    println!(
        "\npath values: single edge {}, edge plus reversal {}",
        path_sgc2(&there).unwrap(),
        path_sgc2(&back).unwrap()
    );

    // On components with no short periodic orbits, sgc2 vanishes on
    // every Z+ edge -- a nonzero path value over Z therefore
    // obstructs any Z+ path between the endpoints.
    let a = NonnegMatrix::from_rows(&[&[0, 1, 2], &[0, 0, 1], &[0, 0, 0]]).unwrap();
    let found = esse_neighbors(&a, 3, 2, 30_000_000).unwrap();
    let mut all_zero = true;
    for (w, _) in &found.neighbors {
        all_zero &= sgc2(&w.r, &w.s).unwrap() == 0;
    }
    println!(
        "\ntrace-zero presentation: sgc2 = 0 on all {} enumerated Z+ edges: {all_zero}",
        found.neighbors.len()
    );
}

//! Structure of nonnegative matrices as SFT presentations:
//! nondegenerate cores, primitivity/irreducibility/period, cyclic
//! block form, higher-block presentations and periodic-point counts.
//!
//! Run with `cargo run --example structure_tour`.

use sft_algebra::exact::det_one_minus_tA;
use sft_algebra::structure::{
    cyclic_block_form, fix_counts, higher_block, is_irreducible, is_primitive, nondegenerate_core,
    period, NonnegMatrix, Primitivity,
};

fn classify(name: &str, m: &NonnegMatrix) {
    let prim = is_primitive(m);
    let irr = is_irreducible(m);
    print!("{name}: ");
    match prim {
        Primitivity::Primitive { exponent } => println!("primitive (A^{exponent} > 0)"),
        Primitivity::ImprimitivePeriod { period } => {
            println!("irreducible, period {period}")
        }
        Primitivity::Reducible { from, to } => {
            println!("reducible (vertex {to} unreachable from {from}), irreducible = {irr}")
        }
    }
}

fn main() {
    // Four matrices with four different structures.
    let a = NonnegMatrix::from_rows(&[&[1, 1, 1], &[1, 1, 1], &[0, 0, 0]]).unwrap();
    let b = NonnegMatrix::from_rows(&[&[1, 1], &[0, 1]]).unwrap();
    let c = NonnegMatrix::from_rows(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]).unwrap();
    let d = NonnegMatrix::from_rows(&[&[0, 0, 1], &[0, 0, 1], &[1, 1, 0]]).unwrap();
    classify("A", &a);
    classify("B", &b);
    classify("C", &c);
    classify("D", &d);

    // The cyclic block form of D: period 2, and the cyclic products
    // are primitive.
    let cbf = cyclic_block_form(&d).unwrap();
    println!(
        "\nD in cyclic block form: period {}, class sizes {:?}",
        cbf.period, cbf.class_sizes
    );
    for i in 0..cbf.period {
        let prod = cbf.cyclic_product(i);
        println!(
            "  cyclic product D_{} = {} (primitive: {})",
            i + 1,
            prod,
            is_primitive(&NonnegMatrix::new(prod.clone()).unwrap()).is_primitive()
        );
    }
    println!("period via BFS levels: {}", period(&d).unwrap());

    // Trivial presentation variants collapse to the core.
    let padded = NonnegMatrix::from_rows(&[&[2, 0], &[1, 0]]).unwrap();
    let (core, kept) = nondegenerate_core(&padded);
    println!("\ncore of [[2,0],[1,0]] = {} (kept {kept:?})", core.inner());

    // Higher-block presentations of the full 2-shift: bigger matrices,
    // same det(I - tA).
    let two = NonnegMatrix::from_rows(&[&[2]]).unwrap();
    for k in 1..=3 {
        let hb = higher_block(&two, k).unwrap();
        println!(
            "A^[{k}] is {}x{}, det(I-tA^[{k}]) = {}",
            hb.size(),
            hb.size(),
            det_one_minus_tA(hb.inner()).unwrap()
        );
    }

    // Periodic data: fixed points and least-period counts.
    let pd = fix_counts(&two, 6).unwrap();
    println!("\nfull 2-shift fix counts    : {:?}", pd.fix_counts);
    println!("least-period counts q_n    : {:?}", pd.least_period_counts);
}

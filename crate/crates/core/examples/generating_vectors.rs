//! Enumerating generating vectors and testing freeness of the diagonal
//! action.

use std::sync::Arc;

use isoprod::fuchsian::Signature;
use isoprod::genvec::{
    enumerate_generating_vectors, freeness_witness, validate_building_data, GeneratingVector,
};
use isoprod::group::Group;

pub fn run_example() -> anyhow::Result<()> {
    let g = Arc::new(Group::abelian(&[2, 4])?);
    let m: Signature = "(0|2^2,4^2)".parse()?;
    let n: Signature = "(1|2^2)".parse()?;
    let vs = enumerate_generating_vectors(&g, &m);
    let ws = enumerate_generating_vectors(&g, &n);
    println!("Z2 x Z4: {} vectors of {m}, {} of {n}", vs.len(), ws.len());

    let v =
        GeneratingVector::from_labels(&g, m.clone(), &["(1,0)", "(1,0)", "(0,1)", "(0,3)"], &[])?;
    let w = GeneratingVector::from_labels(&g, n.clone(), &["(1,2)", "(1,2)"], &["(0,0)", "(0,1)"])?;
    let bd = validate_building_data(&g, v.clone(), w)?;
    println!(
        "valid: V = {}  W = {}  invariants {:?}",
        v.display(&g),
        bd.w().display(&g),
        bd.invariants()
    );

    // W whose stabilizers contain (1,0), which V's stabilizers contain too.
    let bad = GeneratingVector::from_labels(&g, n, &["(1,0)", "(1,0)"], &["(0,1)", "(1,0)"])?;
    if let Some(x) = freeness_witness(&g, &v, &bad) {
        println!("not free: {} fixes points on both curves", g.label(x));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}

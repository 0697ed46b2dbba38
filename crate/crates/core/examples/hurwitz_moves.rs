//! Braid moves on genus-zero vectors and the torus moves on genus-one
//! vectors.

use isoprod::fuchsian::Signature;
use isoprod::genvec::GeneratingVector;
use isoprod::group::Group;
use isoprod::moves::{apply_trace, braid_move_genus0, parse_trace, torus2_moves, vector_orbit};

pub fn run_example() -> anyhow::Result<()> {
    let s3 = Group::symmetric(3)?;
    let sig = Signature::genus0(&[2, 2, 2, 2, 2, 2]);
    let t = ["(1 2)", "(1 2)", "(1 3)", "(1 3)", "(2 3)", "(2 3)"];
    let v = GeneratingVector::from_labels(&s3, sig, &t, &[])?;
    println!("V        = {}", v.display(&s3));
    println!(
        "sigma_1 V = {}",
        braid_move_genus0(&s3, &v, 1)?.display(&s3)
    );
    println!(
        "sigma_2 V = {}",
        braid_move_genus0(&s3, &v, 2)?.display(&s3)
    );
    println!("braid orbit of V: {} vectors", vector_orbit(&s3, &v)?.len());

    let g = Group::abelian(&[2, 4])?;
    let w = GeneratingVector::from_labels(
        &g,
        "(1|2^2)".parse()?,
        &["(1,0)", "(1,0)"],
        &["(0,1)", "(0,0)"],
    )?;
    for (name, image) in ["1", "2", "3", "4"].iter().zip(torus2_moves(&g, &w)?) {
        println!("move {name}: {} -> {}", w.display(&g), image.display(&g));
    }
    let chain = parse_trace("1,3,5,4")?;
    println!(
        "chain 1,3,5,4: {}",
        apply_trace(&g, &w, &chain)?.display(&g)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}

//! Finite groups as Cayley tables: construction, element orders,
//! conjugacy and automorphisms.

use isoprod::group::{parse_group_spec, Group, Perm};

pub fn run_example() -> anyhow::Result<()> {
    let s3 = Group::symmetric(3)?;
    let a = s3
        .index_of_perm(&Perm::parse_cycles(3, "(1 3)")?)
        .expect("in S3");
    let b = s3
        .index_of_perm(&Perm::parse_cycles(3, "(1 2)")?)
        .expect("in S3");
    // Products are read right to left, as for functions.
    println!("(1 3)(1 2) = {}", s3.label(s3.op(a, b)));
    println!("[a, b] = {}", s3.label(s3.commutator(a, b)));
    println!(
        "conjugacy class of (1 2): {:?}",
        s3.conjugacy_class(b)
            .iter()
            .map(|x| s3.label(x))
            .collect::<Vec<_>>()
    );

    for spec in ["Z2 x Z4", "D4", "Dic3", "A4", "S3 x Z3"] {
        let g = parse_group_spec(spec)?;
        println!(
            "{spec:<8} order {:>3}  abelian {:<5}  element orders {:?}  |Aut| = {}",
            g.order(),
            g.is_abelian(),
            g.order_statistics(),
            g.automorphisms()?.len()
        );
    }

    // In an abelian group the union of conjugates of <g> is just <g>; in S3
    // it picks up all three transpositions.
    println!(
        "conjugate-closed union of <(1 2)> in S3 has {} elements",
        s3.cyclic_conjugate_union(b).len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}

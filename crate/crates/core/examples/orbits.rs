//! Counting classes of building data, i.e. irreducible components, for a
//! single group and pair of signatures.

use isoprod::classify::orbit_classes;

pub fn run_example() -> anyhow::Result<()> {
    for (spec, m, n) in [
        ("Z2 x Z2", "(0|2^6)", "(1|2^2)"),
        ("Z2 x Z4", "(0|2^2,4^2)", "(1|2^2)"),
        ("Z4 x Z4", "(0|4^3)", "(1|2^2)"),
        ("A4", "(0|3^4)", "(1|2)"),
    ] {
        let (summary, warnings) = orbit_classes(spec, &m.parse()?, &n.parse()?)?;
        println!(
            "{spec} {m} {n}: {} free pairs in {} classes",
            summary.pairs,
            summary.classes.len()
        );
        for c in &summary.classes {
            println!("    {:>6} x  V = {}  W = {}", c.class_size, c.v, c.w);
        }
        for w in warnings {
            println!("    warning: {w}");
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}

//! The abelian classification: four families and their component counts.

use isoprod::classify::classify_abelian;

pub fn run_example() -> anyhow::Result<()> {
    let result = classify_abelian()?;
    for r in &result.records {
        println!(
            "{:<4} G = {:<12} m = ({:<8}) g(C) = {:<2} g(F) = {}  components = {}  dim = {}",
            r.label, r.group, r.m, r.g_c, r.g_f, r.components, r.dimension
        );
    }
    let excluded = result.outcomes.iter().filter(|o| !o.survives()).count();
    println!(
        "{} numerical candidates, {excluded} excluded by group theory",
        result.outcomes.len()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}

//! The six published nonabelian constructions, then a catalog search.

use isoprod::classify::{search_nonabelian, verify_paper_nonabelian_examples};

pub fn run_example() -> anyhow::Result<()> {
    for r in verify_paper_nonabelian_examples()? {
        println!(
            "{:<3} |G| = {:<2} g(C) = {:<2} g(F) = {}  V = {}  W = {}",
            r.label, r.order, r.g_c, r.g_f, r.representatives[0].v, r.representatives[0].w
        );
    }
    let max_order = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(24);
    let found = search_nonabelian(max_order)?;
    println!(
        "search up to order {max_order}: {} rows",
        found.records.len()
    );
    for r in &found.records {
        println!(
            "  {:<12} {:<14} m = ({}) n = ({}) classes = {}",
            r.label, r.group, r.m, r.n, r.components
        );
    }
    for w in &found.warnings {
        println!("  warning: {w}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}

//! Machine-checks the hand computations behind the component counts of the
//! four abelian families.

use isoprod::classify::replay_section6;

pub fn run_example() -> anyhow::Result<()> {
    for family in ["I", "II", "III", "IV"] {
        let trace = replay_section6(family)?;
        println!("family {family}: {} claims", trace.checks.len());
        for c in &trace.checks {
            println!("  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.claim);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}

//! Building a report, rendering it as JSON/CSV/table and checking it against
//! the built-in golden table.

use isoprod::classify::classify_abelian;
use isoprod::report::{compare_exact, csv_to_rows, golden_abelian, Format, Report};

pub fn run_example() -> anyhow::Result<()> {
    let mut report = Report::new(
        vec!["report-example".into()],
        "abelian groups by invariant factors",
    );
    report.records = classify_abelian()?.records;
    report.golden = Some(compare_exact(&golden_abelian(), &report.records));

    let json = report.to_json()?;
    assert_eq!(Report::from_json(&json)?, report);
    println!("json: {} bytes, round-trips", json.len());

    let rows = csv_to_rows(&report.to_csv()?)?;
    println!("csv: {} rows", rows.len());
    print!("{}", report.render(Format::Table)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> anyhow::Result<()> {
    run_example()
}

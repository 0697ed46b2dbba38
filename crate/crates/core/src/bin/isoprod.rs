use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use isoprod::classify::{
    classify_abelian, orbit_classes, replay_section6, search_nonabelian_in,
    verify_paper_nonabelian_examples, ClassifyError, FamilyRecord, GroupCatalog,
};
use isoprod::fuchsian::Signature;
use isoprod::report::{
    compare_contains, compare_exact, golden_abelian, golden_nonabelian, Format, GoldenRow, Report,
};

/// Families of surfaces with p_g = q = 1 isogenous to an unmixed product.
#[derive(Parser)]
#[command(name = "isoprod", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the families with abelian group.
    ClassifyAbelian {
        #[command(flatten)]
        out: Output,
        /// Do not compare with the built-in golden table.
        #[arg(long)]
        no_golden: bool,
        /// Compare with this golden table (JSON) instead of the built-in one.
        #[arg(long, value_name = "FILE", conflicts_with = "no_golden")]
        golden: Option<PathBuf>,
        /// Re-check the hand computations of the four component counts.
        #[arg(long)]
        replay_section6: bool,
    },
    /// Search the curated nonabelian catalog, or verify the six published examples.
    Nonabelian {
        #[arg(long, default_value_t = 60)]
        max_order: usize,
        #[arg(long)]
        verify_paper: bool,
        #[command(flatten)]
        out: Output,
        #[arg(long)]
        no_golden: bool,
        #[arg(long, value_name = "FILE", conflicts_with = "no_golden")]
        golden: Option<PathBuf>,
    },
    /// Count classes of building data for one group and pair of signatures.
    ///
    /// Groups: `Z2 x Z4`, `S4`, `A5`, `D6` (order 12), `Dic3`, products with `x`.
    Orbits {
        group: String,
        /// Fibre signature, e.g. `(0|2^2,4^2)`.
        signature: String,
        /// Base signature, e.g. `(1|2^2)`.
        base_signature: String,
        #[command(flatten)]
        out: Output,
    },
}

/// Errors in the user's input; everything else is an internal failure.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("ISOPROD_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("ISOPROD_THREADS must be a number, got `{v}`")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

/// Every record must survive a second pass through validation.
fn check_records(records: &[FamilyRecord]) -> Result<()> {
    for r in records {
        r.revalidate().with_context(|| {
            format!(
                "record {} ({} m = {}) failed revalidation",
                r.label, r.group, r.m
            )
        })?;
    }
    Ok(())
}

fn emit(report: &Report, out: &Output) -> Result<()> {
    let text = report.render(out.format)?;
    match &out.output {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn load_golden(path: Option<&PathBuf>, builtin: fn() -> Vec<GoldenRow>) -> Result<Vec<GoldenRow>> {
    match path {
        None => Ok(builtin()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| UsageError(format!("reading {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| UsageError(format!("{}: not a golden table: {e}", p.display())).into())
        }
    }
}

fn golden_exit(report: &Report) -> u8 {
    match &report.golden {
        Some(g) if g.checked && !g.matches => {
            for d in &g.differences {
                eprintln!("golden mismatch: {d}");
            }
            1
        }
        _ => 0,
    }
}

fn run(cli: Cli) -> Result<u8> {
    let started = Instant::now();
    let argv: Vec<String> = std::env::args().collect();
    match cli.command {
        Command::ClassifyAbelian {
            out,
            no_golden,
            golden,
            replay_section6: replay,
        } => {
            let expected = load_golden(golden.as_ref(), golden_abelian)?;
            let result = classify_abelian()?;
            check_records(&result.records)?;
            let mut report = Report::new(
                argv,
                "all abelian groups of each candidate order, by invariant factors",
            );
            report.records = result.records;
            report.exclusions = result.outcomes;
            let mut replay_failed = false;
            if replay {
                for family in ["I", "II", "III", "IV"] {
                    match replay_section6(family) {
                        Ok(t) => report.traces.push(t),
                        Err(ClassifyError::Replay {
                            trace,
                            claim,
                            detail,
                            ..
                        }) => {
                            eprintln!("replay of {family} failed at `{claim}`: {detail}");
                            report.traces.push(*trace);
                            replay_failed = true;
                        }
                        Err(e) => return Err(e.into()),
                    }
                }
            }
            if !no_golden {
                report.golden = Some(compare_exact(&expected, &report.records));
            }
            report.elapsed_ms = started.elapsed().as_millis() as u64;
            emit(&report, &out)?;
            if replay_failed {
                return Ok(3);
            }
            Ok(golden_exit(&report))
        }
        Command::Nonabelian {
            max_order,
            verify_paper,
            out,
            no_golden,
            golden,
        } => {
            let expected = load_golden(golden.as_ref(), golden_nonabelian)?;
            let mut report;
            if verify_paper {
                report = Report::new(argv, "the six published nonabelian constructions");
                report.records = verify_paper_nonabelian_examples()?;
            } else {
                let catalog = GroupCatalog::build(2, max_order.max(6))?;
                report = Report::new(argv, catalog.describe());
                let search = search_nonabelian_in(&catalog, max_order)?;
                report.records = search.records;
                report.warnings = search.warnings;
            }
            check_records(&report.records)?;
            // The published rows reach order 60; smaller searches are only
            // compared against an explicitly supplied table.
            if !no_golden && (verify_paper || max_order >= 60 || golden.is_some()) {
                report.golden = Some(compare_contains(&expected, &report.records));
            }
            report.elapsed_ms = started.elapsed().as_millis() as u64;
            emit(&report, &out)?;
            Ok(golden_exit(&report))
        }
        Command::Orbits {
            group,
            signature,
            base_signature,
            out,
        } => {
            let m: Signature = signature.parse().map_err(|e| UsageError(format!("{e}")))?;
            let n: Signature = base_signature
                .parse()
                .map_err(|e| UsageError(format!("{e}")))?;
            let (summary, warnings) = orbit_classes(&group, &m, &n).map_err(|e| match e {
                ClassifyError::Spec(_)
                | ClassifyError::Fuchsian(_)
                | ClassifyError::Signature(_) => anyhow::Error::new(UsageError(e.to_string())),
                other => other.into(),
            })?;
            let mut report = Report::new(argv, format!("single group {group}"));
            report.orbits = Some(summary);
            report.warnings = warnings;
            report.elapsed_ms = started.elapsed().as_millis() as u64;
            emit(&report, &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}

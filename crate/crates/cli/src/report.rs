//! Report emission: a fixed-width text table or CSV with the shared
//! schema `(name, lhs, rhs, abs_gap, tol, pass)`. Output is
//! deterministic byte-for-byte for a fixed command line and seed.

use clap::ValueEnum;
use specmeasure::verify::CheckResult;

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
}

pub fn fmt_f64(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e15 {
        format!("{}", x)
    } else {
        format!("{:.12e}", x)
    }
}

pub fn print_results(results: &[CheckResult], format: OutputFormat) {
    match format {
        OutputFormat::Csv => {
            println!("name,lhs,rhs,abs_gap,tol,pass");
            for r in results {
                println!(
                    "{},{},{},{},{},{}",
                    r.name,
                    fmt_f64(r.lhs),
                    fmt_f64(r.rhs),
                    fmt_f64(r.abs_gap),
                    fmt_f64(r.tol),
                    r.pass
                );
            }
        }
        OutputFormat::Text => {
            let width = results
                .iter()
                .map(|r| r.name.len())
                .max()
                .unwrap_or(4)
                .max(4);
            println!(
                "{:<width$}  {:>14}  {:>14}  {:>10}  {:>8}  result",
                "name",
                "lhs",
                "rhs",
                "abs_gap",
                "tol",
                width = width
            );
            for r in results {
                println!(
                    "{:<width$}  {:>14}  {:>14}  {:>10.3e}  {:>8.1e}  {}",
                    r.name,
                    fmt_short(r.lhs),
                    fmt_short(r.rhs),
                    r.abs_gap,
                    r.tol,
                    if r.pass { "PASS" } else { "FAIL" },
                    width = width
                );
            }
        }
    }
}

// compact numeric cell that never loses the exponent
fn fmt_short(x: f64) -> String {
    if x == x.trunc() && x.abs() < 1e12 {
        format!("{x}")
    } else {
        format!("{x:.6e}")
    }
}

/// Prints the summary line and the first counterexample; returns whether
/// everything passed.
pub fn summarize(results: &[CheckResult], format: OutputFormat) -> bool {
    let failed: Vec<&CheckResult> = results.iter().filter(|r| !r.pass).collect();
    let ok = failed.is_empty();
    match format {
        OutputFormat::Text => {
            if ok {
                println!("PASS ({} checks)", results.len());
            } else {
                println!("FAIL ({} of {} checks failed)", failed.len(), results.len());
                if let Some(first) = failed.first() {
                    println!("first failure: {}", first.name);
                    if let Some(cx) = &first.counterexample {
                        println!("counterexample (dense graph block follows):");
                        println!("{cx}");
                    }
                }
            }
        }
        OutputFormat::Csv => {
            // keep stdout as pure CSV; details go to stderr
            if !ok {
                if let Some(first) = failed.first() {
                    eprintln!("first failure: {}", first.name);
                    if let Some(cx) = &first.counterexample {
                        eprintln!("{cx}");
                    }
                }
            }
        }
    }
    ok
}

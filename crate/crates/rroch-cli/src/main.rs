//! Batch command-line surface over the characteristic-class calculator:
//! renders universal polynomials, evaluates classes of described bundles,
//! and runs the verification suites with machine-readable reports.
//!
//! Exit codes: 0 success, 1 verification failure or violated input
//! invariant, 2 usage or parse error.

mod bundlespec;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use rroch::render::{lift_rational, series_json, series_latex, series_text, SeriesJson};
use rroch::{
    verify_generating_identity, verify_grr_zero_section, verify_lambda_chern,
    verify_pushforward_basis, verify_rr_without_denominators, verify_star_kernel, CalcError,
    IVPoly, Series, SuiteReport, UniversalContext,
};

#[derive(Parser)]
#[command(
    name = "rroch",
    about = "Exact calculator for Chern classes, Chern characters, Todd classes and universal Riemann-Roch polynomials",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum BundleOp {
    Chern,
    Ch,
    Todd,
    Star,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    LambdaChern,
    StarKernel,
    Generating,
    Pushforward,
    Rrwd,
    Grr,
}

#[derive(Subcommand)]
enum Command {
    /// Render the universal polynomial P[n,r].
    UniversalPoly {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a characteristic class of the bundles in a spec file.
    Bundle {
        #[arg(long, value_enum)]
        op: BundleOp,
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value_t = 4)]
        truncate: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and report pass/fail per case.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, default_value_t = 4)]
        truncate: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the grid of P[n,r] for all n + r up to a bound.
    PnrTable {
        #[arg(long, default_value_t = 5)]
        bound: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            f.write_all(content.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            Ok(())
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct PolyJson {
    n: u32,
    r: u32,
    poly: SeriesJson,
}

fn universal_poly(n: u32, r: u32) -> Result<Series<IVPoly>, String> {
    if r == 0 {
        return Err("r must be at least 1".into());
    }
    if n + r > 10 {
        return Err("n + r must be at most 10".into());
    }
    let ctx = UniversalContext::new(n, r, n + r).map_err(|e| e.to_string())?;
    ctx.p_nr().map_err(|e| e.to_string())
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::UniversalPoly { n, r, format, out } => {
            let p = universal_poly(n, r)?;
            let content = match format {
                Format::Text => format!("{}\n", series_text(&p)),
                Format::Latex => format!("{}\n", series_latex(&p)),
                Format::Json => json_string(&PolyJson {
                    n,
                    r,
                    poly: series_json(&p),
                }),
            };
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bundle {
            op,
            spec,
            truncate,
            format,
            out,
        } => {
            if truncate > 12 {
                return Err("truncate must be at most 12".into());
            }
            let text = std::fs::read_to_string(&spec)
                .map_err(|e| format!("cannot read {}: {e}", spec.display()))?;
            let decls = bundlespec::parse(&text)?;
            let result = match bundlespec::evaluate(&decls, op_name(op), truncate) {
                Ok(series) => series,
                Err(bundlespec::EvalError::Invariant(msg)) => {
                    eprintln!("invariant violation: {msg}");
                    return Ok(ExitCode::FAILURE);
                }
                Err(bundlespec::EvalError::Usage(msg)) => return Err(msg),
            };
            let lifted = lift_rational(&result);
            let content = match format {
                Format::Text => format!("{}\n", series_text(&lifted)),
                Format::Latex => format!("{}\n", series_latex(&lifted)),
                Format::Json => json_string(&series_json(&lifted)),
            };
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            suite,
            n,
            r,
            truncate,
            format,
            out,
        } => {
            if n > 4 || r > 4 || r == 0 || truncate > 10 {
                return Err("bounds: 1 <= r <= 4, n <= 4, truncate <= 10".into());
            }
            if format == Format::Latex {
                return Err("verify reports support text and json formats".into());
            }
            let report = run_suite(suite, n, r, truncate).map_err(|e| e.to_string())?;
            let content = match format {
                Format::Json => json_string(&report),
                _ => report_text(&report),
            };
            emit(&out, &content)?;
            Ok(if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::PnrTable { bound, format, out } => {
            if bound == 0 || bound > 8 {
                return Err("bound must be between 1 and 8".into());
            }
            let mut entries = Vec::new();
            for total in 1..=bound {
                for r in 1..=total {
                    let n = total - r;
                    entries.push((n, r, universal_poly(n, r)?));
                }
            }
            let content = match format {
                Format::Text => {
                    let mut s = String::new();
                    for (n, r, p) in &entries {
                        s.push_str(&format!("P[{n},{r}] = {}\n", series_text(p)));
                    }
                    s
                }
                Format::Latex => {
                    let mut s = String::new();
                    for (n, r, p) in &entries {
                        s.push_str(&format!("P_{{{n},{r}}} &= {} \\\\\n", series_latex(p)));
                    }
                    s
                }
                Format::Json => {
                    let rows: Vec<PolyJson> = entries
                        .into_iter()
                        .map(|(n, r, p)| PolyJson {
                            n,
                            r,
                            poly: series_json(&p),
                        })
                        .collect();
                    json_string(&rows)
                }
            };
            emit(&out, &content)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn op_name(op: BundleOp) -> &'static str {
    match op {
        BundleOp::Chern => "chern",
        BundleOp::Ch => "ch",
        BundleOp::Todd => "todd",
        BundleOp::Star => "star",
    }
}

fn run_suite(suite: Suite, n: u32, r: u32, trunc: u32) -> Result<SuiteReport, CalcError> {
    let trunc = trunc.max(n + r);
    match suite {
        Suite::LambdaChern => verify_lambda_chern(r, trunc),
        Suite::StarKernel => verify_star_kernel(n, r, trunc),
        Suite::Generating => verify_generating_identity(r, trunc.max(r)),
        Suite::Pushforward => verify_pushforward_basis(r, trunc),
        Suite::Rrwd => verify_rr_without_denominators(n, r, trunc),
        Suite::Grr => verify_grr_zero_section(n, r, trunc),
        Suite::All => {
            let parts = vec![
                verify_lambda_chern(r, trunc)?,
                verify_star_kernel(n, r, trunc)?,
                verify_generating_identity(r, trunc.max(r))?,
                verify_pushforward_basis(r, trunc)?,
                verify_rr_without_denominators(n, r, trunc)?,
                verify_grr_zero_section(n, r, trunc)?,
            ];
            Ok(SuiteReport::merge(
                format!("all-n{n}-r{r}-N{trunc}"),
                parts,
            ))
        }
    }
}

fn report_text(report: &SuiteReport) -> String {
    let mut s = String::new();
    for case in &report.cases {
        if case.pass {
            s.push_str(&format!("PASS {}\n", case.id));
        } else {
            let detail = case.first_failure.as_deref().unwrap_or("mismatch");
            s.push_str(&format!("FAIL {}: {detail}\n", case.id));
        }
    }
    s.push_str(&format!(
        "suite {}: {}\n",
        report.suite,
        if report.pass { "PASS" } else { "FAIL" }
    ));
    s
}

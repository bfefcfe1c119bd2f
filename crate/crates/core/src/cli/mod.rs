//! Command-line front end.
//!
//! `run_command` never touches the process: it returns the exit code together
//! with what would go to standard output and standard error, so the binary is a
//! thin shell and the harness tests can call it directly.

mod parse;

pub use parse::{format_form, parse_form};

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::base_groups::CurveConfig;
use crate::error::Result;
use crate::group_ring_model::{check_ring_iso, check_splitting, EXHAUSTIVE_RANK_BOUND};
use crate::witt_engine::{
    canonical_form, enumerate_classes, equals, invariant_profile, rank_one_group_structure,
    verify_rewriting_identities, verify_quaternion_distinctness, verify_relations, Census,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "curve-witt",
    version,
    about = "Witt rings of curves with good reduction over non-dyadic local fields"
)]
struct Cli {
    /// Residue field cardinality mod 4 (1 or 3).
    #[arg(long = "q-mod-4", global = true, default_value_t = 3, allow_negative_numbers = true)]
    q_mod_4: i64,

    /// Rank r of the 2-torsion Picard group (n = 2^r).
    #[arg(long = "picard-rank", global = true, default_value_t = 1, allow_negative_numbers = true)]
    picard_rank: i64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Canonical representative of a form's Witt class.
    Reduce { form: String },
    /// Decide whether two forms are Witt-equivalent.
    Equal { left: String, right: String },
    /// Rank parity, signed discriminant and Witt invariant.
    Invariants { form: String },
    /// Census of canonical classes per shape.
    Enumerate,
    /// Run the structural verification suites.
    Verify,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutput {
    fn usage(message: String) -> Self {
        CommandOutput {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                CommandOutput::usage(rendered)
            } else {
                CommandOutput {
                    code: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let (code, body) = match execute(&cli) {
        Ok(result) => result,
        Err(e) => return CommandOutput::usage(format!("error: {e}\n")),
    };
    match &cli.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => CommandOutput {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => CommandOutput::usage(format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => CommandOutput {
            code,
            stdout: body,
            stderr: String::new(),
        },
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let cfg = CurveConfig::new(cli.q_mod_4, cli.picard_rank)?;
    match &cli.command {
        Command::Reduce { form } => {
            let canon = canonical_form(&parse_form(form, &cfg)?);
            let payload = format_form(&canon.payload);
            let shape = canon.tag.template();
            let out = match cli.format {
                Format::Json => json_line(&json!({ "shape": shape, "payload": payload })),
                Format::Csv => csv_rows(&["shape", "payload"], &[vec![shape.into(), payload]]),
                Format::Text => format!("shape: {shape}\npayload: {payload}\n"),
            };
            Ok((EXIT_OK, out))
        }
        Command::Equal { left, right } => {
            let eq = equals(&parse_form(left, &cfg)?, &parse_form(right, &cfg)?)?;
            let out = match cli.format {
                Format::Json => json_line(&json!({ "equal": eq })),
                Format::Csv => csv_rows(&["equal"], &[vec![eq.to_string()]]),
                Format::Text => format!("{eq}\n"),
            };
            Ok((if eq { EXIT_OK } else { EXIT_FALSE }, out))
        }
        Command::Invariants { form } => {
            let p = invariant_profile(&parse_form(form, &cfg)?);
            let parity = u8::from(p.rank_parity);
            let disc = p.signed_disc.to_string();
            let witt = p.witt_inv.map(|w| w.to_string());
            let out = match cli.format {
                Format::Json => {
                    let mut obj = json!({ "rank_parity": parity, "signed_disc": disc });
                    if let Some(w) = &witt {
                        obj["witt_inv"] = json!(w);
                    }
                    json_line(&obj)
                }
                Format::Csv => csv_rows(
                    &["rank_parity", "signed_disc", "witt_inv"],
                    &[vec![parity.to_string(), disc, witt.unwrap_or_default()]],
                ),
                Format::Text => format!("{p}\n"),
            };
            Ok((EXIT_OK, out))
        }
        Command::Enumerate => {
            let census = enumerate_classes(&cfg)?;
            let code = if census.matches_formulas() { EXIT_OK } else { EXIT_FALSE };
            Ok((code, render_census(&census, cli.format)))
        }
        Command::Verify => {
            let checks = run_verification(&cfg)?;
            let failed = checks.iter().any(|c| c.status == Status::Fail);
            let code = if failed { EXIT_FALSE } else { EXIT_OK };
            Ok((code, render_checks(&checks, cli.format)))
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn render_census(census: &Census, format: Format) -> String {
    match format {
        Format::Json => json_line(census),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = census
                .shapes
                .iter()
                .map(|s| vec![s.shape.template().to_string(), s.count.to_string()])
                .collect();
            rows.push(vec!["nontrivial".into(), census.nontrivial.to_string()]);
            rows.push(vec!["total".into(), census.total.to_string()]);
            csv_rows(&["shape", "count"], &rows)
        }
        Format::Text => {
            let mut out = format!(
                "q = {} mod 4, r = {}, n = {}\n",
                census.q_mod_4, census.picard_rank, census.n
            );
            for s in &census.shapes {
                let _ = writeln!(out, "{:<20} {:>8}", s.shape.template(), s.count);
            }
            let _ = writeln!(out, "{:<20} {:>8}", "nontrivial", census.nontrivial);
            let _ = writeln!(out, "{:<20} {:>8}", "total", census.total);
            out
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        status: if passed { Status::Pass } else { Status::Fail },
        detail,
    }
}

/// All structural suites for one configuration. The table checks are skipped above
/// the exhaustive rank bound.
pub fn run_verification(cfg: &CurveConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let d = verify_quaternion_distinctness(cfg)?;
    checks.push(check(
        "quaternion_distinctness",
        d.passed,
        format!("{} norm forms, {} trivial", d.norm_forms, d.trivial),
    ));
    let r = rank_one_group_structure(cfg)?;
    checks.push(check(
        "rank_one_structure",
        r.passed,
        format!("order {}, exponent {}", r.order, r.exponent),
    ));
    if cfg.picard_rank() <= EXHAUSTIVE_RANK_BOUND {
        let iso = check_ring_iso(cfg)?;
        checks.push(check(
            "ring_isomorphism",
            iso.passed,
            format!(
                "{} elements, {} addition and {} multiplication pairs, {} failures",
                iso.elements, iso.addition_pairs, iso.multiplication_pairs, iso.failures
            ),
        ));
        let split = check_splitting(cfg)?;
        checks.push(check(
            "splitting_map",
            split.passed,
            format!("{} failures", split.failures),
        ));
    } else {
        for name in ["ring_isomorphism", "splitting_map"] {
            checks.push(Check {
                name,
                status: Status::Skipped,
                detail: format!("picard rank above {EXHAUSTIVE_RANK_BOUND}"),
            });
        }
    }
    let rel = verify_relations(cfg)?;
    checks.push(check(
        "relations",
        rel.passed,
        format!("{} relations, {} failures", rel.checked, rel.failures.len()),
    ));
    let rewrites = verify_rewriting_identities(cfg)?;
    checks.push(check(
        "rewriting_identities",
        rewrites.passed,
        format!("{} identities, {} failures", rewrites.checked, rewrites.failures.len()),
    ));
    Ok(checks)
}

fn render_checks(checks: &[Check], format: Format) -> String {
    let passed = checks.iter().all(|c| c.status != Status::Fail);
    match format {
        Format::Json => json_line(&json!({ "checks": checks, "passed": passed })),
        Format::Csv => {
            let rows: Vec<Vec<String>> = checks
                .iter()
                .map(|c| {
                    let status = serde_json::to_value(c.status).expect("status");
                    vec![c.name.to_string(), status.as_str().unwrap_or_default().to_string(), c.detail.clone()]
                })
                .collect();
            csv_rows(&["check", "status", "detail"], &rows)
        }
        Format::Text => {
            let mut out = String::new();
            for c in checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                let _ = writeln!(out, "{tag} {:<24} {}", c.name, c.detail);
            }
            let _ = writeln!(out, "{}", if passed { "all checks passed" } else { "some checks failed" });
            out
        }
    }
}

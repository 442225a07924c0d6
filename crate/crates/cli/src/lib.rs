//! Command-line driver for the `circle-genera` library.
//!
//! Exit codes: `0` success, `1` unreadable or invalid input, `2` fixed-point
//! data whose Todd (or requested) localization sum keeps a pole.

mod report;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use circle_genera::exact_ring::{Rational, Ring};
use circle_genera::generators::{cp_n_dataset, product_dataset, semifree_sphere_power};
use circle_genera::genus::{AnyGenus, BuiltinGenus, GenusSpec};
use circle_genera::localization::{genus_via_localization, FixedPointSet};
use circle_genera::theorems::{classify_hamiltonian_at, semifree_profile, solve_semifree_system, Verdict};

pub use report::{ComputeReport, FullReport, NegativeTerm, ReportChecks, SemifreeReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "circle-genera", version, about = "Genera of circle actions from fixed-point data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the localization sum of one genus.
    Compute {
        /// Fixed-point data file, or `-` for stdin.
        input: PathBuf,
        /// todd, chi_y, signature, euler, or custom:<path>
        #[arg(long, default_value = "todd")]
        genus: String,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether the action can be Hamiltonian.
    Classify {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run every genus and every check on one dataset.
    Report {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Write fixed-point data of a standard action.
    Example {
        #[command(subcommand)]
        kind: ExampleKind,
    },
    /// Solve the semi-free system and compare with the binomial profile.
    Semifree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1")]
        lambda: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Subcommand)]
pub enum ExampleKind {
    /// Linear action on CP(n) with the given distinct weights.
    Cpn {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weights: Vec<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Diagonal action on the product of two datasets.
    Product {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rotation of every factor of (S^2)^n.
    Semifree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Truncation order; defaults to n + 8.
    #[arg(long)]
    pub order: Option<usize>,
    /// Print machine-readable JSON.
    #[arg(long)]
    pub json: bool,
    /// Write the output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

/// What a command produced: text for stdout (or `--out`), diagnostics for
/// stderr, and the exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub output: String,
    pub diagnostics: Vec<String>,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let out_path = cli.command.out_path().map(Path::to_path_buf);
    match run(cli) {
        Ok(outcome) => {
            for d in &outcome.diagnostics {
                let _ = writeln!(stderr, "{d}");
            }
            let written = match &out_path {
                Some(p) => fs::write(p, &outcome.output),
                None => stdout.write_all(outcome.output.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return EXIT_INPUT;
            }
            outcome.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}

impl Command {
    fn out_path(&self) -> Option<&Path> {
        match self {
            Command::Compute { common, .. }
            | Command::Classify { common, .. }
            | Command::Report { common, .. }
            | Command::Semifree { common, .. } => common.out.as_deref(),
            Command::Example { kind } => match kind {
                ExampleKind::Cpn { out, .. }
                | ExampleKind::Product { out, .. }
                | ExampleKind::Semifree { out, .. } => out.as_deref(),
            },
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Compute {
            input,
            genus,
            common,
        } => compute(&input, &genus, &common),
        Command::Classify { input, common } => classify(&input, &common),
        Command::Report { input, common } => full_report(&input, &common),
        Command::Example { kind } => example(kind),
        Command::Semifree { n, lambda, common } => semifree(n, &lambda, &common),
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::input(format!("cannot read stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(text)
}

/// Reads and validates a fixed-point data file.
pub fn load_dataset(path: &Path) -> Result<FixedPointSet, CliError> {
    let fps: FixedPointSet = serde_json::from_str(&read_text(path)?)
        .map_err(|e| CliError::input(format!("malformed fixed-point data in {}: {e}", path.display())))?;
    let validation = fps.validate();
    if !validation.is_valid() {
        return Err(CliError::input(format!("invalid fixed-point data: {validation}")));
    }
    Ok(fps)
}

fn resolve_genus(name: &str) -> Result<AnyGenus, CliError> {
    if let Some(path) = name.strip_prefix("custom:") {
        let text = read_text(Path::new(path))?;
        return serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("malformed genus file {path}: {e}")));
    }
    name.parse::<BuiltinGenus>()
        .map(BuiltinGenus::spec)
        .map_err(|e| CliError::input(e.to_string()))
}

fn order_for(fps: &FixedPointSet, common: &Common) -> Result<usize, CliError> {
    let order = common.order.unwrap_or_else(|| fps.default_order());
    if order < fps.min_order() {
        return Err(CliError::input(format!(
            "--order {order} is below the minimum {} for half-dimension {}",
            fps.min_order(),
            fps.half_dimension
        )));
    }
    Ok(order)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

/// Conventional symbol of a genus in human output.
fn symbol(name: &str) -> &str {
    match name {
        "todd" => "Td",
        "chi_y" => "χ_y",
        "signature" => "σ",
        "euler" => "χ",
        other => other,
    }
}

fn compute(input: &Path, genus: &str, common: &Common) -> Result<Outcome, CliError> {
    let fps = load_dataset(input)?;
    let genus = resolve_genus(genus)?;
    let order = order_for(&fps, common)?;
    let report = match &genus {
        AnyGenus::Rational(g) => compute_report(g, &fps, order)?,
        AnyGenus::YPolynomial(g) => compute_report(g, &fps, order)?,
    };
    let mut outcome = Outcome::default();
    if !report.negative_part_zero {
        outcome.code = EXIT_INCONSISTENT;
        let terms: Vec<String> = report
            .negative_terms
            .iter()
            .map(|t| format!("u^{}: {}", t.exponent, t.display))
            .collect();
        outcome.diagnostics.push(format!(
            "negative part of the {} sum is nonzero ({}); the data is not a circle action",
            report.genus,
            terms.join(", ")
        ));
    }
    outcome.output = if common.json {
        to_json(&report)
    } else {
        let mut s = format!(
            "genus {} at truncation order {}; sum known through u^{}\nsum = {}\n",
            report.genus, report.order, report.precision, report.series
        );
        if let Some(v) = &report.value_display {
            s.push_str(&format!("{} = {v}\n", symbol(&report.genus)));
        }
        s
    };
    Ok(outcome)
}

/// Localization report for one genus.
pub fn compute_report<R: Ring + Serialize>(
    genus: &GenusSpec<R>,
    fps: &FixedPointSet,
    order: usize,
) -> Result<ComputeReport, CliError> {
    let report = genus_via_localization(genus, fps, order)
        .map_err(|e| CliError::input(e.to_string()))?;
    let value = |r: &R| serde_json::to_value(r).expect("ring elements serialize");
    let negative_terms = report
        .negative_terms()
        .into_iter()
        .map(|(exponent, c)| NegativeTerm {
            exponent,
            coefficient: value(&c),
            display: c.to_string(),
        })
        .collect();
    let ok = report.negative_part_zero;
    Ok(ComputeReport {
        genus: report.genus_name.clone(),
        ring: genus.ring(),
        order,
        precision: report.laurent.precision(),
        series: report.laurent.to_string(),
        negative_part_zero: ok,
        negative_terms,
        value: ok.then(|| value(&report.constant_term)),
        value_display: ok.then(|| report.constant_term.to_string()),
    })
}

fn classify(input: &Path, common: &Common) -> Result<Outcome, CliError> {
    let fps = load_dataset(input)?;
    let order = order_for(&fps, common)?;
    let verdict = classify_hamiltonian_at(&fps, order).map_err(|e| CliError::input(e.to_string()))?;
    let code = match verdict.verdict {
        Verdict::NotRealizable => EXIT_INCONSISTENT,
        _ => EXIT_OK,
    };
    let output = if common.json {
        to_json(&verdict)
    } else {
        let mut s = format!("{}\n", verdict.verdict);
        for r in &verdict.reasons {
            s.push_str(&format!("  {r}\n"));
        }
        s
    };
    Ok(Outcome {
        output,
        diagnostics: Vec::new(),
        code,
    })
}

fn full_report(input: &Path, common: &Common) -> Result<Outcome, CliError> {
    let fps = load_dataset(input)?;
    let order = order_for(&fps, common)?;
    let report = FullReport::build(&fps, order).map_err(|e| CliError::input(e.to_string()))?;
    let code = match report.verdict {
        Verdict::NotRealizable if !report.checks.todd_poles_cancel => EXIT_INCONSISTENT,
        _ => EXIT_OK,
    };
    let output = if common.json {
        to_json(&report)
    } else {
        report.to_string()
    };
    Ok(Outcome {
        output,
        diagnostics: Vec::new(),
        code,
    })
}

fn example(kind: ExampleKind) -> Result<Outcome, CliError> {
    let fps = match kind {
        ExampleKind::Cpn { weights, .. } => cp_n_dataset(&weights),
        ExampleKind::Product { left, right, .. } => {
            Ok(product_dataset(&load_dataset(&left)?, &load_dataset(&right)?))
        }
        ExampleKind::Semifree { n, .. } => semifree_sphere_power(n),
    }
    .map_err(|e| CliError::input(e.to_string()))?;
    Ok(Outcome {
        output: to_json(&fps),
        ..Outcome::default()
    })
}

fn semifree(n: usize, lambda: &str, common: &Common) -> Result<Outcome, CliError> {
    let lambda: Rational = lambda
        .parse()
        .map_err(|e: circle_genera::exact_ring::RingError| CliError::input(e.to_string()))?;
    let solved = solve_semifree_system(n, &lambda).map_err(|e| CliError::input(e.to_string()))?;
    let binomial = semifree_profile(n, &lambda).map_err(|e| CliError::input(e.to_string()))?;
    let agree = solved == binomial;
    let report = SemifreeReport {
        n,
        lambda,
        solved: solved.counts,
        binomial: binomial.counts,
        agree,
    };
    let mut outcome = Outcome::default();
    if !agree {
        outcome.code = EXIT_INCONSISTENT;
        outcome
            .diagnostics
            .push("solved counts differ from the binomial profile".to_string());
    }
    outcome.output = if common.json {
        to_json(&report)
    } else {
        let list = |v: &[Rational]| {
            v.iter().map(Rational::to_string).collect::<Vec<_>>().join(", ")
        };
        format!(
            "solved   F = ({})\nbinomial F = ({})\n{}\n",
            list(&report.solved),
            list(&report.binomial),
            if agree { "agree" } else { "DIFFER" }
        )
    };
    Ok(outcome)
}

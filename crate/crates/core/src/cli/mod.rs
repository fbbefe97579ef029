//! Command-line front end: `sweep` (CSV figure data), `eval` (one state) and
//! `check` (claims report).
//!
//! Exit codes: 0 success, 1 failed criterion or computation, 2 usage error.

pub mod eval;
pub mod sweep;

use std::collections::BTreeMap;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::checks::{run_checks, Criterion};
use crate::error::Error;
use crate::states::Sign;

pub use eval::{eval_record, EvalRequest};
pub use sweep::{sweep_rows, write_csv, SignSelection, SweepConfig, SweepRow, CSV_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "smeecs", version, about = "Concurrence of single-mode excited entangled coherent states")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit concurrence curves over |alpha|^2 as CSV.
    Sweep(SweepArgs),
    /// Run the claims report; exit 0 iff every criterion passes.
    Check(CheckArgs),
    /// Print overlaps, normalizations and concurrence for one state.
    Eval(EvalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig1,
    Fig2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
    Both,
}

impl From<SignArg> for SignSelection {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Plus => SignSelection::Plus,
            SignArg::Minus => SignSelection::Minus,
            SignArg::Both => SignSelection::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Start from a figure preset; explicit flags override its fields.
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Photon excitation count; repeat for several curves.
    #[arg(long = "m")]
    pub m: Vec<u32>,
    #[arg(long, value_enum)]
    pub sign: Option<SignArg>,
    /// Phase of alpha in radians.
    #[arg(long, allow_negative_numbers = true)]
    pub phase: Option<f64>,
    /// Also compute the Fock-space oracle for every point.
    #[arg(long)]
    pub with_oracle: bool,
    /// Fock cutoff for the oracle instead of the default rule.
    #[arg(long)]
    pub trunc: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

impl SweepArgs {
    pub fn to_config(&self) -> SweepConfig {
        let mut config = match self.preset {
            Some(Preset::Fig1) => SweepConfig::fig1(),
            Some(Preset::Fig2) => SweepConfig::fig2(),
            None => SweepConfig::default(),
        };
        if let Some(v) = self.x_min {
            config.x_min = v;
        }
        if let Some(v) = self.x_max {
            config.x_max = v;
        }
        if let Some(v) = self.steps {
            config.steps = v;
        }
        if !self.m.is_empty() {
            config.m_list = self.m.clone();
        }
        if let Some(s) = self.sign {
            config.sign = s.into();
        }
        if let Some(p) = self.phase {
            config.phase = p;
        }
        config.trunc_override = self.trunc.or(config.trunc_override);
        config.with_oracle |= self.with_oracle;
        config
    }
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Run only the named criterion; repeatable.
    #[arg(long)]
    pub criterion: Vec<String>,
    /// Override a tolerance as NAME=VALUE; repeatable.
    #[arg(long = "tol", value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// |alpha|^2
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long = "m", default_value_t = 0)]
    pub m: u32,
    #[arg(long, value_enum, default_value = "plus")]
    pub sign: SignArg,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub phase: f64,
    #[arg(long)]
    pub with_oracle: bool,
    #[arg(long)]
    pub trunc: Option<usize>,
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run<W: Write, E: Write>(cli: &Cli, out: &mut W, err: &mut E) -> i32 {
    match &cli.command {
        Command::Sweep(args) => cmd_sweep(args, out, err),
        Command::Check(args) => cmd_check(args, out, err),
        Command::Eval(args) => cmd_eval(args, out, err),
    }
}

fn report_error<E: Write>(err: &mut E, e: &Error) -> i32 {
    let _ = writeln!(err, "error: {e}");
    match e {
        Error::InvalidInput(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

pub fn cmd_sweep<W: Write, E: Write>(args: &SweepArgs, out: &mut W, err: &mut E) -> i32 {
    let config = args.to_config();
    let rows = match sweep_rows(&config) {
        Ok(rows) => rows,
        Err(e) => return report_error(err, &e),
    };
    match args.format {
        Format::Csv => {
            if let Err(e) = write_csv(out, &rows) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_FAILURE;
            }
        }
    }
    EXIT_OK
}

fn parse_check_args(args: &CheckArgs) -> Result<(Vec<Criterion>, BTreeMap<Criterion, f64>), String> {
    let lookup = |name: &str| {
        Criterion::from_name(name).ok_or_else(|| {
            let known: Vec<&str> = Criterion::ALL.iter().map(|c| c.name()).collect();
            format!("unknown criterion '{name}' (known: {})", known.join(", "))
        })
    };
    let selected = if args.criterion.is_empty() {
        Criterion::ALL.to_vec()
    } else {
        args.criterion.iter().map(|n| lookup(n)).collect::<Result<Vec<_>, _>>()?
    };
    let mut overrides = BTreeMap::new();
    for item in &args.tol {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("tolerance override '{item}' is not NAME=VALUE"))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| format!("tolerance '{value}' is not a number"))?;
        if value.is_nan() || value <= 0.0 {
            return Err(format!("tolerance for {name} must be positive"));
        }
        overrides.insert(lookup(name.trim())?, value);
    }
    Ok((selected, overrides))
}

pub fn cmd_check<W: Write, E: Write>(args: &CheckArgs, out: &mut W, err: &mut E) -> i32 {
    let (selected, overrides) = match parse_check_args(args) {
        Ok(v) => v,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let reports = run_checks(&selected, &overrides);
    for r in &reports {
        let _ = writeln!(
            out,
            "{} {:<19} worst={:.3e} tol={:.1e} time={:.3}s  {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.criterion.name(),
            r.worst,
            r.tolerance,
            r.elapsed.as_secs_f64(),
            r.detail
        );
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let _ = writeln!(out, "{} of {} criteria passed", reports.len() - failed, reports.len());
    if failed == 0 {
        EXIT_OK
    } else {
        EXIT_FAILURE
    }
}

pub fn cmd_eval<W: Write, E: Write>(args: &EvalArgs, out: &mut W, err: &mut E) -> i32 {
    let sign = match args.sign {
        SignArg::Plus => vec![Sign::Plus],
        SignArg::Minus => vec![Sign::Minus],
        SignArg::Both => vec![Sign::Plus, Sign::Minus],
    };
    for (i, sign) in sign.into_iter().enumerate() {
        let req = EvalRequest {
            x: args.x,
            m: args.m,
            sign,
            phase: args.phase,
            with_oracle: args.with_oracle,
            trunc: args.trunc,
        };
        match eval_record(&req) {
            Ok(lines) => {
                if i > 0 {
                    let _ = writeln!(out);
                }
                for (key, value) in lines {
                    let _ = writeln!(out, "{key} = {value}");
                }
            }
            Err(e) => return report_error(err, &e),
        }
    }
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let cli = match Cli::try_parse_from(std::iter::once("smeecs").chain(args.iter().copied())) {
            Ok(cli) => cli,
            Err(e) => return (e.exit_code(), String::new(), e.to_string()),
        };
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&cli, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn preset_fields_can_be_overridden() {
        let cli = Cli::try_parse_from(["smeecs", "sweep", "--preset", "fig2", "--steps", "5", "--x-max", "2"]).unwrap();
        let Command::Sweep(args) = &cli.command else { panic!() };
        let config = args.to_config();
        assert_eq!(config.m_list, vec![0, 3, 5, 10, 20]);
        assert_eq!(config.sign, SignSelection::Minus);
        assert_eq!((config.steps, config.x_max), (5, 2.0));
    }

    #[test]
    fn equal_range_is_a_usage_error() {
        let (code, out, err) = run_args(&["sweep", "--x-min", "1", "--x-max", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("x_max"));
    }

    #[test]
    fn unknown_flags_exit_with_usage_code() {
        let (code, _, _) = run_args(&["sweep", "--bogus"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_args(&["sweep", "--format", "json"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn check_filter_and_tolerance_parsing() {
        let (code, out, _) = run_args(&["check", "--criterion", "large-field"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().filter(|l| l.starts_with("PASS") || l.starts_with("FAIL")).count(), 1);
        assert!(out.starts_with("PASS large-field"));

        let (code, _, err) = run_args(&["check", "--criterion", "nope"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("unknown criterion"));

        let (code, _, _) = run_args(&["check", "--tol", "ecs-plus"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn tight_tolerance_fails_check() {
        let (code, out, _) = run_args(&[
            "check",
            "--criterion",
            "oracle-equivalence",
            "--tol",
            "oracle-equivalence=1e-15",
        ]);
        assert_eq!(code, EXIT_FAILURE);
        assert!(out.starts_with("FAIL oracle-equivalence"));
    }

    #[test]
    fn eval_both_signs_and_degenerate() {
        let (code, out, _) = run_args(&["eval", "--x", "0", "--m", "0", "--sign", "minus"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("state = degenerate (zero state)"));

        let (code, out, _) = run_args(&["eval", "--x", "1", "--m", "1", "--sign", "both"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.matches("p1 = 0.0000000000000000e0").count(), 2);

        let (code, _, _) = run_args(&["eval", "--x", "-1"]);
        assert_eq!(code, EXIT_USAGE);
    }
}

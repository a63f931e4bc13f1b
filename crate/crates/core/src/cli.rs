//! Command-line front end.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 verification
//! failure. `--config file.json` supplies flags from a JSON object (plus an
//! optional `"command"` key); flags given on the command line win.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::model::{parse_rational_vector, parse_unit_vector, DoFPoint, SystemConfig};
use crate::numerics::{self, ZfMetric};
use crate::rational::Rational;
use crate::region;
use crate::scheduler::{self, DelayedTarget};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "misobc", version, about = "DoF vs. CSIT feedback for the K-user MISO broadcast channel")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Dims {
    /// Transmit antennas.
    #[arg(long)]
    m: usize,
    /// Users.
    #[arg(long)]
    k: usize,
}

impl Dims {
    fn cfg(&self) -> Result<SystemConfig> {
        SystemConfig::new(self.m, self.k)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inner, outer and optimal sum DoF for averaged CSIT qualities.
    Bounds {
        #[command(flatten)]
        dims: Dims,
        /// Per-user average quality exponents, e.g. 1/3,1/3,1/3.
        #[arg(long)]
        alpha: String,
    },
    /// Sum-DoF tradeoff curve as CSV.
    Curve {
        #[command(flatten)]
        dims: Dims,
        #[arg(long, value_enum, default_value = "alternating")]
        mode: CurveMode,
        /// Number of grid points.
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Largest feedback fraction on the grid.
        #[arg(long, default_value = "1")]
        max_delta: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Membership of a DoF point in the outer-bound region.
    CheckPoint {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        dof: String,
    },
    /// Feedback schedule synthesis.
    Schedule {
        #[command(flatten)]
        dims: Dims,
        /// Per-user perfect-CSIT fractions (greedy and two-block schemes).
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, value_enum, default_value = "greedy")]
        scheme: Scheme,
    },
    /// Minimum total perfect-CSIT feedback cost.
    MinCost {
        #[command(flatten)]
        dims: Dims,
        /// Target sum DoF; defaults to min{M,K}.
        #[arg(long)]
        target: Option<String>,
    },
    /// Monte Carlo link-level simulation.
    Simulate {
        #[arg(value_enum)]
        kind: SimKind,
        #[command(flatten)]
        dims: Dims,
        /// One quality exponent for all users, or one per user.
        #[arg(long)]
        alpha: String,
        /// SNR grid start:stop:step in dB.
        #[arg(long, default_value = "30:70:10")]
        snr: String,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fit the rate of this user instead of the sum rate.
        #[arg(long)]
        user: Option<usize>,
        #[arg(long, default_value_t = 0.1)]
        tol: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized verification suites for the matrix lemmas.
    Verify {
        #[arg(value_enum)]
        check: Check,
        /// Trials per configuration; each check has its own default.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveMode {
    Alternating,
    Delayed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scheme {
    Greedy,
    TwoBlock,
    #[value(name = "delayed-4/3")]
    Delayed43,
    #[value(name = "delayed-3/2")]
    Delayed32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SimKind {
    Zf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Lemma1,
    Lemma2,
    Lemma3,
    Prop4,
}

/// One row of a tradeoff curve. `optimal` is set where the bounds meet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveRow {
    pub delta: Rational,
    pub outer: Rational,
    pub inner: Rational,
    pub optimal: Option<Rational>,
}

/// Evenly spaced grid of `points` fractions over `[0, max_delta]`.
///
/// Alternating mode tracks the symmetric perfect-CSIT fraction `δ`. Delayed
/// mode (two antennas, `K ≥ 3`) tracks the delayed-CSIT fraction `δ_D`, with
/// the delayed-CSIT sum DoF `Λ` as outer bound.
pub fn curve_rows(
    cfg: SystemConfig,
    mode: CurveMode,
    points: usize,
    max_delta: &Rational,
) -> Result<Vec<CurveRow>> {
    if points < 2 {
        return Err(Error::Domain(format!("curve needs at least 2 grid points, got {points}")));
    }
    max_delta.check_unit_interval()?;
    if mode == CurveMode::Delayed && (cfg.m() != 2 || cfg.k() < 3) {
        return Err(Error::Unsupported(format!(
            "delayed curve covers M=2, K>=3 (M={}, K={})",
            cfg.m(),
            cfg.k()
        )));
    }
    let step = max_delta / Rational::from(points - 1);
    (0..points)
        .map(|i| {
            let delta = &step * Rational::from(i);
            let (outer, inner) = match mode {
                CurveMode::Alternating => (
                    bounds::sum_dof_outer_alternating(cfg, &delta)?,
                    bounds::inner_sum_dof(cfg, &delta)?,
                ),
                CurveMode::Delayed => (
                    bounds::mat_dof(cfg),
                    bounds::inner_sum_dof_delayed(cfg.k(), &delta)?,
                ),
            };
            debug_assert!(inner <= outer);
            let optimal = (inner == outer).then(|| outer.clone());
            Ok(CurveRow { delta, outer, inner, optimal })
        })
        .collect()
}

pub fn curve_csv(rows: &[CurveRow]) -> String {
    let mut s = String::from("delta,outer,inner,optimal\n");
    for r in rows {
        let opt = r.optimal.as_ref().map(|o| o.to_string()).unwrap_or_default();
        s.push_str(&format!("{},{},{},{}\n", r.delta, r.outer, r.inner, opt));
    }
    s
}

/// Minimum total perfect-CSIT cost for a target sum DoF, where known: the
/// full sum DoF `min{M,K}` in general, any target for `M ≥ K` and for
/// `(M,K) = (2,3)`.
pub fn min_cost(cfg: SystemConfig, target: Option<&Rational>) -> Result<serde_json::Value> {
    let mk = Rational::from(cfg.min_mk());
    let target = target.cloned().unwrap_or_else(|| mk.clone());
    if target.is_negative() || target > mk {
        return Err(Error::Infeasible(format!("target sum DoF {target} outside [0, {mk}]")));
    }
    if cfg.m() == 2 && cfg.k() == 3 {
        return Ok(serde_json::json!({ "cost": bounds::min_cost_m2k3(&target)? }));
    }
    if cfg.m() >= cfg.k() {
        // outer bound Λ + (1 − Λ/K)·C is tight and reached by symmetric feedback
        let lambda = bounds::mat_dof(cfg);
        let k = Rational::from(cfg.k());
        let cost = if target <= lambda {
            Rational::zero()
        } else {
            &k * (&target - &lambda) / (&k - &lambda)
        };
        return Ok(serde_json::json!({ "cost": cost }));
    }
    if target == mk {
        let ans = bounds::min_cost_max_dof(cfg);
        return Ok(serde_json::json!({ "cost": ans.cost, "tdma_optimal": ans.tdma_optimal }));
    }
    Err(Error::Unsupported(format!(
        "minimum cost for target {target} is characterized only for M>=K, (M,K)=(2,3), or target min{{M,K}}"
    )))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable output")
}

fn parse_alphas_f64(text: &str, k: usize) -> Result<Vec<f64>> {
    let v = parse_unit_vector(text)?;
    match v.len() {
        1 => Ok(vec![v[0].to_f64(); k]),
        n if n == k => Ok(v.iter().map(Rational::to_f64).collect()),
        n => Err(Error::Dimension { expected: k, got: n }),
    }
}

fn write_or_print(path: Option<&PathBuf>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Error::Domain(format!("cannot write {}: {e}", p.display()))),
        None => {
            out.write_all(text.as_bytes()).expect("stdout");
            Ok(())
        }
    }
}

enum Outcome {
    Done,
    Failed,
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<Outcome> {
    match cmd {
        Command::Bounds { dims, alpha } => {
            let report = bounds::bound_report(dims.cfg()?, &parse_unit_vector(&alpha)?)?;
            writeln!(out, "{}", to_json(&report)).expect("stdout");
        }
        Command::Curve { dims, mode, grid, max_delta, out: path } => {
            let rows = curve_rows(dims.cfg()?, mode, grid, &max_delta.parse()?)?;
            write_or_print(path.as_ref(), &curve_csv(&rows), out)?;
        }
        Command::CheckPoint { dims, alpha, dof } => {
            let point = DoFPoint::unchecked(parse_rational_vector(&dof)?)?;
            let v = region::tightest_permutation(dims.cfg()?, &parse_unit_vector(&alpha)?, &point)?;
            let doc = serde_json::json!({
                "inside": v.inside,
                "slack": v.slack,
                "tightest_permutation": v.tightest.permutation,
            });
            writeln!(out, "{}", to_json(&doc)).expect("stdout");
        }
        Command::Schedule { dims, delta, scheme } => {
            let cfg = dims.cfg()?;
            let deltas = || -> Result<Vec<Rational>> {
                let text = delta
                    .as_deref()
                    .ok_or_else(|| Error::Domain("--delta is required for this scheme".into()))?;
                parse_rational_vector(text)
            };
            let need_m2 = |what: &str| -> Result<()> {
                if cfg.m() != 2 {
                    return Err(Error::Unsupported(format!("{what} needs M=2 (M={})", cfg.m())));
                }
                Ok(())
            };
            let schedule = match scheme {
                Scheme::Greedy => scheduler::greedy_schedule(cfg, &deltas()?)?,
                Scheme::TwoBlock => {
                    if (cfg.m(), cfg.k()) != (2, 3) {
                        return Err(Error::Unsupported("two-block scheme needs M=2, K=3".into()));
                    }
                    scheduler::two_block_schedule(&deltas()?)?
                }
                Scheme::Delayed43 => {
                    need_m2("delayed-4/3")?;
                    scheduler::delayed_block_schedule(cfg.k(), DelayedTarget::FourThirds)?
                }
                Scheme::Delayed32 => {
                    need_m2("delayed-3/2")?;
                    scheduler::delayed_block_schedule(cfg.k(), DelayedTarget::ThreeHalves)?
                }
            };
            writeln!(out, "{}", schedule.to_json()?).expect("stdout");
        }
        Command::MinCost { dims, target } => {
            let target = target.as_deref().map(str::parse::<Rational>).transpose()?;
            let doc = min_cost(dims.cfg()?, target.as_ref())?;
            writeln!(out, "{}", serde_json::to_string(&doc).expect("json")).expect("stdout");
        }
        Command::Simulate { kind: SimKind::Zf, dims, alpha, snr, trials, seed, user, tol, out: path } => {
            let cfg = dims.cfg()?;
            let alphas = parse_alphas_f64(&alpha, cfg.k())?;
            let grid = numerics::parse_snr_grid(&snr)?;
            let metric = user.map_or(ZfMetric::Sum, ZfMetric::User);
            let (report, resampled) =
                numerics::zf_slope_check(cfg, &alphas, metric, &grid, trials, seed, tol)?;
            write_or_print(path.as_ref(), &report.to_csv(), out)?;
            let mut summary = report.summary_json();
            summary["stderr"] = serde_json::json!(report.fit.stderr);
            summary["resampled"] = serde_json::json!(resampled);
            writeln!(out, "{}", serde_json::to_string(&summary).expect("json")).expect("stdout");
            if !report.pass {
                return Ok(Outcome::Failed);
            }
        }
        Command::Verify { check, trials, seed } => {
            let report = match check {
                Check::Lemma1 => numerics::verify_lemma1(trials.unwrap_or(10_000), seed)?,
                Check::Lemma2 => numerics::verify_lemma2(trials.unwrap_or(1000), seed),
                Check::Lemma3 => numerics::verify_lemma3(trials.unwrap_or(200), seed),
                Check::Prop4 => numerics::verify_prop4(trials.unwrap_or(10_000), seed)?,
            };
            writeln!(out, "{}", to_json(&report)).expect("stdout");
            if !report.pass {
                return Ok(Outcome::Failed);
            }
        }
    }
    Ok(Outcome::Done)
}

/// Subcommands whose first argument is positional.
const POSITIONAL: [(&str, &str); 2] = [("simulate", "kind"), ("verify", "check")];

/// Splices `--config` JSON into the argument list: the subcommand (from the
/// command line or the `"command"` key), then flags from the file, then the
/// remaining command-line arguments so that they override the file.
fn expand_config(args: Vec<String>) -> std::result::Result<Vec<String>, String> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let mut args = args;
    let path = if let Some(p) = args[pos].strip_prefix("--config=") {
        let p = p.to_string();
        args.remove(pos);
        p
    } else {
        if pos + 1 >= args.len() {
            return Err("--config needs a file path".into());
        }
        let p = args.remove(pos + 1);
        args.remove(pos);
        p
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("invalid config {path}: {e}"))?;
    let serde_json::Value::Object(map) = value else {
        return Err(format!("config {path} must be a JSON object"));
    };

    let program = args.first().cloned().unwrap_or_else(|| "misobc".into());
    let mut rest: Vec<String> = args.into_iter().skip(1).collect();
    let command = match rest.first() {
        Some(first) if !first.starts_with('-') => rest.remove(0),
        _ => match map.get("command") {
            Some(serde_json::Value::String(c)) => c.clone(),
            _ => return Err("no subcommand given on the command line or in the config".into()),
        },
    };
    let mut expanded = vec![program, command.clone()];
    let positional = POSITIONAL.iter().find(|(c, _)| *c == command).map(|(_, key)| *key);
    if let Some(key) = positional {
        match rest.first() {
            Some(first) if !first.starts_with('-') => expanded.push(rest.remove(0)),
            _ => match map.get(key) {
                Some(serde_json::Value::String(v)) => expanded.push(v.clone()),
                _ => return Err(format!("config for {command} needs \"{key}\"")),
            },
        }
    }
    for (key, v) in &map {
        if key == "command" || Some(key.as_str()) == positional {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        let text = match v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::Array(items) => items
                .iter()
                .map(|x| match x {
                    serde_json::Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect::<Vec<_>>()
                .join(","),
            serde_json::Value::Bool(true) => {
                expanded.push(flag);
                continue;
            }
            serde_json::Value::Bool(false) | serde_json::Value::Null => continue,
            serde_json::Value::Object(_) => return Err(format!("config key {key} cannot be an object")),
        };
        expanded.push(flag);
        expanded.push(text);
    }
    expanded.extend(rest);
    Ok(expanded)
}

/// Runs the CLI writing to the given streams and returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let mut args = Vec::new();
    for a in argv {
        match a.into().into_string() {
            Ok(s) => args.push(s),
            Err(bad) => {
                let _ = writeln!(err, "error: argument is not valid UTF-8: {bad:?}");
                return EXIT_USAGE;
            }
        }
    }
    let args = match expand_config(args) {
        Ok(a) => a,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, out) {
        Ok(Outcome::Done) => EXIT_OK,
        Ok(Outcome::Failed) => EXIT_VERIFY,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run_with(argv, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("misobc").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn min_cost_examples() {
        let (code, out, _) = call(&["min-cost", "--m", "2", "--k", "3", "--target", "7/4"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"cost":"1"}"#);
        let (_, out, _) = call(&["min-cost", "--m", "1", "--k", "4"]);
        assert_eq!(out.trim(), r#"{"cost":"0","tdma_optimal":true}"#);
        let (_, out, _) = call(&["min-cost", "--m", "3", "--k", "5"]);
        assert_eq!(out.trim(), r#"{"cost":"3","tdma_optimal":false}"#);
        let (code, _, _) = call(&["min-cost", "--m", "2", "--k", "3", "--target", "5/2"]);
        assert_eq!(code, EXIT_DOMAIN);
        let (code, _, _) = call(&["min-cost", "--m", "2", "--k", "4", "--target", "3/2"]);
        assert_eq!(code, EXIT_DOMAIN);
    }

    #[test]
    fn min_cost_m_ge_k_inverts_the_optimal_curve() {
        let cfg = SystemConfig::new(3, 3).unwrap();
        let delta = ratio(2, 5);
        let dof = bounds::optimal_sum_dof_m_ge_k(cfg, &delta).unwrap();
        let v = min_cost(cfg, Some(&dof)).unwrap();
        assert_eq!(v["cost"], serde_json::json!((ratio(3, 1) * delta).to_string()));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["bounds", "--m", "2"]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["bounds", "--m", "2", "--k", "3", "--alpha", "0,0,0", "--bogus"]).0, EXIT_USAGE);
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn domain_errors_exit_one() {
        let (code, _, err) = call(&["bounds", "--m", "2", "--k", "3", "--alpha", "1/3,1/3"]);
        assert_eq!(code, EXIT_DOMAIN);
        assert!(err.contains("error"));
        assert_eq!(call(&["bounds", "--m", "0", "--k", "3", "--alpha", "0"]).0, EXIT_DOMAIN);
        assert_eq!(call(&["bounds", "--m", "2", "--k", "2", "--alpha", "2,0"]).0, EXIT_DOMAIN);
    }

    #[test]
    fn bounds_single_antenna() {
        let (code, out, _) = call(&["bounds", "--m", "1", "--k", "7", "--alpha", "0,0,0,0,0,0,0"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["lambda_mat"], "1");
        assert_eq!(v["outer_sum_dof"], "1");
    }

    #[test]
    fn check_point_reports_violation() {
        let (code, out, _) = call(&[
            "check-point", "--m", "2", "--k", "3", "--alpha", "1,1,0", "--dof", "1,1,1/10",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["inside"], false);
        assert_eq!(v["slack"], "-1/10");
        assert_eq!(v["tightest_permutation"][0], 3);
    }

    #[test]
    fn curve_rows_alternating_and_delayed() {
        let cfg = SystemConfig::new(2, 3).unwrap();
        let rows = curve_rows(cfg, CurveMode::Alternating, 4, &ratio(2, 3)).unwrap();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.optimal.is_some()));
        assert_eq!(rows[3].outer, ratio(2, 1));
        let rows = curve_rows(cfg, CurveMode::Delayed, 3, &ratio(1, 1)).unwrap();
        assert_eq!(rows[0].inner, ratio(1, 1));
        assert_eq!(rows[2].optimal, Some(ratio(3, 2)));
        assert!(curve_rows(SystemConfig::new(3, 3).unwrap(), CurveMode::Delayed, 3, &ratio(1, 1)).is_err());
        let csv = curve_csv(&curve_rows(cfg, CurveMode::Alternating, 2, &ratio(1, 1)).unwrap());
        assert_eq!(csv, "delta,outer,inner,optimal\n0,3/2,3/2,3/2\n1,2,2,2\n");
    }

    #[test]
    fn config_file_supplies_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"command":"min-cost","m":2,"k":3,"target":"3/2"}"#).unwrap();
        let p = path.to_str().unwrap();
        let (code, out, _) = call(&["--config", p]);
        assert_eq!((code, out.trim()), (0, r#"{"cost":"0"}"#));
        let (code, out, _) = call(&["--config", p, "--target", "2"]);
        assert_eq!((code, out.trim()), (0, r#"{"cost":"2"}"#));
        std::fs::write(&path, r#"{"command":"verify","check":"lemma3","trials":12,"seed":4}"#).unwrap();
        let (code, out, _) = call(&["--config", p]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("\"lemma3\""));
        std::fs::write(&path, "[1]").unwrap();
        assert_eq!(call(&["--config", p]).0, EXIT_USAGE);
    }

    #[test]
    fn failing_simulation_exits_three() {
        // zero tolerance cannot be met by a finite-SNR fit
        let (code, out, _) = call(&[
            "simulate", "zf", "--m", "1", "--k", "1", "--alpha", "0", "--snr", "0:20:10",
            "--trials", "50", "--seed", "1", "--tol", "0",
        ]);
        assert_eq!(code, EXIT_VERIFY);
        assert!(out.starts_with("snr_db,mean_value,stderr\n"));
    }
}

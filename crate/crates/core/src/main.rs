use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::One;
use serde_json::{json, Value};

use wblowup::harness::{self, SweepSpec, TailCap};
use wblowup::lattice::{self, Rational};
use wblowup::toric::{self, WeightVector};
use wblowup::witness::{self, Verdict};
use wblowup::{oracle, report, Error};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "wblowup",
    version,
    about = "Exact eps-lc decisions for weighted blowups of affine space"
)]
struct Cli {
    /// `key = value` file; command-line flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Global minimal log discrepancy
    Mld(Common),
    /// Decide whether X_a is eps-lc
    Check(Common),
    /// Build a certificate that X_a is not eps-lc
    Witness(Common),
    /// Sweep coprime weight tuples and stream CSV rows
    Sweep(SweepArgs),
    /// Run the (1, n) family: eps-lc for eps = 1, fixed-point mlds 2 and 1
    VerifyExample(ExampleArgs),
    /// Cross-check exact computations against brute force
    Selftest(SelftestArgs),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Sorted positive weights, comma separated
    #[arg(long)]
    weights: Option<String>,
    /// Rational in (0, 1]
    #[arg(long)]
    eps: Option<String>,
    /// Exponent for the general construction
    #[arg(long)]
    theta: Option<String>,
    /// Enumeration budget
    #[arg(long)]
    cap: Option<String>,
    /// auto | construction | enumeration
    #[arg(long)]
    method: Option<String>,
    /// Also report the mld at this torus-fixed point (1-based cone)
    #[arg(long)]
    cone: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// json (default) or csv
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Debug, Default)]
struct SweepArgs {
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    /// Inclusive range `lo..hi`
    #[arg(long)]
    a1: Option<String>,
    /// Caps for a_2..a_n, comma separated; `+k` means a_1 + k
    #[arg(long)]
    tail: Option<String>,
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    cap: Option<String>,
    #[arg(long)]
    method: Option<String>,
    #[arg(long)]
    workers: Option<String>,
    /// CSV destination (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// csv streams rows to stdout; json prints the frontier report
    #[arg(long)]
    format: Option<String>,
    /// Leave the wall_micros column empty
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Debug, Default)]
struct ExampleArgs {
    /// Largest n checked for eps-lc-ness
    #[arg(long)]
    max_n: Option<String>,
    /// Largest n checked for fixed-point mlds
    #[arg(long)]
    max_n_fixed: Option<String>,
    #[arg(long)]
    cap: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct SelftestArgs {
    /// Largest weight entry in the exhaustive families
    #[arg(long)]
    max_entry: Option<String>,
    #[arg(long)]
    cap: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Budget { .. } => EXIT_BUDGET,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type Outcome = std::result::Result<u8, Failure>;

/// Flag value, else config value, else nothing.
struct Settings {
    config: HashMap<String, String>,
}

impl Settings {
    fn load(path: Option<&PathBuf>) -> std::result::Result<Self, Failure> {
        let config = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| usage(format!("cannot read {}: {e}", p.display())))?;
                harness::parse_config(&text)?
            }
            None => HashMap::new(),
        };
        Ok(Settings { config })
    }

    fn get(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.config.get(key).cloned())
    }

    fn path(&self, flag: &Option<PathBuf>, key: &str) -> Option<PathBuf> {
        flag.clone()
            .or_else(|| self.config.get(key).map(PathBuf::from))
    }

    fn flag(&self, set: bool, key: &str) -> std::result::Result<bool, Failure> {
        if set {
            return Ok(true);
        }
        match self.config.get(key).map(String::as_str) {
            None => Ok(false),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some("false") | Some("0") | Some("no") => Ok(false),
            Some(other) => Err(usage(format!("invalid boolean for {key}: {other:?}"))),
        }
    }

    fn cap(&self, flag: &Option<String>) -> std::result::Result<u64, Failure> {
        match self.get(flag, "cap") {
            Some(s) => parse_u64(&s, "cap"),
            None => Ok(wblowup::budget_from_env()),
        }
    }

    fn weights(&self, flag: &Option<String>) -> std::result::Result<WeightVector, Failure> {
        let s = self
            .get(flag, "weights")
            .ok_or_else(|| usage("--weights is required"))?;
        Ok(WeightVector::parse(&s)?)
    }

    fn eps(&self, flag: &Option<String>) -> std::result::Result<Rational, Failure> {
        let s = self
            .get(flag, "eps")
            .ok_or_else(|| usage("--eps is required"))?;
        Ok(harness::parse_eps(&s)?)
    }

    fn theta(&self, flag: &Option<String>) -> std::result::Result<Option<Rational>, Failure> {
        self.get(flag, "theta")
            .map(|s| lattice::parse_rational(&s).map_err(Failure::from))
            .transpose()
    }

    fn method(&self, flag: &Option<String>) -> std::result::Result<witness::Strategy, Failure> {
        match self.get(flag, "method") {
            Some(s) => Ok(harness::parse_strategy(&s)?),
            None => Ok(witness::Strategy::Auto),
        }
    }
}

fn parse_u64(s: &str, what: &str) -> std::result::Result<u64, Failure> {
    s.trim()
        .parse::<u64>()
        .ok()
        .filter(|&v| v > 0)
        .ok_or_else(|| usage(format!("{what} must be a positive integer, got {s:?}")))
}

fn open_out(path: Option<&PathBuf>) -> std::result::Result<Box<dyn Write>, Failure> {
    match path {
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| usage(format!("cannot create {}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(file)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
    }
}

fn emit_json(path: Option<&PathBuf>, value: &Value) -> std::result::Result<(), Failure> {
    let mut out = open_out(path)?;
    let text = serde_json::to_string_pretty(value).expect("serializable");
    writeln!(out, "{text}")
        .and_then(|_| out.flush())
        .map_err(|e| usage(format!("write failed: {e}")))
}

fn run_mld(s: &Settings, args: &Common) -> Outcome {
    let a = s.weights(&args.weights)?;
    let cap = s.cap(&args.cap)?;
    let r = toric::mld_global(&a, cap)?;
    let mut value = report::mld_report(&r);
    if let Some(cone) = s.get(&args.cone, "cone") {
        let cone = parse_u64(&cone, "cone")? as usize;
        let m = toric::mld_at_fixed_point(&a, cone - 1, cap)?;
        value["fixed_point"] = json!({ "cone": cone, "mld": m.to_string() });
    }
    emit_json(s.path(&args.out, "out").as_ref(), &value)?;
    Ok(EXIT_OK)
}

fn run_check(s: &Settings, args: &Common) -> Outcome {
    let a = s.weights(&args.weights)?;
    let eps = s.eps(&args.eps)?;
    let cap = s.cap(&args.cap)?;
    let check = toric::is_eps_lc(&a, &eps, cap)?;
    let mut value = json!({
        "weights": Value::Array(a.weights().iter().map(report::int_value).collect()),
        "eps": eps.to_string(),
        "verdict": if check.eps_lc { "eps-lc" } else { "not-eps-lc" },
        "points_scanned": check.points_scanned,
    });
    if let Some(v) = &check.refuting {
        let psi = toric::psi_value(&a, v)?;
        value["refuting_point"] = Value::Array(v.coords().iter().map(report::int_value).collect());
        value["psi"] = Value::String(psi.to_string());
    }
    emit_json(s.path(&args.out, "out").as_ref(), &value)?;
    Ok(if check.eps_lc { EXIT_OK } else { EXIT_NEGATIVE })
}

fn run_witness(s: &Settings, args: &Common) -> Outcome {
    let a = s.weights(&args.weights)?;
    let eps = s.eps(&args.eps)?;
    let theta = s.theta(&args.theta)?;
    let cap = s.cap(&args.cap)?;
    let strategy = s.method(&args.method)?;
    let d = witness::certify_not_eps_lc(&a, &eps, theta.as_ref(), cap, strategy)?;
    let code = match &d.verdict {
        Verdict::NotEpsLc(_) => EXIT_OK,
        Verdict::EpsLc { .. } => EXIT_NEGATIVE,
        Verdict::Inconclusive { .. } => EXIT_BUDGET,
    };
    let format = s
        .get(&args.format, "format")
        .unwrap_or_else(|| "json".into());
    match format.as_str() {
        "json" => emit_json(
            s.path(&args.out, "out").as_ref(),
            &report::decision(&a, &eps, &d),
        )?,
        "csv" => {
            let spec = single_spec(a.dim(), eps, theta, strategy, cap);
            let weights: Vec<u64> = a
                .weights()
                .iter()
                .map(|w| u64::try_from(w).map_err(|_| usage("csv output needs weights below 2^64")))
                .collect::<std::result::Result<_, _>>()?;
            let row = harness::evaluate(&spec, &weights)?;
            let mut out = open_out(s.path(&args.out, "out").as_ref())?;
            writeln!(out, "{}\n{}", harness::CSV_HEADER, row.to_csv())
                .and_then(|_| out.flush())
                .map_err(|e| usage(format!("write failed: {e}")))?;
        }
        other => return Err(usage(format!("unknown format {other:?}"))),
    }
    Ok(code)
}

fn single_spec(
    n: usize,
    eps: Rational,
    theta: Option<Rational>,
    strategy: witness::Strategy,
    cap: u64,
) -> SweepSpec {
    SweepSpec {
        n,
        eps,
        a1_min: 1,
        a1_max: 1,
        tail_caps: vec![TailCap::Absolute(1)],
        theta,
        strategy,
        workers: 1,
        cap,
        timing: false,
    }
}

fn run_sweep(s: &Settings, args: &SweepArgs) -> Outcome {
    let n = parse_u64(&s.get(&args.n, "n").unwrap_or_else(|| "2".into()), "n")? as usize;
    let eps = s.eps(&args.eps)?;
    let (a1_min, a1_max) = harness::parse_range(
        &s.get(&args.a1, "a1")
            .ok_or_else(|| usage("--a1 is required"))?,
    )?;
    let tail_caps = s
        .get(&args.tail, "tail")
        .ok_or_else(|| usage("--tail is required"))?
        .split(',')
        .map(TailCap::parse)
        .collect::<wblowup::Result<Vec<_>>>()?;
    let workers = match s.get(&args.workers, "workers") {
        Some(w) => parse_u64(&w, "workers")? as usize,
        None => rayon::current_num_threads(),
    };
    let spec = SweepSpec {
        n,
        eps,
        a1_min,
        a1_max,
        tail_caps,
        theta: s.theta(&args.theta)?,
        strategy: s.method(&args.method)?,
        workers,
        cap: s.cap(&args.cap)?,
        timing: !s.flag(args.no_timing, "no_timing")?,
    };
    let format = s
        .get(&args.format, "format")
        .unwrap_or_else(|| "csv".into());
    let out_path = s.path(&args.out, "out");
    let report = match format.as_str() {
        "csv" => {
            let mut out = open_out(out_path.as_ref())?;
            harness::run_sweep(&spec, &mut out)?
        }
        "json" => {
            let report = match out_path.as_ref() {
                Some(_) => harness::run_sweep(&spec, &mut open_out(out_path.as_ref())?)?,
                None => harness::run_sweep(&spec, &mut io::sink())?,
            };
            emit_json(None, &report.to_json())?;
            report
        }
        other => return Err(usage(format!("unknown format {other:?}"))),
    };
    let m = report
        .empirical_m()
        .map_or_else(|| "none".to_string(), |m| m.to_string());
    eprintln!(
        "rows {} budget-exhausted {} empirical-M {}",
        report.rows, report.budget_exhausted, m
    );
    Ok(if report.budget_exhausted > 0 {
        EXIT_BUDGET
    } else {
        EXIT_OK
    })
}

fn run_verify_example(s: &Settings, args: &ExampleArgs) -> Outcome {
    let max_n = parse_u64(
        &s.get(&args.max_n, "max_n").unwrap_or_else(|| "5000".into()),
        "max-n",
    )?;
    let max_fixed = parse_u64(
        &s.get(&args.max_n_fixed, "max_n_fixed")
            .unwrap_or_else(|| "200".into()),
        "max-n-fixed",
    )?;
    let cap = s.cap(&args.cap)?;
    let one = Rational::one();
    let mut failures = Vec::new();
    for n in 1..=max_n {
        let a = WeightVector::from_u64s(&[1, n])?;
        if !toric::is_eps_lc(&a, &one, cap)?.eps_lc {
            failures.push(json!({ "weights": [1, n], "check": "eps-lc" }));
        }
        if n <= max_fixed {
            // (1, 1) has two smooth cones
            let expected = [
                lattice::ratio(2, 1),
                lattice::ratio(if n == 1 { 2 } else { 1 }, 1),
            ];
            for (cone, want) in expected.iter().enumerate() {
                let got = toric::mld_at_fixed_point(&a, cone, cap)?;
                if got != *want {
                    failures.push(json!({
                        "weights": [1, n],
                        "cone": cone + 1,
                        "expected": want.to_string(),
                        "got": got.to_string(),
                    }));
                }
            }
        }
    }
    let ok = failures.is_empty();
    let value = json!({
        "family": "(1, n)",
        "max_n": max_n,
        "max_n_fixed": max_fixed,
        "passed": ok,
        "failures": failures,
    });
    emit_json(s.path(&args.out, "out").as_ref(), &value)?;
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn sorted_coprime(n: usize, max: u64) -> Vec<Vec<u64>> {
    fn extend(n: usize, max: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == n {
            if lattice::gcd_all(&cur.iter().map(|&x| x.into()).collect::<Vec<_>>())
                .is_ok_and(|g| g.is_one())
            {
                out.push(cur.clone());
            }
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        for x in lo..=max {
            cur.push(x);
            extend(n, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, max, &mut Vec::new(), &mut out);
    out
}

fn run_selftest(s: &Settings, args: &SelftestArgs) -> Outcome {
    let max = parse_u64(
        &s.get(&args.max_entry, "max_entry")
            .unwrap_or_else(|| "12".into()),
        "max-entry",
    )?;
    let cap = s.cap(&args.cap)?;
    let eps_values = [
        lattice::ratio(1, 4),
        lattice::ratio(1, 2),
        lattice::ratio(3, 4),
        lattice::ratio(1, 1),
    ];
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for n in [2, 3] {
        for t in sorted_coprime(n, max) {
            let a = WeightVector::from_u64s(&t)?;
            let exact = toric::mld_global(&a, cap)?.value;
            let brute = oracle::mld_bruteforce(&a, cap)?;
            if exact != brute {
                failures.push(json!({ "weights": t, "check": "mld", "exact": exact.to_string(), "bruteforce": brute.to_string() }));
            }
            for eps in &eps_values {
                if !oracle::verify_interior_criterion(&a, eps, cap)? {
                    failures
                        .push(json!({ "weights": t, "check": "interior", "eps": eps.to_string() }));
                }
                let d = witness::certify_not_eps_lc(&a, eps, None, cap, witness::Strategy::Auto)?;
                let lc = toric::is_eps_lc(&a, eps, cap)?.eps_lc;
                let agrees = match &d.verdict {
                    Verdict::NotEpsLc(c) => !lc && c.verify()?,
                    Verdict::EpsLc { .. } => lc,
                    Verdict::Inconclusive { .. } => false,
                };
                if !agrees {
                    failures
                        .push(json!({ "weights": t, "check": "certify", "eps": eps.to_string() }));
                }
            }
            checked += 1;
        }
    }
    let ok = failures.is_empty();
    let value = json!({
        "max_entry": max,
        "tuples": checked,
        "passed": ok,
        "failures": failures,
    });
    emit_json(s.path(&args.out, "out").as_ref(), &value)?;
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn dispatch(cli: &Cli) -> Outcome {
    let settings = Settings::load(cli.config.as_ref())?;
    match &cli.command {
        Command::Mld(args) => run_mld(&settings, args),
        Command::Check(args) => run_check(&settings, args),
        Command::Witness(args) => run_witness(&settings, args),
        Command::Sweep(args) => run_sweep(&settings, args),
        Command::VerifyExample(args) => run_verify_example(&settings, args),
        Command::Selftest(args) => run_selftest(&settings, args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

//! Parameter sweeps over coprime weight tuples and the empirical frontier.

use std::collections::HashMap;
use std::io::Write;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{self, Rational};
use crate::toric::{check_eps, WeightVector};
use crate::witness::{certify_not_eps_lc, Strategy, Verdict};

pub const CSV_HEADER: &str = "n,weights,eps,verdict,method,point,psi,hypothesis_flags,wall_micros";

/// Rows are processed in batches of this many tuples; each batch is written
/// in order before the next starts.
const BATCH: usize = 2048;

/// Upper bound for one tail coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailCap {
    Absolute(u64),
    /// `a_1 + offset`.
    Offset(u64),
}

impl TailCap {
    pub fn parse(input: &str) -> Result<Self> {
        let s = input.trim();
        let err = || Error::Parse {
            what: "tail cap",
            input: input.to_string(),
        };
        match s.strip_prefix('+') {
            Some(rest) => rest.parse().map(TailCap::Offset).map_err(|_| err()),
            None => s.parse().map(TailCap::Absolute).map_err(|_| err()),
        }
    }

    fn bound(self, a1: u64) -> u64 {
        match self {
            TailCap::Absolute(c) => c,
            TailCap::Offset(d) => a1.saturating_add(d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub n: usize,
    pub eps: Rational,
    pub a1_min: u64,
    pub a1_max: u64,
    /// Caps for `a_2..a_n`; a single entry applies to every tail coordinate.
    pub tail_caps: Vec<TailCap>,
    pub theta: Option<Rational>,
    pub strategy: Strategy,
    pub workers: usize,
    pub cap: u64,
    pub timing: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidWeights(format!(
                "sweep dimension {} < 2",
                self.n
            )));
        }
        check_eps(&self.eps)?;
        if self.a1_min == 0 || self.a1_min > self.a1_max {
            return Err(Error::Parse {
                what: "a_1 range",
                input: format!("{}..{}", self.a1_min, self.a1_max),
            });
        }
        if self.tail_caps.is_empty()
            || (self.tail_caps.len() != 1 && self.tail_caps.len() != self.n - 1)
        {
            return Err(Error::Parse {
                what: "tail caps",
                input: format!("{} caps for n = {}", self.tail_caps.len(), self.n),
            });
        }
        Ok(())
    }

    fn cap_for(&self, coordinate: usize, a1: u64) -> u64 {
        let cap = if self.tail_caps.len() == 1 {
            self.tail_caps[0]
        } else {
            self.tail_caps[coordinate - 1]
        };
        cap.bound(a1)
    }

    /// Sorted coprime tuples with first entry `a1`, lexicographic.
    pub fn tuples_for(&self, a1: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut current = vec![a1];
        self.extend_tuples(a1, &mut current, &mut out);
        out
    }

    fn extend_tuples(&self, a1: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let k = current.len();
        if k == self.n {
            let g = current.iter().fold(0u64, |acc, &x| acc.gcd(&x));
            if g == 1 {
                out.push(current.clone());
            }
            return;
        }
        let lo = current[k - 1];
        for x in lo..=self.cap_for(k, a1) {
            current.push(x);
            self.extend_tuples(a1, current, out);
            current.pop();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub weights: Vec<u64>,
    pub eps: Rational,
    pub verdict: &'static str,
    pub method: String,
    pub point: String,
    pub psi: String,
    pub flags: String,
    pub micros: Option<u128>,
}

impl Row {
    pub fn certified(&self) -> bool {
        self.verdict == "not-eps-lc"
    }

    pub fn to_csv(&self) -> String {
        let weights: Vec<String> = self.weights.iter().map(u64::to_string).collect();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.weights.len(),
            weights.join(";"),
            self.eps,
            self.verdict,
            self.method,
            self.point,
            self.psi,
            self.flags,
            self.micros.map(|m| m.to_string()).unwrap_or_default()
        )
    }
}

pub fn evaluate(spec: &SweepSpec, weights: &[u64]) -> Result<Row> {
    let start = Instant::now();
    let a = WeightVector::from_u64s(weights)?;
    let decision = certify_not_eps_lc(&a, &spec.eps, spec.theta.as_ref(), spec.cap, spec.strategy)?;
    let micros = start.elapsed().as_micros();
    let (method, point, psi) = match &decision.verdict {
        Verdict::NotEpsLc(c) => {
            let coords: Vec<String> = c.point.coords().iter().map(BigInt::to_string).collect();
            (
                c.method.as_str().to_string(),
                coords.join(";"),
                c.psi.to_string(),
            )
        }
        _ => (String::new(), String::new(), String::new()),
    };
    Ok(Row {
        weights: weights.to_vec(),
        eps: spec.eps.clone(),
        verdict: decision.verdict.as_str(),
        method,
        point,
        psi,
        flags: decision.flags().join(";"),
        micros: spec.timing.then_some(micros),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct A1Stats {
    pub a1: u64,
    pub total: u64,
    pub certified: u64,
}

impl A1Stats {
    pub fn fraction(&self) -> Option<Rational> {
        (self.total > 0).then(|| Rational::new(self.certified.into(), self.total.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontierReport {
    pub n: usize,
    pub eps: Rational,
    pub per_a1: Vec<A1Stats>,
    pub rows: u64,
    pub budget_exhausted: u64,
}

impl FrontierReport {
    /// Smallest `a_1` in the sweep from which every nonempty `a_1` column has
    /// a certificate for all of its tuples.
    pub fn empirical_m(&self) -> Option<u64> {
        let mut frontier = None;
        for stats in self.per_a1.iter().rev().filter(|s| s.total > 0) {
            if stats.certified != stats.total {
                break;
            }
            frontier = Some(stats.a1);
        }
        frontier
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "eps": self.eps.to_string(),
            "rows": self.rows,
            "budget_exhausted": self.budget_exhausted,
            "empirical_m": self.empirical_m(),
            "per_a1": self.per_a1.iter().map(|s| serde_json::json!({
                "a1": s.a1,
                "total": s.total,
                "certified": s.certified,
                "fraction": s.fraction().map(|f| f.to_string()),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Runs the sweep, streaming one CSV row per tuple (after the header) to
/// `out`. Row order is lexicographic by weights whatever the worker count.
pub fn run_sweep(spec: &SweepSpec, out: &mut dyn Write) -> Result<FrontierReport> {
    spec.validate()?;
    writeln!(out, "{CSV_HEADER}").map_err(io_error)?;
    let report = run_sweep_with(spec, |rows| {
        for row in rows {
            writeln!(out, "{}", row.to_csv()).map_err(io_error)?;
        }
        out.flush().map_err(io_error)
    })?;
    if report.budget_exhausted > 0 {
        writeln!(out, "#budget-exhausted,{}", report.budget_exhausted).map_err(io_error)?;
    }
    out.flush().map_err(io_error)?;
    Ok(report)
}

fn io_error(err: std::io::Error) -> Error {
    Error::Io(err.to_string())
}

/// Sweep core: `emit` receives each ordered batch of rows.
pub fn run_sweep_with<E>(spec: &SweepSpec, mut emit: E) -> Result<FrontierReport>
where
    E: FnMut(&[Row]) -> Result<()>,
{
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers.max(1))
        .build()
        .map_err(|e| Error::Parse {
            what: "worker pool",
            input: e.to_string(),
        })?;
    let mut report = FrontierReport {
        n: spec.n,
        eps: spec.eps.clone(),
        per_a1: Vec::new(),
        rows: 0,
        budget_exhausted: 0,
    };
    for a1 in spec.a1_min..=spec.a1_max {
        let tuples = spec.tuples_for(a1);
        let mut stats = A1Stats {
            a1,
            total: 0,
            certified: 0,
        };
        for batch in tuples.chunks(BATCH) {
            let rows: Vec<Row> = pool.install(|| {
                batch
                    .par_iter()
                    .map(|t| evaluate(spec, t))
                    .collect::<Result<Vec<_>>>()
            })?;
            for row in &rows {
                stats.total += 1;
                if row.certified() {
                    stats.certified += 1;
                }
                if row.verdict == "inconclusive" {
                    report.budget_exhausted += 1;
                }
            }
            report.rows += rows.len() as u64;
            emit(&rows)?;
        }
        report.per_a1.push(stats);
    }
    Ok(report)
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<HashMap<String, String>> {
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            what: "config line",
            input: format!("line {}: {raw}", lineno + 1),
        })?;
        map.insert(key.trim().replace('-', "_"), value.trim().to_string());
    }
    Ok(map)
}

/// Parses `"lo..hi"` (inclusive) or a single value.
pub fn parse_range(input: &str) -> Result<(u64, u64)> {
    let err = || Error::Parse {
        what: "range",
        input: input.to_string(),
    };
    let s = input.trim();
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.strip_prefix('=').unwrap_or(hi)),
        None => (s, s),
    };
    let lo: u64 = lo.trim().parse().map_err(|_| err())?;
    let hi: u64 = hi.trim().parse().map_err(|_| err())?;
    Ok((lo, hi))
}

pub fn parse_strategy(input: &str) -> Result<Strategy> {
    match input.trim() {
        "auto" => Ok(Strategy::Auto),
        "construction" => Ok(Strategy::ConstructionOnly),
        "enumeration" => Ok(Strategy::EnumerationOnly),
        other => Err(Error::Parse {
            what: "method",
            input: other.to_string(),
        }),
    }
}

pub fn parse_eps(input: &str) -> Result<Rational> {
    let eps = lattice::parse_rational(input)?;
    check_eps(&eps)?;
    Ok(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::ratio;

    fn spec(n: usize, eps: Rational, a1: (u64, u64), tail: TailCap, workers: usize) -> SweepSpec {
        SweepSpec {
            n,
            eps,
            a1_min: a1.0,
            a1_max: a1.1,
            tail_caps: vec![tail],
            theta: None,
            strategy: Strategy::Auto,
            workers,
            cap: crate::DEFAULT_BUDGET,
            timing: false,
        }
    }

    #[test]
    fn tuples_are_sorted_coprime_and_lexicographic() {
        let s = spec(3, ratio(1, 1), (2, 2), TailCap::Absolute(4), 1);
        assert_eq!(
            s.tuples_for(2),
            vec![vec![2, 2, 3], vec![2, 3, 3], vec![2, 3, 4],]
        );
        let s = spec(2, ratio(1, 1), (4, 4), TailCap::Offset(3), 1);
        assert_eq!(s.tuples_for(4), vec![vec![4, 5], vec![4, 7]]);
    }

    #[test]
    fn small_sweep_has_eps_lc_rows() {
        let s = spec(2, ratio(1, 1), (1, 9), TailCap::Offset(5), 1);
        let mut buf = Vec::new();
        let report = run_sweep(&s, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert!(text.contains("2,1;3,1,eps-lc,"));
        assert_eq!(report.rows as usize, text.lines().count() - 1);
        assert_eq!(report.budget_exhausted, 0);
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let one = spec(2, ratio(1, 2), (3, 30), TailCap::Offset(40), 1);
        let four = SweepSpec {
            workers: 4,
            ..one.clone()
        };
        let (mut a, mut b) = (Vec::new(), Vec::new());
        run_sweep(&one, &mut a).unwrap();
        run_sweep(&four, &mut b).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empirical_m_is_suffix_frontier() {
        let report = FrontierReport {
            n: 2,
            eps: ratio(1, 2),
            per_a1: vec![
                A1Stats {
                    a1: 5,
                    total: 3,
                    certified: 3,
                },
                A1Stats {
                    a1: 6,
                    total: 3,
                    certified: 2,
                },
                A1Stats {
                    a1: 7,
                    total: 4,
                    certified: 4,
                },
                A1Stats {
                    a1: 8,
                    total: 0,
                    certified: 0,
                },
                A1Stats {
                    a1: 9,
                    total: 2,
                    certified: 2,
                },
            ],
            rows: 12,
            budget_exhausted: 0,
        };
        assert_eq!(report.empirical_m(), Some(7));
    }

    #[test]
    fn config_parsing() {
        let cfg = parse_config("# sweep\nn = 2\neps = 1/2 # half\n\na1=26..126\n").unwrap();
        assert_eq!(cfg["n"], "2");
        assert_eq!(cfg["eps"], "1/2");
        assert_eq!(parse_range(&cfg["a1"]).unwrap(), (26, 126));
        assert!(parse_config("no equals sign").is_err());
        assert_eq!(parse_range("3..=5").unwrap(), (3, 5));
        assert_eq!(parse_range("7").unwrap(), (7, 7));
        assert_eq!(TailCap::parse("+500").unwrap(), TailCap::Offset(500));
        assert_eq!(TailCap::parse("40").unwrap(), TailCap::Absolute(40));
        assert!(TailCap::parse("-4").is_err());
    }

    #[test]
    fn invalid_specs() {
        assert!(spec(1, ratio(1, 1), (1, 2), TailCap::Offset(1), 1)
            .validate()
            .is_err());
        assert!(spec(2, ratio(3, 2), (1, 2), TailCap::Offset(1), 1)
            .validate()
            .is_err());
        assert!(spec(2, ratio(1, 1), (5, 2), TailCap::Offset(1), 1)
            .validate()
            .is_err());
    }
}

//! Subcommand arguments and their computations.

use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use xxz_paths::correlations::{
    bound_down, exp_bound, fluctuation_distribution, multipoint_prob, pair_bound, spin_up_bound, tail_bound_f64,
    tail_bound_interval, CorrelationQuery, FluctuationQuery, PathSampler, Spin,
};
use xxz_paths::higher_dim::{compositions, three_way_all, z2d_reduction, Reduction2DQuery};
use xxz_paths::lattice_paths::{oracle_partition, BoxSpec, DEFAULT_ENUMERATION_CAP};
use xxz_paths::partition::{translate, z_generalized, z_recursive, ZCache};
use xxz_paths::qexact::ratio_to_f64;
use xxz_paths::verify::{self, VerificationReport};
use xxz_paths::{Execution, QValue, Scalar};

use crate::output::{float, Output, Table};
use crate::CliError;

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Partition function Z(n0,m0;n,m) as a polynomial in q
    Partition(PartitionArgs),
    /// Exact probability of a spin pattern, with its bounds
    Correlate(CorrelateArgs),
    /// Distribution of the window spin F_L with the tail bound
    Fluctuations(FluctuationArgs),
    /// Exact samples from the path measure
    Sample(SampleArgs),
    /// Two-dimensional partition functions by reduction
    Reduce2d(Reduce2dArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Run a grid of commands declared in a TOML file
    Sweep(SweepArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Partition(_) => "partition",
            Command::Correlate(_) => "correlate",
            Command::Fluctuations(_) => "fluctuations",
            Command::Sample(_) => "sample",
            Command::Reduce2d(_) => "reduce2d",
            Command::Verify(_) => "verify",
            Command::Sweep(_) => "sweep",
        }
    }

    /// The argument struct alone, as a JSON object with sorted keys.
    pub fn config(&self) -> Value {
        let v = serde_json::to_value(self).expect("arguments are plain data");
        match v {
            Value::Object(mut map) => map.remove(self.name()).unwrap_or(Value::Null),
            other => other,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
enum Method {
    Closed,
    Recursive,
    Oracle,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PartitionArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
    /// Box origin x coordinate
    #[arg(long, default_value_t = 0)]
    pub n0: u64,
    /// Box origin y coordinate
    #[arg(long, default_value_t = 0)]
    pub m0: u64,
    #[arg(long, conflicts_with_all = ["recursive", "oracle"])]
    pub closed: bool,
    #[arg(long, conflicts_with = "oracle")]
    pub recursive: bool,
    /// Brute-force enumeration of all paths
    #[arg(long)]
    pub oracle: bool,
    /// Enumeration cap for --oracle
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u128,
    /// Evaluate at q ("1/2", or a decimal with --float)
    #[arg(long)]
    pub eval: Option<String>,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CorrelateArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
    /// Comma-separated site:spin pairs, e.g. "3:down,4:up"
    #[arg(long)]
    pub sites: String,
    /// Evaluate the probability and bounds at q
    #[arg(long, conflicts_with = "exact")]
    pub eval: Option<String>,
    /// Emit only the exact rational function
    #[arg(long)]
    pub exact: bool,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct FluctuationArgs {
    /// Chain length, even
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub chain: u64,
    /// Window length, even and at most N
    #[arg(long = "L")]
    #[serde(rename = "L")]
    pub window: u64,
    #[arg(long)]
    pub q: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SampleArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub m: u64,
    /// Exact rational q
    #[arg(long)]
    pub q: String,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Reduce2dArgs {
    /// Sites per diagonal
    #[arg(long = "N")]
    #[serde(rename = "N")]
    pub n: u64,
    /// Number of diagonals
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub m: u64,
    /// Number of down spins
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub k: Option<u64>,
    /// Every k from 0 to N*M
    #[arg(long)]
    pub all: bool,
    /// Compare with the product expansion and the symmetric-function oracle
    #[arg(long)]
    pub check: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Paths,
    Bounds,
    Correlations,
    Reduce2d,
    All,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Largest n + m (for reduce2d: largest N and M)
    #[arg(long, default_value_t = 8)]
    pub max_nm: u64,
    /// Largest number of constrained sites for the correlations suite
    #[arg(long, default_value_t = 3)]
    pub max_sites: usize,
    /// Comma-separated exact q values for the bounds suite
    #[arg(long, default_value = "1/5,1/2,4/5")]
    pub grid: String,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Concurrent jobs; defaults to the number of CPUs
    #[arg(long)]
    pub jobs: Option<usize>,
}

/// Parses `q` as an exact rational, or as a float when `float` is set.
pub fn parse_q(s: &str, float: bool) -> Result<QValue, CliError> {
    let q = if float { QValue::parse_float(s)? } else { QValue::parse_exact(s)? };
    q.validate()?;
    Ok(q)
}

fn q_mode(q: Option<&QValue>) -> &'static str {
    q.map_or("none", QValue::mode)
}

/// Exact values as "p/r" strings, floats as JSON numbers.
fn exact_value(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

pub fn partition(a: &PartitionArgs, float_mode: bool) -> Result<Output, CliError> {
    let bx = BoxSpec::new(a.n0, a.m0, a.n, a.m)?;
    let method = if a.oracle {
        Method::Oracle
    } else if a.recursive {
        Method::Recursive
    } else {
        Method::Closed
    };
    let poly = match method {
        Method::Closed => z_generalized(&bx),
        Method::Recursive => {
            let (moved, e) = translate(&bx, bx.n0, bx.m0)?;
            z_recursive(moved.n, moved.m, &ZCache::new()).shift(e)
        }
        Method::Oracle => oracle_partition(&bx, a.cap)?,
    };
    let q = a.eval.as_deref().map(|s| parse_q(s, float_mode)).transpose()?;
    let mut table = Table::new(&["exponent", "coefficient"]);
    for (e, c) in poly.terms() {
        table.push(vec![e.to_string(), c.to_string()]);
    }
    let result = match &q {
        None => serde_json::to_value(&poly).expect("polynomial serializes"),
        Some(q) => {
            let value = match q {
                QValue::Exact(r) => exact_value(&poly.evaluate(r)),
                QValue::Float(x) => float(poly.evaluate(x)),
            };
            table = Table::new(&["q", "value"]);
            table.push(vec![q.to_string(), value_text(&value)]);
            json!({ "polynomial": poly, "q": q, "value": value })
        }
    };
    Ok(Output { result, table, text: None, failed: false, q_mode: q_mode(q.as_ref()) })
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

struct NamedBound<S> {
    name: &'static str,
    value: Option<S>,
    in_regime: bool,
}

fn bounds_for<S: Scalar>(query: &CorrelationQuery, q: &S) -> Vec<NamedBound<S>> {
    let (n, m, l) = (query.n, query.m, query.n + query.m);
    let mut out = vec![NamedBound {
        name: "exponential",
        value: Some(exp_bound(query, q)),
        in_regime: query.in_exp_bound_regime(),
    }];
    match query.constraints() {
        [(x, Spin::Down)] => out.push(NamedBound {
            name: "spin_down",
            value: bound_down(n, m, *x, q),
            in_regime: *x >= n,
        }),
        [(x, Spin::Up)] => out.push(NamedBound {
            name: "spin_up",
            value: spin_up_bound(n, m, q),
            in_regime: *x >= n && *x >= m && *x <= l,
        }),
        [(x, Spin::Down), (y, Spin::Up)] if *y == x + 1 => out.push(NamedBound {
            name: "pair_down_up",
            value: pair_bound(n, m, *x, q),
            in_regime: *x >= n && *x >= m && *x < l,
        }),
        _ => {}
    }
    out
}

pub fn correlate(a: &CorrelateArgs, float_mode: bool) -> Result<Output, CliError> {
    let query = CorrelationQuery::parse(a.n, a.m, &a.sites)?;
    let prob = multipoint_prob(&query, &ZCache::new())?;
    let q = a.eval.as_deref().map(|s| parse_q(s, float_mode)).transpose()?;
    let mut table = Table::new(&["quantity", "value", "in_regime", "holds"]);
    table.push(vec!["probability".into(), prob.to_string(), String::new(), String::new()]);
    let mut result = json!({
        "sector": [a.n, a.m],
        "sites": query.sites_string(),
        "probability": prob,
    });
    let mut failed = false;
    if let Some(q) = &q {
        let (value, bounds): (Value, Vec<(Value, &str, bool, Option<bool>)>) = match q {
            QValue::Exact(r) => {
                let v = prob.evaluate(r)?;
                let b = bounds_for(&query, r)
                    .into_iter()
                    .map(|nb| {
                        let holds = nb.value.as_ref().map(|b| v <= *b);
                        (nb.value.as_ref().map_or(Value::Null, exact_value), nb.name, nb.in_regime, holds)
                    })
                    .collect();
                (exact_value(&v), b)
            }
            QValue::Float(x) => {
                let v = prob.evaluate(x)?;
                let b = bounds_for(&query, x)
                    .into_iter()
                    .map(|nb| {
                        let holds = nb.value.map(|b| v <= b);
                        (nb.value.map_or(Value::Null, float), nb.name, nb.in_regime, holds)
                    })
                    .collect();
                (float(v), b)
            }
        };
        table.push(vec!["value".into(), value_text(&value), String::new(), String::new()]);
        let list: Vec<Value> = bounds
            .iter()
            .map(|(v, name, in_regime, holds)| {
                table.push(vec![
                    format!("bound_{name}"),
                    value_text(v),
                    in_regime.to_string(),
                    holds.map_or(String::new(), |h| h.to_string()),
                ]);
                if *in_regime && *holds == Some(false) {
                    failed = true;
                }
                json!({ "name": name, "value": v, "in_regime": in_regime, "holds": holds })
            })
            .collect();
        let main = &bounds[0];
        result["q"] = json!(q);
        result["value"] = value;
        result["bound"] = main.0.clone();
        result["bound_holds"] = json!(main.3);
        result["bounds"] = Value::Array(list);
    }
    Ok(Output { result, table, text: None, failed, q_mode: q_mode(q.as_ref()) })
}

pub fn fluctuations(a: &FluctuationArgs, float_mode: bool, exec: Execution) -> Result<Output, CliError> {
    let fq = FluctuationQuery::new(a.chain, a.window)?;
    let q = parse_q(&a.q, float_mode)?;
    let dist = fluctuation_distribution(&fq, &ZCache::new(), exec);
    let mut table = Table::new(&["l", "probability", "tail_bound_lo", "tail_bound_hi", "bound_holds"]);
    let mut rows = Vec::new();
    let mut failed = false;
    for l in dist.values() {
        let p = dist.prob(l);
        let (value, lo, hi, holds, approx) = match &q {
            QValue::Exact(r) => {
                let v = p.evaluate(r)?;
                if l >= 1 {
                    let iv = tail_bound_interval(r, a.window, l as u64)?;
                    let holds = v <= iv.lo;
                    let approx = float(ratio_to_f64(&iv.lo));
                    (exact_value(&v), exact_value(&iv.lo), exact_value(&iv.hi), Some(holds), approx)
                } else {
                    (exact_value(&v), Value::Null, Value::Null, None, Value::Null)
                }
            }
            QValue::Float(x) => {
                let v = p.evaluate(x)?;
                if l >= 1 {
                    let b = tail_bound_f64(*x, a.window, l as u64)?;
                    (float(v), float(b), float(b), Some(v <= b), float(b))
                } else {
                    (float(v), Value::Null, Value::Null, None, Value::Null)
                }
            }
        };
        failed |= holds == Some(false);
        table.push(vec![
            l.to_string(),
            value_text(&value),
            value_text(&lo),
            value_text(&hi),
            holds.map_or(String::new(), |h| h.to_string()),
        ]);
        rows.push(json!({
            "l": l,
            "numerator": dist.numerators[&l],
            "probability": value,
            "tail_bound": { "lo": lo, "hi": hi, "approx": approx },
            "bound_holds": holds,
        }));
    }
    let mean = match &q {
        QValue::Exact(r) => exact_value(&dist.mean(r)),
        QValue::Float(x) => float(dist.mean(x)),
    };
    let result = json!({
        "N": a.chain,
        "L": a.window,
        "window": dist.query.window_sites(),
        "q": q,
        "partition": dist.partition,
        "normalised": dist.is_normalised(),
        "symmetric": dist.is_symmetric(),
        "mean": mean,
        "distribution": rows,
    });
    Ok(Output { result, table, text: None, failed, q_mode: q.mode() })
}

pub fn sample(a: &SampleArgs, float_mode: bool, exec: Execution) -> Result<Output, CliError> {
    if float_mode {
        return Err(CliError::Usage("sample needs an exact rational q; drop --float".into()));
    }
    let q = parse_q(&a.q, false)?;
    let QValue::Exact(r) = &q else { unreachable!("parsed in exact mode") };
    let sampler = PathSampler::new(a.n, a.m, r)?;
    let paths = sampler.sample_many(a.seed, a.count, exec);
    let mut table = Table::new(&["index", "path", "area"]);
    let mut lines = Vec::with_capacity(paths.len());
    let mut list = Vec::with_capacity(paths.len());
    for (i, p) in paths.iter().enumerate() {
        table.push(vec![i.to_string(), p.to_string(), p.area().to_string()]);
        lines.push(p.to_string());
        list.push(json!({ "path": p.to_string(), "area": p.area() }));
    }
    let result = json!({ "sector": [a.n, a.m], "q": q, "seed": a.seed, "paths": list });
    Ok(Output { result, table, text: Some(lines), failed: false, q_mode: q.mode() })
}

pub fn reduce2d(a: &Reduce2dArgs, exec: Execution) -> Result<Output, CliError> {
    let ks: Vec<u64> = match a.k {
        Some(k) => {
            Reduction2DQuery::new(a.n, a.m, k)?;
            vec![k]
        }
        None => {
            Reduction2DQuery::new(a.n, a.m, 0)?;
            (0..=a.n * a.m).collect()
        }
    };
    let mut table = Table::new(&["k", "compositions", "z2d", "equal"]);
    let mut entries = Vec::new();
    let mut failed = false;
    let checks = if a.check { Some(three_way_all(a.n, a.m, exec)?) } else { None };
    let values = exec.map(ks.clone(), |k| z2d_reduction(a.n, a.m, k));
    for (k, z) in ks.iter().zip(values) {
        let comps = compositions(a.n, a.m, *k);
        let mut entry = json!({ "k": k, "compositions": comps, "z2d": z });
        let mut equal = String::new();
        if let Some(checks) = &checks {
            let c = &checks[*k as usize];
            failed |= !c.equal;
            equal = c.equal.to_string();
            entry["check"] = json!({
                "product_coefficient": c.product_coefficient,
                "oracle": c.oracle,
                "equal": c.equal,
            });
        }
        let comps_text: Vec<String> = comps
            .iter()
            .map(|t| format!("({})", t.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        table.push(vec![k.to_string(), comps_text.join(" "), z.to_string(), equal]);
        entries.push(entry);
    }
    let mut result = json!({ "N": a.n, "M": a.m, "entries": entries });
    if a.check {
        result["pass"] = json!(!failed);
    }
    Ok(Output { result, table, text: None, failed, q_mode: "none" })
}

pub fn verify_suite(a: &VerifyArgs, exec: Execution) -> Result<Output, CliError> {
    let grid: Vec<BigRational> = a
        .grid
        .split(',')
        .map(|s| match parse_q(s, false)? {
            QValue::Exact(r) => Ok(r),
            QValue::Float(_) => unreachable!("parsed in exact mode"),
        })
        .collect::<Result<_, CliError>>()?;
    let k = a.max_nm;
    let report = match a.suite {
        Suite::Identities => verify::identities(k, exec),
        Suite::Paths => verify::path_symmetries(k, exec),
        Suite::Bounds => verify::bounds(k, &grid, exec),
        Suite::Correlations => verify::correlations(k, a.max_sites, exec),
        Suite::Reduce2d => verify::reduce2d(k, exec),
        Suite::All => VerificationReport::merge(
            "all",
            vec![
                verify::identities(k, exec),
                verify::path_symmetries(k, exec),
                verify::bounds(k, &grid, exec),
                verify::correlations(k, a.max_sites, exec),
                verify::reduce2d(k.min(4), exec),
            ],
        ),
    };
    let mut table = Table::new(&["name", "instances", "failures", "hard", "counterexample"]);
    for r in &report.records {
        table.push(vec![
            r.name.clone(),
            r.instances.to_string(),
            r.failures.to_string(),
            r.hard.to_string(),
            r.counterexample.clone().unwrap_or_default(),
        ]);
    }
    Ok(Output {
        result: report.to_json_value(),
        table,
        text: None,
        failed: !report.pass,
        q_mode: if matches!(a.suite, Suite::Bounds | Suite::All) { "exact" } else { "none" },
    })
}

//! Report rendering. CSV reals carry 17 significant digits.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::Format;
use crate::axioms::{Axiom, AxiomReport};
use crate::cone::Vector;
use crate::fixed_point::{CheckStatus, SolveReport, StopReason};
use crate::metric::{Classification, MetricClass, RealTable};
use crate::space::PointValue;

/// One step of a printed orbit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub n: usize,
    pub x_n: PointValue,
    /// `D(x_n, x_{n+1})`
    pub d_n: f64,
    /// `max η` over the trailing window ending at `x_{n+1}`
    pub eta_tail_max: f64,
    /// `S_n` for the witness index `m = N`, when `k̂ < 1`
    pub s_n: Option<f64>,
    /// `D(x_n, x_N)`
    pub d_to_limit: f64,
    /// `sup D(x_i, x_j)` over the trailing window ending at `x_n`
    pub pairwise_sup: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub map: String,
    pub start: PointValue,
    pub k_hat: Option<f64>,
    pub k_exact: bool,
    pub witness_m: usize,
    pub tail_window: usize,
    pub stop: StopReason,
    pub limit: PointValue,
    pub rows: Vec<TraceRow>,
}

fn real(x: f64) -> String {
    format!("{x:.16e}")
}

/// Plain decimal for moderate magnitudes, scientific otherwise.
fn num(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-4..1e12).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn vector(v: &Vector) -> String {
    v.to_string()
}

fn json<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    writeln!(out, "{text}")
}

fn csv_writer(out: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().from_writer(out)
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn axiom_name(a: Axiom) -> &'static str {
    match a {
        Axiom::D1 => "d1",
        Axiom::D2 => "d2",
        Axiom::D3 => "d3",
    }
}

fn points(p: &[PointValue]) -> String {
    p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

pub fn verify(out: &mut dyn Write, format: Format, r: &AxiomReport) -> io::Result<()> {
    match format {
        Format::Json => json(out, r),
        Format::Csv => {
            let mut w = csv_writer(out);
            if r.checks.is_empty() {
                w.write_record(["axiom", "points", "lhs", "rhs", "slack", "message"])
                    .map_err(csv_err)?;
                for v in &r.violations {
                    w.write_record([
                        axiom_name(v.axiom).to_string(),
                        points(&v.points),
                        vector(&v.lhs),
                        vector(&v.rhs),
                        real(v.slack),
                        v.message.clone(),
                    ])
                    .map_err(csv_err)?;
                }
            } else {
                w.write_record([
                    "x",
                    "y",
                    "z",
                    "lhs",
                    "eta",
                    "sum",
                    "rhs",
                    "slack",
                    "tolerance_used",
                    "passed",
                ])
                .map_err(csv_err)?;
                for c in &r.checks {
                    w.write_record([
                        c.x.to_string(),
                        c.y.to_string(),
                        c.z.to_string(),
                        vector(&c.lhs),
                        real(c.eta),
                        vector(&c.sum),
                        vector(&c.rhs),
                        real(c.slack),
                        real(c.tolerance_used),
                        c.passed.to_string(),
                    ])
                    .map_err(csv_err)?;
                }
            }
            w.flush()
        }
        Format::Human => {
            let scope = if r.exhaustive { "exhaustive" } else { "sampled" };
            writeln!(
                out,
                "{} over {} points ({scope}), {} pairs, {} triples, tol {}",
                if r.all_ok() {
                    "all axioms hold"
                } else {
                    "axioms violated"
                },
                r.points_checked,
                r.pairs_checked,
                r.triples_checked,
                num(r.tolerance)
            )?;
            writeln!(out, "  (d1) {}", mark(r.d1_ok))?;
            writeln!(out, "  (d2) {}", mark(r.d2_ok))?;
            writeln!(out, "  (d3) {}", mark(r.d3_ok))?;
            for c in &r.checks {
                writeln!(
                    out,
                    "  check ({}, {}, {}): {} <= {} * {} = {}  slack {}  tol used {}  {}",
                    c.x,
                    c.y,
                    c.z,
                    c.lhs,
                    num(c.eta),
                    c.sum,
                    c.rhs,
                    num(c.slack),
                    num(c.tolerance_used),
                    mark(c.passed)
                )?;
            }
            for v in &r.violations {
                writeln!(
                    out,
                    "  violation ({}) at ({}): lhs {} rhs {} slack {}: {}",
                    axiom_name(v.axiom),
                    points(&v.points),
                    v.lhs,
                    v.rhs,
                    num(v.slack),
                    v.message
                )?;
            }
            if r.violation_count > r.violations.len() {
                writeln!(out, "  ... {} violations in total", r.violation_count)?;
            }
            Ok(())
        }
    }
}

fn table_csv(out: &mut dyn Write, t: &RealTable, column: &str) -> io::Result<()> {
    let mut w = csv_writer(out);
    w.write_record(["x", "z", column]).map_err(csv_err)?;
    let n = t.n();
    for i in 0..n {
        for j in 0..n {
            w.write_record([t.labels[i].clone(), t.labels[j].clone(), real(t.get(i, j))])
                .map_err(csv_err)?;
        }
    }
    w.flush()
}

fn table_human(out: &mut dyn Write, t: &RealTable) -> io::Result<()> {
    let cells: Vec<String> = t.values.iter().map(|v| format!("{v:.6}")).collect();
    let width = cells
        .iter()
        .map(String::len)
        .chain(t.labels.iter().map(|l| l.chars().count()))
        .max()
        .unwrap_or(1);
    write!(out, "{:>width$}", "")?;
    for l in &t.labels {
        write!(out, "  {l:>width$}")?;
    }
    writeln!(out)?;
    let n = t.n();
    for i in 0..n {
        write!(out, "{:>width$}", t.labels[i])?;
        for j in 0..n {
            write!(out, "  {:>width$}", cells[i * n + j])?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn real_table(out: &mut dyn Write, format: Format, t: &RealTable) -> io::Result<()> {
    match format {
        Format::Json => json(out, t),
        Format::Csv => table_csv(out, t, "eta_min"),
        Format::Human => {
            writeln!(out, "minimal eta (row x, column z):")?;
            table_human(out, t)
        }
    }
}

pub fn classification(out: &mut dyn Write, format: Format, c: &Classification) -> io::Result<()> {
    match format {
        Format::Json => json(out, c),
        Format::Csv => table_csv(out, &c.minimal_eta, "eta_min"),
        Format::Human => {
            match c.class {
                MetricClass::Metric => writeln!(out, "metric: the triangle inequality holds")?,
                MetricClass::MetricType => writeln!(out, "not a metric: metric-type with L = {}", num(c.constant))?,
            }
            if let Some(w) = &c.witness {
                writeln!(
                    out,
                    "witness ({}, {}, {}): D({}, {}) = {} > D({}, {}) + D({}, {}) = {}  (ratio {})",
                    w.x,
                    w.y,
                    w.z,
                    w.x,
                    w.z,
                    num(w.direct),
                    w.x,
                    w.y,
                    w.y,
                    w.z,
                    num(w.via),
                    num(w.ratio)
                )?;
            }
            writeln!(out, "minimal eta (row x, column z):")?;
            table_human(out, &c.minimal_eta)
        }
    }
}

fn status_name(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Unverified => "unverified",
    }
}

pub fn solve(out: &mut dyn Write, format: Format, r: &SolveReport) -> io::Result<()> {
    let status = serde_json::to_value(r.status)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    match format {
        Format::Json => json(out, r),
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["item", "status", "value", "bound", "detail"])
                .map_err(csv_err)?;
            let fp = r.fixed_point.as_ref().map(|p| p.to_string()).unwrap_or_default();
            w.write_record(["fixed_point", &status, &fp, "", ""]).map_err(csv_err)?;
            w.write_record(["residual", "", &real(r.residual), &real(r.tolerance), ""])
                .map_err(csv_err)?;
            w.write_record(["iterations", "", &r.iterations.to_string(), "", ""])
                .map_err(csv_err)?;
            for (name, c) in &r.preconditions {
                w.write_record([
                    name.as_str(),
                    status_name(c.status),
                    &real(c.value),
                    &c.bound.map(real).unwrap_or_default(),
                    &c.detail,
                ])
                .map_err(csv_err)?;
            }
            w.flush()
        }
        Format::Human => {
            writeln!(out, "scheme {}  map {}  start {}", r.scheme, r.map, r.start)?;
            writeln!(out, "status: {status}")?;
            match &r.fixed_point {
                Some(PointValue::Value(x)) => writeln!(out, "fixed point: {}", num(*x))?,
                Some(p) => writeln!(out, "fixed point: {p}")?,
                None => writeln!(out, "fixed point: none")?,
            }
            writeln!(out, "residual: {} (tol {})", num(r.residual), num(r.tolerance))?;
            writeln!(out, "iterations: {}", r.iterations)?;
            writeln!(out, "hypotheses:")?;
            for (name, c) in &r.preconditions {
                let bound = c.bound.map_or("inf".to_string(), num);
                writeln!(
                    out,
                    "  {name:<20} {:<10} value {}  bound {bound}  ({})",
                    status_name(c.status),
                    num(c.value),
                    c.detail
                )?;
            }
            writeln!(out, "guarantee scoped to the start point {}", r.start)
        }
    }
}

pub fn trace(out: &mut dyn Write, format: Format, t: &TraceReport) -> io::Result<()> {
    match format {
        Format::Json => json(out, t),
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["n", "x_n", "d_n", "eta_tail_max", "s_n", "d_to_limit", "pairwise_sup"])
                .map_err(csv_err)?;
            for r in &t.rows {
                let x = match &r.x_n {
                    PointValue::Value(v) => real(*v),
                    PointValue::Label(l) => l.clone(),
                };
                w.write_record([
                    r.n.to_string(),
                    x,
                    real(r.d_n),
                    real(r.eta_tail_max),
                    r.s_n.map(real).unwrap_or_default(),
                    real(r.d_to_limit),
                    real(r.pairwise_sup),
                ])
                .map_err(csv_err)?;
            }
            w.flush()
        }
        Format::Human => {
            let k = t.k_hat.map_or("unavailable".to_string(), num);
            writeln!(
                out,
                "map {}  start {}  k_hat {k}{}  stop {:?}  witness m = {}",
                t.map,
                t.start,
                if t.k_exact { " (exact)" } else { " (sampled)" },
                t.stop,
                t.witness_m
            )?;
            writeln!(
                out,
                "{:>5}  {:>24}  {:>12}  {:>12}  {:>12}  {:>12}  {:>12}",
                "n", "x_n", "d_n", "eta_tail", "S_n", "D(x_n,lim)", "pair_sup"
            )?;
            for r in &t.rows {
                writeln!(
                    out,
                    "{:>5}  {:>24}  {:>12.4e}  {:>12.6}  {:>12}  {:>12.4e}  {:>12.4e}",
                    r.n,
                    r.x_n.to_string(),
                    r.d_n,
                    r.eta_tail_max,
                    r.s_n.map_or("-".to_string(), |s| format!("{s:.6}")),
                    r.d_to_limit,
                    r.pairwise_sup
                )?;
            }
            Ok(())
        }
    }
}

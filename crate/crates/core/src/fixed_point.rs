//! Picard iteration and fixed-point solvers whose hypotheses are checked
//! numerically.
//!
//! Every solver returns a [`SolveReport`] carrying each checked hypothesis,
//! even when iteration succeeds. Hypotheses verified only on samples are
//! labelled as such; a passing report is scoped to the start point it ran
//! from.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::space::{EtaConeSpace, Point, PointValue, SamplingPlan};

/// Default stopping tolerance on `D`.
pub const DEFAULT_SOLVE_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000;
/// Default number of trailing iterates standing in for `n, m → ∞`.
pub const DEFAULT_TAIL_WINDOW: usize = 16;

/// Relative slack granted to monitored step ratios for rounding.
const RATIO_SLACK: f64 = 1e-12;

/// Estimated factors within this of 1 count as non-contractive: an isometry
/// evaluated in floating point can come out a few ulps below 1.
const CONTRACTION_GUARD: f64 = 1e-9;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Rule {
    Real(RealFn),
    Table(Vec<usize>),
    Identity,
    Constant(Point),
    Power(Box<SelfMap>, usize),
}

/// A map `T: X → X`. Every application checks that both argument and image
/// lie in the space.
#[derive(Clone)]
pub struct SelfMap {
    description: String,
    rule: Rule,
}

impl fmt::Debug for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("SelfMap").field(&self.description).finish()
    }
}

impl SelfMap {
    /// A map on interval points given by a real function.
    pub fn real(description: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        SelfMap {
            description: description.into(),
            rule: Rule::Real(Arc::new(f)),
        }
    }

    /// `x ↦ x/2`
    pub fn half() -> Self {
        Self::real("x/2", |x| x / 2.0)
    }

    /// `x ↦ x²`
    pub fn square() -> Self {
        Self::real("x^2", |x| x * x)
    }

    /// `x ↦ a·x + b`
    pub fn affine(a: f64, b: f64) -> Self {
        Self::real(format!("{a}*x + {b}"), move |x| a * x + b)
    }

    /// `x ↦ c` on an interval.
    pub fn constant_real(c: f64) -> Self {
        Self::real(format!("const {c}"), move |_| c)
    }

    /// `x ↦ c − x`
    pub fn reflect(c: f64) -> Self {
        Self::real(format!("{c} - x"), move |x| c - x)
    }

    pub fn identity() -> Self {
        SelfMap {
            description: "identity".into(),
            rule: Rule::Identity,
        }
    }

    /// `x ↦ p` on any space.
    pub fn constant_point(p: Point, label: &str) -> Self {
        SelfMap {
            description: format!("const {label}"),
            rule: Rule::Constant(p),
        }
    }

    /// A finite map given by image indices: `i ↦ images[i]`.
    pub fn table(images: Vec<usize>) -> Self {
        let description = format!(
            "table [{}]",
            images.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(", ")
        );
        SelfMap {
            description,
            rule: Rule::Table(images),
        }
    }

    /// The `n`-fold composition `Tⁿ`.
    pub fn power(&self, n: usize) -> Result<Self> {
        match n {
            0 => Err(contract("map power must be at least 1")),
            1 => Ok(self.clone()),
            _ => Ok(SelfMap {
                description: format!("({})^{n}", self.description),
                rule: Rule::Power(Box::new(self.clone()), n),
            }),
        }
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn apply(&self, space: &EtaConeSpace, p: Point) -> Result<Point> {
        if !space.contains(p) {
            return Err(Error::Domain(format!(
                "{} applied to {p:?}, which is outside the domain",
                self.description
            )));
        }
        let image = match &self.rule {
            Rule::Identity => p,
            Rule::Constant(c) => *c,
            Rule::Real(f) => match p {
                Point::Real(x) => Point::Real(f(x)),
                _ => {
                    return Err(Error::Domain(format!(
                        "{} is undefined at `{}`",
                        self.description,
                        space.label(p)
                    )))
                }
            },
            Rule::Table(images) => match p {
                Point::Index(i) if i < images.len() => Point::Index(images[i]),
                _ => {
                    return Err(Error::Domain(format!(
                        "{} has no image for `{}`",
                        self.description,
                        space.label(p)
                    )))
                }
            },
            Rule::Power(inner, n) => {
                let mut q = p;
                for _ in 0..*n {
                    q = inner.apply(space, q)?;
                }
                q
            }
        };
        if !space.contains(image) {
            let shown = match image {
                Point::Real(x) => x.to_string(),
                Point::Index(i) => format!("index {i}"),
                Point::Sentinel(i) => format!("sentinel {i}"),
            };
            return Err(Error::Domain(format!(
                "{} maps `{}` to {shown}, outside the domain",
                self.description,
                space.label(p)
            )));
        }
        Ok(image)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    CycleDetected,
    MaxIter,
}

/// Picard iterates `x_0, …, x_N` with `d_n = D(x_n, x_{n+1})`.
#[derive(Clone, Debug)]
pub struct OrbitTrace {
    pub iterates: Vec<Point>,
    pub step_distances: Vec<f64>,
    /// Index of the first iterate covered by `tail_eta`.
    pub tail_start: usize,
    /// `η(x_i, x_j)` for `i, j` in the trailing window, row-major.
    pub tail_eta: Vec<Vec<f64>>,
    pub stop: StopReason,
}

impl OrbitTrace {
    pub fn len(&self) -> usize {
        self.step_distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.step_distances.is_empty()
    }

    pub fn last(&self) -> Point {
        *self.iterates.last().expect("an orbit has at least one iterate")
    }

    /// `max η(x_n, x_m)` over distinct indices in the trailing window.
    pub fn eta_tail_max(&self) -> f64 {
        let mut best: f64 = 1.0;
        for (i, row) in self.tail_eta.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if i != j {
                    best = best.max(e);
                }
            }
        }
        best
    }
}

/// Iterates `x_{n+1} = T x_n` until `d_n ≤ stop_tol`, a cycle, or `max_iter`
/// applications of `T`.
pub fn picard_orbit(
    space: &EtaConeSpace,
    map: &SelfMap,
    x0: Point,
    max_iter: usize,
    stop_tol: f64,
    tail_window: usize,
) -> Result<OrbitTrace> {
    if max_iter == 0 {
        return Err(contract("max_iter must be at least 1"));
    }
    if tail_window < 2 {
        return Err(contract("tail window must be at least 2"));
    }
    if !space.contains(x0) {
        return Err(Error::Domain(format!("start point {x0:?} is outside the domain")));
    }
    let mut iterates = vec![x0];
    let mut steps: Vec<f64> = Vec::new();
    let mut seen: HashSet<usize> = HashSet::new();
    if let Point::Index(i) = x0 {
        seen.insert(i);
    }
    let mut stop = StopReason::MaxIter;
    for n in 0..max_iter {
        let x = iterates[n];
        let next = map.apply(space, x)?;
        let d = space.dist(x, next)?;
        iterates.push(next);
        steps.push(d);
        if d <= stop_tol {
            stop = StopReason::Converged;
            break;
        }
        if let Point::Index(i) = next {
            if !seen.insert(i) {
                stop = StopReason::CycleDetected;
                break;
            }
        } else if n >= 1 && d >= steps[n - 1] && near_cycle(space, &iterates, stop_tol)? {
            stop = StopReason::CycleDetected;
            break;
        }
    }
    let tail_start = iterates.len().saturating_sub(tail_window);
    let tail = &iterates[tail_start..];
    let tail_eta = tail
        .iter()
        .map(|&a| tail.iter().map(|&b| space.eta(a, b)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbitTrace {
        iterates,
        step_distances: steps,
        tail_start,
        tail_eta,
        stop,
    })
}

/// `D(x_last, x_{last−p}) ≤ tol` for some period `p ∈ 2..=4`.
fn near_cycle(space: &EtaConeSpace, iterates: &[Point], tol: f64) -> Result<bool> {
    let last = iterates.len() - 1;
    for p in 2..=4.min(last) {
        if space.dist(iterates[last], iterates[last - p])? <= tol {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContractionEstimate {
    /// `max D(Tx, Ty) / D(x, y)` over the examined pairs.
    pub k: f64,
    /// True when every pair of a finite space was examined.
    pub exact: bool,
    pub pairs: usize,
    pub witness: Option<(PointValue, PointValue)>,
}

/// Lipschitz ratio of `T` with respect to `D`: exact on finite spaces, a
/// sampled lower bound on intervals.
pub fn estimate_contraction(space: &EtaConeSpace, map: &SelfMap, plan: &SamplingPlan) -> Result<ContractionEstimate> {
    let points = space.sample_points(plan);
    let images = points
        .iter()
        .map(|&p| map.apply(space, p))
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<(f64, usize, usize)> = None;
    let mut pairs = 0;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let den = space.dist(points[i], points[j])?;
            if den <= 0.0 {
                continue;
            }
            pairs += 1;
            let ratio = space.dist(images[i], images[j])? / den;
            if best.is_none_or(|(b, _, _)| ratio > b) {
                best = Some((ratio, i, j));
            }
        }
    }
    let (k, i, j) = best.ok_or_else(|| Error::Estimation("every sampled pair is degenerate (D(x, y) = 0)".into()))?;
    Ok(ContractionEstimate {
        k,
        exact: space.is_finite(),
        pairs,
        witness: Some((space.value(points[i]), space.value(points[j]))),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unverified,
}

/// One measured hypothesis: `value` compared against `bound`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub status: CheckStatus,
    pub value: f64,
    /// Absent when the bound is infinite.
    pub bound: Option<f64>,
    pub detail: String,
}

impl Check {
    fn below(value: f64, bound: f64, detail: impl Into<String>) -> Check {
        Check {
            status: if value < bound {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            value,
            bound: bound.is_finite().then_some(bound),
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

fn reciprocal(k: f64) -> f64 {
    if k > 0.0 {
        1.0 / k
    } else {
        f64::INFINITY
    }
}

/// `max η(x_n, x_m)` over the trailing `tail_window` iterates against `1/k`.
pub fn orbit_eta_condition(space: &EtaConeSpace, trace: &OrbitTrace, k: f64, tail_window: usize) -> Result<Check> {
    if !(0.0..1.0).contains(&k) {
        return Err(contract(format!("contraction factor {k} is outside [0, 1)")));
    }
    if tail_window < 2 {
        return Err(contract("tail window must be at least 2"));
    }
    let start = trace.iterates.len().saturating_sub(tail_window);
    let tail = &trace.iterates[start..];
    let mut max: f64 = 1.0;
    for (i, &a) in tail.iter().enumerate() {
        for (j, &b) in tail.iter().enumerate() {
            if i != j {
                max = max.max(space.eta(a, b)?);
            }
        }
    }
    Ok(Check::below(
        max,
        reciprocal(k),
        format!("max eta over the last {} iterates", tail.len()),
    ))
}

/// `S_0, …, S_{m−1}` with `S_n = Σ_{j=1}^{n} k^j Π_{i=1}^{j} K·η(x_i, x_m)`.
pub fn partial_sums(space: &EtaConeSpace, trace: &OrbitTrace, k: f64, m: usize) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&k) {
        return Err(contract(format!("contraction factor {k} is outside [0, 1)")));
    }
    if m == 0 || m >= trace.iterates.len() {
        return Err(contract(format!(
            "witness index {m} must lie in 1..{}",
            trace.iterates.len()
        )));
    }
    let kn = space.cone().normal_constant();
    let xm = trace.iterates[m];
    let mut sums = vec![0.0];
    let (mut power, mut product) = (1.0, 1.0);
    for j in 1..m {
        power *= k;
        product *= kn * space.eta(trace.iterates[j], xm)?;
        sums.push(sums[j - 1] + power * product);
    }
    Ok(sums)
}

/// Bound on `D(x_n, x_m)` from unrolling the scaled triangle inequality along
/// the orbit: `d_0 · Σ_{j=n}^{m−1} k^j Π_{i=n}^{j} K·η(x_i, x_m)`.
///
/// For `n ≥ 1` this is at most `(S_{m−1} − S_{n−1})·d_0`. The difference
/// `S_{m−1} − S_n` omits the `j = n` term and is not a bound.
pub fn tail_bound(space: &EtaConeSpace, trace: &OrbitTrace, k: f64, n: usize, m: usize) -> Result<f64> {
    if n >= m || m >= trace.iterates.len() {
        return Err(contract(format!("tail bound needs n < m < {}", trace.iterates.len())));
    }
    let kn = space.cone().normal_constant();
    let xm = trace.iterates[m];
    let mut power = k.powi(n as i32);
    let mut product = 1.0;
    let mut total = 0.0;
    for j in n..m {
        product *= kn * space.eta(trace.iterates[j], xm)?;
        total += power * product;
        power *= k;
    }
    Ok(total * trace.step_distances[0])
}

/// `d_n ≤ λ·d_{n−1}` at every step, and tail `η < 1/λ`.
pub fn cauchy_rate_check(space: &EtaConeSpace, trace: &OrbitTrace, lambda: f64, tail_window: usize) -> Result<Check> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(contract(format!("rate {lambda} is outside (0, 1)")));
    }
    let d = &trace.step_distances;
    if d.iter().all(|&x| x == 0.0) {
        return Ok(Check {
            status: CheckStatus::Pass,
            value: 0.0,
            bound: Some(lambda),
            detail: "constant orbit: every step distance is 0".into(),
        });
    }
    let mut worst: f64 = 0.0;
    for n in 1..d.len() {
        let ratio = if d[n - 1] > 0.0 {
            d[n] / d[n - 1]
        } else if d[n] > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        if d[n] > lambda * d[n - 1] * (1.0 + RATIO_SLACK) {
            return Ok(Check {
                status: CheckStatus::Fail,
                value: if ratio.is_finite() { ratio } else { f64::MAX },
                bound: Some(lambda),
                detail: format!("d_{n} / d_{} exceeds the rate", n - 1),
            });
        }
        worst = worst.max(ratio);
    }
    let eta = orbit_eta_condition(space, trace, lambda, tail_window)?;
    if !eta.passed() {
        return Ok(Check {
            detail: format!("step ratios within rate, but {}", eta.detail),
            ..eta
        });
    }
    Ok(Check {
        status: CheckStatus::Pass,
        value: worst,
        bound: Some(lambda),
        detail: format!(
            "max step ratio over {} steps; tail eta max {} < {}",
            d.len().saturating_sub(1),
            eta.value,
            reciprocal(lambda)
        ),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Converged,
    PreconditionFailed,
    MaxIter,
    CycleDetected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub scheme: String,
    pub map: String,
    pub start: PointValue,
    pub fixed_point: Option<PointValue>,
    /// `D(x*, T x*)` for the returned point; without one, `d_{N−1}`.
    pub residual: f64,
    pub iterations: usize,
    pub tolerance: f64,
    pub preconditions: BTreeMap<String, Check>,
    pub status: SolveStatus,
}

impl SolveReport {
    pub fn preconditions_hold(&self) -> bool {
        self.preconditions.values().all(|c| c.status != CheckStatus::Fail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveConfig {
    pub tol: f64,
    pub max_iter: usize,
    pub tail_window: usize,
    pub plan: SamplingPlan,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            tol: DEFAULT_SOLVE_TOL,
            max_iter: DEFAULT_MAX_ITER,
            tail_window: DEFAULT_TAIL_WINDOW,
            plan: SamplingPlan::default(),
        }
    }
}

impl SolveConfig {
    fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(contract("tolerance must be positive"));
        }
        if self.max_iter == 0 {
            return Err(contract("max_iter must be at least 1"));
        }
        if self.tail_window < 2 {
            return Err(contract("tail window must be at least 2"));
        }
        Ok(())
    }
}

fn finish(
    space: &EtaConeSpace,
    scheme: &str,
    map: &SelfMap,
    trace: &OrbitTrace,
    tol: f64,
    preconditions: BTreeMap<String, Check>,
) -> SolveReport {
    let n = trace.len();
    let converged = trace.stop == StopReason::Converged;
    let holds = preconditions.values().all(|c| c.status != CheckStatus::Fail);
    let status = match (holds, trace.stop) {
        (false, _) => SolveStatus::PreconditionFailed,
        (true, StopReason::Converged) => SolveStatus::Converged,
        (true, StopReason::CycleDetected) => SolveStatus::CycleDetected,
        (true, StopReason::MaxIter) => SolveStatus::MaxIter,
    };
    // Prefer the final iterate x_N when its own residual is within tol; it is
    // closer to the fixed point than x_{N−1}, whose residual is d_{N−1}.
    let (fixed_point, residual) = if converged {
        let last = trace.last();
        match map.apply(space, last).and_then(|t| space.dist(last, t)) {
            Ok(r) if r <= tol => (Some(space.value(last)), r),
            _ => (Some(space.value(trace.iterates[n - 1])), trace.step_distances[n - 1]),
        }
    } else {
        (None, trace.step_distances[n - 1])
    };
    SolveReport {
        scheme: scheme.into(),
        map: map.description().into(),
        start: space.value(trace.iterates[0]),
        fixed_point,
        residual,
        iterations: n,
        tolerance: tol,
        preconditions,
        status,
    }
}

fn contraction_check(est: &ContractionEstimate) -> Check {
    let how = if est.exact {
        format!("exact over all {} pairs", est.pairs)
    } else {
        format!("sampled lower bound over {} pairs", est.pairs)
    };
    Check {
        status: if est.k < 1.0 - CONTRACTION_GUARD {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        value: est.k,
        bound: Some(1.0),
        detail: how,
    }
}

/// Banach-type iteration under a contraction factor `k < 1` and the orbit
/// condition `lim η(x_n, x_m) < 1/k`.
pub fn solve_banach(space: &EtaConeSpace, map: &SelfMap, x0: Point, config: &SolveConfig) -> Result<SolveReport> {
    solve_banach_named(space, map, x0, config, "banach")
}

fn solve_banach_named(
    space: &EtaConeSpace,
    map: &SelfMap,
    x0: Point,
    config: &SolveConfig,
    scheme: &str,
) -> Result<SolveReport> {
    config.validate()?;
    let est = estimate_contraction(space, map, &config.plan)?;
    let trace = picard_orbit(space, map, x0, config.max_iter, config.tol, config.tail_window)?;
    let mut pre = BTreeMap::new();
    pre.insert("contraction".to_string(), contraction_check(&est));
    let eta = if est.k < 1.0 - CONTRACTION_GUARD {
        orbit_eta_condition(space, &trace, est.k, config.tail_window)?
    } else {
        Check {
            status: CheckStatus::Unverified,
            value: trace.eta_tail_max(),
            bound: None,
            detail: "no contraction factor below 1 to compare against".into(),
        }
    };
    pre.insert("orbit_eta".to_string(), eta);
    Ok(finish(space, scheme, map, &trace, config.tol, pre))
}

/// Banach iteration applied to `Tⁿ`; the returned point is also checked as a
/// fixed point of `T` itself.
pub fn solve_banach_iterate_power(
    space: &EtaConeSpace,
    map: &SelfMap,
    n_power: usize,
    x0: Point,
    config: &SolveConfig,
) -> Result<SolveReport> {
    let composed = map.power(n_power)?;
    if n_power == 1 {
        return solve_banach(space, map, x0, config);
    }
    let mut report = solve_banach_named(space, &composed, x0, config, "power")?;
    if let Some(fp) = &report.fixed_point {
        let x = match fp {
            PointValue::Value(v) => Point::Real(*v),
            PointValue::Label(l) => space.parse_point(l)?,
        };
        let r = space.dist(x, map.apply(space, x)?)?;
        report.preconditions.insert(
            "base_map_residual".to_string(),
            Check {
                status: if r <= config.tol {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                value: r,
                bound: Some(config.tol),
                detail: "D(x*, T x*) for the uncomposed map".into(),
            },
        );
    }
    Ok(report)
}

/// Iteration of a strict contraction `D(Tx, Ty) < D(x, y)` on a finite space,
/// with an exhaustive uniqueness scan.
pub fn solve_strict_compact(
    space: &EtaConeSpace,
    map: &SelfMap,
    x0: Point,
    config: &SolveConfig,
) -> Result<SolveReport> {
    let points = space
        .finite_points()
        .ok_or_else(|| contract("the strict-contraction solver needs a finite space"))?;
    let images = points
        .iter()
        .map(|&p| map.apply(space, p))
        .collect::<Result<Vec<_>>>()?;
    let mut witness = None;
    let mut worst: f64 = 0.0;
    'scan: for i in 0..points.len() {
        for j in i + 1..points.len() {
            let before = space.dist(points[i], points[j])?;
            let after = space.dist(images[i], images[j])?;
            if after >= before {
                witness = Some((i, j));
                worst = if before > 0.0 { after / before } else { f64::MAX };
                break 'scan;
            }
            worst = worst.max(after / before);
        }
    }
    let mut pre = BTreeMap::new();
    pre.insert(
        "strict_contraction".to_string(),
        match witness {
            Some((i, j)) => Check {
                status: CheckStatus::Fail,
                value: worst,
                bound: Some(1.0),
                detail: format!(
                    "D(T{a}, T{b}) >= D({a}, {b})",
                    a = space.label(points[i]),
                    b = space.label(points[j])
                ),
            },
            None => Check {
                status: CheckStatus::Pass,
                value: worst,
                bound: Some(1.0),
                detail: "D(Tx, Ty) < D(x, y) on every distinct pair".into(),
            },
        },
    );
    let trace = picard_orbit(space, map, x0, points.len(), config.tol, config.tail_window.max(2))?;
    let fixed: Vec<usize> = (0..points.len())
        .filter(|&i| space.dist(points[i], images[i]).is_ok_and(|r| r <= config.tol))
        .collect();
    pre.insert(
        "unique_fixed_point".to_string(),
        Check {
            status: if fixed.len() == 1 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            value: fixed.len() as f64,
            bound: Some(1.0),
            detail: format!(
                "fixed points found by exhaustive scan: [{}]",
                fixed
                    .iter()
                    .map(|&i| space.label(points[i]))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        },
    );
    Ok(finish(space, "strict", map, &trace, config.tol, pre))
}

pub type CoefficientFn = Arc<dyn Fn(Point, Point) -> f64 + Send + Sync>;

/// The coefficient functions `α, β, γ, δ` of the Hardy–Rogers condition
/// `D(Tx,Ty) ≤ αD(x,y) + βD(x,Tx) + γD(y,Ty) + δ[D(x,Ty) + D(y,Tx)]`.
#[derive(Clone)]
pub struct HardyRogers {
    pub alpha: CoefficientFn,
    pub beta: CoefficientFn,
    pub gamma: CoefficientFn,
    pub delta: CoefficientFn,
}

impl fmt::Debug for HardyRogers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("HardyRogers { .. }")
    }
}

impl HardyRogers {
    pub fn constant(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Self {
        let c = |v: f64| -> CoefficientFn { Arc::new(move |_, _| v) };
        HardyRogers {
            alpha: c(alpha),
            beta: c(beta),
            gamma: c(gamma),
            delta: c(delta),
        }
    }
}

/// Iteration under the Hardy–Rogers condition with
/// `λ = sup(α + β + γ + 2ηδ) < 1` and `sup η < 1/λ`.
///
/// Each step is monitored against `d_n ≤ λ·d_{n−1}`. A violation while both
/// hypotheses pass means the coefficients do not describe the map and is
/// reported as [`Error::InconsistentData`].
pub fn solve_hardy_rogers(
    space: &EtaConeSpace,
    map: &SelfMap,
    coefficients: &HardyRogers,
    x0: Point,
    config: &SolveConfig,
) -> Result<SolveReport> {
    config.validate()?;
    let points = space.sample_points(&config.plan);
    let (mut lambda, mut sup_eta): (f64, f64) = (0.0, 1.0);
    for &x in &points {
        for &y in &points {
            let eta = space.eta(x, y)?;
            let mut sum = 0.0;
            for (name, f) in [
                ("alpha", &coefficients.alpha),
                ("beta", &coefficients.beta),
                ("gamma", &coefficients.gamma),
                ("delta", &coefficients.delta),
            ] {
                let v = f(x, y);
                if !(0.0..1.0).contains(&v) {
                    return Err(contract(format!(
                        "{name}({}, {}) = {v} lies outside [0, 1)",
                        space.label(x),
                        space.label(y)
                    )));
                }
                sum += if name == "delta" { 2.0 * eta * v } else { v };
            }
            lambda = lambda.max(sum);
            sup_eta = sup_eta.max(eta);
        }
    }
    let scope = if space.is_finite() {
        "exact over all pairs"
    } else {
        "sampled over grid pairs"
    };
    let mut pre = BTreeMap::new();
    pre.insert("lambda".to_string(), Check::below(lambda, 1.0, scope));
    pre.insert(
        "sup_eta".to_string(),
        Check::below(sup_eta, reciprocal(lambda), format!("sup eta, {scope}")),
    );
    let hypotheses_hold = pre.values().all(Check::passed);

    let trace = picard_orbit(space, map, x0, config.max_iter, config.tol, config.tail_window)?;
    pre.insert(
        "orbit_eta".to_string(),
        Check::below(
            trace.eta_tail_max(),
            reciprocal(lambda),
            format!("max eta over the last {} iterates", trace.tail_eta.len()),
        ),
    );
    let d = &trace.step_distances;
    let mut monitor = Check {
        status: CheckStatus::Pass,
        value: 0.0,
        bound: Some(lambda),
        detail: format!("d_n <= lambda * d_(n-1) on all {} steps", d.len().saturating_sub(1)),
    };
    for n in 1..d.len() {
        if d[n] > lambda * d[n - 1] * (1.0 + RATIO_SLACK) {
            if hypotheses_hold {
                return Err(Error::InconsistentData(format!(
                    "step {n}: d_{n} = {} exceeds lambda * d_{} = {}; the coefficients \
                     do not satisfy the contractive condition for this map",
                    d[n],
                    n - 1,
                    lambda * d[n - 1]
                )));
            }
            monitor.status = CheckStatus::Fail;
            monitor.value = if d[n - 1] > 0.0 { d[n] / d[n - 1] } else { f64::MAX };
            monitor.detail = format!("d_{n} > lambda * d_{}", n - 1);
            break;
        }
        if d[n - 1] > 0.0 {
            monitor.value = monitor.value.max(d[n] / d[n - 1]);
        }
    }
    pre.insert("step_monitor".to_string(), monitor);
    Ok(finish(space, "hardy-rogers", map, &trace, config.tol, pre))
}

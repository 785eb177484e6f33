//! Ready-made spaces, maps and counterexamples.
//!
//! | name | space | notes |
//! |---|---|---|
//! | `three_point_cone` | `{1,2,3}` in `ℝ²` along `(1, α)`, `η = 1 + x + y` | passes all axioms |
//! | `three_point_cone_sin` | same distances, `η = 1 + sin x + sin y` | passes |
//! | `function_space` | polynomials of degree ≤ 3 sampled on a grid | sup-norm reading of η |
//! | `half_map` | `[0, 1000]`, `d = (x−y)²`, `η = x + y + 2`, `T x = x/2` | Banach example |
//! | `square_map` | `[0, ¼]`, same `d` and `η`, `T x = x²`, `α ≡ ¼` | Hardy–Rogers example |
//! | `nat_infinity` | `{1..N, ∞}` with the four-case table, `η ≡ 3` | discontinuous distance |
//! | `eta_metric_3pt` | `D(1,2) = 1/5`, `D(2,3) = 1/4`, `D(1,3) = 1/2`, `η = x/2 + y` | not a metric |

use std::sync::Arc;

use crate::cone::{ConeSpace, Norm, Vector};
use crate::error::{contract, Error, Result};
use crate::fixed_point::{HardyRogers, SelfMap};
use crate::space::{EtaConeSpace, Point};
use crate::topology::SequencePrefix;

pub const FIXTURE_NAMES: [&str; 7] = [
    "three_point_cone",
    "three_point_cone_sin",
    "function_space",
    "half_map",
    "square_map",
    "nat_infinity",
    "eta_metric_3pt",
];

/// A catalog entry: a space plus, where the example has one, a map, a start
/// point and Hardy–Rogers coefficients.
#[derive(Clone, Debug)]
pub struct FixtureEntry {
    pub name: String,
    pub description: String,
    pub space: EtaConeSpace,
    pub map: Option<SelfMap>,
    pub x0: Option<Point>,
    pub coefficients: Option<HardyRogers>,
    /// Outcomes the library reproduces under default tolerances.
    pub expected: Vec<String>,
}

/// Parameters of the parameterised fixtures.
#[derive(Clone, Debug, PartialEq)]
pub struct FixtureParams {
    pub cone_alpha: f64,
    pub norm: Norm,
    pub nat_bound: usize,
    pub grid_nodes: usize,
    pub interval: (f64, f64),
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams {
            cone_alpha: 0.0,
            norm: Norm::Max,
            nat_bound: 64,
            grid_nodes: 33,
            interval: (0.0, 1.0),
        }
    }
}

pub fn fixture(name: &str) -> Result<FixtureEntry> {
    fixture_with(name, &FixtureParams::default())
}

pub fn fixture_with(name: &str, params: &FixtureParams) -> Result<FixtureEntry> {
    let entry = |description: &str, space: EtaConeSpace, expected: &[&str]| FixtureEntry {
        name: name.to_string(),
        description: description.to_string(),
        space,
        map: None,
        x0: None,
        coefficients: None,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    };
    Ok(match name {
        "three_point_cone" => entry(
            "three points in R^2 along (1, alpha), eta(x, y) = 1 + x + y",
            three_point_cone(params.cone_alpha, params.norm)?,
            &[
                "all axioms pass",
                "d(1,3) = 1000 <= eta(1,3) * (80 + 600) = 3400",
                "d(1,2) = 80 <= eta(1,2) * (1000 + 600) = 6400",
                "metric-type with L = 1000/680",
            ],
        ),
        "three_point_cone_sin" => entry(
            "three points in R^2 along (1, alpha), eta(x, y) = 1 + sin x + sin y",
            three_point_cone_sin(params.cone_alpha, params.norm)?,
            &["all axioms pass"],
        ),
        "function_space" => entry(
            "polynomials of degree <= 3 sampled on a grid; d = sup |x - y|^2, \
             eta = sup |x| + sup |y| + 2 (sup-norm reading of eta)",
            function_space(params.interval.0, params.interval.1, params.grid_nodes)?,
            &["all axioms pass"],
        ),
        "half_map" => half_map()?,
        "square_map" => square_map()?,
        "nat_infinity" => entry(
            "N u {inf} truncated at a bound with the four-case distance and eta = 3",
            nat_infinity(params.nat_bound)?,
            &[
                "x_n = 2n converges to inf",
                "lim D(x_n, 1) = 2 but D(inf, 1) = 1: the distance is discontinuous",
                "(d3) with eta = 3 fails at (1, inf, 3): 5 > 3 * (1 + 1/3)",
            ],
        ),
        "eta_metric_3pt" => entry(
            "D(1,2) = 1/5, D(2,3) = 1/4, D(1,3) = 1/2, eta(x, y) = x/2 + y",
            eta_metric_3pt()?,
            &[
                "all axioms pass",
                "not a metric: D(1,3) = 1/2 > D(1,2) + D(2,3) = 9/20",
                "metric-type with L = 10/9",
            ],
        ),
        _ => {
            return Err(Error::UnknownFixture {
                name: name.to_string(),
                valid: FIXTURE_NAMES.iter().map(|s| s.to_string()).collect(),
            })
        }
    })
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

const THREE_POINT: [[f64; 3]; 3] = [[0.0, 80.0, 1000.0], [80.0, 0.0, 600.0], [1000.0, 600.0, 0.0]];

/// `{1, 2, 3}` with `d(i, j) = t_ij·(1, α)` for `t = (80, 1000, 600)` and
/// `d(1, 3)` replaceable to build perturbed copies.
pub fn three_point_cone_with(alpha: f64, norm: Norm, d13: f64) -> Result<EtaConeSpace> {
    let mut t = THREE_POINT;
    t[0][2] = d13;
    t[2][0] = d13;
    EtaConeSpace::finite_from_fn(
        labels(&["1", "2", "3"]),
        ConeSpace::orthant(2, norm)?,
        |i, j| Vector::new(vec![t[i][j], alpha * t[i][j]]).expect("finite entries"),
        |i, j| 1.0 + (i + 1) as f64 + (j + 1) as f64,
    )
}

pub fn three_point_cone(alpha: f64, norm: Norm) -> Result<EtaConeSpace> {
    three_point_cone_with(alpha, norm, 1000.0)
}

pub fn three_point_cone_sin(alpha: f64, norm: Norm) -> Result<EtaConeSpace> {
    let base = three_point_cone(alpha, norm)?;
    let eta = (0..9)
        .map(|k| 1.0 + ((k / 3 + 1) as f64).sin() + ((k % 3 + 1) as f64).sin())
        .collect();
    base.with_eta_table(eta)
}

type Poly = (&'static str, fn(f64) -> f64);

const POLYNOMIALS: [Poly; 8] = [
    ("0", |_| 0.0),
    ("1", |_| 1.0),
    ("t", |t| t),
    ("t^2", |t| t * t),
    ("t^3", |t| t * t * t),
    ("1-t", |t| 1.0 - t),
    ("2t-1", |t| 2.0 * t - 1.0),
    ("t^3-t", |t| t * t * t - t),
];

/// Continuous functions on `[a, b]`, represented by a fixed family of
/// polynomials sampled at `nodes` equally spaced points.
///
/// `d(x, y) = max_t |x(t) − y(t)|²` and `η(x, y) = max_t |x(t)| + max_t |y(t)| + 2`.
/// The η of the continuous example leaves `t` unbound; this fixture reads
/// both `|x(t)|` and `|y(t)|` as sup norms.
pub fn function_space(a: f64, b: f64, nodes: usize) -> Result<EtaConeSpace> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(contract(format!("grid interval [{a}, {b}] is empty")));
    }
    if nodes < 2 {
        return Err(contract("the grid needs at least 2 nodes"));
    }
    let grid: Vec<f64> = (0..nodes)
        .map(|k| a + (b - a) * k as f64 / (nodes - 1) as f64)
        .collect();
    let samples: Vec<Vec<f64>> = POLYNOMIALS
        .iter()
        .map(|(_, f)| grid.iter().map(|&t| f(t)).collect())
        .collect();
    let sup = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let norms: Vec<f64> = samples.iter().map(|s| sup(s)).collect();
    EtaConeSpace::finite_from_fn(
        POLYNOMIALS.iter().map(|(l, _)| l.to_string()).collect(),
        ConeSpace::scalar(),
        |i, j| {
            let gap = samples[i]
                .iter()
                .zip(&samples[j])
                .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
            Vector::scalar(gap * gap).expect("finite")
        },
        |i, j| norms[i] + norms[j] + 2.0,
    )
}

fn squared_gap_space(lower: f64, upper: f64) -> Result<EtaConeSpace> {
    let real = |p: Point| match p {
        Point::Real(x) => x,
        other => unreachable!("interval space without sentinels got {other:?}"),
    };
    EtaConeSpace::interval(
        lower,
        upper,
        vec![],
        ConeSpace::scalar(),
        Arc::new(move |x, y| Vector::scalar((real(x) - real(y)).powi(2)).expect("finite")),
        Arc::new(move |x, y| real(x) + real(y) + 2.0),
    )
}

/// `T x = x/2` with `d = (x−y)²`, `η = x + y + 2`, from `x_0 = 1`.
///
/// The half-line is truncated to `[0, 1000]` since interval spaces need
/// finite bounds.
pub fn half_map() -> Result<FixtureEntry> {
    Ok(FixtureEntry {
        name: "half_map".into(),
        description: "T x = x/2 on [0, 1000] with d = (x - y)^2 and eta = x + y + 2".into(),
        space: squared_gap_space(0.0, 1000.0)?,
        map: Some(SelfMap::half()),
        x0: Some(Point::Real(1.0)),
        coefficients: None,
        expected: labels(&["contraction factor 1/4", "tail eta -> 2 < 1/k", "unique fixed point 0"]),
    })
}

/// `T x = x²` on `[0, ¼]` with Hardy–Rogers coefficients `α ≡ ¼`,
/// `β = γ = δ ≡ 0`, from `x_0 = ¼`. Iterates are `x_0^(2^n)`.
pub fn square_map() -> Result<FixtureEntry> {
    Ok(FixtureEntry {
        name: "square_map".into(),
        description: "T x = x^2 on [0, 1/4] with d = (x - y)^2, eta = x + y + 2, alpha = 1/4".into(),
        space: squared_gap_space(0.0, 0.25)?,
        map: Some(SelfMap::square()),
        x0: Some(Point::Real(0.25)),
        coefficients: Some(HardyRogers::constant(0.25, 0.0, 0.0, 0.0)),
        expected: labels(&["lambda = 1/4", "tail eta < 4", "unique fixed point 0"]),
    })
}

/// The sentinel label of [`nat_infinity`].
pub const INFINITY_LABEL: &str = "inf";

/// `D(m, n)` on `ℕ ∪ {∞}` with `1/∞ = 0` (`None` is `∞`).
fn nat_distance(m: Option<usize>, n: Option<usize>) -> f64 {
    let inv = |k: Option<usize>| k.map_or(0.0, |k| 1.0 / k as f64);
    match (m, n) {
        _ if m == n => 0.0,
        (None, _) | (_, None) => (inv(m) - inv(n)).abs(),
        (Some(a), Some(b)) if a % 2 == 0 && b % 2 == 0 => (inv(m) - inv(n)).abs(),
        (Some(a), Some(b)) if a % 2 == 1 && b % 2 == 1 => 5.0,
        _ => 2.0,
    }
}

/// `{1, …, bound, ∞}` with the four-case distance and `η ≡ 3`.
pub fn nat_infinity(bound: usize) -> Result<EtaConeSpace> {
    if bound < 2 {
        return Err(contract("nat_infinity needs a bound of at least 2"));
    }
    let number = |i: usize| (i < bound).then_some(i + 1);
    let names = (1..=bound)
        .map(|k| k.to_string())
        .chain([INFINITY_LABEL.to_string()])
        .collect();
    EtaConeSpace::finite_from_fn(
        names,
        ConeSpace::scalar(),
        |i, j| Vector::scalar(nat_distance(number(i), number(j))).expect("finite"),
        |_, _| 3.0,
    )
}

/// `x_n = 2n` for every `2n` within the truncation of a [`nat_infinity`] space.
pub fn nat_infinity_even_sequence(space: &EtaConeSpace) -> SequencePrefix {
    let n = space.len().unwrap_or(0).saturating_sub(1);
    let points = (1..=n / 2).map(|k| Point::Index(2 * k - 1)).collect();
    SequencePrefix::new(points, "x_n = 2n")
}

/// `D(1,2) = 1/5`, `D(2,3) = 1/4`, `D(1,3) = 1/2` with the asymmetric
/// `η(x, y) = x/2 + y`.
pub fn eta_metric_3pt() -> Result<EtaConeSpace> {
    let t = [[0.0, 0.2, 0.5], [0.2, 0.0, 0.25], [0.5, 0.25, 0.0]];
    EtaConeSpace::finite_from_fn(
        labels(&["1", "2", "3"]),
        ConeSpace::scalar(),
        |i, j| Vector::scalar(t[i][j]).expect("finite"),
        |i, j| (i + 1) as f64 / 2.0 + (j + 1) as f64,
    )
}

//! η-cone metric spaces.
//!
//! An [`EtaConeSpace`] couples a point set with a vector-valued distance
//! `d: X × X → E` into an ordered [`ConeSpace`] `E`, and a scale function
//! `η: X × X → [1, ∞)`. Finite spaces store both maps as tables; interval
//! spaces evaluate closures.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cone::{ConeSpace, Vector};
use crate::error::{contract, Error, Result};

/// A point of an [`EtaConeSpace`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    /// Index into the labels of a finite space.
    Index(usize),
    /// A number in the interval of an interval space.
    Real(f64),
    /// Index into the sentinel labels of an interval space.
    Sentinel(usize),
}

/// Serialized form of a point: a number for interval points, a label
/// otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointValue {
    Value(f64),
    Label(String),
}

impl fmt::Display for PointValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointValue::Value(x) => write!(f, "{x}"),
            PointValue::Label(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PointSet {
    Finite {
        labels: Vec<String>,
    },
    /// `[lower, upper]` plus optional sentinel points such as `∞`.
    Interval {
        lower: f64,
        upper: f64,
        sentinels: Vec<String>,
    },
}

pub type DistanceFn = Arc<dyn Fn(Point, Point) -> Vector + Send + Sync>;
pub type EtaFn = Arc<dyn Fn(Point, Point) -> f64 + Send + Sync>;

#[derive(Clone)]
enum DistanceMap {
    /// Row-major `n × n`.
    Table(Vec<Vector>),
    Eval(DistanceFn),
}

#[derive(Clone)]
enum EtaMap {
    Table(Vec<f64>),
    Eval(EtaFn),
}

/// How interval spaces are sampled by the axiom checker and estimators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    /// Points drawn from an interval, endpoints included.
    pub points_per_axis: usize,
    pub seed: u64,
    /// Keep every nondegenerate (d3) check in the report, not just violations.
    pub record_checks: bool,
    /// Cap on stored violations; the total is always counted.
    pub max_recorded: usize,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            points_per_axis: 64,
            seed: 0,
            record_checks: false,
            max_recorded: 1000,
        }
    }
}

#[derive(Clone)]
pub struct EtaConeSpace {
    points: PointSet,
    cone: ConeSpace,
    distance: DistanceMap,
    eta: EtaMap,
}

impl fmt::Debug for EtaConeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EtaConeSpace")
            .field("points", &self.points)
            .field("cone", &self.cone)
            .finish_non_exhaustive()
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    if labels.is_empty() {
        return Err(contract("a finite space needs at least one point"));
    }
    let mut seen = HashSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(Error::Data(format!("duplicate point label `{l}`")));
        }
    }
    Ok(())
}

fn check_eta_value(value: f64, x: &str, y: &str) -> Result<f64> {
    if value.is_nan() {
        return Err(Error::Data(format!("eta({x}, {y}) is NaN")));
    }
    if !(value >= 1.0) {
        return Err(Error::Data(format!(
            "eta({x}, {y}) = {value} lies below 1; eta must map into [1, ∞)"
        )));
    }
    Ok(value)
}

impl EtaConeSpace {
    /// A finite space from full `n × n` row-major tables.
    pub fn finite(labels: Vec<String>, cone: ConeSpace, distances: Vec<Vector>, eta: Vec<f64>) -> Result<Self> {
        check_labels(&labels)?;
        let n = labels.len();
        if distances.len() != n * n || eta.len() != n * n {
            return Err(contract(format!("tables for {n} points need {} entries", n * n)));
        }
        for (k, d) in distances.iter().enumerate() {
            if d.dim() != cone.dim() {
                return Err(Error::DimensionMismatch {
                    expected: cone.dim(),
                    found: d.dim(),
                });
            }
            if !d.is_finite() {
                return Err(Error::Data(format!(
                    "d({}, {}) is not finite",
                    labels[k / n],
                    labels[k % n]
                )));
            }
        }
        for (k, &e) in eta.iter().enumerate() {
            check_eta_value(e, &labels[k / n], &labels[k % n])?;
        }
        Ok(EtaConeSpace {
            points: PointSet::Finite { labels },
            cone,
            distance: DistanceMap::Table(distances),
            eta: EtaMap::Table(eta),
        })
    }

    /// A finite space whose tables are filled from index functions.
    pub fn finite_from_fn(
        labels: Vec<String>,
        cone: ConeSpace,
        d: impl Fn(usize, usize) -> Vector,
        eta: impl Fn(usize, usize) -> f64,
    ) -> Result<Self> {
        let n = labels.len();
        let distances = (0..n * n).map(|k| d(k / n, k % n)).collect();
        let etas = (0..n * n).map(|k| eta(k / n, k % n)).collect();
        Self::finite(labels, cone, distances, etas)
    }

    /// A space over `[lower, upper]` (plus sentinels) with evaluated maps.
    pub fn interval(
        lower: f64,
        upper: f64,
        sentinels: Vec<String>,
        cone: ConeSpace,
        d: DistanceFn,
        eta: EtaFn,
    ) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(contract(format!(
                "interval needs finite bounds with lower < upper, got [{lower}, {upper}]"
            )));
        }
        let mut seen = HashSet::new();
        for s in &sentinels {
            if s.parse::<f64>().is_ok() {
                return Err(Error::Data(format!("sentinel `{s}` collides with a numeric point")));
            }
            if !seen.insert(s.as_str()) {
                return Err(Error::Data(format!("duplicate sentinel `{s}`")));
            }
        }
        Ok(EtaConeSpace {
            points: PointSet::Interval {
                lower,
                upper,
                sentinels,
            },
            cone,
            distance: DistanceMap::Eval(d),
            eta: EtaMap::Eval(eta),
        })
    }

    /// The same distances with a new η table (finite spaces only).
    pub fn with_eta_table(&self, eta: Vec<f64>) -> Result<Self> {
        let labels = self
            .labels()
            .ok_or_else(|| contract("eta tables need a finite space"))?;
        let DistanceMap::Table(d) = &self.distance else {
            unreachable!("finite spaces store distance tables");
        };
        Self::finite(labels.to_vec(), self.cone.clone(), d.clone(), eta)
    }

    /// The same distances with an evaluated η.
    pub fn with_eta_fn(&self, eta: EtaFn) -> Self {
        EtaConeSpace {
            eta: EtaMap::Eval(eta),
            ..self.clone()
        }
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn cone(&self) -> &ConeSpace {
        &self.cone
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.points, PointSet::Finite { .. })
    }

    pub fn labels(&self) -> Option<&[String]> {
        match &self.points {
            PointSet::Finite { labels } => Some(labels),
            PointSet::Interval { .. } => None,
        }
    }

    /// Number of points of a finite space.
    pub fn len(&self) -> Option<usize> {
        self.labels().map(<[String]>::len)
    }

    /// Every point of a finite space, in index order.
    pub fn finite_points(&self) -> Option<Vec<Point>> {
        self.len().map(|n| (0..n).map(Point::Index).collect())
    }

    pub fn contains(&self, p: Point) -> bool {
        match (&self.points, p) {
            (PointSet::Finite { labels }, Point::Index(i)) => i < labels.len(),
            (PointSet::Interval { lower, upper, .. }, Point::Real(x)) => x >= *lower && x <= *upper,
            (PointSet::Interval { sentinels, .. }, Point::Sentinel(i)) => i < sentinels.len(),
            _ => false,
        }
    }

    fn require(&self, p: Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::Domain(format!("point {p:?} is not in the space")))
        }
    }

    pub fn label(&self, p: Point) -> String {
        self.value(p).to_string()
    }

    pub fn value(&self, p: Point) -> PointValue {
        match (&self.points, p) {
            (PointSet::Finite { labels }, Point::Index(i)) if i < labels.len() => PointValue::Label(labels[i].clone()),
            (PointSet::Interval { sentinels, .. }, Point::Sentinel(i)) if i < sentinels.len() => {
                PointValue::Label(sentinels[i].clone())
            }
            (_, Point::Real(x)) => PointValue::Value(x),
            (_, other) => PointValue::Label(format!("{other:?}")),
        }
    }

    /// Resolves a label (finite spaces, sentinels) or a number (intervals).
    pub fn parse_point(&self, text: &str) -> Result<Point> {
        let text = text.trim();
        match &self.points {
            PointSet::Finite { labels } => labels
                .iter()
                .position(|l| l == text)
                .map(Point::Index)
                .ok_or_else(|| Error::Data(format!("unknown point `{text}`"))),
            PointSet::Interval { sentinels, .. } => {
                if let Some(i) = sentinels.iter().position(|s| s == text) {
                    return Ok(Point::Sentinel(i));
                }
                let x: f64 = text
                    .parse()
                    .map_err(|_| Error::Data(format!("`{text}` is neither a number nor a sentinel")))?;
                let p = Point::Real(x);
                self.require(p)?;
                Ok(p)
            }
        }
    }

    /// `d_η(x, y)`.
    pub fn d(&self, x: Point, y: Point) -> Result<Vector> {
        self.require(x)?;
        self.require(y)?;
        let v = match (&self.distance, x, y) {
            (DistanceMap::Table(t), Point::Index(i), Point::Index(j)) => {
                return Ok(t[i * self.len().unwrap_or(0) + j].clone());
            }
            (DistanceMap::Eval(f), _, _) => f(x, y),
            _ => unreachable!("table spaces only hold indexed points"),
        };
        if v.dim() != self.cone.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cone.dim(),
                found: v.dim(),
            });
        }
        if !v.is_finite() {
            return Err(Error::Data(format!(
                "d({}, {}) evaluated to {v}",
                self.label(x),
                self.label(y)
            )));
        }
        Ok(v)
    }

    /// `η(x, y)`, rejecting NaN and values below 1.
    pub fn eta(&self, x: Point, y: Point) -> Result<f64> {
        self.require(x)?;
        self.require(y)?;
        let value = match (&self.eta, x, y) {
            (EtaMap::Table(t), Point::Index(i), Point::Index(j)) => {
                return Ok(t[i * self.len().unwrap_or(0) + j]);
            }
            (EtaMap::Eval(f), _, _) => f(x, y),
            _ => unreachable!("table spaces only hold indexed points"),
        };
        check_eta_value(value, &self.label(x), &self.label(y))
    }

    /// `D(x, y) = ‖d_η(x, y)‖`.
    pub fn dist(&self, x: Point, y: Point) -> Result<f64> {
        let v = self.d(x, y)?;
        self.cone.norm_of(&v)
    }

    /// The points a checker visits: all of them for finite spaces, a
    /// deterministic low-discrepancy sample with both endpoints (plus the
    /// sentinels) for interval spaces.
    pub fn sample_points(&self, plan: &SamplingPlan) -> Vec<Point> {
        match &self.points {
            PointSet::Finite { labels } => (0..labels.len()).map(Point::Index).collect(),
            PointSet::Interval {
                lower,
                upper,
                sentinels,
            } => {
                let mut pts: Vec<Point> = interval_grid(*lower, *upper, plan.points_per_axis, plan.seed)
                    .into_iter()
                    .map(Point::Real)
                    .collect();
                pts.extend((0..sentinels.len()).map(Point::Sentinel));
                pts
            }
        }
    }
}

/// `count` points of `[lower, upper]`: both endpoints and a golden-ratio
/// sequence shifted by the seed, sorted and deduplicated.
pub fn interval_grid(lower: f64, upper: f64, count: usize, seed: u64) -> Vec<f64> {
    const GOLDEN: f64 = 0.618_033_988_749_894_9;
    const PLASTIC: f64 = 0.754_877_666_246_692_7;
    let width = upper - lower;
    let shift = (seed as f64 * PLASTIC).fract();
    let mut pts = vec![lower, upper];
    for i in 0..count.saturating_sub(2) {
        let u = (shift + (i as f64 + 1.0) * GOLDEN).fract();
        pts.push(lower + u * width);
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts.truncate(count.max(2));
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_space() -> EtaConeSpace {
        EtaConeSpace::interval(
            0.0,
            1.0,
            vec![],
            ConeSpace::scalar(),
            Arc::new(|x, y| match (x, y) {
                (Point::Real(a), Point::Real(b)) => Vector::scalar((a - b).powi(2)).unwrap(),
                _ => unreachable!(),
            }),
            Arc::new(|x, y| match (x, y) {
                (Point::Real(a), Point::Real(b)) => a + b + 2.0,
                _ => unreachable!(),
            }),
        )
        .unwrap()
    }

    #[test]
    fn interval_lookup_and_parse() {
        let s = scalar_space();
        let p = s.parse_point("0.5").unwrap();
        assert_eq!(p, Point::Real(0.5));
        assert!(s.parse_point("2").is_err());
        assert!(s.parse_point("inf").is_err());
        assert_eq!(s.dist(Point::Real(0.0), Point::Real(0.5)).unwrap(), 0.25);
        assert_eq!(s.eta(Point::Real(0.0), Point::Real(0.5)).unwrap(), 2.5);
        assert!(s.d(Point::Real(3.0), Point::Real(0.0)).is_err());
    }

    #[test]
    fn grid_is_deterministic_with_endpoints() {
        let a = interval_grid(0.0, 0.25, 64, 9);
        let b = interval_grid(0.0, 0.25, 64, 9);
        assert_eq!(a, b);
        assert_eq!(a.len(), 64);
        assert_eq!(a[0], 0.0);
        assert_eq!(*a.last().unwrap(), 0.25);
        assert_ne!(a, interval_grid(0.0, 0.25, 64, 10));
    }

    #[test]
    fn eta_below_one_is_rejected() {
        let labels = vec!["a".to_string(), "b".to_string()];
        let err = EtaConeSpace::finite_from_fn(
            labels,
            ConeSpace::scalar(),
            |i, j| Vector::scalar(if i == j { 0.0 } else { 1.0 }).unwrap(),
            |_, _| 0.5,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Data(_)));
    }

    #[test]
    fn nan_eta_from_evaluator_names_the_pair() {
        let s = scalar_space().with_eta_fn(Arc::new(|_, _| f64::NAN));
        let err = s.eta(Point::Real(0.0), Point::Real(1.0)).unwrap_err();
        assert!(err.to_string().contains("NaN"));
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let labels = vec!["a".to_string(), "a".to_string()];
        assert!(EtaConeSpace::finite_from_fn(
            labels,
            ConeSpace::scalar(),
            |_, _| Vector::scalar(0.0).unwrap(),
            |_, _| 1.0
        )
        .is_err());
    }
}

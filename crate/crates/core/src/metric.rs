//! Real-valued η-metrics.
//!
//! Taking norms turns an η-cone metric into `D(x, y) = ‖d_η(x, y)‖`, which
//! satisfies `D(x, y) ≤ K·η(x, y)·(D(x, z) + D(z, y))`. On finite tables this
//! module computes the least η that makes a distance table an η-metric and
//! classifies the table as a metric or a metric-type space.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::axioms::{evaluate_pairs, AxiomReport, Scan};
use crate::cone::{ConeSpace, Vector};
use crate::error::{contract, Error, Result};
use crate::space::{EtaConeSpace, Point, SamplingPlan};

/// The `D = ‖d_η‖` view of an [`EtaConeSpace`].
#[derive(Clone, Copy, Debug)]
pub struct DerivedEtaMetric<'a> {
    base: &'a EtaConeSpace,
}

pub fn derive_eta_metric(space: &EtaConeSpace) -> DerivedEtaMetric<'_> {
    DerivedEtaMetric { base: space }
}

impl<'a> DerivedEtaMetric<'a> {
    pub fn base(&self) -> &'a EtaConeSpace {
        self.base
    }

    pub fn dist(&self, x: Point, y: Point) -> Result<f64> {
        self.base.dist(x, y)
    }

    pub fn eta(&self, x: Point, y: Point) -> Result<f64> {
        self.base.eta(x, y)
    }

    pub fn normal_constant(&self) -> f64 {
        self.base.cone().normal_constant()
    }

    /// Checks (D1)–(D3), the latter with factor `K·η`, on the same points
    /// [`check_axioms`](crate::axioms::check_axioms) visits.
    pub fn check(&self, tol: f64, plan: &SamplingPlan) -> Result<AxiomReport> {
        let points = self.base.sample_points(plan);
        let (d, eta) = evaluate_pairs(self.base, &points)?;
        let cone = self.base.cone();
        let d = d
            .iter()
            .map(|v| cone.norm_of(v).and_then(Vector::scalar))
            .collect::<Result<Vec<_>>>()?;
        let scalar = ConeSpace::scalar();
        Scan {
            cone: &scalar,
            values: points.iter().map(|&p| self.base.value(p)).collect(),
            d,
            eta,
            factor: self.normal_constant(),
            exhaustive: self.base.is_finite(),
        }
        .run(tol, plan)
    }

    /// The `D` table of a finite space.
    pub fn table(&self) -> Result<RealTable> {
        let labels = self
            .base
            .labels()
            .ok_or_else(|| contract("distance tables need a finite space"))?;
        let n = labels.len();
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                values.push(self.dist(Point::Index(i), Point::Index(j))?);
            }
        }
        RealTable::new(labels.to_vec(), values)
    }
}

/// A labelled real `n × n` table, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealTable {
    pub labels: Vec<String>,
    pub values: Vec<f64>,
}

impl RealTable {
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(contract("a table needs at least one point"));
        }
        if values.len() != n * n {
            return Err(contract(format!("a table over {n} points needs {} values", n * n)));
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!(
                "entry ({}, {}) is not finite",
                labels[k / n],
                labels[k % n]
            )));
        }
        Ok(RealTable { labels, values })
    }

    /// Builds a symmetric table with zero diagonal from the upper triangle.
    pub fn symmetric(labels: Vec<String>, upper: impl Fn(usize, usize) -> f64) -> Result<Self> {
        let n = labels.len();
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let v = upper(i, j);
                values[i * n + j] = v;
                values[j * n + i] = v;
            }
        }
        Self::new(labels, values)
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n() + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let n = self.n();
        self.values[i * n + j] = v;
    }

    /// Requires a distance table: symmetric, nonnegative, zero diagonal.
    fn require_distance(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            if self.get(i, i) != 0.0 {
                return Err(contract(format!("D({0}, {0}) must be 0", self.labels[i])));
            }
            for j in 0..n {
                if self.get(i, j) < 0.0 {
                    return Err(contract(format!(
                        "D({}, {}) is negative",
                        self.labels[i], self.labels[j]
                    )));
                }
                if self.get(i, j) != self.get(j, i) {
                    return Err(contract(format!(
                        "D is not symmetric at ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The pointwise least `η: X × X → [1, ∞)` for which
/// `D(x, z) ≤ η(x, z)·(D(x, y) + D(y, z))` holds on every triple:
///
/// `η_min(x, z) = max(1, max_{y ∉ {x, z}} D(x, z) / (D(x, y) + D(y, z)))`.
///
/// Triples with a zero denominator are skipped when the numerator is also 0
/// and rejected otherwise, since such a table already breaks (d1).
pub fn minimal_eta(table: &RealTable) -> Result<RealTable> {
    table.require_distance()?;
    let n = table.n();
    let mut eta = RealTable {
        labels: table.labels.clone(),
        values: vec![1.0; n * n],
    };
    for x in 0..n {
        for z in 0..n {
            if x == z {
                continue;
            }
            let direct = table.get(x, z);
            let mut best: f64 = 1.0;
            for y in (0..n).filter(|&y| y != x && y != z) {
                let via = table.get(x, y) + table.get(y, z);
                if via == 0.0 {
                    if direct > 0.0 {
                        return Err(Error::Infeasible {
                            x: table.labels[x].clone(),
                            y: table.labels[y].clone(),
                            z: table.labels[z].clone(),
                            reason: format!("D(x, z) = {direct} but D(x, y) + D(y, z) = 0"),
                        });
                    }
                    continue;
                }
                best = best.max(direct / via);
            }
            eta.set(x, z, best);
        }
    }
    Ok(eta)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricClass {
    /// The classical triangle inequality holds (`η ≡ 1` suffices).
    Metric,
    /// A b-metric: `η ≡ L` for a finite constant `L > 1` suffices.
    MetricType,
}

impl fmt::Display for MetricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetricClass::Metric => "metric",
            MetricClass::MetricType => "metric-type",
        })
    }
}

/// A triple `D(x, z) > D(x, y) + D(y, z)` breaking the triangle inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleWitness {
    pub x: String,
    pub y: String,
    pub z: String,
    /// `D(x, z)`
    pub direct: f64,
    /// `D(x, y) + D(y, z)`
    pub via: f64,
    /// `direct / via`
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub class: MetricClass,
    /// `L = sup η_min`; 1 for metrics.
    pub constant: f64,
    /// The triple attaining `L`, absent for metrics.
    pub witness: Option<TriangleWitness>,
    pub minimal_eta: RealTable,
}

/// Classifies a finite distance table as a metric or a metric-type space.
pub fn classify(table: &RealTable) -> Result<Classification> {
    let eta = minimal_eta(table)?;
    let n = table.n();
    let mut witness: Option<TriangleWitness> = None;
    for x in 0..n {
        for z in 0..n {
            if x == z {
                continue;
            }
            for y in (0..n).filter(|&y| y != x && y != z) {
                let direct = table.get(x, z);
                let via = table.get(x, y) + table.get(y, z);
                if direct <= via {
                    continue;
                }
                let ratio = direct / via;
                if witness.as_ref().is_none_or(|w| ratio > w.ratio) {
                    witness = Some(TriangleWitness {
                        x: table.labels[x].clone(),
                        y: table.labels[y].clone(),
                        z: table.labels[z].clone(),
                        direct,
                        via,
                        ratio,
                    });
                }
            }
        }
    }
    let (class, constant) = match &witness {
        None => (MetricClass::Metric, 1.0),
        Some(_) => (MetricClass::MetricType, eta.values.iter().copied().fold(1.0, f64::max)),
    };
    Ok(Classification {
        class,
        constant,
        witness,
        minimal_eta: eta,
    })
}

/// Right-hand side of the chained triangle bound through `z₁, …, z_n`:
///
/// `η(x, y)·(D(x, z₁) + Σ_{j<n} [Π_{i≤j} η(z_i, y)]·D(z_j, z_{j+1})
///           + [Π_{i<n} η(z_i, y)]·D(z_n, y))`.
///
/// It bounds `D(x, y)` whenever (D3) holds with `K = 1`.
pub fn chain_triangle_bound(metric: &DerivedEtaMetric<'_>, x: Point, y: Point, chain: &[Point]) -> Result<f64> {
    if chain.len() < 2 {
        return Err(contract(format!(
            "chain needs at least 2 intermediate points, got {}",
            chain.len()
        )));
    }
    let n = chain.len();
    let mut total = metric.dist(x, chain[0])?;
    let mut product = 1.0;
    for j in 0..n - 1 {
        product *= metric.eta(chain[j], y)?;
        total += product * metric.dist(chain[j], chain[j + 1])?;
    }
    total += product * metric.dist(chain[n - 1], y)?;
    Ok(metric.eta(x, y)? * total)
}

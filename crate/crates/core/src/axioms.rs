//! Verification of the η-cone metric axioms
//!
//! * (d1) `θ ⪯ d(x, y)` and `d(x, y) = θ ⟺ x = y`
//! * (d2) `d(x, y) = d(y, x)`
//! * (d3) `d(x, z) ⪯ η(x, z)·[d(x, y) + d(y, z)]`
//!
//! Finite spaces are checked exhaustively over every pair and ordered triple;
//! interval spaces over the deterministic sample of a [`SamplingPlan`].

use serde::{Deserialize, Serialize};

use crate::cone::{ConeSpace, Vector};
use crate::error::{contract, Error, Result};
use crate::space::{EtaConeSpace, Point, PointValue, SamplingPlan};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    D1,
    D2,
    D3,
}

/// A failed check. For (d3) `lhs = d(x, z)`, `rhs = η(x, z)·[d(x, y) + d(y, z)]`
/// and `points = [x, y, z]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub points: Vec<PointValue>,
    pub lhs: Vector,
    pub rhs: Vector,
    /// `rhs − lhs`
    pub slack_vector: Vector,
    /// Signed order slack of `rhs − lhs` (smallest coordinate on the orthant).
    pub slack: f64,
    pub message: String,
}

/// One evaluated (d3) inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TripleCheck {
    pub x: PointValue,
    pub y: PointValue,
    pub z: PointValue,
    pub lhs: Vector,
    pub eta: f64,
    pub sum: Vector,
    pub rhs: Vector,
    pub slack: f64,
    /// Part of the tolerance needed to pass; 0 when the inequality holds exactly.
    pub tolerance_used: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub d1_ok: bool,
    pub d2_ok: bool,
    pub d3_ok: bool,
    pub exhaustive: bool,
    pub tolerance: f64,
    pub points_checked: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violation_count: usize,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<TripleCheck>,
}

impl AxiomReport {
    pub fn all_ok(&self) -> bool {
        self.d1_ok && self.d2_ok && self.d3_ok
    }

    pub fn violations_of(&self, axiom: Axiom) -> impl Iterator<Item = &Violation> {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }
}

/// Pairwise data of the visited points, evaluated once.
pub(crate) struct Scan<'a> {
    pub cone: &'a ConeSpace,
    pub values: Vec<PointValue>,
    /// Row-major `n × n`.
    pub d: Vec<Vector>,
    pub eta: Vec<f64>,
    /// Multiplies η in (d3); the normal constant for derived metrics, else 1.
    pub factor: f64,
    pub exhaustive: bool,
}

impl Scan<'_> {
    fn n(&self) -> usize {
        self.values.len()
    }

    pub fn run(&self, tol: f64, plan: &SamplingPlan) -> Result<AxiomReport> {
        if !(tol >= 0.0) {
            return Err(contract(format!("tolerance must be nonnegative, got {tol}")));
        }
        let n = self.n();
        let zero = self.cone.zero();
        let mut report = AxiomReport {
            d1_ok: true,
            d2_ok: true,
            d3_ok: true,
            exhaustive: self.exhaustive,
            tolerance: tol,
            points_checked: n,
            pairs_checked: 0,
            triples_checked: 0,
            violation_count: 0,
            violations: Vec::new(),
            checks: Vec::new(),
        };
        let record = |report: &mut AxiomReport, v: Violation| {
            match v.axiom {
                Axiom::D1 => report.d1_ok = false,
                Axiom::D2 => report.d2_ok = false,
                Axiom::D3 => report.d3_ok = false,
            }
            report.violation_count += 1;
            if report.violations.len() < plan.max_recorded {
                report.violations.push(v);
            }
        };

        for i in 0..n {
            for j in 0..n {
                let dij = &self.d[i * n + j];
                report.pairs_checked += 1;
                if i == j {
                    let size = self.cone.norm_of(dij)?;
                    if size > tol {
                        let slack_vector = &zero - dij;
                        record(
                            &mut report,
                            Violation {
                                axiom: Axiom::D1,
                                points: vec![self.values[i].clone(), self.values[i].clone()],
                                lhs: dij.clone(),
                                rhs: zero.clone(),
                                slack: -size,
                                slack_vector,
                                message: format!("d({0}, {0}) is not θ", self.values[i]),
                            },
                        );
                    }
                    continue;
                }
                if !self.cone.cone_contains(dij, tol)? {
                    record(
                        &mut report,
                        Violation {
                            axiom: Axiom::D1,
                            points: vec![self.values[i].clone(), self.values[j].clone()],
                            lhs: zero.clone(),
                            rhs: dij.clone(),
                            slack: self.cone.order_slack(dij)?,
                            slack_vector: dij.clone(),
                            message: format!("d({}, {}) lies outside the cone", self.values[i], self.values[j]),
                        },
                    );
                } else if dij.is_zero() {
                    record(
                        &mut report,
                        Violation {
                            axiom: Axiom::D1,
                            points: vec![self.values[i].clone(), self.values[j].clone()],
                            lhs: dij.clone(),
                            rhs: zero.clone(),
                            slack: 0.0,
                            slack_vector: zero.clone(),
                            message: format!("d({}, {}) = θ for distinct points", self.values[i], self.values[j]),
                        },
                    );
                }
                if i < j {
                    let dji = &self.d[j * n + i];
                    let gap = dij - dji;
                    if self.cone.norm_of(&gap)? > tol {
                        record(
                            &mut report,
                            Violation {
                                axiom: Axiom::D2,
                                points: vec![self.values[i].clone(), self.values[j].clone()],
                                lhs: dij.clone(),
                                rhs: dji.clone(),
                                slack: -self.cone.norm_of(&gap)?,
                                slack_vector: gap,
                                message: format!("d({0}, {1}) ≠ d({1}, {0})", self.values[i], self.values[j]),
                            },
                        );
                    }
                }
            }
        }

        for x in 0..n {
            for z in 0..n {
                let lhs = &self.d[x * n + z];
                let eta = self.eta[x * n + z] * self.factor;
                for y in 0..n {
                    report.triples_checked += 1;
                    let sum = &self.d[x * n + y] + &self.d[y * n + z];
                    let rhs = sum.scale(eta);
                    let diff = &rhs - lhs;
                    let passed = self.cone.cone_contains(&diff, tol)?;
                    let nondegenerate = x != z && y != x && y != z;
                    if !passed || (plan.record_checks && nondegenerate) {
                        let slack = self.cone.order_slack(&diff)?;
                        if plan.record_checks && nondegenerate {
                            report.checks.push(TripleCheck {
                                x: self.values[x].clone(),
                                y: self.values[y].clone(),
                                z: self.values[z].clone(),
                                lhs: lhs.clone(),
                                eta,
                                sum: sum.clone(),
                                rhs: rhs.clone(),
                                slack,
                                tolerance_used: (-slack).max(0.0),
                                passed,
                            });
                        }
                        if !passed {
                            let message = format!(
                                "d({x}, {z}) = {lhs} exceeds η({x}, {z})·[d({x}, {y}) + d({y}, {z})] = {eta}·{sum} = {rhs}",
                                x = self.values[x],
                                y = self.values[y],
                                z = self.values[z],
                            );
                            record(
                                &mut report,
                                Violation {
                                    axiom: Axiom::D3,
                                    points: vec![
                                        self.values[x].clone(),
                                        self.values[y].clone(),
                                        self.values[z].clone(),
                                    ],
                                    lhs: lhs.clone(),
                                    rhs,
                                    slack,
                                    slack_vector: diff,
                                    message,
                                },
                            );
                        }
                    }
                }
            }
        }
        Ok(report)
    }
}

pub(crate) fn evaluate_pairs(space: &EtaConeSpace, points: &[Point]) -> Result<(Vec<Vector>, Vec<f64>)> {
    let n = points.len();
    let mut d = Vec::with_capacity(n * n);
    let mut eta = Vec::with_capacity(n * n);
    for &x in points {
        for &y in points {
            d.push(space.d(x, y)?);
            eta.push(space.eta(x, y)?);
        }
    }
    Ok((d, eta))
}

/// Checks (d1)–(d3) on `space`.
pub fn check_axioms(space: &EtaConeSpace, tol: f64, plan: &SamplingPlan) -> Result<AxiomReport> {
    let points = space.sample_points(plan);
    let (d, eta) = evaluate_pairs(space, &points)?;
    Scan {
        cone: space.cone(),
        values: points.iter().map(|&p| space.value(p)).collect(),
        d,
        eta,
        factor: 1.0,
        exhaustive: space.is_finite(),
    }
    .run(tol, plan)
}

/// Reruns [`check_axioms`] on a finite space with numeric labels after
/// replacing η by `η(x, y) = 1 + sin x + sin y`.
///
/// Fails with a data error when that η drops below 1 at some pair.
pub fn check_axioms_sin_variant(space: &EtaConeSpace, tol: f64) -> Result<AxiomReport> {
    let labels = space
        .labels()
        .ok_or_else(|| contract("the sine variant needs a finite space"))?;
    let xs = labels
        .iter()
        .map(|l| {
            l.parse::<f64>()
                .map_err(|_| contract(format!("label `{l}` is not numeric")))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = xs.len();
    let eta: Vec<f64> = (0..n * n).map(|k| 1.0 + xs[k / n].sin() + xs[k % n].sin()).collect();
    let variant = space.with_eta_table(eta).map_err(|e| match e {
        Error::Data(msg) => Error::Data(format!("sine eta violates its precondition: {msg}")),
        other => other,
    })?;
    check_axioms(&variant, tol, &SamplingPlan::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::Norm;

    /// Distances `t·(1, α)` for `t = (80, 1000, 600)` with η = 1 + x + y.
    fn three_point(alpha: f64, d13: f64) -> EtaConeSpace {
        let dist = [[0.0, 80.0, d13], [80.0, 0.0, 600.0], [d13, 600.0, 0.0]];
        EtaConeSpace::finite_from_fn(
            vec!["1".into(), "2".into(), "3".into()],
            ConeSpace::orthant(2, Norm::Max).unwrap(),
            |i, j| Vector::new(vec![dist[i][j], alpha * dist[i][j]]).unwrap(),
            |i, j| 1.0 + (i + 1) as f64 + (j + 1) as f64,
        )
        .unwrap()
    }

    fn recording() -> SamplingPlan {
        SamplingPlan {
            record_checks: true,
            ..SamplingPlan::default()
        }
    }

    #[test]
    fn three_point_cone_passes_with_witness_checks() {
        for alpha in [0.0, 1.0] {
            let report = check_axioms(&three_point(alpha, 1000.0), 0.0, &recording()).unwrap();
            assert!(report.all_ok(), "{report:?}");
            assert_eq!(report.triples_checked, 27);
            let witness = report
                .checks
                .iter()
                .find(|c| c.x == PointValue::Label("1".into()) && c.z == PointValue::Label("3".into()))
                .unwrap();
            assert_eq!(witness.lhs.coords()[0], 1000.0);
            assert_eq!(witness.eta, 5.0);
            assert_eq!(witness.rhs.coords()[0], 3400.0);
            assert_eq!(witness.tolerance_used, 0.0);
        }
    }

    #[test]
    fn perturbed_distance_breaks_d3_at_one_two_three() {
        let report = check_axioms(&three_point(0.0, 3401.0), 0.0, &SamplingPlan::default()).unwrap();
        assert!(report.d1_ok && report.d2_ok && !report.d3_ok);
        let v: Vec<_> = report.violations_of(Axiom::D3).collect();
        // (1,2,3) and its mirror (3,2,1)
        assert_eq!(v.len(), 2);
        let labels: Vec<String> = v[0].points.iter().map(|p| p.to_string()).collect();
        assert_eq!(labels, ["1", "2", "3"]);
        assert_eq!(v[0].slack, -1.0);
    }

    #[test]
    fn single_point_space_is_vacuous() {
        let s = EtaConeSpace::finite_from_fn(
            vec!["p".into()],
            ConeSpace::scalar(),
            |_, _| Vector::scalar(0.0).unwrap(),
            |_, _| 1.0,
        )
        .unwrap();
        let report = check_axioms(&s, 0.0, &SamplingPlan::default()).unwrap();
        assert!(report.all_ok());
        assert_eq!(report.triples_checked, 1);
    }

    #[test]
    fn d1_and_d2_failures_are_reported() {
        let s = EtaConeSpace::finite_from_fn(
            vec!["a".into(), "b".into(), "c".into()],
            ConeSpace::scalar(),
            |i, j| {
                let v = match (i, j) {
                    (0, 1) => 1.0,
                    (1, 0) => 2.0,
                    (0, 2) | (2, 0) => 0.0,
                    (1, 2) | (2, 1) => -1.0,
                    _ => 0.0,
                };
                Vector::scalar(v).unwrap()
            },
            |_, _| 2.0,
        )
        .unwrap();
        let report = check_axioms(&s, 1e-9, &SamplingPlan::default()).unwrap();
        assert!(!report.d1_ok && !report.d2_ok);
        assert!(report.violations_of(Axiom::D2).count() == 1);
        assert!(report.violations_of(Axiom::D1).any(|v| v.message.contains("distinct")));
    }

    #[test]
    fn sine_variant_passes_and_scales() {
        let report = check_axioms_sin_variant(&three_point(0.0, 1000.0), 0.0).unwrap();
        assert!(report.all_ok());
        // (d3) is invariant under d ↦ 2d.
        let doubled = EtaConeSpace::finite_from_fn(
            vec!["1".into(), "2".into(), "3".into()],
            ConeSpace::orthant(2, Norm::Max).unwrap(),
            |i, j| {
                three_point(0.0, 1000.0)
                    .d(Point::Index(i), Point::Index(j))
                    .unwrap()
                    .scale(2.0)
            },
            |_, _| 1.0,
        )
        .unwrap();
        assert!(check_axioms_sin_variant(&doubled, 0.0).unwrap().all_ok());
    }

    #[test]
    fn sine_variant_rejects_eta_below_one() {
        // sin 4 < −0.75, so η(4, 4) < 0.
        let s = EtaConeSpace::finite_from_fn(
            vec!["1".into(), "4".into()],
            ConeSpace::scalar(),
            |i, j| Vector::scalar(if i == j { 0.0 } else { 1.0 }).unwrap(),
            |_, _| 1.0,
        )
        .unwrap();
        assert!(matches!(check_axioms_sin_variant(&s, 0.0), Err(Error::Data(_))));
    }

    #[test]
    fn checker_is_monotone_in_tolerance() {
        for d13 in [1000.0, 3400.0, 3400.0 + 1e-10, 3401.0] {
            let s = three_point(0.5, d13);
            let strict = check_axioms(&s, 0.0, &SamplingPlan::default()).unwrap();
            for tol in [1e-12, 1e-9, 1.0, 1e3] {
                let loose = check_axioms(&s, tol, &SamplingPlan::default()).unwrap();
                if strict.all_ok() {
                    assert!(loose.all_ok());
                }
                assert!(loose.violation_count <= strict.violation_count);
            }
        }
    }
}

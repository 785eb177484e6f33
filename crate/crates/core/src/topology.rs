//! Balls, local bases, sequence convergence and closure.
//!
//! A finite data prefix cannot prove convergence; every verdict here is taken
//! against an explicit decreasing threshold schedule.

use serde::{Deserialize, Serialize};

use crate::cone::Vector;
use crate::error::{contract, Result};
use crate::space::{EtaConeSpace, Point};

/// Default margin for `≪` tests.
pub const DEFAULT_MARGIN: f64 = 1e-12;

/// `B_η(center, c) ∋ p`, i.e. `d(center, p) ≪ c` with the given margin.
pub fn ball_contains(space: &EtaConeSpace, center: Point, c: &Vector, margin: f64, p: Point) -> Result<bool> {
    let cone = space.cone();
    if !cone.strictly_interior(c, margin)? {
        return Err(contract(format!(
            "ball radius {c} is not interior to the cone with margin {margin}"
        )));
    }
    let d = space.d(center, p)?;
    cone.strictly_interior(&(c - &d), margin)
}

/// The radii `c0, c0/2, …, c0/depth` of the countable local base at `p`.
pub fn local_base(space: &EtaConeSpace, p: Point, c0: &Vector, depth: usize) -> Result<Vec<Vector>> {
    if depth == 0 {
        return Err(contract("local base depth must be at least 1"));
    }
    if !space.contains(p) {
        return Err(contract(format!("{p:?} is not a point of the space")));
    }
    if !space.cone().strictly_interior(c0, DEFAULT_MARGIN)? {
        return Err(contract(format!("{c0} is not interior to the cone")));
    }
    Ok((1..=depth).map(|k| c0.scale(1.0 / k as f64)).collect())
}

/// A finite prefix `x_0, …, x_{N−1}` of a sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct SequencePrefix {
    pub points: Vec<Point>,
    pub source: String,
}

impl SequencePrefix {
    pub fn new(points: Vec<Point>, source: impl Into<String>) -> Self {
        SequencePrefix {
            points,
            source: source.into(),
        }
    }
}

/// Strictly decreasing positive thresholds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule(Vec<f64>);

impl Schedule {
    pub fn new(thresholds: Vec<f64>) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(contract("threshold schedule is empty"));
        }
        if !thresholds.iter().all(|&t| t > 0.0 && t.is_finite()) {
            return Err(contract("thresholds must be positive and finite"));
        }
        if thresholds.windows(2).any(|w| w[1] >= w[0]) {
            return Err(contract("thresholds must be strictly decreasing"));
        }
        Ok(Schedule(thresholds))
    }

    /// `2^{-1}, 2^{-2}, …, 2^{-floor_exp}`.
    pub fn geometric(floor_exp: i32) -> Result<Self> {
        Self::new((1..=floor_exp).map(|k| 2f64.powi(-k)).collect())
    }

    pub fn thresholds(&self) -> &[f64] {
        &self.0
    }

    pub fn first(&self) -> f64 {
        self.0[0]
    }

    pub fn floor(&self) -> f64 {
        *self.0.last().expect("schedule is nonempty")
    }
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::geometric(20).expect("geometric schedule is valid")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvergenceStatus {
    /// Every threshold is reached and held to the end of the prefix.
    Converging,
    /// Some thresholds reached, then the trail flattened above the floor.
    Stalled,
    /// The tail stays at or above the coarsest threshold.
    Diverging,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceVerdict {
    pub status: ConvergenceStatus,
    /// First index from which the finest reached threshold holds.
    pub witness: Option<usize>,
    /// Number of thresholds reached and held.
    pub thresholds_met: usize,
    /// `(n, value)` pairs the verdict was taken on.
    pub trail: Vec<(usize, f64)>,
}

/// Classifies a trail of nonnegative values against a schedule.
fn judge(trail: Vec<(usize, f64)>, schedule: &Schedule) -> ConvergenceVerdict {
    let mut witness = None;
    let mut met = 0;
    for &t in schedule.thresholds() {
        // Smallest position after which every value is below t.
        let tail_start = trail.iter().rposition(|&(_, v)| v >= t).map_or(0, |k| k + 1);
        if tail_start >= trail.len() {
            break;
        }
        witness = Some(trail[tail_start].0);
        met += 1;
    }
    let status = if met == schedule.thresholds().len() {
        ConvergenceStatus::Converging
    } else if trail.len() < 2 {
        ConvergenceStatus::Inconclusive
    } else {
        let tail = &trail[trail.len() / 2..];
        let lo = tail.iter().map(|p| p.1).fold(f64::INFINITY, f64::min);
        let hi = tail.iter().map(|p| p.1).fold(0.0, f64::max);
        if lo >= schedule.first() {
            ConvergenceStatus::Diverging
        } else if met > 0 && lo > schedule.floor() && hi <= 2.0 * lo {
            ConvergenceStatus::Stalled
        } else {
            ConvergenceStatus::Inconclusive
        }
    };
    ConvergenceVerdict {
        status,
        witness,
        thresholds_met: met,
        trail,
    }
}

/// Convergence of `seq` to `limit`, judged on the trail `D(x_n, limit)`.
pub fn is_convergent(
    space: &EtaConeSpace,
    seq: &SequencePrefix,
    limit: Point,
    schedule: &Schedule,
) -> Result<ConvergenceVerdict> {
    let trail = seq
        .points
        .iter()
        .enumerate()
        .map(|(n, &x)| space.dist(x, limit).map(|d| (n, d)))
        .collect::<Result<Vec<_>>>()?;
    Ok(judge(trail, schedule))
}

/// `sup_{i, j ∈ (n−window, n]} D(x_i, x_j)` for every full window.
pub fn pairwise_window_sup(space: &EtaConeSpace, points: &[Point], window: usize) -> Result<Vec<(usize, f64)>> {
    if window < 2 {
        return Err(contract("window must be at least 2"));
    }
    let mut out = Vec::new();
    for n in window - 1..points.len() {
        let w = &points[n + 1 - window..=n];
        let mut sup: f64 = 0.0;
        for (a, &x) in w.iter().enumerate() {
            for &y in &w[a + 1..] {
                sup = sup.max(space.dist(x, y)?);
            }
        }
        out.push((n, sup));
    }
    Ok(out)
}

/// Cauchy test on the trail of pairwise sups over a trailing window.
pub fn is_cauchy_prefix(
    space: &EtaConeSpace,
    seq: &SequencePrefix,
    schedule: &Schedule,
    window: usize,
) -> Result<ConvergenceVerdict> {
    let trail = pairwise_window_sup(space, &seq.points, window)?;
    Ok(judge(trail, schedule))
}

/// `x ∈ cl(A)` on a finite space: every ball `B(x, c0/k)`, `k = 1..=depth`,
/// meets `A`.
pub fn closure_contains(space: &EtaConeSpace, subset: &[Point], x: Point, c0: &Vector, depth: usize) -> Result<bool> {
    if !space.is_finite() {
        return Err(contract("closure is only computed on finite spaces"));
    }
    if subset.is_empty() {
        return Err(contract("subset must be nonempty"));
    }
    for c in local_base(space, x, c0, depth)? {
        let mut meets = false;
        for &a in subset {
            if ball_contains(space, x, &c, DEFAULT_MARGIN, a)? {
                meets = true;
                break;
            }
        }
        if !meets {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Depth at which `c0/depth` drops below the smallest positive
/// coordinatewise distance of a finite orthant-ordered space, so that
/// [`closure_contains`] separates every pair of distinct points.
pub fn resolution_depth(space: &EtaConeSpace, c0: &Vector) -> Result<usize> {
    let points = space
        .finite_points()
        .ok_or_else(|| contract("resolution depth needs a finite space"))?;
    let mut min_gap = f64::INFINITY;
    for &x in &points {
        for &y in &points {
            let d = space.d(x, y)?;
            let top = d.coords().iter().fold(0.0f64, |a, c| a.max(c.abs()));
            if top > 0.0 {
                min_gap = min_gap.min(top);
            }
        }
    }
    if !min_gap.is_finite() {
        return Ok(1);
    }
    let c_top = c0.coords().iter().fold(0.0f64, |a, c| a.max(c.abs()));
    Ok(((c_top / min_gap).floor() as usize + 1).max(1))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscontinuityFinding {
    /// Last value of the trail `D(x_n, probe)`.
    pub trail_limit: f64,
    /// `D(limit, probe)`
    pub limit_distance: f64,
    pub discontinuous: bool,
    pub trail: Vec<(usize, f64)>,
}

/// Compares `lim D(x_n, probe)` with `D(limit, probe)` along a sequence that
/// converges to `limit`. A gap above `tol` exposes a discontinuous distance.
pub fn detect_metric_discontinuity(
    space: &EtaConeSpace,
    seq: &SequencePrefix,
    limit: Point,
    probe: Point,
    schedule: &Schedule,
    tol: f64,
) -> Result<DiscontinuityFinding> {
    let verdict = is_convergent(space, seq, limit, schedule)?;
    if verdict.status != ConvergenceStatus::Converging {
        return Err(contract(format!(
            "sequence does not converge to the limit (status {:?})",
            verdict.status
        )));
    }
    let trail = seq
        .points
        .iter()
        .enumerate()
        .map(|(n, &x)| space.dist(x, probe).map(|d| (n, d)))
        .collect::<Result<Vec<_>>>()?;
    let trail_limit = trail.last().map_or(0.0, |p| p.1);
    let limit_distance = space.dist(limit, probe)?;
    Ok(DiscontinuityFinding {
        trail_limit,
        limit_distance,
        discontinuous: (trail_limit - limit_distance).abs() > tol,
        trail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::{ConeSpace, Norm};
    use crate::fixtures;
    use std::sync::Arc;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn three_point_space() -> EtaConeSpace {
        fixtures::three_point_cone(0.0, Norm::Max).unwrap()
    }

    fn squared_line(upper: f64) -> EtaConeSpace {
        EtaConeSpace::interval(
            0.0,
            upper,
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
    fn ball_examples() {
        let s = three_point_space();
        let p = Point::Index;
        let c = v(&[100.0, 1.0]);
        assert!(ball_contains(&s, p(0), &c, DEFAULT_MARGIN, p(0)).unwrap());
        assert!(ball_contains(&s, p(0), &c, DEFAULT_MARGIN, p(1)).unwrap());
        assert!(!ball_contains(&s, p(0), &c, DEFAULT_MARGIN, p(2)).unwrap());
        assert!(ball_contains(&s, p(0), &v(&[0.0, 1.0]), DEFAULT_MARGIN, p(0)).is_err());

        let line = squared_line(0.25);
        assert!(ball_contains(&line, Point::Real(0.0), &v(&[0.01]), DEFAULT_MARGIN, Point::Real(0.05)).unwrap());
        assert!(!ball_contains(&line, Point::Real(0.0), &v(&[0.01]), DEFAULT_MARGIN, Point::Real(0.2)).unwrap());
    }

    #[test]
    fn local_base_radii() {
        let s = three_point_space();
        let c0 = v(&[1.0, 1.0]);
        assert_eq!(local_base(&s, Point::Index(0), &c0, 1).unwrap(), vec![c0.clone()]);
        let base = local_base(&s, Point::Index(0), &c0, 3).unwrap();
        assert_eq!(base[1], v(&[0.5, 0.5]));
        assert_eq!(base[2], v(&[1.0 / 3.0, 1.0 / 3.0]));
        assert!(local_base(&s, Point::Index(0), &c0, 0).is_err());
    }

    #[test]
    fn convergence_on_the_nat_infinity_fixture() {
        let s = fixtures::nat_infinity(64).unwrap();
        let inf = s.parse_point("inf").unwrap();
        let one = s.parse_point("1").unwrap();
        let seq = fixtures::nat_infinity_even_sequence(&s);
        // 1/(2n) ≥ 1/64 on the truncation, so the schedule stops at 2^-5.
        let schedule = Schedule::geometric(5).unwrap();
        let verdict = is_convergent(&s, &seq, inf, &schedule).unwrap();
        assert_eq!(verdict.status, ConvergenceStatus::Converging);
        assert_eq!(verdict.trail[0].1, 0.5);

        let verdict = is_convergent(&s, &seq, one, &schedule).unwrap();
        assert_eq!(verdict.status, ConvergenceStatus::Diverging);
        assert!(verdict.trail.iter().all(|&(_, d)| d == 2.0));

        let constant = SequencePrefix::new(vec![one; 10], "constant");
        let verdict = is_convergent(&s, &constant, one, &Schedule::default()).unwrap();
        assert_eq!(verdict.status, ConvergenceStatus::Converging);
        assert_eq!(verdict.witness, Some(0));
    }

    #[test]
    fn cauchy_prefixes() {
        let line = squared_line(1.0);
        let orbit: Vec<Point> = (0..40).map(|n| Point::Real(0.5f64.powi(n))).collect();
        let seq = SequencePrefix::new(orbit, "x/2 orbit");
        let verdict = is_cauchy_prefix(&line, &seq, &Schedule::default(), 8).unwrap();
        assert_eq!(verdict.status, ConvergenceStatus::Converging);

        let alternating: Vec<Point> = (0..40).map(|n| Point::Real((n % 2) as f64)).collect();
        let verdict =
            is_cauchy_prefix(&line, &SequencePrefix::new(alternating, "alt"), &Schedule::default(), 8).unwrap();
        assert_eq!(verdict.status, ConvergenceStatus::Diverging);
        assert!(is_cauchy_prefix(&line, &seq, &Schedule::default(), 1).is_err());

        // Convergent with sup η ≤ 3: Cauchy at the resolution the truncation allows.
        let s = fixtures::nat_infinity(64).unwrap();
        let seq = fixtures::nat_infinity_even_sequence(&s);
        let schedule = Schedule::new(vec![0.5, 0.1, 0.05, 0.01]).unwrap();
        let verdict = is_cauchy_prefix(&s, &seq, &schedule, 4).unwrap();
        assert_eq!(verdict.status, ConvergenceStatus::Converging);
    }

    #[test]
    fn stalled_trail() {
        let line = squared_line(2.0);
        let pts: Vec<Point> = (0..30).map(|n| Point::Real(0.3 + 0.5f64.powi(n))).collect();
        let verdict = is_convergent(
            &line,
            &SequencePrefix::new(pts, "stall"),
            Point::Real(0.0),
            &Schedule::default(),
        )
        .unwrap();
        assert_eq!(verdict.status, ConvergenceStatus::Stalled);
    }

    #[test]
    fn closure_examples() {
        let s = three_point_space();
        let p = Point::Index;
        let c0 = v(&[1.0, 1.0]);
        assert!(closure_contains(&s, &[p(1)], p(1), &c0, 32).unwrap());
        assert!(!closure_contains(&s, &[p(1)], p(0), &c0, 32).unwrap());
        for x in 0..3 {
            assert!(closure_contains(&s, &[p(0), p(1), p(2)], p(x), &c0, 32).unwrap());
        }
        assert!(closure_contains(&s, &[], p(0), &c0, 32).is_err());
    }

    #[test]
    fn finite_closure_equals_membership_at_resolution() {
        let s = fixtures::function_space(0.0, 1.0, 33).unwrap();
        let n = s.len().unwrap();
        let c0 = Vector::scalar(1.0).unwrap();
        let depth = resolution_depth(&s, &c0).unwrap();
        let p = Point::Index;
        for mask in 1u32..(1 << 4) {
            let subset: Vec<Point> = (0..4).filter(|b| mask & (1 << b) != 0).map(p).collect();
            let bigger: Vec<Point> = subset.iter().copied().chain([p(n - 1)]).collect();
            for x in 0..n {
                let inside = closure_contains(&s, &subset, p(x), &c0, depth).unwrap();
                assert_eq!(inside, subset.contains(&p(x)));
                if inside {
                    assert!(closure_contains(&s, &bigger, p(x), &c0, depth).unwrap());
                }
            }
        }
    }

    #[test]
    fn discontinuity_examples() {
        let s = fixtures::nat_infinity(64).unwrap();
        let inf = s.parse_point("inf").unwrap();
        let one = s.parse_point("1").unwrap();
        let seq = fixtures::nat_infinity_even_sequence(&s);
        let schedule = Schedule::geometric(5).unwrap();
        let f = detect_metric_discontinuity(&s, &seq, inf, one, &schedule, 1e-9).unwrap();
        assert_eq!((f.trail_limit, f.limit_distance), (2.0, 1.0));
        assert!(f.discontinuous);

        let f = detect_metric_discontinuity(&s, &seq, inf, inf, &schedule, 1e-9).unwrap();
        // The truncation leaves a gap of 1/64, caught only by a tighter tolerance.
        assert_eq!(f.limit_distance, 0.0);
        assert!(f.trail_limit <= 1.0 / 64.0);
        let f = detect_metric_discontinuity(&s, &seq, inf, inf, &schedule, 0.02).unwrap();
        assert!(!f.discontinuous);

        // Not convergent to 1.
        assert!(detect_metric_discontinuity(&s, &seq, one, inf, &schedule, 1e-9).is_err());

        let line = squared_line(10.0);
        let pts: Vec<Point> = (1..=100_000).map(|n| Point::Real(1.0 / n as f64)).collect();
        let seq = SequencePrefix::new(pts, "1/n");
        let f = detect_metric_discontinuity(
            &line,
            &seq,
            Point::Real(0.0),
            Point::Real(1.0),
            &Schedule::default(),
            1e-4,
        )
        .unwrap();
        assert!((f.trail_limit - 1.0).abs() < 1e-4);
        assert_eq!(f.limit_distance, 1.0);
        assert!(!f.discontinuous);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn ball_contains_its_center(x in 0.0f64..0.25, r in 1e-9f64..10.0) {
                let line = squared_line(0.25);
                let c = Vector::scalar(r).unwrap();
                prop_assert!(ball_contains(&line, Point::Real(x), &c, DEFAULT_MARGIN, Point::Real(x)).unwrap());
            }

            #[test]
            fn closure_is_monotone(a in 1u8..255, extra in 0u8..255, x in 0usize..8) {
                let s = fixtures::function_space(0.0, 1.0, 17).unwrap();
                let c0 = Vector::scalar(1.0).unwrap();
                let small: Vec<Point> = (0..8).filter(|b| a & (1 << b) != 0).map(Point::Index).collect();
                let big: Vec<Point> = (0..8).filter(|b| (a | extra) & (1 << b) != 0).map(Point::Index).collect();
                if closure_contains(&s, &small, Point::Index(x), &c0, 32).unwrap() {
                    prop_assert!(closure_contains(&s, &big, Point::Index(x), &c0, 32).unwrap());
                }
            }

            #[test]
            fn limits_agree_at_resolution(x0 in 0.0f64..0.25, shift in 0.0f64..1e-4) {
                // sup η ≤ 2.5 on [0, ¼], K = 1.
                let line = squared_line(0.25);
                let pts: Vec<Point> = (0..60).map(|n| Point::Real(x0 * 0.5f64.powi(n))).collect();
                let seq = SequencePrefix::new(pts, "x0/2^n");
                let schedule = Schedule::default();
                let p = Point::Real(0.0);
                let q = Point::Real(shift);
                let to_p = is_convergent(&line, &seq, p, &schedule).unwrap();
                let to_q = is_convergent(&line, &seq, q, &schedule).unwrap();
                prop_assert_eq!(to_p.status, ConvergenceStatus::Converging);
                if to_q.status == ConvergenceStatus::Converging {
                    prop_assert!(line.dist(p, q).unwrap() <= 2.0 * 2.5 * schedule.floor());
                }
            }
        }
    }
}

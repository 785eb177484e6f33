//! Finite-dimensional ordered vector spaces.
//!
//! A [`ConeSpace`] fixes a dimension, a closed pointed cone `P` (either the
//! nonnegative orthant or the conic hull of finitely many rays), a norm and the
//! normal constant `K` of the cone. The cone induces the partial order
//! `x ⪯ y ⟺ y − x ∈ P` and the interior order `x ≪ y ⟺ y − x ∈ int P`.
//!
//! Floating point cannot decide membership exactly, so every order test takes
//! an explicit tolerance and interior tests take an explicit positive margin.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};

/// Default absolute tolerance for order and membership tests.
pub const DEFAULT_TOL: f64 = 1e-9;

/// An element of the coordinate space `ℝ^m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    /// Builds a vector, rejecting empty input and non-finite coordinates.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(contract("vector must have at least one coordinate"));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::Data(format!("coordinate {i} is not finite ({})", coords[i])));
        }
        Ok(Vector(coords))
    }

    pub fn scalar(value: f64) -> Result<Self> {
        Self::new(vec![value])
    }

    /// The zero vector θ.
    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim.max(1)])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn scale(&self, factor: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * factor).collect())
    }

    fn zip_with(&self, other: &Vector, f: impl Fn(f64, f64) -> f64) -> Vector {
        assert_eq!(self.dim(), other.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }

    /// The smallest coordinate.
    pub fn min_coord(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [x] = self.0.as_slice() {
            return write!(f, "{x}");
        }
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        self.scale(-1.0)
    }
}

impl Mul<&Vector> for f64 {
    type Output = Vector;
    fn mul(self, rhs: &Vector) -> Vector {
        rhs.scale(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    /// `max_i |v_i|`
    Max,
    /// `Σ_i |v_i|`
    Sum,
    Euclidean,
}

impl Norm {
    pub fn eval(self, coords: &[f64]) -> f64 {
        match self {
            Norm::Max => coords.iter().fold(0.0, |acc: f64, c| acc.max(c.abs())),
            Norm::Sum => coords.iter().map(|c| c.abs()).sum(),
            Norm::Euclidean => coords.iter().map(|c| c * c).sum::<f64>().sqrt(),
        }
    }
}

impl std::str::FromStr for Norm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Norm::Max),
            "sum" => Ok(Norm::Sum),
            "euclidean" | "l2" => Ok(Norm::Euclidean),
            other => Err(Error::Data(format!(
                "unknown norm `{other}` (expected max, sum or euclidean)"
            ))),
        }
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::Max => "max",
            Norm::Sum => "sum",
            Norm::Euclidean => "euclidean",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cone {
    /// `{v : v_i ≥ 0 for all i}`
    Orthant,
    /// Conic hull of the given generating rays.
    Rays(Vec<Vector>),
}

/// An ordered coordinate space `(ℝ^m, P, ‖·‖)` with normal constant `K`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeSpace {
    dim: usize,
    cone: Cone,
    norm: Norm,
    normal_constant: f64,
    normal_constant_exact: bool,
}

const NORMAL_CONSTANT_SAMPLES: usize = 4096;

impl ConeSpace {
    /// The nonnegative orthant. Every supported norm is monotone on the
    /// orthant, so the normal constant is exactly 1.
    pub fn orthant(dim: usize, norm: Norm) -> Result<Self> {
        if dim == 0 {
            return Err(contract("cone space dimension must be positive"));
        }
        Ok(ConeSpace {
            dim,
            cone: Cone::Orthant,
            norm,
            normal_constant: 1.0,
            normal_constant_exact: true,
        })
    }

    /// `E = ℝ`, `P = [0, ∞)`.
    pub fn scalar() -> Self {
        ConeSpace::orthant(1, Norm::Max).expect("dimension 1 is valid")
    }

    /// A polyhedral cone generated by `rays`.
    ///
    /// When `normal_constant` is `None` it is estimated by sampling and the
    /// space records that the value is a lower bound.
    pub fn rays(rays: Vec<Vector>, norm: Norm, normal_constant: Option<f64>) -> Result<Self> {
        let dim = rays
            .first()
            .map(Vector::dim)
            .ok_or_else(|| contract("a ray-generated cone needs at least one generator"))?;
        for r in &rays {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.dim(),
                });
            }
        }
        if rays.iter().all(Vector::is_zero) {
            return Err(contract("cone must contain a nonzero vector"));
        }
        let mut space = ConeSpace {
            dim,
            cone: Cone::Rays(rays.into_iter().filter(|r| !r.is_zero()).collect()),
            norm,
            normal_constant: 1.0,
            normal_constant_exact: false,
        };
        // x ∈ P ∧ −x ∈ P ⇒ x = θ, checked on the generators.
        if let Cone::Rays(gens) = &space.cone {
            for g in gens {
                let tol = DEFAULT_TOL * norm.eval(g.coords());
                if space.cone_contains(&-g, tol)? {
                    return Err(contract(format!(
                        "cone is not pointed: both {g} and its negation are in the cone"
                    )));
                }
            }
        }
        match normal_constant {
            Some(k) if !(k >= 1.0 && k.is_finite()) => {
                return Err(contract(format!("normal constant must be ≥ 1, got {k}")));
            }
            Some(k) => {
                space.normal_constant = k;
                space.normal_constant_exact = true;
            }
            None => {
                space.normal_constant = normal_constant_estimate(&space, NORMAL_CONSTANT_SAMPLES, 0)?;
            }
        }
        Ok(space)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn norm(&self) -> Norm {
        self.norm
    }

    pub fn normal_constant(&self) -> f64 {
        self.normal_constant
    }

    /// `false` when the normal constant is a sampled lower bound.
    pub fn normal_constant_is_exact(&self) -> bool {
        self.normal_constant_exact
    }

    pub fn zero(&self) -> Vector {
        Vector::zeros(self.dim)
    }

    fn check_dim(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// `v ∈ P` up to `tol`.
    ///
    /// For the orthant every coordinate must be `≥ −tol`. For a ray cone the
    /// residual of the nonnegative least-squares fit over the generators must
    /// have norm at most `tol` (plus a rounding floor proportional to `‖v‖`).
    pub fn cone_contains(&self, v: &Vector, tol: f64) -> Result<bool> {
        self.check_dim(v)?;
        if !(tol >= 0.0) {
            return Err(contract(format!("tolerance must be nonnegative, got {tol}")));
        }
        match &self.cone {
            Cone::Orthant => Ok(v.coords().iter().all(|&c| c >= -tol)),
            Cone::Rays(gens) => {
                let residual = nnls_residual(gens, v);
                let floor = 1e-12 * self.norm.eval(v.coords()).max(1.0);
                Ok(self.norm.eval(&residual) <= tol + floor)
            }
        }
    }

    /// `x ⪯ y`, i.e. `y − x ∈ P` up to `tol`.
    pub fn leq(&self, x: &Vector, y: &Vector, tol: f64) -> Result<bool> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        self.cone_contains(&(y - x), tol)
    }

    /// `θ ≪ v` with an explicit margin: the orthant needs every coordinate
    /// `≥ margin`; a ray cone needs `v ± margin·e_i` in the cone for every axis.
    pub fn strictly_interior(&self, v: &Vector, margin: f64) -> Result<bool> {
        self.check_dim(v)?;
        if !(margin > 0.0) {
            return Err(contract(format!("interior margin must be positive, got {margin}")));
        }
        match &self.cone {
            Cone::Orthant => Ok(v.coords().iter().all(|&c| c >= margin)),
            Cone::Rays(_) => {
                let mut probe = v.clone();
                for i in 0..self.dim {
                    for sign in [1.0, -1.0] {
                        probe.0[i] = v.0[i] + sign * margin;
                        if !self.cone_contains(&probe, 0.0)? {
                            return Ok(false);
                        }
                    }
                    probe.0[i] = v.0[i];
                }
                Ok(true)
            }
        }
    }

    pub fn norm_of(&self, v: &Vector) -> Result<f64> {
        self.check_dim(v)?;
        Ok(self.norm.eval(v.coords()))
    }

    /// Signed distance of `v` to the cone boundary used in reports: the
    /// smallest coordinate for the orthant, minus the residual norm for a ray
    /// cone when `v` lies outside it, and 0 otherwise.
    pub fn order_slack(&self, v: &Vector) -> Result<f64> {
        self.check_dim(v)?;
        match &self.cone {
            Cone::Orthant => Ok(v.min_coord()),
            Cone::Rays(gens) => Ok(-self.norm.eval(&nnls_residual(gens, v))),
        }
    }

    /// Builds a vector of this space's dimension.
    pub fn vector(&self, coords: Vec<f64>) -> Result<Vector> {
        let v = Vector::new(coords)?;
        self.check_dim(&v)?;
        Ok(v)
    }
}

/// Estimates the normal constant, the least `K` with
/// `θ ⪯ x ⪯ y ⇒ ‖x‖ ≤ K‖y‖`.
///
/// Max and sum norms are monotone on the orthant, so the answer there is
/// exactly 1. Everything else is a sampled supremum of `‖x‖/‖y‖` over pairs
/// generated inside the order interval, which is a lower bound on the true
/// constant. Deterministic in `seed`; never below 1.
pub fn normal_constant_estimate(space: &ConeSpace, sample_count: usize, seed: u64) -> Result<f64> {
    if sample_count == 0 {
        return Err(contract("sample_count must be at least 1"));
    }
    if matches!(space.cone, Cone::Orthant) && matches!(space.norm, Norm::Max | Norm::Sum) {
        return Ok(1.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sup: f64 = 1.0;
    for _ in 0..sample_count {
        let (x, y) = match &space.cone {
            Cone::Orthant => {
                let y: Vec<f64> = (0..space.dim).map(|_| rng.random::<f64>()).collect();
                let x: Vec<f64> = y.iter().map(|c| c * rng.random::<f64>()).collect();
                (x, y)
            }
            Cone::Rays(gens) => {
                let mut x = vec![0.0; space.dim];
                let mut y = vec![0.0; space.dim];
                for g in gens {
                    // Sparse weights reach the extreme rays of the order interval.
                    let w = if rng.random_bool(0.5) { rng.random::<f64>() } else { 0.0 };
                    let frac = match rng.random_range(0..3) {
                        0 => 0.0,
                        1 => 1.0,
                        _ => rng.random::<f64>(),
                    };
                    for i in 0..space.dim {
                        y[i] += w * g.0[i];
                        x[i] += frac * w * g.0[i];
                    }
                }
                (x, y)
            }
        };
        let ny = space.norm.eval(&y);
        if ny > 0.0 {
            sup = sup.max(space.norm.eval(&x) / ny);
        }
    }
    Ok(sup)
}

/// Residual `v − Gλ` of the nonnegative least-squares fit `min ‖Gλ − v‖₂,
/// λ ≥ 0` (Lawson–Hanson active set).
fn nnls_residual(gens: &[Vector], v: &Vector) -> Vec<f64> {
    let m = v.dim();
    let r = gens.len();
    let g = DMatrix::from_fn(m, r, |i, j| gens[j].0[i]);
    let b = DVector::from_column_slice(v.coords());
    let lambda = nnls(&g, &b);
    let fit = &g * &lambda;
    (0..m).map(|i| b[i] - fit[i]).collect()
}

fn nnls(g: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    let r = g.ncols();
    let scale = g.norm().max(1.0) * b.norm().max(1.0);
    let eps = 1e-13 * scale;
    let mut lambda = DVector::zeros(r);
    let mut passive = vec![false; r];
    let max_outer = 3 * r + 10;

    for _ in 0..max_outer {
        let w = g.transpose() * (b - g * &lambda);
        let candidate = (0..r).filter(|&j| !passive[j]).max_by(|&a, &c| w[a].total_cmp(&w[c]));
        let Some(t) = candidate.filter(|&t| w[t] > eps) else {
            break;
        };
        passive[t] = true;

        loop {
            let s = solve_passive(g, b, &passive);
            let feasible = (0..r).filter(|&j| passive[j]).all(|j| s[j] > 0.0);
            if feasible {
                lambda = s;
                break;
            }
            let mut alpha: f64 = 1.0;
            for j in (0..r).filter(|&j| passive[j] && s[j] <= 0.0) {
                let denom = lambda[j] - s[j];
                if denom > 0.0 {
                    alpha = alpha.min(lambda[j] / denom);
                }
            }
            lambda = &lambda + (s - &lambda) * alpha;
            for j in 0..r {
                if passive[j] && lambda[j] <= eps.min(1e-15) {
                    passive[j] = false;
                    lambda[j] = 0.0;
                }
            }
            if !passive.iter().any(|&p| p) {
                break;
            }
        }
    }
    lambda
}

fn solve_passive(g: &DMatrix<f64>, b: &DVector<f64>, passive: &[bool]) -> DVector<f64> {
    let cols: Vec<usize> = (0..passive.len()).filter(|&j| passive[j]).collect();
    let sub = g.select_columns(&cols);
    let svd = sub.svd(true, true);
    let sol = svd.solve(b, 1e-14).unwrap_or_else(|_| DVector::zeros(cols.len()));
    let mut full = DVector::zeros(passive.len());
    for (k, &j) in cols.iter().enumerate() {
        full[j] = sol[k];
    }
    full
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn orthant2() -> ConeSpace {
        ConeSpace::orthant(2, Norm::Max).unwrap()
    }

    /// The cone generated by (1,0) and (1,1): {(a,b): a ≥ b ≥ 0}.
    fn wedge() -> ConeSpace {
        ConeSpace::rays(vec![v(&[1.0, 0.0]), v(&[1.0, 1.0])], Norm::Euclidean, None).unwrap()
    }

    #[test]
    fn orthant_membership() {
        let s = orthant2();
        assert!(s.cone_contains(&v(&[0.0, 0.0]), 0.0).unwrap());
        assert!(s.cone_contains(&v(&[1.0, 0.5]), 0.0).unwrap());
        assert!(!s.cone_contains(&v(&[-1.0, 2.0]), 0.0).unwrap());
        assert!(s.cone_contains(&v(&[-1e-10, 2.0]), 1e-9).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let s = orthant2();
        assert!(matches!(
            s.cone_contains(&v(&[1.0]), 0.0),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
        assert!(s.leq(&v(&[1.0]), &v(&[1.0, 2.0]), 0.0).is_err());
    }

    #[test]
    fn order_examples() {
        let s = orthant2();
        assert!(s.leq(&v(&[0.0, 0.0]), &v(&[3.0, 4.0]), 0.0).unwrap());
        assert!(s.leq(&v(&[80.0, 0.0]), &v(&[6400.0, 0.0]), 0.0).unwrap());
        assert!(!s.leq(&v(&[1.0, 0.0]), &v(&[0.0, 1.0]), 0.0).unwrap());
        assert!(!s.leq(&v(&[0.0, 1.0]), &v(&[1.0, 0.0]), 0.0).unwrap());
    }

    #[test]
    fn interior_examples() {
        let s = orthant2();
        assert!(s.strictly_interior(&v(&[1.0, 1.0]), 0.5).unwrap());
        assert!(!s.strictly_interior(&v(&[1.0, 0.0]), 1e-9).unwrap());
        let line = ConeSpace::scalar();
        assert!(line.strictly_interior(&v(&[0.25]), 0.1).unwrap());
        assert!(matches!(
            s.strictly_interior(&v(&[1.0, 1.0]), 0.0),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn norms() {
        let s = orthant2();
        assert_eq!(s.norm_of(&v(&[3.0, -4.0])).unwrap(), 4.0);
        let sum = ConeSpace::orthant(2, Norm::Sum).unwrap();
        assert_eq!(sum.norm_of(&v(&[1000.0, 1000.0])).unwrap(), 2000.0);
        let e = ConeSpace::orthant(2, Norm::Euclidean).unwrap();
        assert_eq!(e.norm_of(&v(&[0.0, 0.0])).unwrap(), 0.0);
        assert_eq!(e.norm_of(&v(&[3.0, 4.0])).unwrap(), 5.0);
    }

    #[test]
    fn normal_constant_on_orthants() {
        for norm in [Norm::Max, Norm::Sum] {
            let s = ConeSpace::orthant(3, norm).unwrap();
            assert_eq!(normal_constant_estimate(&s, 1, 7).unwrap(), 1.0);
        }
        // ‖x‖₂ ≤ ‖y‖₂ whenever 0 ≤ x ≤ y coordinatewise, so sampling never
        // finds a ratio above 1.
        let e = ConeSpace::orthant(3, Norm::Euclidean).unwrap();
        assert_eq!(normal_constant_estimate(&e, 10_000, 7).unwrap(), 1.0);
        assert!(normal_constant_estimate(&e, 0, 7).is_err());
    }

    #[test]
    fn wedge_cone_membership_and_interior() {
        let s = wedge();
        assert!(s.cone_contains(&v(&[2.0, 1.0]), 0.0).unwrap());
        assert!(s.cone_contains(&v(&[1.0, 1.0]), 0.0).unwrap());
        assert!(!s.cone_contains(&v(&[1.0, 2.0]), 0.0).unwrap());
        assert!(!s.cone_contains(&v(&[-1.0, 0.0]), 0.0).unwrap());
        assert!(s.strictly_interior(&v(&[3.0, 1.0]), 0.5).unwrap());
        assert!(!s.strictly_interior(&v(&[3.0, 3.0]), 0.1).unwrap());
        assert!(s.order_slack(&v(&[1.0, 2.0])).unwrap() < 0.0);
        // The estimate is a lower bound of the true constant and at least 1.
        assert!(s.normal_constant() >= 1.0);
        assert!(!s.normal_constant_is_exact());
    }

    #[test]
    fn normal_constant_is_deterministic_in_seed() {
        let s = wedge();
        let a = normal_constant_estimate(&s, 500, 3).unwrap();
        let b = normal_constant_estimate(&s, 500, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_degenerate_cones() {
        assert!(ConeSpace::rays(vec![v(&[0.0, 0.0])], Norm::Max, None).is_err());
        // A line is not pointed.
        assert!(ConeSpace::rays(vec![v(&[1.0, 0.0]), v(&[-1.0, 0.0])], Norm::Max, None).is_err());
        assert!(ConeSpace::rays(vec![v(&[1.0, 0.0])], Norm::Max, Some(0.5)).is_err());
        assert!(ConeSpace::orthant(0, Norm::Max).is_err());
        assert!(Vector::new(vec![f64::NAN]).is_err());
    }

    fn coords(dim: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-100.0..100.0f64, dim)
    }

    proptest! {
        #[test]
        fn order_is_reflexive(x in coords(3)) {
            let s = ConeSpace::orthant(3, Norm::Euclidean).unwrap();
            let x = v(&x);
            prop_assert!(s.leq(&x, &x, 0.0).unwrap());
            prop_assert!(wedge().leq(&v(&x.coords()[..2]), &v(&x.coords()[..2]), 0.0).unwrap());
        }

        #[test]
        fn order_is_antisymmetric(x in coords(2), y in coords(2)) {
            let x = v(&x);
            let y = v(&y);
            for s in [orthant2(), wedge()] {
                if s.leq(&x, &y, 0.0).unwrap() && s.leq(&y, &x, 0.0).unwrap() {
                    let scale = s.norm_of(&x).unwrap().max(s.norm_of(&y).unwrap()).max(1.0);
                    prop_assert!(s.norm_of(&(&x - &y)).unwrap() <= 2.0 * 1e-12 * scale);
                }
            }
        }

        #[test]
        fn cone_is_closed_under_nonnegative_combinations(
            x in prop::collection::vec(0.0..50.0f64, 2),
            y in prop::collection::vec(0.0..50.0f64, 2),
            a in 0.0..10.0f64,
            b in 0.0..10.0f64,
        ) {
            let s = orthant2();
            let c = &a.mul(&v(&x)) + &b.mul(&v(&y));
            prop_assert!(s.cone_contains(&c, 0.0).unwrap());

            // Same on the wedge, starting from members built from generators.
            let w = wedge();
            let gx = v(&[x[0] + x[1], x[1]]);
            let gy = v(&[y[0] + y[1], y[1]]);
            prop_assert!(w.cone_contains(&gx, 0.0).unwrap());
            let c = &a.mul(&gx) + &b.mul(&gy);
            prop_assert!(w.cone_contains(&c, 0.0).unwrap());
        }

        #[test]
        fn interior_implies_membership(x in coords(2), margin in 1e-6..5.0f64) {
            let x = v(&x);
            for s in [orthant2(), wedge()] {
                if s.strictly_interior(&x, margin).unwrap() {
                    prop_assert!(s.cone_contains(&x, 0.0).unwrap());
                }
            }
        }

        #[test]
        fn orthant_is_normal_with_constant_one(
            y in prop::collection::vec(0.0..10.0f64, 3),
            frac in prop::collection::vec(0.0..=1.0f64, 3),
        ) {
            let x: Vec<f64> = y.iter().zip(&frac).map(|(a, f)| a * f).collect();
            for norm in [Norm::Max, Norm::Sum, Norm::Euclidean] {
                let s = ConeSpace::orthant(3, norm).unwrap();
                let (x, y) = (v(&x), v(&y));
                prop_assert!(s.leq(&s.zero(), &x, 0.0).unwrap() && s.leq(&x, &y, 0.0).unwrap());
                let k = s.normal_constant();
                prop_assert!(s.norm_of(&x).unwrap() <= k * s.norm_of(&y).unwrap() * (1.0 + 1e-15));
            }
        }
    }
}

//! Line-oriented distance-table format.
//!
//! ```text
//! # three points along (1, 0)
//! points: 1 2 3
//! norm: max            # optional: max | sum | euclidean
//! ray 1 0              # optional: generators of a polyhedral cone
//! ray 1 1
//! normal: 1.5          # optional: normal constant of a ray cone
//! d 1 2 80 0
//! d 1 3 1000 0
//! d 2 3 600 0
//! eta 1 3 5
//! map 1 2              # optional: a self-map, one line per point
//! ```
//!
//! `d i j …` and `eta i j s` also set the `(j, i)` entry unless it is given
//! explicitly. Diagonal distances default to θ, missing η entries to 1.
//! Without `ray` lines the cone is the nonnegative orthant.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::cone::{Cone, ConeSpace, Norm, Vector};
use crate::error::{contract, Error, Result};
use crate::space::{EtaConeSpace, SamplingPlan};

/// A parsed table file.
#[derive(Clone, Debug)]
pub struct TableFile {
    pub space: EtaConeSpace,
    /// Image index of every point, when `map` lines are present.
    pub map: Option<Vec<usize>>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(token: &str, line: usize) -> Result<f64> {
    token
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| parse_err(line, format!("`{token}` is not a finite number")))
}

/// Entries keyed by ordered index pair, remembering which were explicit.
struct PairTable<T> {
    explicit: HashMap<(usize, usize), T>,
}

impl<T: Clone> PairTable<T> {
    fn new() -> Self {
        PairTable {
            explicit: HashMap::new(),
        }
    }

    fn insert(&mut self, i: usize, j: usize, value: T, line: usize, what: &str) -> Result<()> {
        if self.explicit.insert((i, j), value).is_some() {
            return Err(parse_err(line, format!("duplicate {what} entry")));
        }
        Ok(())
    }

    fn get(&self, i: usize, j: usize) -> Option<T> {
        self.explicit
            .get(&(i, j))
            .or_else(|| self.explicit.get(&(j, i)))
            .cloned()
    }
}

pub fn parse_table(text: &str) -> Result<TableFile> {
    let mut labels: Option<Vec<String>> = None;
    let mut norm = Norm::Max;
    let mut rays: Vec<Vector> = Vec::new();
    let mut normal: Option<f64> = None;
    let mut dim: Option<usize> = None;
    let mut dist = PairTable::<Vector>::new();
    let mut eta = PairTable::<f64>::new();
    let mut map: HashMap<usize, usize> = HashMap::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("points:") {
            if labels.is_some() {
                return Err(parse_err(line, "`points:` appears twice"));
            }
            let names: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if names.is_empty() {
                return Err(parse_err(line, "`points:` lists no points"));
            }
            let mut sorted = names.clone();
            sorted.sort();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(parse_err(line, format!("duplicate point `{}`", w[0])));
            }
            labels = Some(names);
            continue;
        }
        if let Some(rest) = content.strip_prefix("norm:") {
            norm = rest.trim().parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
            continue;
        }
        if let Some(rest) = content.strip_prefix("normal:") {
            normal = Some(number(rest.trim(), line)?);
            continue;
        }
        let mut tokens = content.split_whitespace();
        let keyword = tokens.next().unwrap_or_default();
        let args: Vec<&str> = tokens.collect();
        if keyword == "ray" {
            let coords = args.iter().map(|t| number(t, line)).collect::<Result<Vec<_>>>()?;
            let v = Vector::new(coords).map_err(|e| parse_err(line, e.to_string()))?;
            rays.push(v);
            continue;
        }
        let names = labels
            .as_ref()
            .ok_or_else(|| parse_err(line, format!("`{keyword}` line before `points:`")))?;
        let index = |name: &str| {
            names
                .iter()
                .position(|l| l == name)
                .ok_or_else(|| parse_err(line, format!("unknown point `{name}`")))
        };
        match keyword {
            "d" => {
                if args.len() < 3 {
                    return Err(parse_err(line, "expected `d i j v1 [v2 ...]`"));
                }
                let (i, j) = (index(args[0])?, index(args[1])?);
                let coords = args[2..].iter().map(|t| number(t, line)).collect::<Result<Vec<_>>>()?;
                match dim {
                    Some(m) if m != coords.len() => {
                        return Err(parse_err(
                            line,
                            format!("distance has {} coordinates, expected {m}", coords.len()),
                        ))
                    }
                    _ => dim = Some(coords.len()),
                }
                let v = Vector::new(coords).map_err(|e| parse_err(line, e.to_string()))?;
                dist.insert(i, j, v, line, "distance")?;
            }
            "eta" => {
                if args.len() != 3 {
                    return Err(parse_err(line, "expected `eta i j s`"));
                }
                let (i, j) = (index(args[0])?, index(args[1])?);
                eta.insert(i, j, number(args[2], line)?, line, "eta")?;
            }
            "map" => {
                if args.len() != 2 {
                    return Err(parse_err(line, "expected `map i j`"));
                }
                let (i, j) = (index(args[0])?, index(args[1])?);
                if map.insert(i, j).is_some() {
                    return Err(parse_err(line, format!("point `{}` is mapped twice", args[0])));
                }
            }
            other => return Err(parse_err(line, format!("unknown directive `{other}`"))),
        }
    }

    let labels = labels.ok_or_else(|| parse_err(0, "missing `points:` header"))?;
    let n = labels.len();
    let cone = if rays.is_empty() {
        if normal.is_some() {
            return Err(Error::Data("`normal:` applies only to ray cones".into()));
        }
        ConeSpace::orthant(dim.unwrap_or(1), norm)?
    } else {
        if let Some(m) = dim.filter(|&m| m != rays[0].dim()) {
            return Err(Error::DimensionMismatch {
                expected: rays[0].dim(),
                found: m,
            });
        }
        ConeSpace::rays(rays, norm, normal)?
    };
    let mut distances = Vec::with_capacity(n * n);
    let mut etas = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let d = match dist.get(i, j) {
                Some(v) => v,
                None if i == j => cone.zero(),
                None => {
                    return Err(Error::Data(format!(
                        "no distance given for the pair ({}, {})",
                        labels[i], labels[j]
                    )))
                }
            };
            distances.push(d);
            etas.push(eta.get(i, j).unwrap_or(1.0));
        }
    }
    let map = if map.is_empty() {
        None
    } else {
        let images = (0..n)
            .map(|i| {
                map.get(&i)
                    .copied()
                    .ok_or_else(|| Error::Data(format!("map has no image for `{}`", labels[i])))
            })
            .collect::<Result<Vec<_>>>()?;
        Some(images)
    };
    Ok(TableFile {
        space: EtaConeSpace::finite(labels, cone, distances, etas)?,
        map,
    })
}

fn coords(v: &Vector) -> String {
    v.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

/// Writes a finite space (and optional map) in the table format. Values use
/// the shortest representation that parses back to the same `f64`.
pub fn write_table(space: &EtaConeSpace, map: Option<&[usize]>, comment: &str) -> Result<String> {
    let labels = space
        .labels()
        .ok_or_else(|| contract("only finite spaces have a table form"))?;
    if let Some(l) = labels
        .iter()
        .find(|l| l.is_empty() || l.contains(char::is_whitespace) || l.contains('#'))
    {
        return Err(Error::Data(format!("label `{l}` cannot be written to a table")));
    }
    let points = space.finite_points().expect("finite");
    let cone = space.cone();
    let mut out = String::new();
    for line in comment.lines() {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "points: {}", labels.join(" "));
    let _ = writeln!(out, "norm: {}", cone.norm());
    if let Cone::Rays(rays) = cone.cone() {
        for r in rays {
            let _ = writeln!(out, "ray {}", coords(r));
        }
        let _ = writeln!(out, "normal: {}", cone.normal_constant());
    }
    let n = points.len();
    for i in 0..n {
        for j in i..n {
            let (a, b) = (points[i], points[j]);
            let dij = space.d(a, b)?;
            let dji = space.d(b, a)?;
            if i != j || !dij.is_zero() {
                let _ = writeln!(out, "d {} {} {}", labels[i], labels[j], coords(&dij));
            }
            if i != j && dji != dij {
                let _ = writeln!(out, "d {} {} {}", labels[j], labels[i], coords(&dji));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            let (a, b) = (points[i], points[j]);
            let eij = space.eta(a, b)?;
            let eji = space.eta(b, a)?;
            if eij != 1.0 || eji != 1.0 {
                let _ = writeln!(out, "eta {} {} {}", labels[i], labels[j], eij);
                if i != j && eji != eij {
                    let _ = writeln!(out, "eta {} {} {}", labels[j], labels[i], eji);
                }
            }
        }
    }
    if let Some(images) = map {
        if images.len() != n || images.iter().any(|&j| j >= n) {
            return Err(contract("map table does not match the point count"));
        }
        for (i, &j) in images.iter().enumerate() {
            let _ = writeln!(out, "map {} {}", labels[i], labels[j]);
        }
    }
    Ok(out)
}

/// The finite space on the sampling grid of an interval space (or the space
/// itself when it is already finite).
pub fn sampled_finite(space: &EtaConeSpace, plan: &SamplingPlan) -> Result<EtaConeSpace> {
    if space.is_finite() {
        return Ok(space.clone());
    }
    let points = space.sample_points(plan);
    let labels: Vec<String> = points.iter().map(|&p| space.label(p)).collect();
    let n = points.len();
    let mut distances = Vec::with_capacity(n * n);
    let mut etas = Vec::with_capacity(n * n);
    for &a in &points {
        for &b in &points {
            distances.push(space.d(a, b)?);
            etas.push(space.eta(a, b)?);
        }
    }
    EtaConeSpace::finite(labels, space.cone().clone(), distances, etas)
}

//! Browser demo for `etacone`.
//!
//! Three operations back the page in `www/`: a Picard orbit with its
//! a posteriori bounds, a three-point axiom explorer, and classification of a
//! pasted distance table. Each is a plain function returning JSON so it can be
//! tested natively; the `#[wasm_bindgen]` wrappers only convert errors.

use etacone::table::parse_table;
use etacone::{
    check_axioms, classify, derive_eta_metric, estimate_contraction, fixtures, minimal_eta, picard_orbit, tail_bound,
    ConeSpace, EtaConeSpace, Point, RealTable, SamplingPlan, Vector,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Longest orbit the page asks for.
pub const MAX_STEPS: usize = 200;

fn text<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn real(p: Point) -> f64 {
    match p {
        Point::Real(x) => x,
        _ => f64::NAN,
    }
}

/// Iterates the `half` (`x/2` on `[0, 1000]`) or `square` (`x²` on `[0, ¼]`)
/// fixture from `x0` for at most `steps` applications.
///
/// Each row carries `x_n`, `d_n = D(x_n, x_{n+1})`, the observed
/// `D(x_n, x_N)` and the tail bound on it, with `x_N` the last iterate.
pub fn orbit_trace(map: &str, x0: f64, steps: usize) -> Result<String, String> {
    let entry = match map {
        "half" => fixtures::half_map(),
        "square" => fixtures::square_map(),
        other => return Err(format!("unknown map `{other}` (expected half or square)")),
    }
    .map_err(text)?;
    if steps == 0 || steps > MAX_STEPS {
        return Err(format!("steps must lie in 1..={MAX_STEPS}"));
    }
    let space = &entry.space;
    let self_map = entry.map.expect("orbit fixtures carry a map");
    let trace = picard_orbit(space, &self_map, Point::Real(x0), steps, 0.0, 16).map_err(text)?;
    let k = estimate_contraction(space, &self_map, &SamplingPlan::default())
        .map_err(text)?
        .k;
    let last = trace.iterates.len() - 1;
    let mut rows = Vec::with_capacity(last + 1);
    for (n, &x) in trace.iterates.iter().enumerate() {
        let to_last = space.dist(x, trace.iterates[last]).map_err(text)?;
        let bound = if n < last && k < 1.0 {
            Some(tail_bound(space, &trace, k, n, last).map_err(text)?)
        } else {
            None
        };
        rows.push(json!({
            "n": n,
            "x": real(x),
            "d": trace.step_distances.get(n),
            "to_last": to_last,
            "bound": bound,
        }));
    }
    Ok(json!({
        "map": self_map.description(),
        "k": k,
        "stop": trace.stop,
        "eta_tail_max": trace.eta_tail_max(),
        "rows": rows,
    })
    .to_string())
}

/// Checks (d1)–(d3) on `{1, 2, 3}` with the given scalar distances and
/// symmetric η, and reports the least η that would do.
pub fn three_point(d: [f64; 3], eta: [f64; 3]) -> Result<String, String> {
    // Pair order: (1,2), (1,3), (2,3).
    let pair = |i: usize, j: usize| match (i.min(j), i.max(j)) {
        (0, 1) => 0,
        (0, 2) => 1,
        _ => 2,
    };
    let labels: Vec<String> = ["1", "2", "3"].map(String::from).to_vec();
    let mut distances = Vec::with_capacity(9);
    let mut etas = Vec::with_capacity(9);
    for i in 0..3 {
        for j in 0..3 {
            let (dij, eij) = if i == j {
                (0.0, 1.0)
            } else {
                (d[pair(i, j)], eta[pair(i, j)])
            };
            distances.push(Vector::scalar(dij).map_err(text)?);
            etas.push(eij);
        }
    }
    let space = EtaConeSpace::finite(labels.clone(), ConeSpace::scalar(), distances, etas).map_err(text)?;
    let plan = SamplingPlan {
        record_checks: true,
        ..SamplingPlan::default()
    };
    let report = check_axioms(&space, 0.0, &plan).map_err(text)?;
    let table = RealTable::new(
        labels,
        (0..9)
            .map(|k| if k / 3 == k % 3 { 0.0 } else { d[pair(k / 3, k % 3)] })
            .collect(),
    )
    .map_err(text)?;
    let least = minimal_eta(&table).map_err(text)?;
    Ok(json!({
        "report": report,
        "minimal_eta": [least.get(0, 1), least.get(0, 2), least.get(1, 2)],
    })
    .to_string())
}

/// Parses a table in the text format, checks its axioms and classifies the
/// derived real distance `D = ‖d‖`.
pub fn classify_text(input: &str) -> Result<String, String> {
    let file = parse_table(input).map_err(text)?;
    let report = check_axioms(&file.space, etacone::DEFAULT_TOL, &SamplingPlan::default()).map_err(text)?;
    let table = derive_eta_metric(&file.space).table().map_err(text)?;
    let class = classify(&table).map_err(text)?;
    let first: Vec<Value> = report.violations.iter().take(5).map(|v| json!(v.message)).collect();
    Ok(json!({
        "axioms_ok": report.all_ok(),
        "violation_count": report.violation_count,
        "violations": first,
        "classification": class,
    })
    .to_string())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = orbitTrace)]
pub fn orbit_trace_js(map: &str, x0: f64, steps: usize) -> Result<String, JsError> {
    js(orbit_trace(map, x0, steps))
}

#[wasm_bindgen(js_name = threePoint)]
pub fn three_point_js(d12: f64, d13: f64, d23: f64, e12: f64, e13: f64, e23: f64) -> Result<String, JsError> {
    js(three_point([d12, d13, d23], [e12, e13, e23]))
}

#[wasm_bindgen(js_name = classifyTable)]
pub fn classify_table_js(input: &str) -> Result<String, JsError> {
    js(classify_text(input))
}

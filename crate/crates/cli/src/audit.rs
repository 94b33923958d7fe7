//! Invariant checks on a written table, run against what was actually
//! written.

use crate::output::Table;
use crate::scenario::Scenario;

/// `|R| ≤ 1` slack for rounding.
const BALL_SLACK: f64 = 1e-9;
/// Pure classical-field states stay on the sphere to the integrator accuracy.
const SPHERE_TOL: f64 = 1e-6;

// Negated comparisons are deliberate: NaN must fail every check.
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn audit(table: &Table) -> Result<(), String> {
    if let Some(t) = table.column("t") {
        if !t.windows(2).all(|w| w[1] > w[0]) {
            return Err("time column is not strictly increasing".into());
        }
    }
    let on_sphere = table.scenario == Scenario::ClassicalPath;
    for suffix in ["", "_rwa"] {
        let cols = ["X", "Y", "Z"].map(|c| table.column(&format!("{c}{suffix}")));
        if let [Some(x), Some(y), Some(z)] = cols {
            for (i, ((x, y), z)) in x.iter().zip(&y).zip(&z).enumerate() {
                let r = (x * x + y * y + z * z).sqrt();
                if !(r <= 1.0 + BALL_SLACK) {
                    return Err(format!("row {}: |R{suffix}| = {r} outside the Bloch ball", i + 1));
                }
                if on_sphere && (r - 1.0).abs() > SPHERE_TOL {
                    return Err(format!("row {}: |R{suffix}| = {r}, pure state left the sphere", i + 1));
                }
            }
        }
        if let Some(s) = table.column(&format!("s{suffix}")) {
            if let Some(i) = s.windows(2).position(|w| !(w[1] >= w[0])) {
                return Err(format!("row {}: arc length s{suffix} decreases", i + 2));
            }
        }
        if let Some(k) = table.column(&format!("kappa{suffix}")) {
            if let Some(i) = k.iter().position(|k| !(*k >= 0.0)) {
                return Err(format!("row {}: curvature {} is not a non-negative number", i + 1, k[i]));
            }
        }
    }
    if let Some(d) = table.column("delta") {
        if d.iter().any(|d| !(*d > 0.0 && d.is_finite())) {
            return Err("non-positive gate error".into());
        }
    }
    if let Some(w) = table.column("omega").filter(|_| table.scenario == Scenario::DeltaScan) {
        if !w.windows(2).all(|p| p[1] > p[0]) {
            return Err("scan frequencies are not increasing".into());
        }
    }
    Ok(())
}

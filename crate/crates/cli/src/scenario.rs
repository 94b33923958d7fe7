//! The registered scenarios and the tables they produce.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use bloch_rwa::classical::{integrate_classical, rwa_trajectory, ClassicalPropagatorSpec};
use bloch_rwa::geometry::{annotate_curvature, arc_length};
use bloch_rwa::metrics::{delta_scan, DeltaModel, RwaReference};
use bloch_rwa::quantum::{curvature_table, QuantumRun};
use bloch_rwa::rotation::{cusp_times, rotation_sample};
use bloch_rwa::Trajectory;

use crate::error::CliError;
use crate::output::Table;
use crate::params::{Model, Resolved};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scenario {
    ClassicalPath,
    RotationProfile,
    Curvature,
    Arclength,
    QuantumPath,
    Table1,
    DeltaScan,
    Cusps,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::ClassicalPath,
        Scenario::RotationProfile,
        Scenario::Curvature,
        Scenario::Arclength,
        Scenario::QuantumPath,
        Scenario::Table1,
        Scenario::DeltaScan,
        Scenario::Cusps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::ClassicalPath => "classical-path",
            Scenario::RotationProfile => "rotation-profile",
            Scenario::Curvature => "curvature",
            Scenario::Arclength => "arclength",
            Scenario::QuantumPath => "quantum-path",
            Scenario::Table1 => "table1",
            Scenario::DeltaScan => "delta-scan",
            Scenario::Cusps => "cusps",
        }
    }

    pub fn default_model(self) -> Model {
        match self {
            Scenario::QuantumPath => Model::Quantum,
            _ => Model::Classical,
        }
    }

    /// Scenarios whose rows are samples of a Bloch path.
    pub fn is_path(self) -> bool {
        matches!(self, Scenario::ClassicalPath | Scenario::QuantumPath)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| format!("unknown scenario `{s}`"))
    }
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

/// Resolved parameters recorded in the output header.
fn params_for(scenario: Scenario, p: &Resolved) -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    let mut put = |k: &str, v: String| out.push((k.to_string(), v));
    let quantum = match scenario {
        Scenario::QuantumPath => true,
        Scenario::Curvature | Scenario::Arclength | Scenario::DeltaScan => p.model == Model::Quantum,
        _ => false,
    };
    match scenario {
        Scenario::Table1 => put("omega", fmt_num(p.sim.omega)),
        Scenario::Cusps => {
            put("omega", fmt_num(p.sim.omega));
            put("t-end", fmt_num(p.sim.t_end));
        }
        Scenario::DeltaScan => {
            put("model", if quantum { "quantum" } else { "classical" }.into());
            put("omegas", p.omegas.iter().map(|w| fmt_num(*w)).collect::<Vec<_>>().join(","));
            put("samples-per-period", p.sim.samples_per_drive_period.to_string());
            put("t-end", fmt_num(PI));
            put("theta0", "0".into());
            if quantum {
                put("alpha", fmt_num(p.quantum.alpha));
                put("reference", reference_name(p.reference).into());
                if let Some(n) = p.quantum.n_max {
                    put("n-max", n.to_string());
                }
                if let Some(l) = p.quantum.lambda {
                    put("lambda", fmt_num(l));
                }
            }
        }
        _ if quantum => {
            let q = &p.quantum;
            put("model", "quantum".into());
            put("alpha", fmt_num(q.alpha));
            put("theta0", fmt_num(q.theta0));
            put("omega", fmt_num(q.omega));
            put("n-max", q.cutoff().to_string());
            put("lambda", fmt_num(q.coupling()));
            put("t-end", fmt_num(q.t_end));
            put("samples-per-period", q.samples_per_drive_period.to_string());
            put("rwa", p.rwa.to_string());
        }
        _ => {
            let s = &p.sim;
            put("model", "classical".into());
            put("omega", fmt_num(s.omega));
            put("detuning", fmt_num(s.detuning));
            put("theta0", fmt_num(s.theta0));
            put("t-end", fmt_num(s.t_end));
            put("samples-per-period", s.samples_per_drive_period.to_string());
            if scenario != Scenario::RotationProfile {
                put("rwa", p.rwa.to_string());
                put("integrator", "dopri5 rtol=1e-10 atol=1e-12".into());
            }
        }
    }
    out
}

fn reference_name(r: RwaReference) -> &'static str {
    match r {
        RwaReference::JaynesCummings => "jaynes-cummings",
        RwaReference::ClassicalRwa => "classical-rwa",
    }
}

/// Exact trajectory (or the RWA one when `--rwa` is set) with curvature, and
/// the RWA reference when one exists.
fn paths(p: &Resolved, model: Model) -> Result<(Trajectory, Option<Trajectory>), CliError> {
    match model {
        Model::Classical => {
            let reference = if p.sim.detuning == 0.0 {
                let mut r = rwa_trajectory(&p.sim)?;
                annotate_curvature(&mut r)?;
                Some(r)
            } else {
                None
            };
            if p.rwa {
                let r = reference.ok_or_else(|| {
                    CliError::from(bloch_rwa::Error::Unsupported("the RWA closed form needs detuning = 0".into()))
                })?;
                return Ok((r, None));
            }
            let mut exact = integrate_classical(&p.sim, &ClassicalPropagatorSpec::default())?;
            annotate_curvature(&mut exact)?;
            Ok((exact, reference))
        }
        Model::Quantum => {
            let times = p.quantum.output_times();
            let jc = QuantumRun::new(&p.quantum, true)?.trajectory(&times);
            if p.rwa {
                return Ok((jc, None));
            }
            Ok((QuantumRun::new(&p.quantum, false)?.trajectory(&times), Some(jc)))
        }
    }
}

fn path_table(scenario: Scenario, p: &Resolved, model: Model) -> Result<Table, CliError> {
    let (exact, reference) = paths(p, model)?;
    let mut columns: Vec<&str> = vec!["t", "X", "Y", "Z", "s", "kappa"];
    if reference.is_some() {
        columns.extend(["X_rwa", "Y_rwa", "Z_rwa", "s_rwa", "kappa_rwa"]);
    }
    let s = arc_length(&exact)?;
    let s_ref = reference.as_ref().map(arc_length).transpose()?;
    let kappa = exact.curvature.as_ref().expect("curvature annotated");
    let rows = (0..exact.len())
        .map(|i| {
            let r = exact.bloch[i];
            let mut row = vec![exact.times[i], r.x, r.y, r.z, s[i], kappa[i]];
            if let (Some(rt), Some(sr)) = (&reference, &s_ref) {
                let q = rt.bloch[i];
                row.extend([q.x, q.y, q.z, sr[i], rt.curvature.as_ref().expect("curvature annotated")[i]]);
            }
            row
        })
        .collect();
    Ok(Table::new(scenario, params_for(scenario, p), &columns, rows))
}

/// Computes the table for `scenario`. Scan failures are reported in the
/// table summary and returned alongside it.
pub fn compute(scenario: Scenario, p: &Resolved) -> Result<(Table, Vec<(f64, String)>), CliError> {
    let params = params_for(scenario, p);
    let table = match scenario {
        Scenario::ClassicalPath => path_table(scenario, p, Model::Classical)?,
        Scenario::QuantumPath => path_table(scenario, p, Model::Quantum)?,
        Scenario::RotationProfile => {
            let rows = p
                .sim
                .output_times()
                .into_iter()
                .map(|t| {
                    let r = rotation_sample(t, p.sim.omega);
                    let n = r.axis.map_or([f64::NAN; 2], |a| [a[0], a[1]]);
                    vec![t, r.speed, n[0], n[1]]
                })
                .collect();
            Table::new(scenario, params, &["t", "theta_dot", "n_X", "n_Y"], rows)
        }
        Scenario::Curvature => {
            let (exact, reference) = paths(p, p.model)?;
            let omega = p.sim.omega;
            let kappa = exact.curvature.as_ref().expect("curvature annotated");
            let mut columns = vec!["t", "omega_t", "kappa"];
            if reference.is_some() {
                columns.push("kappa_rwa");
            }
            let rows = (0..exact.len())
                .map(|i| {
                    let t = exact.times[i];
                    let mut row = vec![t, omega * t, kappa[i]];
                    if let Some(r) = &reference {
                        row.push(r.curvature.as_ref().expect("curvature annotated")[i]);
                    }
                    row
                })
                .collect();
            Table::new(scenario, params, &columns, rows)
        }
        Scenario::Arclength => {
            let (exact, reference) = paths(p, p.model)?;
            let s = arc_length(&exact)?;
            let speed = exact.speed.as_ref().expect("speed sampled");
            let s_ref = reference.as_ref().map(arc_length).transpose()?;
            let mut columns = vec!["t", "s", "s_dot"];
            if s_ref.is_some() {
                columns.push("s_rwa");
            }
            let rows = (0..exact.len())
                .map(|i| {
                    let mut row = vec![exact.times[i], s[i], speed[i]];
                    if let Some(sr) = &s_ref {
                        row.push(sr[i]);
                    }
                    row
                })
                .collect();
            Table::new(scenario, params, &columns, rows)
        }
        Scenario::Table1 => {
            let rows = curvature_table(p.sim.omega)?
                .into_iter()
                .map(|r| {
                    let (t1, t2) = (PI / (2.0 * r.omega), 3.0 * PI / (2.0 * r.omega));
                    vec![
                        r.alpha,
                        r.theta0,
                        t1,
                        r.kappa_t1,
                        t2,
                        r.kappa_t2,
                        r.peak1.t,
                        r.peak1.kappa,
                        r.peak2.t,
                        r.peak2.kappa,
                    ]
                })
                .collect();
            Table::new(
                scenario,
                params,
                &["alpha", "theta0", "t1", "kappa_t1", "t2", "kappa_t2", "t_peak1", "kappa_peak1", "t_peak2", "kappa_peak2"],
                rows,
            )
        }
        Scenario::DeltaScan => {
            let model = match p.model {
                Model::Classical => DeltaModel::Classical,
                Model::Quantum => DeltaModel::Quantum { alpha: p.quantum.alpha, reference: p.reference },
            };
            let scan = delta_scan(&p.omegas, model, p.sim.samples_per_drive_period)?;
            let rows = scan.omegas.iter().zip(&scan.deltas).map(|(w, d)| vec![*w, *d]).collect();
            let mut table = Table::new(scenario, params, &["omega", "delta"], rows);
            for (w, reason) in &scan.failures {
                table.summary.push((format!("failed omega={}", fmt_num(*w)), reason.clone()));
            }
            table.summary.push((
                "fitted_loglog_slope".into(),
                scan.fitted_loglog_slope.map_or_else(|| "undefined (fewer than two points)".into(), fmt_num),
            ));
            return Ok((table, scan.failures));
        }
        Scenario::Cusps => {
            let rows = cusp_times(p.sim.omega, p.sim.t_end)
                .into_iter()
                .enumerate()
                .map(|(k, t)| vec![k as f64, t, p.sim.omega * t])
                .collect();
            Table::new(scenario, params, &["k", "t", "omega_t"], rows)
        }
    };
    Ok((table, Vec::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Scenario::ALL {
            assert_eq!(s.name().parse::<Scenario>().unwrap(), s);
        }
        assert!("bogus".parse::<Scenario>().is_err());
    }
}

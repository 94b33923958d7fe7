//! Acceptance checks, one test per criterion. Each prints a single
//! `PASS`/`FAIL` line with the measured numbers before asserting, so
//! `cargo test --test acceptance -- --nocapture` doubles as a report.

use std::f64::consts::PI;
use std::time::Instant;

use bloch_rwa::classical::{integrate_classical, integrate_classical_at, rwa_trajectory, ClassicalPropagatorSpec};
use bloch_rwa::geometry::{annotate_curvature, arc_length, classical_curvature, local_minima};
use bloch_rwa::metrics::{delta_scan, gate_error, DeltaModel};
use bloch_rwa::quantum::{curvature_table, quantum_trajectory, QuantumRun};
use bloch_rwa::rotation::{cusp_times, verify_decomposition};
use bloch_rwa::{QuantumConfig, SimConfig};

fn report(id: u32, name: &str, pass: bool, detail: String) {
    println!("criterion {id} [{name}]: {} | {detail}", if pass { "PASS" } else { "FAIL" });
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

#[test]
fn criterion_1_rotation_law() {
    let start = Instant::now();
    let residual = |samples| {
        let cfg = SimConfig { samples_per_drive_period: samples, ..SimConfig::default() };
        let traj = integrate_classical(&cfg, &ClassicalPropagatorSpec::adaptive(1e-12, 1e-14)).unwrap();
        verify_decomposition(&traj, cfg.omega).unwrap()
    };
    let (r256, r512) = (residual(256), residual(512));
    let elapsed = start.elapsed().as_secs_f64();
    let ratio = r256 / r512;
    // "quarters under halving": the residual falls at least fourfold per halving
    let pass = r256 < 1e-4 && ratio >= 4.0 && elapsed < 1.0;
    report(1, "rotation law", pass, format!("residual(256) = {r256:.3e}, residual(512) = {r512:.3e}, ratio = {ratio:.2}, {elapsed:.2}s"));
    assert!(pass);
}

#[test]
fn criterion_2_cusp_times() {
    let cfg = SimConfig::default();
    let traj = integrate_classical(&cfg, &ClassicalPropagatorSpec::default()).unwrap();
    let speed = traj.speed.as_ref().unwrap();
    let spacing = traj.times[1] - traj.times[0];
    let minima = local_minima(speed);
    let cusps = cusp_times(cfg.omega, cfg.t_end);
    let mut worst: f64 = 0.0;
    let mut all_found = cusps.len() == 5;
    for tk in &cusps {
        let hit = minima
            .iter()
            .filter(|&&i| (traj.times[i] - tk).abs() <= spacing)
            .map(|&i| speed[i])
            .fold(f64::INFINITY, f64::min);
        all_found &= hit < 1e-3;
        worst = worst.max(hit);
    }
    report(2, "cusp times", all_found, format!("{} cusps, largest |V| at matched minimum = {worst:.3e}", cusps.len()));
    assert!(all_found);
}

#[test]
fn criterion_3_curvature_divergence() {
    let cfg = SimConfig::default();
    let cusps = cusp_times(cfg.omega, cfg.t_end);
    let mut times = vec![0.0];
    for tk in &cusps {
        times.extend([tk - 1e-3, tk - 1e-4, tk + 1e-4, tk + 1e-3]);
    }
    let traj = integrate_classical_at(&cfg, &ClassicalPropagatorSpec::adaptive(1e-12, 1e-14), &times).unwrap();
    let kappa = |i: usize| classical_curvature(&traj.bloch[i], traj.times[i], cfg.omega).unwrap();
    let mut pass = true;
    let mut lines = Vec::new();
    for k in 0..cusps.len() {
        let base = 1 + 4 * k;
        let (far_l, near_l, near_r, far_r) = (kappa(base), kappa(base + 1), kappa(base + 2), kappa(base + 3));
        let ok = far_l > 1e3 && far_r > 1e3 && near_l > far_l && near_r > far_r;
        pass &= ok;
        lines.push(format!("t{k}: κ(±1e-3) = {far_l:.0}/{far_r:.0}, κ(±1e-4) = {near_l:.0}/{near_r:.0}"));
    }
    let mut rwa = rwa_trajectory(&cfg).unwrap();
    annotate_curvature(&mut rwa).unwrap();
    let rwa_dev = rwa.curvature.unwrap().iter().map(|k| (k - 1.0).abs()).fold(0.0, f64::max);
    pass &= rwa_dev < 1e-6;
    report(3, "curvature divergence", pass, format!("{}; RWA max |κ − 1| = {rwa_dev:.1e}", lines.join("; ")));
    assert!(pass);
}

#[test]
fn criterion_4_arc_length() {
    let cfg = SimConfig::default();
    let rwa = rwa_trajectory(&cfg).unwrap();
    let s_rwa = *arc_length(&rwa).unwrap().last().unwrap();
    let exact = integrate_classical(&cfg, &ClassicalPropagatorSpec::default()).unwrap();
    let s = arc_length(&exact).unwrap();
    let s_end = *s.last().unwrap();
    let speed = exact.speed.as_ref().unwrap();
    let h = exact.times[1] - exact.times[0];
    let mut max_slope: f64 = 0.0;
    let mut max_fd_slope: f64 = 0.0;
    for tk in cusp_times(cfg.omega, cfg.t_end) {
        let i = exact.times.iter().position(|t| (t - tk).abs() < 1e-9).expect("cusp on grid");
        max_slope = max_slope.max(speed[i]);
        if i + 1 < s.len() {
            max_fd_slope = max_fd_slope.max((s[i + 1] - s[i - 1]) / (2.0 * h));
        }
    }
    let pass = (s_rwa - 2.0 * PI).abs() < 1e-6 && s_end > 2.0 * PI && max_slope < 0.05;
    report(
        4,
        "arc length",
        pass,
        format!(
            "s_RWA(π) − 2π = {:.1e}, s(π) = {s_end:.4}, plateau ds/dt ≤ {max_slope:.2e} (sampled-path difference ≤ {max_fd_slope:.3})",
            s_rwa - 2.0 * PI
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_5_curvature_table() {
    let start = Instant::now();
    let rows = curvature_table(5.0).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let expected = [(2.6e4, 1.8e2), (12.0, 8.5), (1.5e5, 2.8e3)];
    let mut pass = elapsed < 60.0;
    let mut lines = Vec::new();
    for (row, (k1, k2)) in rows.iter().zip(expected) {
        let (e1, e2) = (rel_err(row.peak1.kappa, k1), rel_err(row.peak2.kappa, k2));
        pass &= e1 <= 0.1 && e2 <= 0.1;
        lines.push(format!(
            "(α={}, θ={:.2}): peaks {:.3e} @ {:.4} ({:+.0}%), {:.3e} @ {:.4} ({:+.0}%); at t₁,t₂: {:.3e}, {:.3e}",
            row.alpha,
            row.theta0,
            row.peak1.kappa,
            row.peak1.t,
            100.0 * (row.peak1.kappa / k1 - 1.0),
            row.peak2.kappa,
            row.peak2.t,
            100.0 * (row.peak2.kappa / k2 - 1.0),
            row.kappa_t1,
            row.kappa_t2,
        ));
    }
    report(5, "curvature table", pass, format!("{}; {elapsed:.1}s", lines.join("; ")));
    assert!(pass);
}

#[test]
fn criterion_6_delta_scaling() {
    let scan = delta_scan(&[10.0, 20.0, 40.0, 80.0, 160.0], DeltaModel::Classical, 256).unwrap();
    let slope = scan.fitted_loglog_slope.unwrap();
    let q: Vec<f64> = [1.0, 2.0, 5.0].iter().map(|&a| gate_error(DeltaModel::quantum(a), 20.0, 256).unwrap()).collect();
    let classical = scan.deltas[1];
    let ordered = q[0] < q[1] && q[1] < q[2] && q[2] < classical;
    let pass = scan.failures.is_empty() && (-1.15..=-0.85).contains(&slope) && ordered;
    report(
        6,
        "delta scaling",
        pass,
        format!(
            "δ = {:?}, slope = {slope:.4}; at ω=20: δ(α=1,2,5) = {:.4}, {:.4}, {:.4} vs classical {classical:.4}",
            scan.deltas.iter().map(|d| format!("{d:.4}")).collect::<Vec<_>>(),
            q[0],
            q[1],
            q[2]
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_7_quantum_sanity() {
    let configs = [(1.0, 0.0), (1.0, PI), (2.0, 1.1), (5.0, 0.0), (3.0, 2.3)];
    let mut worst_norm: f64 = 0.0;
    let mut worst_var: f64 = 0.0;
    let mut worst_len: f64 = 0.0;
    let mut worst_cutoff: f64 = 0.0;
    for (alpha, theta0) in configs {
        let cfg = QuantumConfig { samples_per_drive_period: 64, ..QuantumConfig::new(alpha, theta0, 5.0) };
        let times = cfg.output_times();
        let full = QuantumRun::new(&cfg, false).unwrap();
        let (norm, _) = full.conservation_drift(&times);
        let (jc_norm, var) = QuantumRun::new(&cfg, true).unwrap().conservation_drift(&times);
        worst_norm = worst_norm.max(norm).max(jc_norm);
        worst_var = worst_var.max(var);
        let path = full.path(&times);
        worst_len = worst_len.max(path.bloch.iter().map(|r| r.norm()).fold(0.0, f64::max));
        let doubled = QuantumConfig { n_max: Some(2 * cfg.cutoff()), ..cfg };
        let d = QuantumRun::new(&doubled, false).unwrap().path(&times);
        let diff = path
            .bloch
            .iter()
            .zip(&d.bloch)
            .map(|(a, b)| (a.x - b.x).abs().max((a.y - b.y).abs()).max((a.z - b.z).abs()))
            .fold(0.0, f64::max);
        worst_cutoff = worst_cutoff.max(diff);
    }
    let pass = worst_norm < 1e-9 && worst_len <= 1.0 + 1e-12 && worst_var < 1e-9 && worst_cutoff < 1e-8;
    report(
        7,
        "quantum sanity",
        pass,
        format!("norm drift {worst_norm:.1e}, max |R| = {worst_len:.15}, JC variance drift {worst_var:.1e}, cutoff doubling {worst_cutoff:.1e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_8_classical_limit() {
    let classical = integrate_classical(&SimConfig::default(), &ClassicalPropagatorSpec::default()).unwrap();
    let d: Vec<f64> = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|&a| quantum_trajectory(&QuantumConfig::new(a, 0.0, 5.0)).unwrap().max_distance(&classical).unwrap())
        .collect();
    let pass = d.windows(2).all(|w| w[1] < w[0]);
    report(8, "classical limit", pass, format!("max distance for α = 1, 2, 5, 10: {d:.4?}"));
    assert!(pass);
}

//! Scenario execution: dispatches a validated config to the library,
//! assembles a deterministic table of named numeric columns, and
//! evaluates embedded assertions into verdicts.

use crate::checks;
use crate::config::{
    DispersionScanConfig, IdentitySuiteConfig, ModeTableConfig, PacketRunConfig, ScenarioConfig,
    TunnelingScanConfig, ZbwRunConfig,
};
use guided_photon::modes::{
    compton_wavelength, cutoff_frequency, dispersion_omega, effective_mass, evanescent_kappa,
    group_velocity, phase_velocity, ModeIndex, WaveguideSpec,
};
use guided_photon::propagate::{
    fit_group_velocity, helmholtz_mode, init_gaussian_packet, record_trajectory,
    zitterbewegung_spectrum, BarrierProfile, Grid1D, Segment,
};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RunError {
    /// Parameter combinations that no run can satisfy; maps to exit code 2.
    #[error("config error: {0}")]
    Config(String),
    /// Failures of the numerics while running; maps to exit code 3.
    #[error("numerical error: {0}")]
    Numerical(String),
}

impl RunError {
    fn numerical(context: &str) -> impl Fn(guided_photon::Error) -> RunError + '_ {
        move |e| RunError::Numerical(format!("{context}: {e}"))
    }
}

fn config_err(context: &str, e: guided_photon::Error) -> RunError {
    RunError::Config(format!("{context}: {e}"))
}

/// One named numeric column.
#[derive(Debug, Clone, Serialize)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

impl Column {
    pub fn new(name: &str, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }
}

/// One embedded assertion, evaluated deterministically.
#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub value: f64,
    pub threshold: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub package: String,
    pub version: String,
    pub kind: String,
    pub seed: u64,
    /// Resolved config echo (defaults filled in).
    pub scenario: serde_json::Value,
}

/// A named auxiliary table (e.g. a field snapshot) riding along with
/// the main result.
#[derive(Debug, Clone, Serialize)]
pub struct Snapshot {
    pub name: String,
    pub columns: Vec<Column>,
}

/// Deterministic scenario output: metadata, equal-length columns,
/// verdicts, and any auxiliary snapshot tables.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioResult {
    pub metadata: Metadata,
    pub columns: Vec<Column>,
    pub verdicts: Vec<Verdict>,
    pub snapshots: Vec<Snapshot>,
}

impl ScenarioResult {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

fn metadata(config: &ScenarioConfig) -> Metadata {
    Metadata {
        package: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        kind: config.kind().to_string(),
        seed: config.seed(),
        scenario: serde_json::to_value(config).expect("config serializes"),
    }
}

fn check_columns(columns: &[Column]) -> Result<(), RunError> {
    if let Some(first) = columns.first() {
        for c in columns {
            if c.values.len() != first.values.len() {
                return Err(RunError::Numerical(format!(
                    "internal: column \"{}\" has {} rows, expected {}",
                    c.name,
                    c.values.len(),
                    first.values.len()
                )));
            }
        }
    }
    Ok(())
}

/// Runs a validated scenario to completion.
pub fn run(config: &ScenarioConfig) -> Result<ScenarioResult, RunError> {
    let meta = metadata(config);
    let (columns, verdicts, snapshots) = match config {
        ScenarioConfig::ModeTable(c) => mode_table(c)?,
        ScenarioConfig::DispersionScan(c) => dispersion_scan(c)?,
        ScenarioConfig::PacketRun(c) => packet_run(c)?,
        ScenarioConfig::ZbwRun(c) => zbw_run(c)?,
        ScenarioConfig::TunnelingScan(c) => tunneling_scan(c)?,
        ScenarioConfig::IdentitySuite(c) => identity_suite(c)?,
    };
    check_columns(&columns)?;
    for snap in &snapshots {
        check_columns(&snap.columns)?;
    }
    Ok(ScenarioResult {
        metadata: meta,
        columns,
        verdicts,
        snapshots,
    })
}

type Output = (Vec<Column>, Vec<Verdict>, Vec<Snapshot>);

fn final_field_snapshot(field: &guided_photon::propagate::SpinorField1D) -> Snapshot {
    let (names, columns) = guided_photon::propagate::snapshot_columns(field);
    Snapshot {
        name: "final_field".into(),
        columns: names
            .into_iter()
            .zip(columns)
            .map(|(name, values)| Column { name, values })
            .collect(),
    }
}

fn mode_table(c: &ModeTableConfig) -> Result<Output, RunError> {
    let guide = WaveguideSpec::with_plasma(c.b1, c.b2, c.plasma_frequency)
        .map_err(|e| config_err("guide", e))?;
    let mut n_col = Vec::new();
    let mut s_col = Vec::new();
    let mut cutoff = Vec::new();
    let mut mass = Vec::new();
    let mut compton = Vec::new();
    for n in 1..=c.n_max {
        for s in 0..=c.s_max {
            let mode = ModeIndex::te(n, s).map_err(|e| config_err("mode", e))?;
            let wc = cutoff_frequency(&guide, &mode);
            let m = effective_mass(&guide, &mode);
            n_col.push(n as f64);
            s_col.push(s as f64);
            cutoff.push(wc);
            mass.push(m);
            compton.push(compton_wavelength(m).map_err(RunError::numerical("compton"))?);
        }
    }
    let lowest = cutoff[0];
    let min_all = cutoff.iter().cloned().fold(f64::INFINITY, f64::min);
    let verdicts = vec![Verdict {
        name: "lowest_mode_first".into(),
        pass: lowest <= min_all + 1e-15,
        value: lowest,
        threshold: min_all,
        detail: format!("cutoff(1,0) = {lowest:.6} vs table minimum {min_all:.6}"),
    }];
    Ok((
        vec![
            Column::new("n", n_col),
            Column::new("s", s_col),
            Column::new("omega_c", cutoff),
            Column::new("mass", mass),
            Column::new("compton_wavelength", compton),
        ],
        verdicts,
        vec![],
    ))
}

fn dispersion_scan(c: &DispersionScanConfig) -> Result<Output, RunError> {
    let guide = WaveguideSpec::with_plasma(c.b1, c.b2, c.plasma_frequency)
        .map_err(|e| config_err("guide", e))?;
    let mode = ModeIndex::te(c.n, c.s).map_err(|e| config_err("mode", e))?;
    let mass = effective_mass(&guide, &mode);
    let mut k3_col = Vec::new();
    let mut omega_col = Vec::new();
    let mut vg_col = Vec::new();
    let mut vp_col = Vec::new();
    let mut product = Vec::new();
    for i in 0..c.steps {
        let k3 = c.k3_min + (c.k3_max - c.k3_min) * i as f64 / (c.steps - 1) as f64;
        let omega = dispersion_omega(mass, k3);
        let vg = group_velocity(omega, mass).map_err(RunError::numerical("group velocity"))?;
        let vp = phase_velocity(omega, mass).map_err(RunError::numerical("phase velocity"))?;
        k3_col.push(k3);
        omega_col.push(omega);
        vg_col.push(vg);
        vp_col.push(vp);
        product.push(vg * vp);
    }
    let worst = product
        .iter()
        .map(|p| (p - 1.0).abs())
        .fold(0.0f64, f64::max);
    let verdicts = vec![Verdict {
        name: "velocity_product_unity".into(),
        pass: worst <= 1e-14,
        value: worst,
        threshold: 1e-14,
        detail: format!("max |v_g * v_p - 1| = {worst:.3e}"),
    }];
    Ok((
        vec![
            Column::new("k3", k3_col),
            Column::new("omega", omega_col),
            Column::new("group_velocity", vg_col),
            Column::new("phase_velocity", vp_col),
            Column::new("vg_vp_product", product),
        ],
        verdicts,
        vec![],
    ))
}

fn trajectory_columns(
    traj: &guided_photon::propagate::Trajectory,
) -> (Vec<Column>, f64) {
    let t: Vec<f64> = traj.samples().iter().map(|s| s.t).collect();
    let centroid: Vec<f64> = traj.samples().iter().map(|s| s.centroid).collect();
    let norm: Vec<f64> = traj.samples().iter().map(|s| s.norm).collect();
    let worst_norm_drift = norm.iter().map(|n| (n - 1.0).abs()).fold(0.0f64, f64::max);
    (
        vec![
            Column::new("t", t),
            Column::new("centroid", centroid),
            Column::new("norm", norm),
        ],
        worst_norm_drift,
    )
}

fn build_packet(
    omega_c: f64,
    grid_n: usize,
    length: Option<f64>,
    k0: f64,
    sigma: Option<f64>,
    branch: guided_photon::propagate::Branch,
) -> Result<guided_photon::propagate::SpinorField1D, RunError> {
    let length = length.unwrap_or(200.0 / omega_c);
    let sigma = sigma.unwrap_or(10.0 / omega_c);
    let grid = Grid1D::new(grid_n, length).map_err(|e| config_err("grid", e))?;
    init_gaussian_packet(grid, k0, sigma, omega_c, branch).map_err(|e| config_err("packet", e))
}

fn packet_run(c: &PacketRunConfig) -> Result<Output, RunError> {
    let field = build_packet(c.omega_c, c.grid_n, c.length, c.k0, c.sigma, c.branch.into())?;
    let (traj, final_field) = record_trajectory(&field, c.omega_c, c.t_final, c.sample_dt)
        .map_err(RunError::numerical("evolution"))?;
    let (columns, norm_drift) = trajectory_columns(&traj);
    let mut verdicts = vec![Verdict {
        name: "norm_conserved".into(),
        pass: norm_drift <= 1e-12,
        value: norm_drift,
        threshold: 1e-12,
        detail: format!("max |norm - 1| = {norm_drift:.3e}"),
    }];
    let fitted = fit_group_velocity(&traj, (0.0, c.t_final))
        .map_err(RunError::numerical("velocity fit"))?;
    if let Some(expected) = c.expected_velocity {
        let err = (fitted - expected).abs();
        let threshold = c.velocity_tolerance * expected.abs().max(1e-12);
        verdicts.push(Verdict {
            name: "fitted_velocity".into(),
            pass: err <= threshold,
            value: fitted,
            threshold,
            detail: format!("fitted {fitted:.6} vs expected {expected:.6} (|err| = {err:.3e})"),
        });
    }
    let snapshots = if c.export_snapshot {
        vec![final_field_snapshot(&final_field)]
    } else {
        vec![]
    };
    Ok((columns, verdicts, snapshots))
}

fn zbw_run(c: &ZbwRunConfig) -> Result<Output, RunError> {
    let field = build_packet(
        c.omega_c,
        c.grid_n,
        c.length,
        c.k0,
        c.sigma,
        guided_photon::propagate::Branch::Both,
    )?;
    let (traj, final_field) = record_trajectory(&field, c.omega_c, c.t_final, c.sample_dt)
        .map_err(RunError::numerical("evolution"))?;
    let (columns, norm_drift) = trajectory_columns(&traj);
    let mut verdicts = vec![Verdict {
        name: "norm_conserved".into(),
        pass: norm_drift <= 1e-12,
        value: norm_drift,
        threshold: 1e-12,
        detail: format!("max |norm - 1| = {norm_drift:.3e}"),
    }];
    if let Some(expected) = c.expected_frequency {
        let threshold = c.frequency_tolerance * expected;
        match zitterbewegung_spectrum(&traj) {
            Ok(peak) => {
                let err = (peak.frequency - expected).abs();
                verdicts.push(Verdict {
                    name: "oscillation_frequency".into(),
                    pass: err <= threshold,
                    value: peak.frequency,
                    threshold,
                    detail: format!(
                        "dominant frequency {:.6} (amplitude {:.3e}) vs expected {expected:.6}",
                        peak.frequency, peak.amplitude
                    ),
                });
            }
            Err(e) => verdicts.push(Verdict {
                name: "oscillation_frequency".into(),
                pass: false,
                value: f64::NAN,
                threshold,
                detail: format!("no peak measured: {e}"),
            }),
        }
    }
    let snapshots = if c.export_snapshot {
        vec![final_field_snapshot(&final_field)]
    } else {
        vec![]
    };
    Ok((columns, verdicts, snapshots))
}

fn tunneling_scan(c: &TunnelingScanConfig) -> Result<Output, RunError> {
    let kappa = evanescent_kappa(c.omega, c.barrier_omega_c)
        .map_err(|e| config_err("barrier", e))?;
    let mut length_col = Vec::new();
    let mut t_col = Vec::new();
    let mut r_col = Vec::new();
    let mut flux_err = Vec::new();
    let mut ln_t = Vec::new();
    for i in 0..c.steps {
        let length = c.length_min + (c.length_max - c.length_min) * i as f64 / (c.steps - 1) as f64;
        let profile = BarrierProfile::new(vec![
            Segment {
                length: c.lead_length,
                omega_c: c.lead_omega_c,
            },
            Segment {
                length,
                omega_c: c.barrier_omega_c,
            },
            Segment {
                length: c.lead_length,
                omega_c: c.lead_omega_c,
            },
        ])
        .map_err(|e| config_err("profile", e))?;
        let result = helmholtz_mode(c.omega, &profile)
            .map_err(RunError::numerical("transfer matrix"))?;
        length_col.push(length);
        t_col.push(result.transmission);
        r_col.push(result.reflection);
        flux_err.push((result.transmission + result.reflection - 1.0).abs());
        ln_t.push(result.transmission.ln());
    }

    let worst_flux = flux_err.iter().cloned().fold(0.0f64, f64::max);
    let mut verdicts = vec![Verdict {
        name: "flux_conservation".into(),
        pass: worst_flux <= 1e-10,
        value: worst_flux,
        threshold: 1e-10,
        detail: format!("max |T + R - 1| = {worst_flux:.3e}"),
    }];

    let monotone = t_col.windows(2).all(|w| w[1] <= w[0] + 1e-15);
    verdicts.push(Verdict {
        name: "transmission_monotone_decreasing".into(),
        pass: monotone,
        value: if monotone { 1.0 } else { 0.0 },
        threshold: 1.0,
        detail: "T must not increase with barrier length".into(),
    });

    // thick-barrier slope of ln T vs L approaches -2 kappa
    let tail: Vec<(f64, f64)> = length_col
        .iter()
        .zip(&ln_t)
        .filter(|(l, _)| **l * kappa >= 4.0)
        .map(|(l, t)| (*l, *t))
        .collect();
    if tail.len() >= 3 {
        let n = tail.len() as f64;
        let sx: f64 = tail.iter().map(|p| p.0).sum();
        let sy: f64 = tail.iter().map(|p| p.1).sum();
        let sxx: f64 = tail.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = tail.iter().map(|p| p.0 * p.1).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        let expected = -2.0 * kappa;
        let err = (slope - expected).abs() / expected.abs();
        verdicts.push(Verdict {
            name: "log_transmission_slope".into(),
            pass: err <= c.slope_tolerance,
            value: slope,
            threshold: c.slope_tolerance,
            detail: format!(
                "ln T slope {slope:.6} vs -2 kappa = {expected:.6} (relative error {err:.3e})"
            ),
        });
    } else {
        verdicts.push(Verdict {
            name: "log_transmission_slope".into(),
            pass: false,
            value: f64::NAN,
            threshold: c.slope_tolerance,
            detail: format!(
                "fewer than 3 rows with kappa L >= 4 (kappa = {kappa:.4}); extend length_max"
            ),
        });
    }

    Ok((
        vec![
            Column::new("barrier_length", length_col),
            Column::new("transmission", t_col),
            Column::new("reflection", r_col),
            Column::new("flux_error", flux_err),
            Column::new("ln_transmission", ln_t),
        ],
        verdicts,
        vec![],
    ))
}

fn identity_suite(c: &IdentitySuiteConfig) -> Result<Output, RunError> {
    let checks = checks::identity_suite(c.seed, c.trials);
    let mut index = Vec::new();
    let mut residual = Vec::new();
    let mut tolerance = Vec::new();
    let mut pass_col = Vec::new();
    let mut verdicts = Vec::new();
    for (i, check) in checks.iter().enumerate() {
        index.push(i as f64);
        residual.push(check.residual);
        tolerance.push(check.tolerance);
        pass_col.push(if check.pass() { 1.0 } else { 0.0 });
        verdicts.push(Verdict {
            name: check.name.to_string(),
            pass: check.pass(),
            value: check.residual,
            threshold: check.tolerance,
            detail: format!("residual {:.3e} vs tolerance {:.3e}", check.residual, check.tolerance),
        });
    }
    Ok((
        vec![
            Column::new("check_index", index),
            Column::new("residual", residual),
            Column::new("tolerance", tolerance),
            Column::new("pass", pass_col),
        ],
        verdicts,
        vec![],
    ))
}

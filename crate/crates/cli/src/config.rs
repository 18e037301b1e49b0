//! Scenario configuration: strict JSON parsing with duplicate-key and
//! unknown-key rejection, defaults applied at parse time.

use serde::de::{self, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema violation: {0}")]
    Schema(String),
}

/// JSON value wrapper whose deserializer rejects duplicate object keys.
struct DupChecked(Value);

impl<'de> Deserialize<'de> for DupChecked {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Value;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("any JSON value")
            }

            fn visit_bool<E>(self, v: bool) -> Result<Value, E> {
                Ok(Value::Bool(v))
            }
            fn visit_i64<E>(self, v: i64) -> Result<Value, E> {
                Ok(Value::from(v))
            }
            fn visit_u64<E>(self, v: u64) -> Result<Value, E> {
                Ok(Value::from(v))
            }
            fn visit_f64<E>(self, v: f64) -> Result<Value, E> {
                Ok(Value::from(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Value, E> {
                Ok(Value::String(v.to_owned()))
            }
            fn visit_unit<E>(self) -> Result<Value, E> {
                Ok(Value::Null)
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Value, A::Error> {
                let mut out = Vec::new();
                while let Some(DupChecked(v)) = seq.next_element()? {
                    out.push(v);
                }
                Ok(Value::Array(out))
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Value, A::Error> {
                let mut out = serde_json::Map::new();
                while let Some(key) = map.next_key::<String>()? {
                    let DupChecked(value) = map.next_value()?;
                    if out.insert(key.clone(), value).is_some() {
                        return Err(de::Error::custom(format!("duplicate key \"{key}\"")));
                    }
                }
                Ok(Value::Object(out))
            }
        }
        deserializer.deserialize_any(V).map(DupChecked)
    }
}

/// Energy-branch selector for packet scenarios.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchChoice {
    Plus,
    Minus,
    Both,
}

impl From<BranchChoice> for guided_photon::propagate::Branch {
    fn from(b: BranchChoice) -> Self {
        match b {
            BranchChoice::Plus => Self::Plus,
            BranchChoice::Minus => Self::Minus,
            BranchChoice::Both => Self::Both,
        }
    }
}

fn default_seed() -> u64 {
    0
}
fn default_trials() -> u32 {
    100
}
fn default_grid_n() -> usize {
    4096
}
fn default_mode_n() -> u32 {
    1
}
fn default_branch() -> BranchChoice {
    BranchChoice::Plus
}
fn default_velocity_tol() -> f64 {
    0.01
}
fn default_frequency_tol() -> f64 {
    0.02
}
fn default_slope_tol() -> f64 {
    0.02
}
fn default_lead_length() -> f64 {
    1.0
}

/// Cutoff/mass table over a block of mode indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeTableConfig {
    pub b1: f64,
    pub b2: f64,
    #[serde(default)]
    pub plasma_frequency: f64,
    pub n_max: u32,
    pub s_max: u32,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

/// Group/phase velocity scan of one mode over an axial wavenumber range.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DispersionScanConfig {
    pub b1: f64,
    pub b2: f64,
    #[serde(default)]
    pub plasma_frequency: f64,
    #[serde(default = "default_mode_n")]
    pub n: u32,
    #[serde(default)]
    pub s: u32,
    pub k3_min: f64,
    pub k3_max: f64,
    pub steps: usize,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

/// Wave-packet evolution with centroid/norm logging and a fitted
/// velocity verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketRunConfig {
    pub omega_c: f64,
    #[serde(default = "default_grid_n")]
    pub grid_n: usize,
    /// Domain length; defaults to 200/omega_c.
    #[serde(default)]
    pub length: Option<f64>,
    pub k0: f64,
    /// Packet width; defaults to 10/omega_c.
    #[serde(default)]
    pub sigma: Option<f64>,
    #[serde(default = "default_branch")]
    pub branch: BranchChoice,
    pub t_final: f64,
    pub sample_dt: f64,
    #[serde(default)]
    pub expected_velocity: Option<f64>,
    /// Also dump the final field as a columnar snapshot table.
    #[serde(default)]
    pub export_snapshot: bool,
    #[serde(default = "default_velocity_tol")]
    pub velocity_tolerance: f64,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

/// Both-branch packet run with a centroid-oscillation spectrum verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZbwRunConfig {
    pub omega_c: f64,
    #[serde(default = "default_grid_n")]
    pub grid_n: usize,
    #[serde(default)]
    pub length: Option<f64>,
    #[serde(default)]
    pub k0: f64,
    #[serde(default)]
    pub sigma: Option<f64>,
    pub t_final: f64,
    pub sample_dt: f64,
    #[serde(default)]
    pub expected_frequency: Option<f64>,
    /// Also dump the final field as a columnar snapshot table.
    #[serde(default)]
    pub export_snapshot: bool,
    #[serde(default = "default_frequency_tol")]
    pub frequency_tolerance: f64,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

/// Transmission scan over barrier length at fixed frequency.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TunnelingScanConfig {
    pub omega: f64,
    #[serde(default)]
    pub lead_omega_c: f64,
    pub barrier_omega_c: f64,
    #[serde(default = "default_lead_length")]
    pub lead_length: f64,
    pub length_min: f64,
    pub length_max: f64,
    pub steps: usize,
    #[serde(default = "default_slope_tol")]
    pub slope_tolerance: f64,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

/// Seeded battery of matrix, decomposition, kinematics, spectrum, and
/// field-residual checks.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentitySuiteConfig {
    #[serde(default = "default_trials")]
    pub trials: u32,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

/// A parsed scenario, one variant per `kind`.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScenarioConfig {
    ModeTable(ModeTableConfig),
    DispersionScan(DispersionScanConfig),
    PacketRun(PacketRunConfig),
    ZbwRun(ZbwRunConfig),
    TunnelingScan(TunnelingScanConfig),
    IdentitySuite(IdentitySuiteConfig),
}

pub const SCENARIO_KINDS: [(&str, &str); 6] = [
    (
        "mode_table",
        "cutoff frequency, effective mass, and Compton wavelength per mode index",
    ),
    (
        "dispersion_scan",
        "omega, group and phase velocity over an axial wavenumber sweep",
    ),
    (
        "packet_run",
        "spectral wave-packet evolution logging (t, centroid, norm) with a velocity verdict",
    ),
    (
        "zbw_run",
        "both-branch packet run with a centroid-oscillation spectrum verdict",
    ),
    (
        "tunneling_scan",
        "transfer-matrix transmission over a barrier-length sweep",
    ),
    (
        "identity_suite",
        "seeded battery of matrix, decomposition, kinematics, spectrum, and field checks",
    ),
];

impl ScenarioConfig {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::ModeTable(_) => "mode_table",
            Self::DispersionScan(_) => "dispersion_scan",
            Self::PacketRun(_) => "packet_run",
            Self::ZbwRun(_) => "zbw_run",
            Self::TunnelingScan(_) => "tunneling_scan",
            Self::IdentitySuite(_) => "identity_suite",
        }
    }

    pub fn seed(&self) -> u64 {
        match self {
            Self::ModeTable(c) => c.seed,
            Self::DispersionScan(c) => c.seed,
            Self::PacketRun(c) => c.seed,
            Self::ZbwRun(c) => c.seed,
            Self::TunnelingScan(c) => c.seed,
            Self::IdentitySuite(c) => c.seed,
        }
    }

    pub fn set_seed(&mut self, seed: u64) {
        match self {
            Self::ModeTable(c) => c.seed = seed,
            Self::DispersionScan(c) => c.seed = seed,
            Self::PacketRun(c) => c.seed = seed,
            Self::ZbwRun(c) => c.seed = seed,
            Self::TunnelingScan(c) => c.seed = seed,
            Self::IdentitySuite(c) => c.seed = seed,
        }
    }

    /// Output file stem: the explicit name or the scenario kind.
    pub fn stem(&self) -> String {
        let name = match self {
            Self::ModeTable(c) => &c.name,
            Self::DispersionScan(c) => &c.name,
            Self::PacketRun(c) => &c.name,
            Self::ZbwRun(c) => &c.name,
            Self::TunnelingScan(c) => &c.name,
            Self::IdentitySuite(c) => &c.name,
        };
        name.clone().unwrap_or_else(|| self.kind().to_string())
    }
}

fn from_value<T: de::DeserializeOwned>(kind: &str, rest: Value) -> Result<T, ConfigError> {
    serde_json::from_value(rest)
        .map_err(|e| ConfigError::Schema(format!("in \"{kind}\" scenario: {e}")))
}

/// Parses and validates a scenario config from JSON text.
///
/// Rejects malformed JSON (with position), duplicate keys, a missing or
/// unknown `kind`, unknown parameters, and missing required parameters.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    let DupChecked(mut value) = serde_json::from_str(text).map_err(|e| ConfigError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| ConfigError::Schema("top level must be a JSON object".into()))?;
    let kind = obj
        .remove("kind")
        .ok_or_else(|| ConfigError::Schema("missing required key \"kind\"".into()))?;
    let kind = kind
        .as_str()
        .ok_or_else(|| ConfigError::Schema("\"kind\" must be a string".into()))?
        .to_string();
    let rest = Value::Object(obj.clone());
    let config = match kind.as_str() {
        "mode_table" => ScenarioConfig::ModeTable(from_value(&kind, rest)?),
        "dispersion_scan" => ScenarioConfig::DispersionScan(from_value(&kind, rest)?),
        "packet_run" => ScenarioConfig::PacketRun(from_value(&kind, rest)?),
        "zbw_run" => ScenarioConfig::ZbwRun(from_value(&kind, rest)?),
        "tunneling_scan" => ScenarioConfig::TunnelingScan(from_value(&kind, rest)?),
        "identity_suite" => ScenarioConfig::IdentitySuite(from_value(&kind, rest)?),
        other => {
            return Err(ConfigError::Schema(format!(
                "unknown scenario kind \"{other}\"; known kinds: {}",
                SCENARIO_KINDS
                    .iter()
                    .map(|(k, _)| *k)
                    .collect::<Vec<_>>()
                    .join(", ")
            )))
        }
    };
    validate(&config)?;
    Ok(config)
}

/// Static validation beyond what serde can express.
pub fn validate(config: &ScenarioConfig) -> Result<(), ConfigError> {
    let fail = |msg: String| Err(ConfigError::Schema(msg));
    match config {
        ScenarioConfig::ModeTable(c) => {
            if c.n_max < 1 {
                return fail("\"n_max\" must be >= 1".into());
            }
        }
        ScenarioConfig::DispersionScan(c) => {
            if !(c.k3_min > 0.0) {
                return fail(format!(
                    "\"k3_min\" must be > 0 (phase velocity is undefined at cutoff), got {}",
                    c.k3_min
                ));
            }
            if !(c.k3_max > c.k3_min) {
                return fail("\"k3_max\" must exceed \"k3_min\"".into());
            }
            if c.steps < 2 {
                return fail("\"steps\" must be >= 2".into());
            }
            if c.n < 1 {
                return fail("\"n\" must be >= 1".into());
            }
        }
        ScenarioConfig::PacketRun(c) => {
            validate_grid("grid_n", c.grid_n)?;
            validate_packet_numbers(c.omega_c, c.t_final, c.sample_dt)?;
        }
        ScenarioConfig::ZbwRun(c) => {
            validate_grid("grid_n", c.grid_n)?;
            validate_packet_numbers(c.omega_c, c.t_final, c.sample_dt)?;
        }
        ScenarioConfig::TunnelingScan(c) => {
            if !(c.omega > c.lead_omega_c) {
                return fail(format!(
                    "leads must propagate: \"omega\" = {} must exceed \"lead_omega_c\" = {}",
                    c.omega, c.lead_omega_c
                ));
            }
            if !(c.barrier_omega_c > c.omega) {
                return fail(format!(
                    "\"barrier_omega_c\" = {} must exceed \"omega\" = {} for a tunneling scan",
                    c.barrier_omega_c, c.omega
                ));
            }
            if !(c.length_min > 0.0 && c.length_max > c.length_min) {
                return fail("need 0 < length_min < length_max".into());
            }
            if c.steps < 2 {
                return fail("\"steps\" must be >= 2".into());
            }
        }
        ScenarioConfig::IdentitySuite(c) => {
            if c.trials < 1 {
                return fail("\"trials\" must be >= 1".into());
            }
        }
    }
    Ok(())
}

fn validate_grid(key: &str, n: usize) -> Result<(), ConfigError> {
    if n < 64 || !n.is_power_of_two() {
        return Err(ConfigError::Schema(format!(
            "\"{key}\" must be a power of two >= 64, got {n}"
        )));
    }
    Ok(())
}

fn validate_packet_numbers(omega_c: f64, t_final: f64, sample_dt: f64) -> Result<(), ConfigError> {
    if !(omega_c > 0.0) {
        return Err(ConfigError::Schema(format!(
            "\"omega_c\" must be > 0, got {omega_c}"
        )));
    }
    if !(t_final > 0.0) {
        return Err(ConfigError::Schema(format!(
            "\"t_final\" must be > 0, got {t_final}"
        )));
    }
    if !(sample_dt > 0.0 && sample_dt < t_final) {
        return Err(ConfigError::Schema(format!(
            "\"sample_dt\" must be in (0, t_final), got {sample_dt}"
        )));
    }
    Ok(())
}

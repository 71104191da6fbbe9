use jmatrix_core::{BasisKind, BasisSpec, PotentialModel, DEFAULT_LIGHT_SPEED};
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasisCfg {
    pub kind: String,
    pub lambda: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelCfg {
    pub kappa: Option<i32>,
    pub l: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleCfg {
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "default_c")]
    pub c: f64,
}

impl Default for ParticleCfg {
    fn default() -> Self {
        ParticleCfg { mass: 1.0, c: DEFAULT_LIGHT_SPEED }
    }
}

fn one() -> f64 {
    1.0
}
fn default_c() -> f64 {
    DEFAULT_LIGHT_SPEED
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialCfg {
    pub kind: String,
    pub depth: Option<f64>,
    pub radius: Option<f64>,
    pub range: Option<f64>,
    pub width: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnergiesCfg {
    pub min: f64,
    #[serde(default)]
    pub max: Option<f64>,
    #[serde(default = "one_usize")]
    pub count: usize,
    #[serde(default = "linear")]
    pub spacing: String,
}

fn one_usize() -> usize {
    1
}
fn linear() -> String {
    "linear".into()
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub basis: BasisCfg,
    #[serde(default)]
    pub channel: ChannelCfg,
    #[serde(default)]
    pub particle: ParticleCfg,
    pub potential: PotentialCfg,
    pub energies: EnergiesCfg,
    #[serde(default)]
    pub relativistic: bool,
    #[serde(default = "default_pole_guard")]
    pub pole_guard: f64,
    #[serde(default)]
    pub n_list: Option<Vec<usize>>,
    #[serde(default)]
    pub lambda_list: Option<Vec<f64>>,
    #[serde(default)]
    pub c_list: Option<Vec<f64>>,
}

fn default_pole_guard() -> f64 {
    jmatrix_core::nonrel::DEFAULT_POLE_GUARD
}

#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl RunConfig {
    pub fn basis_kind(&self) -> Result<BasisKind, ConfigError> {
        match self.basis.kind.as_str() {
            "laguerre" => Ok(BasisKind::Laguerre),
            "gaussian" => Ok(BasisKind::Gaussian),
            other => Err(ConfigError(format!(
                "basis.kind: unknown kind {other:?} (expected \"laguerre\" or \"gaussian\")"
            ))),
        }
    }

    /// The Dirac channel index; non-relativistic configs with only `l` use
    /// the spinless convention kappa = -(l+1).
    pub fn kappa(&self) -> Result<i32, ConfigError> {
        match (self.channel.kappa, self.channel.l) {
            (Some(0), _) => Err(ConfigError("channel.kappa: 0 is not admissible".into())),
            (Some(k), None) => Ok(k),
            (None, Some(l)) => Ok(-(l as i32) - 1),
            (None, None) => Err(ConfigError(
                "channel: either kappa or l must be given".into(),
            )),
            (Some(_), Some(_)) => Err(ConfigError(
                "channel: kappa and l are mutually exclusive".into(),
            )),
        }
    }

    pub fn basis_spec(&self) -> Result<BasisSpec, ConfigError> {
        if self.basis.n < 2 {
            return Err(ConfigError(format!("basis.n: must be at least 2, got {}", self.basis.n)));
        }
        if !(self.basis.lambda > 0.0) {
            return Err(ConfigError(format!(
                "basis.lambda: must be positive, got {}",
                self.basis.lambda
            )));
        }
        BasisSpec::new(self.basis_kind()?, self.kappa()?, self.basis.lambda, self.basis.n)
            .map_err(|e| ConfigError(format!("basis: {e}")))
    }

    pub fn potential_model(&self) -> Result<PotentialModel, ConfigError> {
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| ConfigError(format!("potential.{name}: required for this kind")))
        };
        match self.potential.kind.as_str() {
            "square_well" => Ok(PotentialModel::SquareWell {
                depth: need(self.potential.depth, "depth")?,
                radius: need(self.potential.radius, "radius")?,
            }),
            "exponential" => Ok(PotentialModel::Exponential {
                depth: need(self.potential.depth, "depth")?,
                range: need(self.potential.range, "range")?,
            }),
            "gaussian" => Ok(PotentialModel::Gaussian {
                depth: need(self.potential.depth, "depth")?,
                width: need(self.potential.width, "width")?,
            }),
            "free" => Ok(PotentialModel::Free),
            other => Err(ConfigError(format!(
                "potential.kind: unknown kind {other:?}"
            ))),
        }
    }

    pub fn energy_grid(&self) -> Result<Vec<f64>, ConfigError> {
        let e = &self.energies;
        if !(e.min > 0.0) {
            return Err(ConfigError(format!("energies.min: must be positive, got {}", e.min)));
        }
        if e.count == 0 {
            return Err(ConfigError("energies.count: must be at least 1".into()));
        }
        if e.count == 1 {
            return Ok(vec![e.min]);
        }
        let max = e
            .max
            .ok_or_else(|| ConfigError("energies.max: required when count > 1".into()))?;
        if max <= e.min {
            return Err(ConfigError(format!(
                "energies.max: must exceed min, got {max} <= {}",
                e.min
            )));
        }
        let n = e.count;
        let grid = match e.spacing.as_str() {
            "linear" => (0..n)
                .map(|i| e.min + (max - e.min) * i as f64 / (n - 1) as f64)
                .collect(),
            "log" => {
                let (a, b) = (e.min.ln(), max.ln());
                (0..n)
                    .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
                    .collect()
            }
            other => {
                return Err(ConfigError(format!(
                    "energies.spacing: unknown spacing {other:?} (expected \"linear\" or \"log\")"
                )))
            }
        };
        Ok(grid)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.basis_spec()?;
        self.potential_model()?;
        self.energy_grid()?;
        if !(self.particle.mass > 0.0) {
            return Err(ConfigError(format!(
                "particle.mass: must be positive, got {}",
                self.particle.mass
            )));
        }
        if !(self.particle.c > 0.0) {
            return Err(ConfigError(format!(
                "particle.c: must be positive, got {}",
                self.particle.c
            )));
        }
        if !(self.pole_guard >= 0.0) {
            return Err(ConfigError(format!(
                "pole_guard: must be non-negative, got {}",
                self.pole_guard
            )));
        }
        Ok(())
    }
}

/// Parse the JSON document at `path`, apply `--set key=value` overrides on
/// the raw tree, then deserialize.
pub fn load(path: &str, overrides: &[String]) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read {path}: {e}")))?;
    let mut tree: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| ConfigError(format!("{path}: invalid JSON: {e}")))?;
    for ov in overrides {
        let (key, raw) = ov
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("--set {ov:?}: expected key=value")))?;
        let val: serde_json::Value = serde_json::from_str(raw)
            .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
        let mut node = &mut tree;
        let parts: Vec<&str> = key.split('.').collect();
        for (i, part) in parts.iter().enumerate() {
            let obj = node.as_object_mut().ok_or_else(|| {
                ConfigError(format!("--set {key}: {} is not an object", parts[..i].join(".")))
            })?;
            if i + 1 == parts.len() {
                obj.insert(part.to_string(), val.clone());
                break;
            }
            node = obj
                .entry(part.to_string())
                .or_insert_with(|| serde_json::Value::Object(Default::default()));
        }
    }
    let cfg: RunConfig =
        serde_json::from_value(tree).map_err(|e| ConfigError(format!("{e}")))?;
    cfg.validate()?;
    Ok(cfg)
}

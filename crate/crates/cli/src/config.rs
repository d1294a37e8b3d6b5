//! Run configuration: a JSON document merged with command-line flags.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hardy_core::bounds::{BoundConstants, OperatorSpec, Theorem};
use hardy_core::harness::SweepSpec;
use hardy_core::spectra::{Numerics, DEFAULT_POINTS, DEFAULT_WINDOW};
use hardy_core::{LogDepth, PotentialSpec, Variant};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Environment variable naming the config file used when `--config` is absent.
pub const CONFIG_ENV: &str = "HARDY_CONFIG";
/// Config file picked up from the working directory when neither
/// `--config` nor the environment variable is set.
pub const DEFAULT_CONFIG_FILE: &str = "hardy.json";
pub const DEFAULT_TOL: f64 = 1e-8;

/// A potential given either as a literal (`square_well:c=1,a=1,b=2`) or as
/// its full JSON form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PotentialInput {
    Literal(String),
    Spec(PotentialSpec),
}

impl PotentialInput {
    pub fn resolve(&self) -> Result<PotentialSpec, CliError> {
        let spec = match self {
            PotentialInput::Literal(s) => s
                .parse::<PotentialSpec>()
                .map_err(|e| CliError::config(format!("potential `{s}`: {e}")))?,
            PotentialInput::Spec(p) => p.clone(),
        };
        spec.validate()
            .map_err(|e| CliError::config(format!("potential: {e}")))?;
        Ok(spec)
    }
}

impl Default for PotentialInput {
    fn default() -> Self {
        PotentialInput::Literal("zero".into())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Inferred from `d` when absent: `t41` for `d = 1`, `t43` otherwise.
    pub theorem: Option<Theorem>,
    pub d: u32,
    pub n: u32,
    pub variant: Variant,
    pub potential: PotentialInput,
    pub tol: f64,
    pub numerics: Numerics,
    pub constants: BoundConstants,
    pub sweep: Option<SweepSpec>,
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            theorem: None,
            d: 1,
            n: 0,
            variant: Variant::Zero,
            potential: PotentialInput::default(),
            tol: DEFAULT_TOL,
            numerics: Numerics::default(),
            constants: BoundConstants::default(),
            sweep: None,
            json: None,
            csv: None,
        }
    }
}

/// Flag values; `None` leaves the config value in place.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub theorem: Option<Theorem>,
    pub d: Option<u32>,
    pub n: Option<u32>,
    pub variant: Option<Variant>,
    pub potential: Option<String>,
    pub tol: Option<f64>,
    pub window: Option<f64>,
    pub points: Option<usize>,
    pub refinements: Option<u32>,
    pub scales: Option<Vec<f64>>,
    pub json: Option<PathBuf>,
    pub csv: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::config(format!("config: {e}")))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| CliError::config(format!("{}: {}", path.display(), e.message)))
    }

    /// `--config`, else the environment variable, else `hardy.json` if present.
    pub fn locate(explicit: Option<&Path>) -> Option<PathBuf> {
        if let Some(p) = explicit {
            return Some(p.to_path_buf());
        }
        if let Some(p) = std::env::var_os(CONFIG_ENV).filter(|p| !p.is_empty()) {
            return Some(PathBuf::from(p));
        }
        let local = PathBuf::from(DEFAULT_CONFIG_FILE);
        local.is_file().then_some(local)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Flags win over file values. Operator flags also apply to the sweep.
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(t) = o.theorem {
            self.theorem = Some(t);
        }
        if let Some(d) = o.d {
            self.d = d;
        }
        if let Some(n) = o.n {
            self.n = n;
        }
        if let Some(v) = o.variant {
            self.variant = v;
        }
        if let Some(p) = &o.potential {
            self.potential = PotentialInput::Literal(p.clone());
        }
        if let Some(t) = o.tol {
            self.tol = t;
        }
        if let Some(w) = o.window {
            self.numerics.window = w;
        }
        if let Some(m) = o.points {
            self.numerics.points = m;
        }
        if let Some(r) = o.refinements {
            self.numerics.refinements = r;
        }
        if o.json.is_some() {
            self.json = o.json.clone();
        }
        if o.csv.is_some() {
            self.csv = o.csv.clone();
        }
        if let Some(sweep) = &mut self.sweep {
            if let Some(t) = o.theorem {
                sweep.theorem = t;
            }
            if let Some(d) = o.d {
                sweep.dimensions = vec![d];
            }
            if let Some(n) = o.n {
                sweep.n = LogDepth(n);
            }
            if let Some(v) = o.variant {
                sweep.variant = v;
            }
            if let Some(t) = o.tol {
                sweep.tol = t;
            }
            if let Some(w) = o.window {
                sweep.numerics.window = w;
            }
            if let Some(m) = o.points {
                sweep.numerics.points = m;
            }
            if let Some(r) = o.refinements {
                sweep.numerics.refinements = r;
            }
            if let Some(s) = &o.scales {
                sweep.scales = s.clone();
            }
        }
    }

    pub fn theorem(&self) -> Theorem {
        self.theorem
            .unwrap_or(if self.d == 1 { Theorem::T41 } else { Theorem::T43 })
    }

    pub fn operator(&self) -> Result<OperatorSpec, CliError> {
        OperatorSpec::for_theorem(self.theorem(), self.d, LogDepth(self.n), self.variant)
            .map_err(|e| CliError::config(format!("operator: {e}")))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::config("tol must be positive and finite"));
        }
        validate_numerics(&self.numerics)?;
        for c in &self.constants.entries {
            if !(c.value > 0.0 && c.value.is_finite()) {
                return Err(CliError::config(format!("constant for d = {} must be positive", c.d)));
            }
        }
        self.potential.resolve()?;
        if let Some(s) = &self.sweep {
            s.validate().map_err(|e| CliError::config(format!("sweep: {e}")))?;
            validate_numerics(&s.numerics)?;
        }
        Ok(())
    }
}

/// Doublings beyond this make the finest grid impractically large.
pub const MAX_REFINEMENTS: u32 = 6;

fn validate_numerics(n: &Numerics) -> Result<(), CliError> {
    if !(n.window > 0.0 && n.window.is_finite()) {
        return Err(CliError::config("window L must be positive and finite"));
    }
    if n.points < 2 {
        return Err(CliError::config("grid size m must be at least 2"));
    }
    if n.refinements > MAX_REFINEMENTS {
        return Err(CliError::config(format!("at most {MAX_REFINEMENTS} refinements")));
    }
    Ok(())
}

/// The table printed by `--show-defaults`.
pub fn defaults_table() -> String {
    let c = BoundConstants::default();
    let mut out = String::new();
    let _ = writeln!(out, "{:<22} {:<14} meaning", "setting", "default");
    let rows: [(&str, String, &str); 9] = [
        ("L (window)", format!("{DEFAULT_WINDOW}"), "truncation window in the substituted variable"),
        ("m (grid points)", format!("{DEFAULT_POINTS}"), "interior finite-difference points"),
        ("refinements", "0".into(), "simultaneous doublings of L and m"),
        ("tol", format!("{DEFAULT_TOL:e}"), "relative quadrature tolerance"),
        ("d", "1".into(), "dimension"),
        ("n", "0".into(), "number of iterated-log terms"),
        ("variant", "zero".into(), "domain threshold exp^(n)(0) or exp^(n)(1)"),
        ("theorem", "t41 / t43".into(), "t41 for d = 1, t43 otherwise"),
        ("config file", format!("${CONFIG_ENV} or ./{DEFAULT_CONFIG_FILE}"), "used when --config is absent"),
    ];
    for (k, v, m) in rows {
        let _ = writeln!(out, "{k:<22} {v:<14} {m}");
    }
    for e in &c.entries {
        let _ = writeln!(out, "{:<22} {:<14} {}", format!("C_{}", e.d), format!("{:.6}", e.value), e.source);
    }
    out
}

//! JSON scan configuration.
//!
//! One JSON document per scan; keys are snake_case and unknown keys are
//! rejected, so a misspelled dimensionless group fails loudly instead of
//! silently taking its default.

use serde::Deserialize;
use sqed_interaction::{GaussianAtom, Resonance, SwitchingKind, TransitionKind, PROTON_MASS};
use std::path::Path;

use crate::CliError;

/// Gap used to fix the default oscillator length, `Ω_A = 6·10¹² s⁻¹`.
const DEFAULT_GAP: f64 = 6e12;

/// Default oscillator length `√(ħ/(M_p · 6·10¹² s⁻¹)) ≈ 1.0·10⁻¹⁰ m`.
pub fn default_sigma() -> f64 {
    GaussianAtom::oscillator_length(sqed_cavity::SI.hbar, PROTON_MASS, DEFAULT_GAP)
}

/// Which figure-like scan to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum ScanKind {
    /// Subfield probabilities versus `m1` and one geometry ratio.
    #[serde(alias = "subfield_ratios")]
    SubfieldRatios,
    /// Truncation error `δ_N` versus `Ω_A T`.
    #[serde(alias = "truncation_error")]
    TruncationError,
    /// `γ_N` over a grid of cutoffs.
    #[serde(alias = "gamma_contour")]
    GammaContour,
    /// `ζ_N` over a grid of `(Ω_A T, ω/Ω_A)`.
    #[serde(alias = "laser_zeta")]
    LaserZeta,
}

impl ScanKind {
    /// Name used for default output files.
    pub fn file_stem(&self) -> &'static str {
        match self {
            ScanKind::SubfieldRatios => "subfield_ratios",
            ScanKind::TruncationError => "truncation_error",
            ScanKind::GammaContour => "gamma_contour",
            ScanKind::LaserZeta => "laser_zeta",
        }
    }
}

/// Spacing of grid points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    /// Equidistant.
    #[default]
    Linear,
    /// Equidistant in the logarithm.
    Log,
}

/// A closed range sampled at `points ≥ 2` points.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// First value.
    pub min: f64,
    /// Last value.
    pub max: f64,
    /// Number of points, at least 2.
    pub points: usize,
    /// Spacing.
    #[serde(default)]
    pub spacing: Spacing,
}

impl GridSpec {
    /// Checks `min < max`, finiteness, `points ≥ 2` and positivity for
    /// logarithmic spacing.
    ///
    /// # Errors
    /// [`CliError::Config`] naming `key`.
    pub fn validate(&self, key: &str) -> Result<(), CliError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(CliError::Config(format!(
                "`{key}`: range must satisfy min < max"
            )));
        }
        if self.points < 2 {
            return Err(CliError::Config(format!(
                "`{key}`: at least 2 points are needed"
            )));
        }
        if self.spacing == Spacing::Log && self.min <= 0.0 {
            return Err(CliError::Config(format!(
                "`{key}`: logarithmic spacing needs min > 0"
            )));
        }
        Ok(())
    }

    /// The grid values, in increasing order.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points - 1;
        (0..=n)
            .map(|i| {
                let f = i as f64 / n as f64;
                if i == n {
                    return self.max;
                }
                match self.spacing {
                    Spacing::Linear => self.min + f * (self.max - self.min),
                    Spacing::Log => self.min * (self.max / self.min).powf(f),
                }
            })
            .collect()
    }
}

/// Geometry in dimensionless ratios; lengths follow from `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    /// `L/R`.
    #[serde(alias = "L_over_R")]
    pub l_over_r: f64,
    /// `R/σ`.
    #[serde(alias = "R_over_sigma")]
    pub r_over_sigma: f64,
}

/// The geometry ratio swept by a `SubfieldRatios` scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum SweepParameter {
    /// Sweep `L/R` at fixed `R/σ`.
    #[serde(rename = "l_over_r", alias = "L_over_R")]
    LOverR,
    /// Sweep `R/σ` at fixed `L/R`.
    #[serde(rename = "r_over_sigma", alias = "R_over_sigma")]
    ROverSigma,
}

impl SweepParameter {
    /// CSV column name.
    pub fn column(&self) -> &'static str {
        match self {
            SweepParameter::LOverR => "L_over_R",
            SweepParameter::ROverSigma => "R_over_sigma",
        }
    }
}

/// A geometry sweep.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    /// Which ratio is swept.
    pub parameter: SweepParameter,
    /// Its values.
    pub grid: GridSpec,
}

/// Atomic gap: a fixed frequency or resonance with a cavity mode.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ResonanceSpec {
    /// `Ω_A` in rad/s.
    Frequency(f64),
    /// `Ω_A = ω_{(m1,0),l}` of the current geometry.
    Mode {
        /// Radial number.
        m1: u32,
        /// Longitudinal number.
        l: u32,
    },
}

impl ResonanceSpec {
    /// Library form.
    pub fn resonance(&self) -> Resonance {
        match *self {
            ResonanceSpec::Frequency(w) => Resonance::Frequency(w),
            ResonanceSpec::Mode { m1, l } => Resonance::Mode { m1, l },
        }
    }
    /// Resonant radial number, if any.
    pub fn resonant_m1(&self) -> Option<u32> {
        match *self {
            ResonanceSpec::Mode { m1, .. } => Some(m1),
            ResonanceSpec::Frequency(_) => None,
        }
    }
}

/// Switching shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SwitchingSpec {
    /// `exp(−t²/2T²)`.
    Gaussian,
    /// `1` on `[0, T]`.
    TopHat,
}

impl SwitchingSpec {
    /// Library form.
    pub fn kind(&self) -> SwitchingKind {
        match self {
            SwitchingSpec::Gaussian => SwitchingKind::Gaussian,
            SwitchingSpec::TopHat => SwitchingKind::TopHat,
        }
    }
    /// CSV label.
    pub fn label(&self) -> &'static str {
        match self {
            SwitchingSpec::Gaussian => "gaussian",
            SwitchingSpec::TopHat => "top_hat",
        }
    }
}

/// Transition process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KindSpec {
    /// `e → g`.
    Emission,
    /// `g → e`.
    Excitation,
}

impl KindSpec {
    /// Library form.
    pub fn kind(&self) -> TransitionKind {
        match self {
            KindSpec::Emission => TransitionKind::Emission,
            KindSpec::Excitation => TransitionKind::Excitation,
        }
    }
    /// CSV label.
    pub fn label(&self) -> &'static str {
        match self {
            KindSpec::Emission => "emission",
            KindSpec::Excitation => "excitation",
        }
    }
}

/// A single value or a list.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    /// One value.
    One(T),
    /// Several values.
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    /// As a list.
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v.clone()],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

/// `Ω_A T`: one value or a grid.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum TimeSpec {
    /// Fixed `Ω_A T`.
    Fixed(f64),
    /// Grid of `Ω_A T`.
    Grid(GridSpec),
}

/// Laser beam in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamSpec {
    /// Waist `w₀` (m).
    pub w0: f64,
    /// Central wavenumber `k` (1/m).
    pub k: f64,
    /// Mean photon number `|α|²`.
    pub alpha_sq: f64,
}

/// A scan configuration; which fields are required depends on `scan_kind`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanConfig {
    /// Scan kind.
    pub scan_kind: ScanKind,
    /// Oscillator length `σ` (m); defaults to [`default_sigma`].
    pub sigma: Option<f64>,
    /// Geometry ratios (SubfieldRatios, TruncationError).
    pub geometry: Option<GeometrySpec>,
    /// Geometry sweep (SubfieldRatios).
    pub sweep: Option<SweepSpec>,
    /// Atomic gap (SubfieldRatios, TruncationError).
    pub resonance: Option<ResonanceSpec>,
    /// Switching shape(s); defaults to Gaussian.
    pub switching: Option<OneOrMany<SwitchingSpec>>,
    /// Transition kind(s); defaults to emission.
    pub kind: Option<OneOrMany<KindSpec>>,
    /// `Ω_A T`: fixed for SubfieldRatios, a grid otherwise.
    pub omega_a_t: Option<TimeSpec>,
    /// Largest `m1` written by SubfieldRatios (default: twice the argmax,
    /// at least 10).
    pub m1_max: Option<u32>,
    /// Subfield sets for TruncationError, each a strictly increasing list.
    pub sets: Option<Vec<Vec<u32>>>,
    /// Largest `N1` (GammaContour).
    pub n1_max: Option<u32>,
    /// Largest `N2` (GammaContour).
    pub n2_max: Option<u32>,
    /// Beam (LaserZeta).
    pub beam: Option<BeamSpec>,
    /// Grid of `ω/Ω_A` (LaserZeta).
    pub omega_over_omega_a: Option<GridSpec>,
    /// Vacuum cutoff `[N1, N2]` (LaserZeta).
    pub cutoff: Option<[u32; 2]>,
    /// Output CSV file; defaults to `<scan kind>.csv`.
    pub output: Option<String>,
}

fn require<T: Copy>(v: Option<T>, key: &str, kind: ScanKind) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Config(format!("`{key}` is required for {kind:?}")))
}

fn forbid<T>(v: &Option<T>, key: &str, kind: ScanKind) -> Result<(), CliError> {
    if v.is_some() {
        Err(CliError::Config(format!("`{key}` is not used by {kind:?}")))
    } else {
        Ok(())
    }
}

fn positive(v: f64, key: &str) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!(
            "`{key}` must be positive and finite, got {v}"
        )))
    }
}

impl ScanConfig {
    /// Parses and validates a JSON document.
    ///
    /// # Errors
    /// [`CliError::Config`] with the offending key.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: ScanConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads, parses and validates a JSON file.
    ///
    /// # Errors
    /// [`CliError::Config`] for unreadable or invalid files.
    pub fn from_path(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Oscillator length in use.
    pub fn sigma(&self) -> f64 {
        self.sigma.unwrap_or_else(default_sigma)
    }

    /// Switching shapes in use.
    pub fn switchings(&self) -> Vec<SwitchingSpec> {
        self.switching
            .as_ref()
            .map_or(vec![SwitchingSpec::Gaussian], OneOrMany::to_vec)
    }

    /// Transition kinds in use.
    pub fn kinds(&self) -> Vec<KindSpec> {
        self.kind
            .as_ref()
            .map_or(vec![KindSpec::Emission], OneOrMany::to_vec)
    }

    /// Checks that the fields required by the scan kind are present and
    /// sensible, and that no foreign field is set.
    ///
    /// # Errors
    /// [`CliError::Config`] naming the offending key.
    pub fn validate(&self) -> Result<(), CliError> {
        let kind = self.scan_kind;
        if let Some(s) = self.sigma {
            positive(s, "sigma")?;
        }
        if self
            .switching
            .as_ref()
            .is_some_and(|s| s.to_vec().is_empty())
        {
            return Err(CliError::Config("`switching` must not be empty".into()));
        }
        if self.kind.as_ref().is_some_and(|s| s.to_vec().is_empty()) {
            return Err(CliError::Config("`kind` must not be empty".into()));
        }
        let cavity_scan = matches!(kind, ScanKind::SubfieldRatios | ScanKind::TruncationError);
        if cavity_scan {
            let g = require(self.geometry, "geometry", kind)?;
            positive(g.l_over_r, "geometry.l_over_r")?;
            positive(g.r_over_sigma, "geometry.r_over_sigma")?;
            match require(self.resonance, "resonance", kind)? {
                ResonanceSpec::Frequency(w) => positive(w, "resonance.frequency")?,
                ResonanceSpec::Mode { m1, .. } => {
                    if m1 == 0 {
                        return Err(CliError::Config(
                            "`resonance.mode.m1` must be at least 1".into(),
                        ));
                    }
                }
            }
        } else {
            forbid(&self.geometry, "geometry", kind)?;
            forbid(&self.resonance, "resonance", kind)?;
        }
        match kind {
            ScanKind::SubfieldRatios => {
                let sweep = require(self.sweep, "sweep", kind)?;
                sweep.grid.validate("sweep.grid")?;
                if sweep.grid.min <= 0.0 {
                    return Err(CliError::Config(
                        "`sweep.grid`: geometry ratios must be positive".into(),
                    ));
                }
                match require(self.omega_a_t, "omega_a_t", kind)? {
                    TimeSpec::Fixed(t) => positive(t, "omega_a_t")?,
                    TimeSpec::Grid(_) => {
                        return Err(CliError::Config(
                            "`omega_a_t` must be a single value for SubfieldRatios".into(),
                        ))
                    }
                }
                if self.m1_max == Some(0) {
                    return Err(CliError::Config("`m1_max` must be at least 1".into()));
                }
                if self.kinds().len() != 1 {
                    return Err(CliError::Config(
                        "`kind` must be a single value for SubfieldRatios".into(),
                    ));
                }
                if self
                    .switching
                    .as_ref()
                    .is_some_and(|s| s.to_vec() != [SwitchingSpec::Gaussian])
                {
                    return Err(CliError::Config(
                        "`switching`: SubfieldRatios uses Gaussian switching".into(),
                    ));
                }
                self.forbid_foreign(&[
                    "sets",
                    "n1_max",
                    "n2_max",
                    "beam",
                    "omega_over_omega_a",
                    "cutoff",
                ])?;
            }
            ScanKind::TruncationError => {
                match require(self.omega_a_t, "omega_a_t", kind)? {
                    TimeSpec::Grid(g) => {
                        g.validate("omega_a_t")?;
                        if g.min <= 0.0 {
                            return Err(CliError::Config("`omega_a_t` must be positive".into()));
                        }
                    }
                    TimeSpec::Fixed(_) => {
                        return Err(CliError::Config(
                            "`omega_a_t` must be a grid for TruncationError".into(),
                        ))
                    }
                }
                let sets = self
                    .sets
                    .as_ref()
                    .ok_or_else(|| CliError::Config(format!("`sets` is required for {kind:?}")))?;
                if sets.is_empty() {
                    return Err(CliError::Config("`sets` must not be empty".into()));
                }
                for (i, s) in sets.iter().enumerate() {
                    sqed_interaction::SubfieldSet::new(s.clone())
                        .map_err(|e| CliError::Config(format!("`sets[{i}]`: {e}")))?;
                }
                self.forbid_foreign(&[
                    "sweep",
                    "m1_max",
                    "n1_max",
                    "n2_max",
                    "beam",
                    "omega_over_omega_a",
                    "cutoff",
                ])?;
            }
            ScanKind::GammaContour => {
                let n1 = require(self.n1_max, "n1_max", kind)?;
                let n2 = require(self.n2_max, "n2_max", kind)?;
                sqed_laser::VacuumCutoff::new(n1, n2)
                    .map_err(|e| CliError::Config(format!("`n1_max`/`n2_max`: {e}")))?;
                self.forbid_foreign(&[
                    "sweep",
                    "m1_max",
                    "sets",
                    "beam",
                    "omega_over_omega_a",
                    "cutoff",
                    "omega_a_t",
                    "switching",
                    "kind",
                    "sigma",
                ])?;
            }
            ScanKind::LaserZeta => {
                let b = require(self.beam, "beam", kind)?;
                positive(b.w0, "beam.w0")?;
                positive(b.k, "beam.k")?;
                positive(b.alpha_sq, "beam.alpha_sq")?;
                match require(self.omega_a_t, "omega_a_t", kind)? {
                    TimeSpec::Grid(g) => {
                        g.validate("omega_a_t")?;
                        if g.min <= 0.0 {
                            return Err(CliError::Config("`omega_a_t` must be positive".into()));
                        }
                    }
                    TimeSpec::Fixed(_) => {
                        return Err(CliError::Config(
                            "`omega_a_t` must be a grid for LaserZeta".into(),
                        ))
                    }
                }
                let r = require(self.omega_over_omega_a, "omega_over_omega_a", kind)?;
                r.validate("omega_over_omega_a")?;
                if r.min <= 0.0 {
                    return Err(CliError::Config(
                        "`omega_over_omega_a` must be positive".into(),
                    ));
                }
                let [n1, n2] = require(self.cutoff, "cutoff", kind)?;
                sqed_laser::VacuumCutoff::new(n1, n2)
                    .map_err(|e| CliError::Config(format!("`cutoff`: {e}")))?;
                if n1 == 0 && n2 == 0 {
                    return Err(CliError::Config(
                        "`cutoff` must include at least one vacuum mode".into(),
                    ));
                }
                self.forbid_foreign(&["sweep", "m1_max", "sets", "n1_max", "n2_max"])?;
            }
        }
        Ok(())
    }

    fn forbid_foreign(&self, keys: &[&str]) -> Result<(), CliError> {
        let kind = self.scan_kind;
        for key in keys {
            match *key {
                "sweep" => forbid(&self.sweep, key, kind)?,
                "m1_max" => forbid(&self.m1_max, key, kind)?,
                "sets" => forbid(&self.sets, key, kind)?,
                "n1_max" => forbid(&self.n1_max, key, kind)?,
                "n2_max" => forbid(&self.n2_max, key, kind)?,
                "beam" => forbid(&self.beam, key, kind)?,
                "omega_over_omega_a" => forbid(&self.omega_over_omega_a, key, kind)?,
                "cutoff" => forbid(&self.cutoff, key, kind)?,
                "omega_a_t" => forbid(&self.omega_a_t, key, kind)?,
                "switching" => forbid(&self.switching, key, kind)?,
                "kind" => forbid(&self.kind, key, kind)?,
                "sigma" => forbid(&self.sigma, key, kind)?,
                _ => unreachable!("unknown key {key}"),
            }
        }
        Ok(())
    }
}

//! Scenario files: TOML, unknown keys rejected.

use casimir_phase::kinematics::{PacketKind, PathPair, WavepacketModel};
use casimir_phase::{AtomSpecies, PhaseModel, QuadratureSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub id: String,
    #[serde(default)]
    pub description: String,
    pub species: SpeciesSpec,
    pub geometry: Geometry,
    pub wavepacket: Wavepacket,
    #[serde(rename = "temperature_K", default)]
    pub temperature_k: f64,
    pub compute: Vec<Compute>,
    pub sweep: Option<Sweep>,
    pub potential: Option<PotentialGrid>,
    #[serde(default)]
    pub tolerances: Tolerances,
}

/// A bundled species name or an inline definition.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum SpeciesSpec {
    Preset(String),
    Inline(InlineSpecies),
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct InlineSpecies {
    pub label: String,
    pub alpha0_over_4pi_eps0_m3: f64,
    pub lambda0_m: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Geometry {
    /// Initial height of both arms. Must be absent when `fill_gap` is set.
    pub z0_m: Option<f64>,
    /// z0 = w/2: the packet touches the mirror.
    #[serde(default)]
    pub fill_gap: bool,
    #[serde(default)]
    pub v_perp_mps: f64,
    #[serde(rename = "T_s")]
    pub t_s: f64,
    /// Which arm flies away from the mirror (1 or 2).
    #[serde(default = "default_moving_arm")]
    pub moving_arm: u8,
}

fn default_moving_arm() -> u8 {
    2
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Wavepacket {
    pub kind: PacketKind,
    #[serde(default)]
    pub width_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Compute {
    LocalNarrow,
    LocalQuasistatic,
    DpPointlike,
    DpWide,
    DpClosedForms,
    DpAveraged,
    PotentialCurve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParameter {
    Z0M,
    VPerpMps,
    TS,
    WidthM,
    #[serde(rename = "temperature_K")]
    TemperatureK,
    MovingArm,
}

impl SweepParameter {
    pub fn name(self) -> &'static str {
        match self {
            Self::Z0M => "z0_m",
            Self::VPerpMps => "v_perp_mps",
            Self::TS => "T_s",
            Self::WidthM => "width_m",
            Self::TemperatureK => "temperature_K",
            Self::MovingArm => "moving_arm",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub parameter: SweepParameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialGrid {
    pub z_from_m: f64,
    pub z_to_m: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_subdivisions: Option<usize>,
}

/// One fully resolved evaluation point.
#[derive(Debug, Clone)]
pub struct Point {
    pub model: PhaseModel,
    pub z0: f64,
    pub v_perp: f64,
    pub duration: f64,
    pub moving_arm: u8,
    pub packet: WavepacketModel,
    pub sweep_value: Option<f64>,
}

impl Point {
    pub fn paths(&self) -> Result<PathPair, CliError> {
        let p = PathPair::fig1(self.z0, self.v_perp, self.duration)?;
        Ok(if self.moving_arm == 1 { p.swapped() } else { p })
    }
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Validation(format!("schema: {}", e.message().trim())))
    }

    pub fn species(&self) -> Result<AtomSpecies, CliError> {
        match &self.species {
            SpeciesSpec::Preset(name) => AtomSpecies::preset(name).ok_or_else(|| {
                CliError::Validation(format!(
                    "unknown species preset '{name}' (known: {})",
                    AtomSpecies::preset_names().join(", ")
                ))
            }),
            SpeciesSpec::Inline(s) => Ok(AtomSpecies::new(s.label.clone(), s.alpha0_over_4pi_eps0_m3, s.lambda0_m)?),
        }
    }

    fn base_model(&self, rel_tol_override: Option<f64>) -> Result<PhaseModel, CliError> {
        let mut q = PhaseModel::rb87().quadrature;
        let t = &self.tolerances;
        let rel = rel_tol_override.or(t.rel_tol).unwrap_or(q.rel_tol);
        q = QuadratureSpec {
            oscillation_period_hint: q.oscillation_period_hint,
            ..QuadratureSpec::new(rel, t.abs_tol.unwrap_or(q.abs_tol), t.max_subdivisions.unwrap_or(q.max_subdivisions))?
        };
        Ok(PhaseModel::new(self.species()?)
            .with_temperature(self.temperature_k)
            .with_quadrature(q))
    }

    /// Expands the sweep (or the single base point) and checks every point.
    pub fn points(&self, rel_tol_override: Option<f64>) -> Result<Vec<Point>, CliError> {
        if self.id.is_empty() || !self.id.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
            return Err(CliError::Validation(format!(
                "id must be non-empty and use only [A-Za-z0-9_-], got '{}'",
                self.id
            )));
        }
        if self.compute.is_empty() {
            return Err(CliError::Validation("compute list is empty".into()));
        }
        match (self.geometry.fill_gap, self.geometry.z0_m) {
            (true, Some(_)) => {
                return Err(CliError::Validation("geometry: give either z0_m or fill_gap = true, not both".into()))
            }
            (false, None) => return Err(CliError::Validation("geometry: missing z0_m".into())),
            _ => {}
        }
        let base = self.base_model(rel_tol_override)?;
        base.validate()?;
        let values: Vec<Option<f64>> = match &self.sweep {
            None => vec![None],
            Some(s) if s.values.is_empty() => {
                return Err(CliError::Validation("sweep: values must not be empty".into()))
            }
            Some(s) => s.values.iter().map(|&v| Some(v)).collect(),
        };
        values
            .into_iter()
            .map(|v| {
                let mut g = self.geometry.clone();
                let mut wp = self.wavepacket;
                let mut model = base.clone();
                if let (Some(s), Some(v)) = (&self.sweep, v) {
                    match s.parameter {
                        SweepParameter::Z0M if g.fill_gap => {
                            return Err(CliError::Validation(
                                "sweep: z0_m cannot be swept with fill_gap; sweep width_m instead".into(),
                            ))
                        }
                        SweepParameter::Z0M => g.z0_m = Some(v),
                        SweepParameter::VPerpMps => g.v_perp_mps = v,
                        SweepParameter::TS => g.t_s = v,
                        SweepParameter::WidthM => wp.width_m = v,
                        SweepParameter::TemperatureK => model = model.with_temperature(v),
                        SweepParameter::MovingArm if v == 1.0 || v == 2.0 => g.moving_arm = v as u8,
                        SweepParameter::MovingArm => {
                            return Err(CliError::Validation(format!("sweep: moving_arm must be 1 or 2, got {v}")))
                        }
                    }
                }
                let packet = match wp.kind {
                    PacketKind::Point => WavepacketModel::point(),
                    kind => WavepacketModel::new(kind, wp.width_m)?,
                };
                let z0 = if g.fill_gap {
                    if wp.kind == PacketKind::Point {
                        return Err(CliError::Validation("geometry: fill_gap needs a packet with a width".into()));
                    }
                    wp.width_m / 2.0
                } else {
                    g.z0_m.unwrap_or_default()
                };
                let point = Point {
                    model,
                    z0,
                    v_perp: g.v_perp_mps,
                    duration: g.t_s,
                    moving_arm: g.moving_arm,
                    packet,
                    sweep_value: v,
                };
                self.check_point(&point)?;
                Ok(point)
            })
            .collect()
    }

    /// Physics constraints that can be checked without integrating.
    fn check_point(&self, p: &Point) -> Result<(), CliError> {
        p.model.validate()?;
        if !(p.moving_arm == 1 || p.moving_arm == 2) {
            return Err(CliError::Validation(format!("geometry: moving_arm must be 1 or 2, got {}", p.moving_arm)));
        }
        p.paths()?;
        if p.z0 < p.model.z_min {
            return Err(CliError::Validation(format!(
                "geometry: z0 = {:e} m lies below z_min = {:e} m",
                p.z0, p.model.z_min
            )));
        }
        let w = p.packet.width;
        let finite = p.packet.kind != PacketKind::Point;
        let at = |v: Option<f64>| v.map(|x| format!(" (sweep value {x:e})")).unwrap_or_default();
        for c in &self.compute {
            match c {
                Compute::LocalQuasistatic | Compute::DpWide if p.z0 - p.packet.half_support() < p.model.z_min => {
                    return Err(CliError::Validation(format!(
                        "{}: packet support reaches below z_min at z0 = {:e} m, w = {w:e} m{}; \
                         use dp_averaged for packets touching the mirror",
                        c.name(),
                        p.z0,
                        at(p.sweep_value)
                    )));
                }
                Compute::DpClosedForms if !finite || p.packet.kind != PacketKind::Step => {
                    return Err(CliError::Validation("dp_closed_forms: needs a step packet".into()));
                }
                Compute::DpClosedForms if w >= 2.0 * p.z0 => {
                    return Err(CliError::Validation(format!(
                        "dp_closed_forms: the step-packet closed form holds only for w < 2 z0, \
                         got w = {w:e} m, z0 = {:e} m{}; use dp_averaged",
                        p.z0,
                        at(p.sweep_value)
                    )));
                }
                Compute::DpAveraged if p.packet.kind != PacketKind::Step => {
                    return Err(CliError::Validation("dp_averaged: needs a step packet".into()));
                }
                Compute::DpAveraged if w > 2.0 * p.z0 => {
                    return Err(CliError::Validation(format!(
                        "dp_averaged: packet would cross the mirror, w = {w:e} m > 2 z0 = {:e} m{}",
                        2.0 * p.z0,
                        at(p.sweep_value)
                    )));
                }
                _ => {}
            }
        }
        if let Some(g) = &self.potential {
            if !(g.z_from_m >= p.model.z_min && g.z_to_m > g.z_from_m && g.points >= 2) {
                return Err(CliError::Validation(
                    "potential: need z_min <= z_from_m < z_to_m and at least 2 points".into(),
                ));
            }
        }
        Ok(())
    }
}

impl Compute {
    pub fn name(self) -> &'static str {
        match self {
            Self::LocalNarrow => "local_narrow",
            Self::LocalQuasistatic => "local_quasistatic",
            Self::DpPointlike => "dp_pointlike",
            Self::DpWide => "dp_wide",
            Self::DpClosedForms => "dp_closed_forms",
            Self::DpAveraged => "dp_averaged",
            Self::PotentialCurve => "potential_curve",
        }
    }
}

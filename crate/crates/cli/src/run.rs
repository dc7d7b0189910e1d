//! Evaluates the requested quantities at one sweep point.

use casimir_phase::local::potential_curve;
use casimir_phase::nonlocal::{
    critical_width, dp_phase_averaged, dp_phase_pointlike, dp_phase_saturation, dp_phase_step_closed_form,
    dp_phase_wide, enhancement_factor, DpOptions,
};
use casimir_phase::{casimir_potential, local_phase_narrow, local_phase_quasistatic};
use serde::Serialize;

use crate::config::{Compute, Point, ScenarioConfig};
use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub scenario: String,
    pub sweep_parameter: String,
    pub sweep_value: Option<f64>,
    pub quantity: String,
    pub value: f64,
    pub unit: &'static str,
    pub error: Option<f64>,
    pub regime: String,
    pub operation: &'static str,
    pub config_sha256: String,
}

/// Everything one point contributes to the outputs.
#[derive(Debug, Default)]
pub struct PointOutput {
    pub rows: Vec<ResultRow>,
    /// (z in m, V in J)
    pub potential: Option<Vec<(f64, f64)>>,
    pub warnings: Vec<String>,
}

struct Emitter<'a> {
    cfg: &'a ScenarioConfig,
    hash: &'a str,
    point: &'a Point,
    out: PointOutput,
}

impl Emitter<'_> {
    fn row(&mut self, op: Compute, quantity: &str, value: f64, unit: &'static str, error: Option<f64>, regime: &str) {
        self.out.rows.push(ResultRow {
            scenario: self.cfg.id.clone(),
            sweep_parameter: self.cfg.sweep.as_ref().map(|s| s.parameter.name()).unwrap_or("").to_string(),
            sweep_value: self.point.sweep_value,
            quantity: quantity.to_string(),
            value,
            unit,
            error,
            regime: regime.to_string(),
            operation: op.name(),
            config_sha256: self.hash.to_string(),
        });
    }
}

pub fn evaluate(cfg: &ScenarioConfig, hash: &str, p: &Point) -> Result<PointOutput, CliError> {
    let mut e = Emitter {
        cfg,
        hash,
        point: p,
        out: PointOutput::default(),
    };
    let m = &p.model;
    let paths = p.paths()?;
    let opts = DpOptions::default();
    let mut locals = [None, None];
    let mut dp_point = None;
    for &op in &cfg.compute {
        match op {
            Compute::LocalNarrow => {
                for arm in 0..2 {
                    let r = local_phase_narrow(m, &paths, arm)?;
                    let k = arm + 1;
                    e.row(op, &format!("phi_loc_{k}"), r.phi_loc, "rad", Some(r.quadrature_error), "narrow");
                    e.row(op, &format!("phi_loc_{k}_dynamical"), r.dynamical_correction, "rad", None, "narrow");
                    locals[arm] = Some(r.phi_loc);
                }
            }
            Compute::LocalQuasistatic => {
                for arm in 0..2 {
                    let r = local_phase_quasistatic(m, &paths, arm, &p.packet)?;
                    let q = format!("phi_loc_{}_quasistatic", arm + 1);
                    e.row(op, &q, r.phi_loc, "rad", Some(r.quadrature_error), "quasistatic");
                }
            }
            Compute::DpPointlike => {
                let r = dp_phase_pointlike(m, &paths, &opts)?;
                e.row(op, "phi_dp_pointlike", r.phi_dp, "rad", Some(r.quadrature_error), r.regime.tag());
                e.out.warnings.extend(r.warnings);
                dp_point = Some(r.phi_dp);
            }
            Compute::DpWide => {
                let r = dp_phase_wide(m, &paths, &[p.packet, p.packet], &opts)?;
                e.row(op, "phi_dp_wide", r.phi_dp, "rad", Some(r.quadrature_error), r.regime.tag());
                e.out.warnings.extend(r.warnings);
            }
            Compute::DpClosedForms => {
                let step = dp_phase_step_closed_form(&m.species, p.z0, p.packet.width)?;
                let sat = dp_phase_saturation(m, p.z0, p.z0)?;
                e.row(op, "phi_dp_step_closed_form", step, "rad", None, "vdw-closed-form");
                e.row(op, "phi_dp_saturation", sat, "rad", None, "saturated");
            }
            Compute::DpAveraged => {
                let r = dp_phase_averaged(m, p.z0, p.packet.width)?;
                let tag = r.regime.tag();
                e.row(op, "phi_dp_averaged", r.phi_dp, "rad", Some(r.quadrature_error), tag);
                if let Some(a) = r.analytic_route {
                    e.row(op, "phi_dp_averaged_analytic", a, "rad", None, tag);
                }
                if let Some(l) = r.leading_log {
                    e.row(op, "phi_dp_leading_log", l, "rad", None, tag);
                }
                if let Some(a) = r.amplitude_attenuation {
                    e.row(op, "amplitude_attenuation", a, "1", None, tag);
                }
                e.out.warnings.extend(r.warnings);
                if m.species.alpha0_over_4pi_eps0 > 0.0 {
                    e.row(op, "enhancement_factor", enhancement_factor(m, p.z0, p.packet.width)?, "1", None, tag);
                }
                e.row(op, "critical_width", critical_width(&m.species).w_c, "m", None, tag);
            }
            Compute::PotentialCurve => {
                let v = casimir_potential(m, p.z0)?;
                e.row(op, "potential_at_z0", v.value, "J", Some(v.error), "equilibrium");
                let (from, to, n) = match cfg.potential {
                    Some(g) => (g.z_from_m, g.z_to_m, g.points),
                    None => ((p.z0 / 10.0).max(m.z_min), 10.0 * p.z0, 41),
                };
                let z: Vec<f64> = (0..n)
                    .map(|i| from * (to / from).powf(i as f64 / (n - 1) as f64))
                    .collect();
                let curve = potential_curve(m, &z)?;
                if m.species.alpha0_over_4pi_eps0 > 0.0 {
                    e.row(op, "potential_loglog_slope", curve.loglog_slope(), "1", None, "equilibrium");
                }
                e.out.potential = Some(curve.samples);
            }
        }
    }
    if let ([Some(a), Some(b)], Some(dp)) = (locals, dp_point) {
        e.row(Compute::DpPointlike, "relative_phase", a - b + dp, "rad", None, "combined");
    }
    Ok(e.out)
}

//! Single-path (local) phases and the dispersive potential behind them.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{PhaseError, Result};
use crate::green::{collapse_moving, KernelModel, LinearImage};
use crate::jet::Jet;
use crate::kinematics::{check_support, Arm, PacketKind, PathPair, WavepacketModel};
use crate::model::{PhaseModel, Scaled};
use crate::quadrature::{
    integrate_adaptive, integrate_semi_infinite_with_breakpoints, integrate_with_breakpoints, Estimate,
    QuadratureSpec,
};
use crate::special::auxiliary_fg;

/// Local phase of one arm, in radians.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LocalPhaseResult {
    pub phi_loc: f64,
    /// g^H·G^R part (dipole fluctuations driving the reflected field).
    pub dipole_fluctuation: f64,
    /// g^R·G^H part (field fluctuations polarizing the dipole).
    pub field_fluctuation: f64,
    /// Dipole part minus its value with the motion frozen during each
    /// light round trip. Zero for the quasi-static form.
    pub dynamical_correction: f64,
    pub quadrature_error: f64,
}

/// Samples of V_Cas(z).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialCurve {
    /// (z in m, V in J)
    pub samples: Vec<(f64, f64)>,
    pub temperature: f64,
}

impl PotentialCurve {
    /// Least-squares slope of ln|V| against ln z.
    pub fn loglog_slope(&self) -> f64 {
        let pts: Vec<(f64, f64)> = self.samples.iter().map(|&(z, v)| (z.ln(), v.abs().ln())).collect();
        let n = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    }
}

/// e^{-bx}(2 + 2bx + b²x²)/(1 + x²): the oscillator polarizability times
/// the mirror trace on the imaginary axis ω = iω0x, for s = 2z and
/// b = ω0 s / c, in units of 2α(0)/(4πε0 s³).
fn imaginary_axis_integrand(b: f64, x: f64) -> f64 {
    let bx = b * x;
    (-bx).exp() * (2.0 + 2.0 * bx + bx * bx) / (1.0 + x * x)
}

/// (1/π)∫₀^∞ dx of the imaginary-axis integrand, in closed form through the
/// auxiliary functions: ∫e^{-bx}/(1+x²) = f(b), ∫x e^{-bx}/(1+x²) = g(b).
pub(crate) fn potential_rate_closed(b: f64) -> f64 {
    if b == 0.0 {
        return 1.0;
    }
    let (f, g) = auxiliary_fg(b).expect("b > 0");
    (2.0 * f + 2.0 * b * g + b - b * b * f) / PI
}

/// Dimensionless potential rate P(b) with −V/ħ = α(0)/(4πε0) ω0 P / s³.
/// Θ = 0 uses the imaginary-frequency integral; Θ > 0 the Matsubara sum
/// 2θ Σ' F(2πnθ), θ = k_BΘ/ħω0.
pub(crate) fn potential_rate(b: f64, theta: f64, spec: &QuadratureSpec) -> Result<Estimate> {
    if theta == 0.0 {
        let mut pts = vec![1.0];
        if b > 0.0 {
            pts.push(1.0 / b);
        }
        pts.sort_by(f64::total_cmp);
        let r = integrate_semi_infinite_with_breakpoints(|x| imaginary_axis_integrand(b, x), 0.0, &pts, spec)?;
        return Ok(r.scale(1.0 / PI));
    }
    let step = 2.0 * PI * theta;
    let x_stop = if b > 0.0 { 60.0 / b } else { f64::INFINITY };
    let wanted = (x_stop / step).ceil();
    let n_max = if wanted.is_finite() { (wanted as usize).min(200_000) } else { 200_000 };
    let mut sum = 0.5 * imaginary_axis_integrand(b, 0.0);
    for n in 1..=n_max {
        sum += imaginary_axis_integrand(b, n as f64 * step);
    }
    let mut total = Estimate::new(2.0 * theta * sum, 0.0);
    if (n_max as f64) < wanted {
        // remaining terms by the midpoint rule
        let tail = crate::quadrature::integrate_semi_infinite(
            |x| imaginary_axis_integrand(b, x),
            (n_max as f64 + 0.5) * step,
            spec,
        )?;
        total = total + tail.scale(1.0 / PI);
    }
    Ok(total)
}

fn special_spec(model: &PhaseModel) -> QuadratureSpec {
    QuadratureSpec {
        rel_tol: model.quadrature.rel_tol.min(1e-10),
        ..QuadratureSpec::special()
    }
}

/// Dispersive atom–mirror potential V_Cas(z) in J, with its error.
pub fn casimir_potential(model: &PhaseModel, z: f64) -> Result<Estimate> {
    model.validate()?;
    if !(z >= model.z_min) {
        return Err(PhaseError::domain(format!(
            "height {z:e} m is below z_min = {:e} m",
            model.z_min
        )));
    }
    let s = 2.0 * z;
    let w0 = model.species.omega0;
    let b = w0 * s / model.constants.c;
    let p = potential_rate(b, model.reduced_temperature(), &special_spec(model))?;
    let pre = -model.constants.hbar * w0 * model.species.alpha0_over_4pi_eps0 / s.powi(3);
    Ok(p.scale(pre))
}

pub fn potential_curve(model: &PhaseModel, heights: &[f64]) -> Result<PotentialCurve> {
    let samples = heights
        .iter()
        .map(|&z| casimir_potential(model, z).map(|v| (z, v.value)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PotentialCurve {
        samples,
        temperature: model.temperature,
    })
}

/// Rate of the on-shell dipole term for a frozen image at distance s
/// (scaled units): A cos b − B sin b − C cos b with the mirror weights.
fn dipole_rate_frozen(b: f64) -> f64 {
    b.cos() + b * b.sin() - 0.5 * b * b * b.cos()
}

fn check_arm_height(arm: &Arm, duration: f64, z_min: f64, k: usize) -> Result<()> {
    let m = arm.min_height(duration);
    if m < z_min {
        return Err(PhaseError::domain(format!(
            "arm {} comes down to z = {m:e} m, below z_min = {z_min:e} m",
            k + 1
        )));
    }
    Ok(())
}

/// Image seen from `field_z` at scaled time `t` when the source is the arm
/// `source` looked at a delay τ back. Picks the segment the retarded time
/// falls in.
pub(crate) fn image_for(sc: &Scaled, field_z: f64, source: &Arm, t: f64, rho_rate: f64) -> LinearImage {
    let t_si = t / sc.omega0;
    let mut seg = source.segment_at(t_si);
    let build = |seg: &crate::kinematics::Segment| {
        let z_line = seg.z_start + seg.v_z * (t_si - seg.t_start);
        LinearImage {
            s0: field_z + sc.length(z_line),
            s_rate: -sc.velocity(seg.v_z),
            rho0: 0.0,
            rho_rate,
        }
    };
    let img = build(&seg);
    let tau = img.delay(sc.c);
    let t_back = (t - tau) / sc.omega0;
    if t_back < seg.t_start && t_back >= 0.0 {
        seg = source.segment_at(t_back);
        return build(&seg);
    }
    img
}

/// Scaled breakpoints for time integrals: segment joins, and the times at
/// which light leaving a join (or t = 0) on one arm returns to either arm.
pub(crate) fn scaled_breakpoints(paths: &PathPair, sc: &Scaled) -> Vec<f64> {
    let t_end = sc.time(paths.duration);
    let mut pts: Vec<f64> = paths.time_breakpoints().into_iter().map(|t| sc.time(t)).collect();
    let mut joins = vec![0.0];
    for arm in &paths.arms {
        joins.extend(arm.segments.iter().map(|s| sc.time(s.t_start)).filter(|&t| t > 0.0 && t < t_end));
    }
    for &tj in &joins {
        for source in &paths.arms {
            let zs = sc.length(source.z(tj / sc.omega0));
            for field in &paths.arms {
                let mut t = tj;
                for _ in 0..50 {
                    let next = tj + (zs + sc.length(field.z(t.min(t_end) / sc.omega0))) / sc.c;
                    let done = (next - t).abs() <= 1e-15 * next;
                    t = next;
                    if done {
                        break;
                    }
                }
                if t < t_end {
                    pts.push(t);
                }
            }
        }
    }
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Dipole-term rate with the delay collapsed on the moving image.
fn moving_rate(sc: &Scaled, a: &Arm, rho_rate: f64, kernel: KernelModel, t: f64) -> f64 {
    let z = sc.length(a.z(t / sc.omega0));
    let img = image_for(sc, z, a, t, rho_rate);
    0.5 * collapse_moving(&img, sc.c, kernel, t, |x: Jet| x.cos())
}

/// The same rate with the image frozen at the instantaneous height.
fn frozen_rate(sc: &Scaled, a: &Arm, kernel: KernelModel, t: f64) -> f64 {
    let z = sc.length(a.z(t / sc.omega0));
    let img = LinearImage {
        s0: 2.0 * z,
        s_rate: 0.0,
        rho0: 0.0,
        rho_rate: 0.0,
    };
    0.5 * collapse_moving(&img, sc.c, kernel, t, |x: Jet| x.cos())
}

fn dynamical_part(
    sc: &Scaled,
    a: &Arm,
    rho_rate: f64,
    kernel: KernelModel,
    pts: &[f64],
    spec: &QuadratureSpec,
    phase_scale: f64,
) -> Result<Estimate> {
    // the difference is computed without cancellation in the integrand, so
    // it can be resolved far below the phase itself; the floor only stops
    // the refinement at rounding level
    let spec = spec.with_abs_tol(spec.abs_tol.max(1e-15 * phase_scale.abs()));
    integrate_with_breakpoints(
        |t| moving_rate(sc, a, rho_rate, kernel, t) - frozen_rate(sc, a, kernel, t),
        pts,
        &spec,
    )
}

/// Dynamical part of the narrow local phase (moving minus frozen image)
/// for a chosen kernel. `local_phase_narrow` reports it for the full
/// kernel; the near-field kernel matches the double-path default.
pub fn local_dynamical_correction(
    model: &PhaseModel,
    paths: &PathPair,
    arm: usize,
    kernel: KernelModel,
) -> Result<Estimate> {
    model.validate()?;
    let a = paths.arm(arm)?;
    check_arm_height(a, paths.duration, model.z_min / 2.0, arm)?;
    let sc = model.scaled(paths.z0);
    let rho_rate = sc.velocity(paths.parallel_speed());
    if a.is_static() && rho_rate == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    let pts = scaled_breakpoints(paths, &sc);
    let scale = integrate_with_breakpoints(|t| frozen_rate(&sc, a, kernel, t), &pts, &model.quadrature)?;
    let r = dynamical_part(&sc, a, rho_rate, kernel, &pts, &model.quadrature, scale.value)?;
    Ok(r.scale(sc.strength))
}

/// Narrow-packet local phase: both arguments of the Green's functions on
/// the central trajectory. The dipole term is collapsed exactly on the
/// moving image; the field-fluctuation term is taken in the frequency
/// domain at the instantaneous height.
pub fn local_phase_narrow(model: &PhaseModel, paths: &PathPair, arm: usize) -> Result<LocalPhaseResult> {
    model.validate()?;
    let a = paths.arm(arm)?;
    check_arm_height(a, paths.duration, model.z_min / 2.0, arm)?;
    let sc = model.scaled(paths.z0);
    let rho_rate = sc.velocity(paths.parallel_speed());
    let theta = model.reduced_temperature();
    let spec = model.quadrature;
    let fine = special_spec(model);
    let pts = scaled_breakpoints(paths, &sc);

    let static_arm = a.is_static() && rho_rate == 0.0;
    let dipole = integrate_with_breakpoints(|t| moving_rate(&sc, a, rho_rate, KernelModel::Full, t), &pts, &spec)?;
    let dynamical = if static_arm {
        Estimate::exact(0.0)
    } else {
        dynamical_part(&sc, a, rho_rate, KernelModel::Full, &pts, &spec, dipole.value)?
    };

    let ff_rate = |t: f64| -> Result<f64> {
        let s = 2.0 * sc.length(a.z(t / sc.omega0));
        let b = s / sc.c;
        let p = if theta == 0.0 {
            potential_rate_closed(b)
        } else {
            potential_rate(b, theta, &fine)?.value
        };
        Ok((p - dipole_rate_frozen(b)) / s.powi(3))
    };
    let t_end = sc.time(paths.duration);
    let field = if a.is_static() {
        Estimate::exact(ff_rate(0.0)? * t_end)
    } else {
        let mut failure = None;
        let r = integrate_with_breakpoints(
            |t| match ff_rate(t) {
                Ok(v) => v,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            &pts,
            &spec.with_rel_tol(spec.rel_tol.max(1e-10)),
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        r
    };

    let k = sc.strength;
    let dipole_v = k * dipole.value;
    let field_v = k * field.value;
    Ok(LocalPhaseResult {
        phi_loc: dipole_v + field_v,
        dipole_fluctuation: dipole_v,
        field_fluctuation: field_v,
        dynamical_correction: k * dynamical.value,
        quadrature_error: k * (dipole.error + field.error + dynamical.error),
    })
}

/// Quasi-static local phase −(1/ħ)∫dt∫dz |ψ(z,t)|² V_Cas(z).
pub fn local_phase_quasistatic(
    model: &PhaseModel,
    paths: &PathPair,
    arm: usize,
    packet: &WavepacketModel,
) -> Result<LocalPhaseResult> {
    model.validate()?;
    let a = paths.arm(arm)?;
    check_arm_height(a, paths.duration, model.z_min, arm)?;
    check_support(paths, packet, model.z_min)?;
    let sc = model.scaled(paths.z0);
    let theta = model.reduced_temperature();
    let fine = special_spec(model);
    let spec = model.quadrature;

    // −V/ħ at scaled height z, per unit scaled time and unit strength
    let rate = |z: f64| -> Result<Estimate> {
        let s = 2.0 * z;
        potential_rate(s / sc.c, theta, &fine).map(|p| p.scale(1.0 / s.powi(3)))
    };
    let averaged = |zc: f64| -> Result<Estimate> {
        match packet.kind {
            PacketKind::Point => rate(zc),
            _ => {
                let h = sc.length(packet.half_support());
                let mut failure = None;
                let r = integrate_adaptive(
                    |x| {
                        let d = packet.profile(x * sc.z_ref) * sc.z_ref;
                        match rate(zc + x) {
                            Ok(v) => d * v.value,
                            Err(e) => {
                                failure.get_or_insert(e);
                                0.0
                            }
                        }
                    },
                    -h,
                    h,
                    &spec,
                )?;
                match failure {
                    Some(e) => Err(e),
                    None => Ok(r),
                }
            }
        }
    };

    let t_end = sc.time(paths.duration);
    let total = if a.is_static() {
        averaged(sc.length(a.z(0.0)))?.scale(t_end)
    } else {
        let pts = scaled_breakpoints(paths, &sc);
        let mut failure = None;
        let r = integrate_with_breakpoints(
            |t| match averaged(sc.length(a.z(t / sc.omega0))) {
                Ok(v) => v.value,
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            &pts,
            &spec,
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        r
    };
    let k = sc.strength;
    Ok(LocalPhaseResult {
        phi_loc: k * total.value,
        dipole_fluctuation: 0.0,
        field_fluctuation: 0.0,
        dynamical_correction: 0.0,
        quadrature_error: k * total.error,
    })
}

/// The finite-width local phase with the full external propagator is not
/// evaluated; use the narrow or quasi-static forms.
pub fn local_phase_general(_model: &PhaseModel, _paths: &PathPair, _arm: usize, _packet: &WavepacketModel) -> Result<LocalPhaseResult> {
    Err(PhaseError::NotModelled(
        "local phase with the full external propagator; use local_phase_narrow or local_phase_quasistatic",
    ))
}

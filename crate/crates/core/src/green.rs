//! Scattering part of the electric-field Green's functions for a perfect
//! mirror at z = 0, traced over polarizations.
//!
//! The retarded function is
//!   G(τ) = θ(τ)/(2πε0) ∂z∂z' [δ(τ − R/c)/R],  R = |r − r'_I|,
//! with r'_I = (x', y', −z') the image of the source. R depends on the
//! heights only through s = z + z', so ∂z∂z' = ∂²/∂s² at fixed lateral
//! distance ρ. Against a smooth f, ∫dτ f(τ) δ(τ − R/c)/R = h(R) with
//! h(R) = f(R/c)/R, and with R' = s/R = μ, R'' = ρ²/R³ = (1 − μ²)/R:
//!   ∂²h/∂s² = h''(R) μ² + h'(R)(1 − μ²)/R
//!           = f (3μ² − 1)/R³ + f' (1 − 3μ²)/(cR²) + f'' μ²/(c²R),
//! all evaluated at τ = R/c. These are the A, B, C weights below (before
//! the 1/(2πε0) factor).

use nalgebra::Point3;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{PhaseError, Result};
use crate::jet::Jet;
use crate::units::PhysicalConstants;

/// Smallest admissible value of z + z' by default (about one atomic size).
pub const DEFAULT_Z_MIN: f64 = 1e-10;

/// Which part of the mirror kernel is kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelModel {
    /// Only the instantaneous 1/R³ weight (A); the short-distance limit.
    #[default]
    NearField,
    /// A, B and C weights.
    Full,
}

/// Geometric weights of the collapsed kernel (without 1/(2πε0)), as jets in
/// whatever parameter `s` and `rho` depend on.
#[derive(Debug, Clone, Copy)]
pub(crate) struct KernelJets {
    pub a: Jet,
    pub b: Jet,
    pub c: Jet,
    pub t_ret: Jet,
}

pub(crate) fn kernel_jets(s: Jet, rho: Jet, light_speed: f64, model: KernelModel) -> KernelJets {
    let r2 = s * s + rho * rho;
    let r = r2.sqrt();
    let mu2 = s * s / r2;
    let inv_r = r.recip();
    let a = (mu2 * 3.0 - 1.0) * inv_r.powi(3);
    let (b, c) = match model {
        KernelModel::NearField => (Jet::constant(0.0), Jet::constant(0.0)),
        KernelModel::Full => (
            (-(mu2 * 3.0) + 1.0) * inv_r.powi(2) / light_speed,
            mu2 * inv_r / (light_speed * light_speed),
        ),
    };
    KernelJets {
        a,
        b,
        c,
        t_ret: r / light_speed,
    }
}

/// Collapsed retarded kernel: ∫dτ f(τ) G(r, t'+τ; r', t') = A f(T) + B f'(T) + C f''(T).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenKernel {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub t_ret: f64,
}

impl GreenKernel {
    /// Applies the kernel to a test function given through its value and
    /// first two derivatives at the retarded delay.
    pub fn apply(&self, f: f64, df: f64, d2f: f64) -> f64 {
        self.a * f + self.b * df + self.c * d2f
    }

    /// Applies the kernel to `f` restricted to delays in `[0, tau_max]`.
    /// The result is exactly zero when the delay falls outside the window.
    pub fn apply_within(&self, tau_max: f64, f: impl Fn(Jet) -> Jet) -> f64 {
        if !(tau_max >= 0.0) || self.t_ret > tau_max {
            return 0.0;
        }
        let j = f(Jet::variable(self.t_ret));
        self.apply(j.v, j.d1, j.d2)
    }
}

/// The mirror Green's function for a given set of constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorGreen {
    pub constants: PhysicalConstants,
    pub z_min: f64,
}

impl Default for MirrorGreen {
    fn default() -> Self {
        Self {
            constants: PhysicalConstants::codata(),
            z_min: DEFAULT_Z_MIN,
        }
    }
}

impl MirrorGreen {
    pub fn new(constants: PhysicalConstants, z_min: f64) -> Result<Self> {
        if !(z_min > 0.0) {
            return Err(PhaseError::domain("z_min must be positive"));
        }
        Ok(Self { constants, z_min })
    }

    fn check_heights(&self, z: f64, z_src: f64) -> Result<()> {
        if !(z > 0.0) || !(z_src > 0.0) {
            return Err(PhaseError::domain(format!(
                "field and source heights must be positive, got z = {z:e} m, z' = {z_src:e} m"
            )));
        }
        if z + z_src < self.z_min {
            return Err(PhaseError::domain(format!(
                "z + z' = {:e} m is below z_min = {:e} m",
                z + z_src,
                self.z_min
            )));
        }
        Ok(())
    }

    /// Light travel time from the image of `r_src` to `r`.
    pub fn retarded_delay(&self, r: &Point3<f64>, r_src: &Point3<f64>) -> Result<f64> {
        if !(r.z > 0.0) || !(r_src.z > 0.0) {
            return Err(PhaseError::domain("both points must lie above the mirror"));
        }
        let image = Point3::new(r_src.x, r_src.y, -r_src.z);
        Ok((r - image).norm() / self.constants.c)
    }

    /// The (A, B, C, T_ret) representation of the retarded trace, SI units.
    pub fn delta_collapsed_kernel(&self, r: &Point3<f64>, r_src: &Point3<f64>) -> Result<GreenKernel> {
        self.check_heights(r.z, r_src.z)?;
        let rho = ((r.x - r_src.x).powi(2) + (r.y - r_src.y).powi(2)).sqrt();
        Ok(self.kernel_at(r.z + r_src.z, rho, KernelModel::Full))
    }

    pub(crate) fn kernel_at(&self, s: f64, rho: f64, model: KernelModel) -> GreenKernel {
        let k = kernel_jets(Jet::constant(s), Jet::constant(rho), self.constants.c, model);
        let pre = 1.0 / (2.0 * std::f64::consts::PI * self.constants.eps0);
        GreenKernel {
            a: pre * k.a.v,
            b: pre * k.b.v,
            c: pre * k.c.v,
            t_ret: k.t_ret.v,
        }
    }

    /// ∫dτ e^{iωτ} G(r, r; τ) at height z.
    pub fn retarded_trace_freq(&self, z: f64, omega: f64) -> Result<Complex64> {
        self.check_heights(z, z)?;
        let k = self.kernel_at(2.0 * z, 0.0, KernelModel::Full);
        Ok(freq_from_kernel(&k, omega))
    }

    /// Hadamard trace from the fluctuation–dissipation relation,
    /// 2 coth(ħω/2k_BΘ) Im G(ω); at Θ = 0 the coth becomes sign(ω).
    pub fn hadamard_trace_freq(&self, z: f64, omega: f64, theta: f64) -> Result<f64> {
        if !(theta >= 0.0) {
            return Err(PhaseError::domain("temperature must be non-negative"));
        }
        if theta > 0.0 && omega == 0.0 {
            return Err(PhaseError::domain(
                "coth(ħω/2k_BΘ) is singular at ω = 0 for Θ > 0; the singularity is integrable and must be handled by the frequency quadrature",
            ));
        }
        let im = self.retarded_trace_freq(z, omega)?.im;
        let weight = if theta == 0.0 {
            if omega > 0.0 {
                1.0
            } else if omega < 0.0 {
                -1.0
            } else {
                0.0
            }
        } else {
            let x = self.constants.hbar * omega / (2.0 * self.constants.k_b * theta);
            1.0 / x.tanh()
        };
        Ok(2.0 * weight * im)
    }

    /// The free-space part never contributes to surface-induced phases and is
    /// not provided.
    pub fn free_space_trace(&self, _r: &Point3<f64>, _r_src: &Point3<f64>) -> Result<GreenKernel> {
        Err(PhaseError::NotModelled(
            "free-space Green's function: only the mirror (scattering) part enters the atom-surface phases",
        ))
    }
}

/// Fourier transform of a collapsed kernel: apply it to e^{iωτ}.
pub fn freq_from_kernel(k: &GreenKernel, omega: f64) -> Complex64 {
    let phase = Complex64::from_polar(1.0, omega * k.t_ret);
    phase * Complex64::new(k.a - omega * omega * k.c, omega * k.b)
}

/// An image source moving along straight lines: s(τ) = s0 + s_rate·τ and
/// ρ(τ) = rho0 + rho_rate·τ, where τ is the delay back from the field time.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LinearImage {
    pub s0: f64,
    pub s_rate: f64,
    pub rho0: f64,
    pub rho_rate: f64,
}

impl LinearImage {
    /// Root of τ = R(τ)/c.
    pub fn delay(&self, c: f64) -> f64 {
        let q0 = self.s0 * self.s0 + self.rho0 * self.rho0;
        let q1 = self.s0 * self.s_rate + self.rho0 * self.rho_rate;
        let q2 = c * c - self.s_rate * self.s_rate - self.rho_rate * self.rho_rate;
        // positive root of q2 τ² − 2 q1 τ − q0 = 0, written without cancellation
        q0 / ((q1 * q1 + q2 * q0).sqrt() - q1)
    }
}

/// ∫dτ f(τ) G(τ) when the image point itself moves with the delay. With
/// A, B, C and T depending on τ, the kernel reads A δ(u) − B δ'(u) + C δ''(u)
/// in u = τ − T(τ); changing variables to u gives
///   F_A + dF_B/du + d²F_C/du²,  F_X = f X / u'(τ),
/// at the root u = 0. Third derivatives of T follow from R''' = −3R'R''/R,
/// exact for straight-line motion. Geometric units (no 1/(2πε0)).
pub(crate) fn collapse_moving(
    image: &LinearImage,
    c: f64,
    model: KernelModel,
    tau_max: f64,
    f: impl Fn(Jet) -> Jet,
) -> f64 {
    let tau = image.delay(c);
    if !(tau <= tau_max) {
        return 0.0;
    }
    let t = Jet::variable(tau);
    let s = t * image.s_rate + image.s0;
    let rho = t * image.rho_rate + image.rho0;
    let k = kernel_jets(s, rho, c, model);
    let fv = f(t);

    let u1 = 1.0 - k.t_ret.d1;
    let u2 = -k.t_ret.d2;
    let u3 = 3.0 * k.t_ret.d1 * k.t_ret.d2 / k.t_ret.v;
    let w0 = 1.0 / u1;
    let w1 = -u2 * w0 * w0;
    let w2 = -u3 * w0 * w0 + 2.0 * u2 * u2 * w0 * w0 * w0;

    let fa = fv * k.a;
    let fb = fv * k.b;
    let fc = fv * k.c;
    let term_a = fa.v * w0;
    let fb1 = fb.d1 * w0 + fb.v * w1;
    let term_b = fb1 * w0;
    let fc1 = fc.d1 * w0 + fc.v * w1;
    let fc2 = fc.d2 * w0 + 2.0 * fc.d1 * w1 + fc.v * w2;
    let term_c = (fc2 * u1 - fc1 * u2) * w0 * w0 * w0;
    term_a + term_b + term_c
}

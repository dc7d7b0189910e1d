//! Physical constants, atomic species and the internal unit scaling.
//!
//! Every public entry point of the crate takes and returns SI values. The
//! phase engines work internally with lengths measured in a reference
//! height `z_ref` and times measured in `1/ω0`, which keeps the
//! intermediate numbers of order one.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{PhaseError, Result};

/// CODATA 2018 constants.
pub mod codata {
    /// Reduced Planck constant (J·s)
    pub const HBAR: f64 = 1.054_571_817e-34;
    /// Speed of light (m/s)
    pub const C: f64 = 299_792_458.0;
    /// Boltzmann constant (J/K)
    pub const KB: f64 = 1.380_649e-23;
    /// Vacuum permittivity (F/m)
    pub const EPS0: f64 = 8.854_187_812_8e-12;
}

/// The constants every model evaluation is carried out with.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub k_b: f64,
    pub eps0: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata()
    }
}

impl PhysicalConstants {
    pub const fn codata() -> Self {
        Self {
            hbar: codata::HBAR,
            c: codata::C,
            k_b: codata::KB,
            eps0: codata::EPS0,
        }
    }

    /// Constants expressed in a different unit system, where one new length
    /// unit equals `length` metres and one new time unit equals `time`
    /// seconds (mass and charge units unchanged). Used for dimensional
    /// analysis checks; scenario files cannot reach it.
    pub fn rescaled(&self, length: f64, time: f64) -> Self {
        assert!(length > 0.0 && time > 0.0);
        // hbar ~ kg m^2 / s, c ~ m/s, kB ~ kg m^2 / (s^2 K), eps0 ~ s^4 A^2 /(kg m^3)
        Self {
            hbar: self.hbar * time / (length * length),
            c: self.c * time / length,
            k_b: self.k_b * time * time / (length * length),
            eps0: self.eps0 * length.powi(3) / time.powi(2),
        }
    }
}

/// A two-level-like atom modelled as an isotropic harmonic oscillator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomSpecies {
    pub label: String,
    /// α(0)/(4πε0), in m³.
    pub alpha0_over_4pi_eps0: f64,
    /// Transition angular frequency ω0 (rad/s).
    pub omega0: f64,
    /// Transition wavelength λ0 = 2πc/ω0 (m).
    pub lambda0: f64,
}

impl AtomSpecies {
    /// Builds a species from its polarizability volume and transition wavelength.
    pub fn new(label: impl Into<String>, alpha0_over_4pi_eps0: f64, lambda0: f64) -> Result<Self> {
        Self::with_constants(label, alpha0_over_4pi_eps0, lambda0, &PhysicalConstants::codata())
    }

    pub fn with_constants(
        label: impl Into<String>,
        alpha0_over_4pi_eps0: f64,
        lambda0: f64,
        constants: &PhysicalConstants,
    ) -> Result<Self> {
        if !(alpha0_over_4pi_eps0 >= 0.0) || !alpha0_over_4pi_eps0.is_finite() {
            return Err(PhaseError::domain(format!(
                "polarizability volume must be non-negative and finite, got {alpha0_over_4pi_eps0:e} m^3"
            )));
        }
        if !(lambda0 > 0.0) || !lambda0.is_finite() {
            return Err(PhaseError::domain(format!(
                "transition wavelength must be positive, got {lambda0:e} m"
            )));
        }
        Ok(Self {
            label: label.into(),
            alpha0_over_4pi_eps0,
            omega0: 2.0 * PI * constants.c / lambda0,
            lambda0,
        })
    }

    /// Rubidium 87 with α(0)/(4πε0) = 4.73e-29 m³ and λ0 = 780 nm. These
    /// values reproduce the commonly quoted 3e-6 rad averaged double-path
    /// phase for 40 nm packets.
    pub fn rb87() -> Self {
        Self::new("Rb-87", 4.73e-29, 780e-9).expect("preset is valid")
    }

    /// Looks up a bundled preset by (case-insensitive) name.
    pub fn preset(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "rb87" => Some(Self::rb87()),
            _ => None,
        }
    }

    pub fn preset_names() -> &'static [&'static str] {
        &["rb87"]
    }

    /// Returns the same atom with its polarizability multiplied by `factor`.
    pub fn scaled_polarizability(&self, factor: f64) -> Self {
        Self {
            alpha0_over_4pi_eps0: self.alpha0_over_4pi_eps0 * factor,
            ..self.clone()
        }
    }

    /// Checks the stored invariants against a set of constants.
    pub fn validate(&self, constants: &PhysicalConstants) -> Result<()> {
        if !(self.alpha0_over_4pi_eps0 >= 0.0) {
            return Err(PhaseError::domain("polarizability volume must be non-negative"));
        }
        if !(self.omega0 > 0.0) || !(self.lambda0 > 0.0) {
            return Err(PhaseError::domain("transition frequency must be positive"));
        }
        let mismatch = (self.lambda0 * self.omega0 / (2.0 * PI * constants.c) - 1.0).abs();
        if mismatch > 1e-12 {
            return Err(PhaseError::domain(format!(
                "lambda0 * omega0 differs from 2 pi c by {mismatch:e} (relative)"
            )));
        }
        Ok(())
    }

    /// Static polarizability α(0) in SI units (C·m²/V).
    pub fn alpha0(&self, constants: &PhysicalConstants) -> f64 {
        4.0 * PI * constants.eps0 * self.alpha0_over_4pi_eps0
    }

    /// Wavenumber of the transition, 2π/λ0.
    pub fn k0(&self) -> f64 {
        2.0 * PI / self.lambda0
    }
}

/// Atomic length scale r_α = [α(0)/(4πε0)]^{1/3}.
pub fn atomic_length(species: &AtomSpecies) -> f64 {
    species.alpha0_over_4pi_eps0.cbrt()
}

/// Dimensionless scale factors used internally: a length `l` becomes
/// `l * length_factor` and a time `t` becomes `t * time_factor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingReport {
    pub z_ref: f64,
    pub length_factor: f64,
    pub time_factor: f64,
}

impl ScalingReport {
    pub fn length(&self, meters: f64) -> f64 {
        meters * self.length_factor
    }

    pub fn unscale_length(&self, scaled: f64) -> f64 {
        scaled / self.length_factor
    }

    pub fn time(&self, seconds: f64) -> f64 {
        seconds * self.time_factor
    }

    pub fn unscale_time(&self, scaled: f64) -> f64 {
        scaled / self.time_factor
    }

    pub fn velocity(&self, mps: f64) -> f64 {
        mps * self.length_factor / self.time_factor
    }

    pub fn unscale_velocity(&self, scaled: f64) -> f64 {
        scaled * self.time_factor / self.length_factor
    }

    /// Speed of light in internal units.
    pub fn light_speed(&self, constants: &PhysicalConstants) -> f64 {
        self.velocity(constants.c)
    }
}

pub fn internal_scaling(z_ref: f64, species: &AtomSpecies) -> Result<ScalingReport> {
    if !(z_ref > 0.0) || !z_ref.is_finite() {
        return Err(PhaseError::domain(format!(
            "reference length must be positive, got {z_ref:e} m"
        )));
    }
    Ok(ScalingReport {
        z_ref,
        length_factor: 1.0 / z_ref,
        time_factor: species.omega0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_roots() {
        let unit = AtomSpecies::new("unit", 1.0, 1.0).unwrap();
        assert_eq!(atomic_length(&unit), 1.0);
        let small = AtomSpecies::new("small", 8e-30, 1.0).unwrap();
        assert!((atomic_length(&small) / 2e-10 - 1.0).abs() < 1e-14);
        let r = atomic_length(&AtomSpecies::rb87());
        assert!((r - 3.6164e-10).abs() < 1e-13, "{r}");
    }

    #[test]
    fn lambda_omega_consistency() {
        let rb = AtomSpecies::rb87();
        rb.validate(&PhysicalConstants::codata()).unwrap();
        let mut broken = rb.clone();
        broken.omega0 *= 1.0 + 1e-9;
        assert!(broken.validate(&PhysicalConstants::codata()).is_err());
    }

    #[test]
    fn scaling_factors() {
        let mut sp = AtomSpecies::new("x", 1e-29, 1.0).unwrap();
        sp.omega0 = 1.0;
        let id = internal_scaling(1.0, &sp).unwrap();
        assert_eq!(id.length_factor, 1.0);
        assert_eq!(id.time_factor, 1.0);

        sp.omega0 = 2.4e15;
        let s = internal_scaling(20e-9, &sp).unwrap();
        assert!((s.length_factor - 5e7).abs() < 1e-6);
        for x in [1e-12, 3.3e-8, 7.0] {
            assert!((s.unscale_length(s.length(x)) / x - 1.0).abs() < 1e-14);
            assert!((s.unscale_time(s.time(x)) / x - 1.0).abs() < 1e-14);
            assert!((s.unscale_velocity(s.velocity(x)) / x - 1.0).abs() < 1e-14);
        }
        assert!(internal_scaling(0.0, &sp).is_err());
        assert!(internal_scaling(-1.0, &sp).is_err());
    }

    #[test]
    fn presets_lookup() {
        assert_eq!(AtomSpecies::preset("Rb-87"), Some(AtomSpecies::rb87()));
        assert!(AtomSpecies::preset("unobtainium").is_none());
    }
}

//! The physical setting shared by the phase engines.

use crate::dipole::DipoleCorrelators;
use crate::error::{PhaseError, Result};
use crate::green::{MirrorGreen, DEFAULT_Z_MIN};
use crate::quadrature::QuadratureSpec;
use crate::units::{AtomSpecies, PhysicalConstants};

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseModel {
    pub species: AtomSpecies,
    pub constants: PhysicalConstants,
    /// Field temperature Θ (K).
    pub temperature: f64,
    /// Smallest admissible height (m).
    pub z_min: f64,
    pub quadrature: QuadratureSpec,
}

impl PhaseModel {
    pub fn new(species: AtomSpecies) -> Self {
        Self {
            species,
            constants: PhysicalConstants::codata(),
            temperature: 0.0,
            z_min: DEFAULT_Z_MIN,
            quadrature: QuadratureSpec::phase(),
        }
    }

    pub fn rb87() -> Self {
        Self::new(AtomSpecies::rb87())
    }

    pub fn with_species(mut self, species: AtomSpecies) -> Self {
        self.species = species;
        self
    }

    pub fn with_constants(mut self, constants: PhysicalConstants) -> Self {
        self.constants = constants;
        self
    }

    pub fn with_temperature(mut self, theta: f64) -> Self {
        self.temperature = theta;
        self
    }

    pub fn with_z_min(mut self, z_min: f64) -> Self {
        self.z_min = z_min;
        self
    }

    pub fn with_quadrature(mut self, spec: QuadratureSpec) -> Self {
        self.quadrature = spec;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.species.validate(&self.constants)?;
        if !(self.temperature >= 0.0) || !self.temperature.is_finite() {
            return Err(PhaseError::domain(format!(
                "temperature must be non-negative, got {} K",
                self.temperature
            )));
        }
        if !(self.z_min > 0.0) {
            return Err(PhaseError::domain("z_min must be positive"));
        }
        Ok(())
    }

    pub fn green(&self) -> MirrorGreen {
        MirrorGreen {
            constants: self.constants,
            z_min: self.z_min,
        }
    }

    pub fn dipole(&self) -> DipoleCorrelators {
        DipoleCorrelators::new(self.species.clone(), self.constants)
    }

    /// k_BΘ / (ħω0).
    pub fn reduced_temperature(&self) -> f64 {
        self.constants.k_b * self.temperature / (self.constants.hbar * self.species.omega0)
    }

    /// 3π/λ0 · α(0)/(4πε0): the length² scale of the saturated
    /// double-path phase, equal to w_c².
    pub fn dp_strength(&self) -> f64 {
        3.0 * std::f64::consts::PI / self.species.lambda0 * self.species.alpha0_over_4pi_eps0
    }

    pub(crate) fn scaled(&self, z_ref: f64) -> Scaled {
        let w0 = self.species.omega0;
        Scaled {
            z_ref,
            omega0: w0,
            c: self.constants.c / (z_ref * w0),
            strength: self.species.alpha0_over_4pi_eps0 / z_ref.powi(3),
        }
    }
}

/// Internal units: lengths in z_ref, times in 1/ω0.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scaled {
    pub z_ref: f64,
    pub omega0: f64,
    /// Light speed in z_ref·ω0.
    pub c: f64,
    /// α(0)/(4πε0 z_ref³).
    pub strength: f64,
}

impl Scaled {
    pub fn length(&self, m: f64) -> f64 {
        m / self.z_ref
    }
    pub fn time(&self, s: f64) -> f64 {
        s * self.omega0
    }
    pub fn velocity(&self, v: f64) -> f64 {
        v / (self.z_ref * self.omega0)
    }
}

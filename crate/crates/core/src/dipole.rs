//! Ground-state harmonic-oscillator dipole: Hadamard and retarded
//! correlation functions.

use num_complex::Complex64;

use crate::error::{PhaseError, Result};
use crate::units::{AtomSpecies, PhysicalConstants};

/// Default frequency-domain damping, as a fraction of ω0.
pub const DEFAULT_DAMPING_FRACTION: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct DipoleCorrelators {
    pub species: AtomSpecies,
    pub constants: PhysicalConstants,
    /// Regularization rate ε in g^R(ω) (rad/s).
    pub damping_epsilon: f64,
    /// Temperature of the dipole itself; `None` keeps the ground state.
    pub dipole_temperature: Option<f64>,
}

impl DipoleCorrelators {
    pub fn new(species: AtomSpecies, constants: PhysicalConstants) -> Self {
        let damping_epsilon = DEFAULT_DAMPING_FRACTION * species.omega0;
        Self {
            species,
            constants,
            damping_epsilon,
            dipole_temperature: None,
        }
    }

    pub fn with_damping(mut self, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(PhaseError::domain("damping rate must be positive"));
        }
        self.damping_epsilon = epsilon;
        Ok(self)
    }

    /// Puts the oscillator in a thermal state at `theta` kelvin.
    pub fn with_thermal_dipole(mut self, theta: f64) -> Result<Self> {
        if !(theta >= 0.0) {
            return Err(PhaseError::domain("temperature must be non-negative"));
        }
        self.dipole_temperature = Some(theta);
        Ok(self)
    }

    fn alpha0(&self) -> f64 {
        self.species.alpha0(&self.constants)
    }

    fn thermal_factor(&self) -> f64 {
        match self.dipole_temperature {
            Some(theta) if theta > 0.0 => {
                let x = self.constants.hbar * self.species.omega0 / (2.0 * self.constants.k_b * theta);
                1.0 / x.tanh()
            }
            _ => 1.0,
        }
    }

    /// g^H(τ) = α(0) ω0 cos(ω0 τ) (times coth(ħω0/2k_BΘ) for a thermal dipole).
    pub fn hadamard_time(&self, tau: f64) -> f64 {
        let w0 = self.species.omega0;
        self.thermal_factor() * self.alpha0() * w0 * (w0 * tau).cos()
    }

    /// g^R(τ) = α(0) ω0 sin(ω0 τ) θ(τ).
    pub fn retarded_time(&self, tau: f64) -> f64 {
        if tau < 0.0 {
            return 0.0;
        }
        let w0 = self.species.omega0;
        self.alpha0() * w0 * (w0 * tau).sin()
    }

    /// g^R(ω) = α(0) ω0² / (ω0² − ω² − iεω).
    pub fn retarded_freq(&self, omega: f64) -> Complex64 {
        let w0 = self.species.omega0;
        let den = Complex64::new(w0 * w0 - omega * omega, -self.damping_epsilon * omega);
        Complex64::new(self.alpha0() * w0 * w0, 0.0) / den
    }

    /// g^H(ω) = 2 coth(ħω/2k_BΘ) Im g^R(ω) with the finite damping, i.e. two
    /// Lorentzians that become π α(0) ω0 δ(ω ∓ ω0) as ε → 0.
    pub fn hadamard_freq(&self, omega: f64) -> f64 {
        let im = self.retarded_freq(omega).im;
        let weight = match self.dipole_temperature {
            Some(theta) if theta > 0.0 => {
                if omega == 0.0 {
                    // 2 coth(x) Im g^R(ω) → finite limit since Im g^R ∝ ω
                    let w0 = self.species.omega0;
                    return 4.0 * self.constants.k_b * theta / self.constants.hbar * self.alpha0() * self.damping_epsilon
                        / (w0 * w0);
                }
                let x = self.constants.hbar * omega / (2.0 * self.constants.k_b * theta);
                1.0 / x.tanh()
            }
            _ => omega.signum(),
        };
        2.0 * weight * im
    }
}

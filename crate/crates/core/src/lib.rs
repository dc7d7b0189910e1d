//! Dynamical local and non-local Casimir/van der Waals phases of atomic
//! wave-packets flying near a perfectly reflecting plane.
//!
//! All public inputs and outputs are SI; phases are in radians.

pub mod dipole;
pub mod error;
pub mod green;
pub mod jet;
pub mod kinematics;
pub mod local;
pub mod model;
pub mod nonlocal;
pub mod quadrature;
pub mod special;
pub mod units;

pub use error::{PhaseError, Result};
pub use green::{GreenKernel, KernelModel, MirrorGreen};
pub use kinematics::{Arm, PacketKind, PathPair, WavepacketModel};
pub use local::{casimir_potential, local_phase_narrow, local_phase_quasistatic, LocalPhaseResult, PotentialCurve};
pub use model::PhaseModel;
pub use nonlocal::{
    critical_width, dp_phase_averaged, dp_phase_pointlike, dp_phase_saturation, dp_phase_step_closed_form,
    dp_phase_wide, enhancement_factor, DPPhaseResult, DpOptions, DpRegime,
};
pub use quadrature::{Estimate, QuadratureSpec};
pub use units::{AtomSpecies, PhysicalConstants};

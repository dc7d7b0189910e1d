use casimir_phase::kinematics::{PathPair, WavepacketModel};
use casimir_phase::local::{local_phase_narrow, local_phase_quasistatic};
use casimir_phase::nonlocal::{dp_phase_averaged, dp_phase_pointlike, dp_phase_wide, DpOptions};
use casimir_phase::units::{atomic_length, internal_scaling};
use casimir_phase::{AtomSpecies, PhaseModel, PhysicalConstants};

#[test]
fn atomic_length_examples() {
    assert_eq!(atomic_length(&AtomSpecies::new("unit", 1.0, 1.0).unwrap()), 1.0);
    let r = atomic_length(&AtomSpecies::new("cube", 8e-30, 1e-6).unwrap());
    assert!((r / 2e-10 - 1.0).abs() < 1e-14);
    let rb = atomic_length(&AtomSpecies::rb87());
    assert!((rb - 3.62e-10).abs() < 0.005e-10, "{rb}");
}

#[test]
fn species_store_consistent_wavelength_and_frequency() {
    let c = PhysicalConstants::codata();
    let sp = AtomSpecies::rb87();
    assert!((sp.lambda0 * sp.omega0 / (2.0 * std::f64::consts::PI * c.c) - 1.0).abs() < 1e-12);
    assert!(sp.validate(&c).is_ok());
    assert!(AtomSpecies::new("bad", -1.0, 1e-6).is_err());
    assert!(AtomSpecies::new("bad", 1e-30, 0.0).is_err());
}

#[test]
fn internal_scaling_examples() {
    let unit = AtomSpecies::with_constants("u", 1e-30, 2.0 * std::f64::consts::PI * PhysicalConstants::codata().c, &PhysicalConstants::codata()).unwrap();
    let s = internal_scaling(1.0, &unit).unwrap();
    assert!((s.length_factor - 1.0).abs() < 1e-15 && (s.time_factor - 1.0).abs() < 1e-12);
    let sp = AtomSpecies::rb87();
    let s = internal_scaling(20e-9, &sp).unwrap();
    assert!((s.length_factor - 5e7).abs() < 1e-6);
    for x in [1e-12, 3.7e-9, 0.2, 4e3] {
        assert!((s.unscale_length(s.length(x)) / x - 1.0).abs() < 1e-14);
        assert!((s.unscale_time(s.time(x)) / x - 1.0).abs() < 1e-14);
        assert!((s.unscale_velocity(s.velocity(x)) / x - 1.0).abs() < 1e-14);
    }
    assert!(internal_scaling(0.0, &sp).is_err());
    assert!(internal_scaling(-1.0, &sp).is_err());
}

#[test]
fn presets_round_trip_through_json_bit_exactly() {
    for name in AtomSpecies::preset_names() {
        let sp = AtomSpecies::preset(name).unwrap();
        let text = serde_json::to_string(&sp).unwrap();
        let back: AtomSpecies = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sp);
        assert_eq!(back.alpha0_over_4pi_eps0.to_bits(), sp.alpha0_over_4pi_eps0.to_bits());
        assert_eq!(back.omega0.to_bits(), sp.omega0.to_bits());
    }
    assert!(AtomSpecies::preset("RB-87").is_some());
    assert!(AtomSpecies::preset("cs133").is_none());
}

/// All phases in a model expressed with a new length unit of `l` metres and
/// a new time unit of `t` seconds.
struct Rescaled {
    model: PhaseModel,
    l: f64,
    t: f64,
}

impl Rescaled {
    fn new(l: f64, t: f64, temperature: f64) -> Self {
        let base = PhaseModel::rb87().with_temperature(temperature);
        let k = base.constants.rescaled(l, t);
        let sp = &base.species;
        let species = AtomSpecies::with_constants("Rb-87", sp.alpha0_over_4pi_eps0 / l.powi(3), sp.lambda0 / l, &k).unwrap();
        let model = PhaseModel::new(species)
            .with_constants(k)
            .with_temperature(temperature)
            .with_z_min(base.z_min / l);
        Self { model, l, t }
    }

    fn fig1(&self, z0: f64, v: f64, dur: f64) -> PathPair {
        PathPair::fig1(z0 / self.l, v * self.t / self.l, dur / self.t).unwrap()
    }
}

#[test]
fn phases_are_invariant_under_unit_rescaling() {
    let si = Rescaled::new(1.0, 1.0, 0.0);
    let (z0, v, dur, w) = (20e-9, 2.0, 1e-9, 6e-9);
    for (l, t) in [(1e-9, 1e-15), (1e-6, 1e-9), (3.7, 0.02)] {
        let r = Rescaled::new(l, t, 0.0);
        let (pa, pb) = (si.fig1(z0, v, dur), r.fig1(z0, v, dur));
        let close = |a: f64, b: f64| assert!((a / b - 1.0).abs() < 1e-10, "({l}, {t}): {a} vs {b}");
        close(
            local_phase_narrow(&si.model, &pa, 1).unwrap().phi_loc,
            local_phase_narrow(&r.model, &pb, 1).unwrap().phi_loc,
        );
        let (ka, kb) = (WavepacketModel::step(w).unwrap(), WavepacketModel::step(w / l).unwrap());
        close(
            local_phase_quasistatic(&si.model, &pa, 1, &ka).unwrap().phi_loc,
            local_phase_quasistatic(&r.model, &pb, 1, &kb).unwrap().phi_loc,
        );
        let o = DpOptions::default();
        close(
            dp_phase_pointlike(&si.model, &pa, &o).unwrap().phi_dp,
            dp_phase_pointlike(&r.model, &pb, &o).unwrap().phi_dp,
        );
        close(
            dp_phase_wide(&si.model, &pa, &[ka, ka], &o).unwrap().phi_dp,
            dp_phase_wide(&r.model, &pb, &[kb, kb], &o).unwrap().phi_dp,
        );
        close(
            dp_phase_averaged(&si.model, 20e-9, 40e-9).unwrap().phi_dp,
            dp_phase_averaged(&r.model, 20e-9 / l, 40e-9 / l).unwrap().phi_dp,
        );
    }
}

#[test]
fn thermal_phases_are_invariant_under_unit_rescaling() {
    let si = Rescaled::new(1.0, 1.0, 3e4);
    let r = Rescaled::new(1e-9, 1e-15, 3e4);
    let a = local_phase_narrow(&si.model, &si.fig1(50e-9, 1.0, 1e-10), 0).unwrap().phi_loc;
    let b = local_phase_narrow(&r.model, &r.fig1(50e-9, 1.0, 1e-10), 0).unwrap().phi_loc;
    assert!((a / b - 1.0).abs() < 1e-10, "{a} vs {b}");
}

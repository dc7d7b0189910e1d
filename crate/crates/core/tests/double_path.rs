mod common;

use casimir_phase::green::KernelModel;
use casimir_phase::kinematics::{Arm, PathPair, WavepacketModel};
use casimir_phase::local::{local_dynamical_correction, local_phase_narrow};
use casimir_phase::nonlocal::*;
use casimir_phase::{AtomSpecies, PhaseModel};
use rand::{rngs::StdRng, Rng, SeedableRng};

const Z0: f64 = 20e-9;

fn model() -> PhaseModel {
    PhaseModel::rb87()
}

fn saturated_fig1() -> PathPair {
    PathPair::fig1(Z0, 1.0, 1000.0 * Z0).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a / b - 1.0).abs()
}

#[test]
fn wide_point_packets_equal_pointlike() {
    let m = model();
    let p = PathPair::fig1(Z0, 3.0, 5.0 * Z0 / 3.0).unwrap();
    let pt = WavepacketModel::point();
    let a = dp_phase_pointlike(&m, &p, &DpOptions::default()).unwrap();
    let b = dp_phase_wide(&m, &p, &[pt, pt], &DpOptions::default()).unwrap();
    assert!(rel(a.phi_dp, b.phi_dp) < 1e-8);
}

#[test]
fn saturated_pointlike_matches_closed_form() {
    let m = model();
    let sat = dp_phase_saturation(&m, Z0, Z0).unwrap();
    let r = dp_phase_pointlike(&m, &saturated_fig1(), &DpOptions::default()).unwrap();
    assert_eq!(r.regime, DpRegime::Saturated);
    assert!(rel(r.phi_dp, sat) < 0.05);
    // the only finite-time correction is the final separation
    let expect = sat * (1.0 - (2.0 * Z0 / (2.0 * Z0 + 1000.0 * Z0)).powi(2));
    assert!(rel(r.phi_dp, expect) < 1e-5, "{} vs {expect}", r.phi_dp);
}

#[test]
fn step_chain_wide_to_closed_form_to_saturation() {
    let m = model();
    let w = Z0 / 10.0;
    let closed = dp_phase_step_closed_form(&m.species, Z0, w).unwrap();
    let sat = dp_phase_saturation(&m, Z0, Z0).unwrap();
    assert!(rel(closed, sat) < 0.01);
    let pk = WavepacketModel::step(w).unwrap();
    let wide = dp_phase_wide(&m, &saturated_fig1(), &[pk, pk], &DpOptions::default()).unwrap();
    assert!(rel(wide.phi_dp, closed) < 1e-3, "{} vs {closed}", wide.phi_dp);
    // w → 0
    let tiny = dp_phase_step_closed_form(&m.species, Z0, 1e-6 * Z0).unwrap();
    assert!(rel(tiny, sat) < 1e-11);
}

#[test]
fn wide_step_packets_follow_the_log_law_at_larger_width() {
    let m = model();
    let w = 1.2 * Z0;
    let pk = WavepacketModel::step(w).unwrap();
    let wide = dp_phase_wide(&m, &saturated_fig1(), &[pk, pk], &DpOptions::default()).unwrap();
    let closed = dp_phase_step_closed_form(&m.species, Z0, w).unwrap();
    // the path correction is the saturated phase at the final separation
    let far = dp_phase_saturation(&m, Z0, 1001.0 * Z0).unwrap();
    assert!(rel(wide.phi_dp + far, closed) < 1e-3, "{} vs {closed}", wide.phi_dp);
}

#[test]
fn gaussian_and_step_packets_with_equal_rms_width_agree_qualitatively() {
    let m = model();
    let w = 0.3 * Z0;
    let step = WavepacketModel::step(w).unwrap();
    // rms of a step is w/√12; the Gaussian width is 4σ
    let gauss = WavepacketModel::gaussian(4.0 * w / 12f64.sqrt()).unwrap();
    let p = saturated_fig1();
    let a = dp_phase_wide(&m, &p, &[step, step], &DpOptions::default()).unwrap();
    let b = dp_phase_wide(&m, &p, &[gauss, gauss], &DpOptions::default()).unwrap();
    assert!(rel(b.phi_dp, a.phi_dp) < 0.25, "{} vs {}", b.phi_dp, a.phi_dp);
}

#[test]
fn step_closed_form_refuses_packets_touching_the_mirror() {
    let sp = AtomSpecies::rb87();
    let err = dp_phase_step_closed_form(&sp, Z0, 2.0 * Z0).unwrap_err();
    assert!(err.to_string().contains("averaged"));
    assert!(dp_phase_step_closed_form(&sp, Z0, 3.0 * Z0).is_err());
}

fn random_arm(rng: &mut StdRng, z0: f64, t: f64) -> Arm {
    let legs: Vec<(f64, f64)> = (0..rng.gen_range(1..4))
        .map(|_| (t / 3.0, rng.gen_range(-0.2..1.0) * Z0 / t))
        .collect();
    let mut legs = legs;
    let used: f64 = legs.iter().map(|l| l.0).sum();
    legs.push((t - used + 1e-3 * t, rng.gen_range(0.0..1.0) * Z0 / t));
    Arm::from_legs(z0, &legs).unwrap()
}

#[test]
fn antisymmetry_under_arm_interchange() {
    let m = model();
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..20 {
        let t = rng.gen_range(10.0..200.0) * Z0;
        let z0 = rng.gen_range(0.8..3.0) * Z0;
        let p = PathPair::new(random_arm(&mut rng, z0, t), random_arm(&mut rng, z0, t), [0.0, 0.0], t).unwrap();
        let a = dp_phase_pointlike(&m, &p, &DpOptions::default()).unwrap().phi_dp;
        let b = dp_phase_pointlike(&m, &p.swapped(), &DpOptions::default()).unwrap().phi_dp;
        assert!((a + b).abs() <= 1e-12 * a.abs(), "{a} {b}");
        let pk = WavepacketModel::step(0.2 * Z0).unwrap();
        let a = dp_phase_wide(&m, &p, &[pk, pk], &DpOptions::default()).unwrap().phi_dp;
        let b = dp_phase_wide(&m, &p.swapped(), &[pk, pk], &DpOptions::default()).unwrap().phi_dp;
        assert!((a + b).abs() <= 1e-12 * a.abs(), "{a} {b}");
    }
}

#[test]
fn symmetric_motion_gives_no_double_path_phase() {
    let m = model();
    let t = 1e-7;
    let still = PathPair::parallel(Z0, t).unwrap();
    let loc = local_phase_narrow(&m, &still, 0).unwrap().phi_loc;
    assert_eq!(dp_phase_pointlike(&m, &still, &DpOptions::default()).unwrap().phi_dp, 0.0);
    let both = PathPair::new(Arm::uniform(Z0, 0.1), Arm::uniform(Z0, 0.1), [0.0, 0.0], t).unwrap();
    let r = dp_phase_pointlike(&m, &both, &DpOptions::default()).unwrap();
    assert!(r.phi_dp.abs() <= 1e-12 * loc.abs());
}

#[test]
fn perturbative_routes_are_linear_in_polarizability() {
    let m = model();
    let m3 = m.clone().with_species(m.species.scaled_polarizability(3.0));
    let p = PathPair::fig1(Z0, 2.0, 20.0 * Z0 / 2.0).unwrap();
    let pk = WavepacketModel::step(0.3 * Z0).unwrap();
    let o = DpOptions::default();
    let pairs = [
        (dp_phase_pointlike(&m, &p, &o).unwrap().phi_dp, dp_phase_pointlike(&m3, &p, &o).unwrap().phi_dp),
        (
            dp_phase_wide(&m, &p, &[pk, pk], &o).unwrap().phi_dp,
            dp_phase_wide(&m3, &p, &[pk, pk], &o).unwrap().phi_dp,
        ),
        (
            dp_phase_step_closed_form(&m.species, Z0, 0.3 * Z0).unwrap(),
            dp_phase_step_closed_form(&m3.species, Z0, 0.3 * Z0).unwrap(),
        ),
        (dp_phase_saturation(&m, Z0, 2.0 * Z0).unwrap(), dp_phase_saturation(&m3, Z0, 2.0 * Z0).unwrap()),
    ];
    for (a, b) in pairs {
        assert!(rel(b, 3.0 * a) < 1e-10, "{a} {b}");
    }
}

#[test]
fn averaged_phase_estimate_and_leading_log() {
    let m = model();
    let r = dp_phase_averaged(&m, 20e-9, 40e-9).unwrap();
    assert_eq!(r.regime, DpRegime::Averaged);
    assert!(r.phi_dp > 2e-6 && r.phi_dp < 4.5e-6, "{}", r.phi_dp);
    assert!(rel(r.analytic_route.unwrap(), r.phi_dp) < 1e-6);
    let wc = critical_width(&m.species).w_c;
    let k = wc * wc;
    // full triangle: (K/w²)[ln(w/w_c) + 0.518]
    let constant = r.phi_dp * (40e-9f64).powi(2) / k - (40e-9 / wc).ln();
    assert!((constant - 0.518).abs() < 0.01, "{constant}");
    assert!(rel(r.leading_log.unwrap(), k / (40e-9f64).powi(2) * (40e-9 / wc).ln()) < 1e-12);
    assert!(r.amplitude_attenuation.unwrap() < 1.0);
}

#[test]
fn enhancement_factor_is_about_one_order_of_magnitude() {
    let m = model();
    let e = enhancement_factor(&m, 20e-9, 40e-9).unwrap();
    assert!((5.0..12.0).contains(&e), "{e}");
    let wc = critical_width(&m.species).w_c;
    assert!(((40e-9 / wc).ln() - 7.4).abs() < 0.1);
}

#[test]
fn doubling_width_adds_ln2_after_removing_prefactor() {
    let m = model();
    let wc = critical_width(&m.species).w_c;
    let reduced = |w: f64| dp_phase_averaged(&m, w / 2.0, w).unwrap().analytic_route.unwrap() * w * w / (wc * wc);
    let step = reduced(80e-9) - reduced(40e-9);
    assert!(rel(step, std::f64::consts::LN_2) < 0.01, "{step}");
}

#[test]
fn analytic_route_matches_two_dimensional_oracle() {
    let m = model();
    let wc = critical_width(&m.species).w_c;
    for ratio in [1e2, 3e2, 1e3, 3e3, 1e4] {
        let w = ratio * wc;
        let r = dp_phase_averaged(&m, w / 2.0, w).unwrap();
        let oracle = common::averaged_phase_2d((wc / w).powi(2));
        assert!(rel(r.analytic_route.unwrap(), oracle) < 1e-3, "{ratio}: {:?} vs {oracle}", r.analytic_route);
        assert!(rel(r.phi_dp, oracle) < 1e-3);
    }
}

#[test]
fn averaged_regime_departs_from_linearity_at_order_one_phase() {
    let m = model();
    let w = 40e-9;
    let small = dp_phase_averaged(&m, w / 2.0, w).unwrap().phi_dp;
    let tiny = dp_phase_averaged(&m.clone().with_species(m.species.scaled_polarizability(1e-3)), w / 2.0, w)
        .unwrap()
        .phi_dp;
    // far from Φ ~ 1 only the logarithm breaks linearity, weakly
    assert!(rel(small, 1e3 * tiny) < 0.5);
    let factor = 3e5;
    let big = dp_phase_averaged(&m.clone().with_species(m.species.scaled_polarizability(factor)), w / 2.0, w)
        .unwrap();
    assert!(big.phi_dp.abs() > 0.1);
    assert!(rel(big.phi_dp, factor * small) > 0.5, "{} vs {}", big.phi_dp, factor * small);
    assert!(big.amplitude_attenuation.unwrap() < 0.99);
}

#[test]
fn direct_route_handles_packets_away_from_the_mirror() {
    let m = model();
    // far from the mirror the average reduces to the step closed form
    let (z0, w) = (100e-9, 40e-9);
    let r = dp_phase_averaged(&m, z0, w).unwrap();
    let closed = dp_phase_step_closed_form(&m.species, z0, w).unwrap();
    assert!(rel(r.phi_dp, closed) < 1e-6);
    assert!(r.analytic_route.is_none());
    assert!(dp_phase_averaged(&m, 10e-9, 40e-9).is_err());
}

#[test]
fn double_time_diagnostic_equals_total_gradient() {
    let m = model();
    let p = PathPair::fig1(Z0, 1.0, 30.0 * Z0).unwrap();
    for memory in [DipoleMemory::Static, DipoleMemory::Exact] {
        let dt = dp_phase_double_time(&m, &p, KernelModel::NearField, memory).unwrap();
        let opts = DpOptions {
            kernel: KernelModel::NearField,
            gradient: GradientConvention::Total,
            memory,
            include_field_fluctuation: false,
        };
        let tg = dp_phase_pointlike(&m, &p, &opts).unwrap();
        assert!(rel(dt.phi_dp, tg.phi_dp) < 1e-6, "{memory:?}: {} vs {}", dt.phi_dp, tg.phi_dp);
    }
}

#[test]
fn near_field_total_gradient_gives_two_thirds() {
    let m = model();
    let p = saturated_fig1();
    let amp = dp_phase_pointlike(&m, &p, &DpOptions::default()).unwrap().phi_dp;
    let opts = DpOptions {
        gradient: GradientConvention::Total,
        ..Default::default()
    };
    let total = dp_phase_pointlike(&m, &p, &opts).unwrap().phi_dp;
    assert!(rel(total / amp, 2.0 / 3.0) < 1e-6);
}

#[test]
fn full_kernel_total_gradient_vanishes_with_static_memory() {
    let m = model();
    let p = saturated_fig1();
    let opts = DpOptions {
        kernel: KernelModel::Full,
        gradient: GradientConvention::Total,
        ..Default::default()
    };
    let r = dp_phase_pointlike(&m, &p, &opts).unwrap();
    let sat = dp_phase_saturation(&m, Z0, Z0).unwrap();
    assert!(r.phi_dp.abs() < 1e-6 * sat);
}

#[test]
fn field_fluctuation_term_cancels_with_exact_memory() {
    let m = model();
    let p = PathPair::fig1(Z0, 1.0, 50.0 * Z0).unwrap();
    for kernel in [KernelModel::NearField, KernelModel::Full] {
        let opts = DpOptions {
            kernel,
            memory: DipoleMemory::Exact,
            include_field_fluctuation: true,
            ..Default::default()
        };
        let r = dp_phase_pointlike(&m, &p, &opts).unwrap();
        assert!(r.dipole_fluctuation.abs() > 0.0);
        assert!(r.phi_dp.abs() < 1e-9 * r.dipole_fluctuation.abs(), "{kernel:?}: {r:?}");
    }
}

#[test]
fn magnitude_ordering_against_dynamical_local_correction() {
    let m = model();
    for v in [0.1, 10.0] {
        for d in [0.1, 1.0, 10.0, 100.0] {
            let p = PathPair::fig1(Z0, v, d * Z0 / v).unwrap();
            let dp = dp_phase_pointlike(&m, &p, &DpOptions::default()).unwrap().phi_dp;
            let dyn_near = local_dynamical_correction(&m, &p, 0, KernelModel::NearField).unwrap().value
                - local_dynamical_correction(&m, &p, 1, KernelModel::NearField).unwrap().value;
            let ratio = (dp / dyn_near).abs();
            assert!((1e-2..1e2).contains(&ratio), "v = {v}, v⊥T/z0 = {d}: {ratio}");
        }
    }
}

#[test]
fn full_kernel_suppresses_the_dynamical_local_correction() {
    // the exact kernel's first-order motion term is down by about 4(k0 z0)²
    let m = model();
    let p = PathPair::fig1(Z0, 1.0, 10.0 * Z0).unwrap();
    let near = local_dynamical_correction(&m, &p, 1, KernelModel::NearField).unwrap().value;
    let full = local_dynamical_correction(&m, &p, 1, KernelModel::Full).unwrap().value;
    let reported = local_phase_narrow(&m, &p, 1).unwrap().dynamical_correction;
    assert!(rel(full, reported) < 1e-4);
    let k0z = m.species.k0() * Z0;
    let r = (full / near).abs() / (k0z * k0z);
    assert!(r > 1.0 && r < 6.0, "{r}");
}

#[test]
fn wide_packets_warn_when_motion_during_the_round_trip_is_not_small() {
    let m = model();
    let p = PathPair::fig1(Z0, 1e5, 1e-12).unwrap();
    let pk = WavepacketModel::step(1e-9).unwrap();
    let r = dp_phase_wide(&m, &p, &[pk, pk], &DpOptions::default()).unwrap();
    assert!(!r.warnings.is_empty());
    let slow = PathPair::fig1(Z0, 1.0, 1e-7).unwrap();
    let r = dp_phase_wide(&m, &slow, &[pk, pk], &DpOptions::default()).unwrap();
    assert!(r.warnings.is_empty());
}

#[test]
fn critical_width_of_the_preset() {
    let c = critical_width(&AtomSpecies::rb87());
    assert!((c.w_c - 2.4e-11).abs() < 0.1e-11);
    assert!(rel(c.w_c, c.w_c_from_atomic_length) < 1e-12);
}

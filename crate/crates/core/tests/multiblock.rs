//! Convolution engine against quadrature moments, the closed forms and the
//! Monte Carlo simulator.

use fading_limits_core::analytic::dor_single_block;
use fading_limits_core::montecarlo::{estimate_dor, estimate_ior};
use fading_limits_core::multiblock::{
    convolve, default_grid_step, dor_multiblock, ior_multiblock, per_block_entropy_distribution,
};
use fading_limits_core::quad::{integrate_to_infinity, Tolerance};
use fading_limits_core::strategy::ergodic_capacity;
use fading_limits_core::{
    Bandwidth, EntropyDistribution, EntropyThreshold, RatePolicy, SnrDistribution, ThresholdDuration,
    TransmissionSpec,
};

const T_C: f64 = 2e-3;

fn b20() -> Bandwidth {
    Bandwidth::new(2e7).unwrap()
}

fn block(db: f64, policy: &RatePolicy) -> EntropyDistribution {
    let d = SnrDistribution::rayleigh_db(db).unwrap();
    let step = default_grid_step(&d, policy, T_C, b20()).unwrap();
    per_block_entropy_distribution(&d, policy, T_C, b20(), step).unwrap()
}

/// Mean and variance of `T_c·B·log2(1 + γ)` by quadrature over the SNR.
fn ora_block_moments(mean_snr: f64) -> (f64, f64) {
    let scale = T_C * 2e7 / std::f64::consts::LN_2;
    let tol = Tolerance::relative(1e-12);
    let m1 = integrate_to_infinity(|t| (mean_snr * t).ln_1p() * (-t).exp(), 0.0, 1.0, tol).unwrap().value;
    let m2 = integrate_to_infinity(|t| (mean_snr * t).ln_1p().powi(2) * (-t).exp(), 0.0, 1.0, tol)
        .unwrap()
        .value;
    (scale * m1, scale * scale * (m2 - m1 * m1))
}

#[test]
fn per_block_mean_is_block_capacity() {
    let d = SnrDistribution::rayleigh_db(6.0).unwrap();
    let ed = block(6.0, &RatePolicy::Ora);
    let expected = T_C * ergodic_capacity(&d, &RatePolicy::Ora, b20()).unwrap();
    assert!((ed.mean() - expected).abs() < 1e-3 * expected);
    assert!((ed.total_mass() - 1.0).abs() < 1e-6);
}

#[test]
fn eightfold_moments_add_up() {
    let (m, v) = ora_block_moments(10f64.powf(0.6));
    let sum = convolve(&block(6.0, &RatePolicy::Ora), 8).unwrap();
    assert!((sum.mean() - 8.0 * m).abs() < 1e-3 * 8.0 * m);
    assert!((sum.variance() - 8.0 * v).abs() < 5e-3 * 8.0 * v);
    assert!((sum.total_mass() - 1.0).abs() < 1e-6);
}

#[test]
fn mass_conserved_for_both_policies() {
    for db in [-5.0, 6.0, 12.0] {
        let d = SnrDistribution::rayleigh_db(db).unwrap();
        for policy in [RatePolicy::Ora, RatePolicy::opra(&d).unwrap()] {
            let ed = block(db, &policy);
            for l in [2, 3, 5, 16] {
                let sum = convolve(&ed, l).unwrap();
                assert!((sum.total_mass() - 1.0).abs() < 1e-6, "{db} dB, L = {l}");
                assert!((sum.atom_at_zero() - ed.atom_at_zero().powi(l as i32)).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn dor_monotone_in_blocks_and_entropy() {
    let d = SnrDistribution::rayleigh_db(6.0).unwrap();
    for policy in [RatePolicy::Ora, RatePolicy::opra(&d).unwrap()] {
        for h in [1e5, 3e5, 6e5] {
            let spec = TransmissionSpec::new(h, b20(), T_C).unwrap();
            let dors: Vec<f64> = (1..=8)
                .map(|l| dor_multiblock(&spec, l, &d, &policy, None).unwrap())
                .collect();
            assert!(dors.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{dors:?}");
        }
        let step = default_grid_step(&d, &policy, T_C, b20()).unwrap();
        let mut prev = 0.0;
        for k in 1..40 {
            let spec = TransmissionSpec::new(2e4 * k as f64, b20(), T_C).unwrap();
            let dor = dor_multiblock(&spec, 4, &d, &policy, Some(step)).unwrap();
            assert!(dor >= prev - 1e-12);
            prev = dor;
        }
    }
}

#[test]
fn grid_halving_is_stable() {
    let d = SnrDistribution::rayleigh_db(6.0).unwrap();
    for policy in [RatePolicy::Ora, RatePolicy::opra(&d).unwrap()] {
        let step = default_grid_step(&d, &policy, T_C, b20()).unwrap();
        for l in [1, 2, 4, 8] {
            let spec = TransmissionSpec::new(4e5, b20(), T_C).unwrap();
            let coarse = dor_multiblock(&spec, l, &d, &policy, Some(step)).unwrap();
            let fine = dor_multiblock(&spec, l, &d, &policy, Some(step / 2.0)).unwrap();
            assert!((coarse - fine).abs() < 1e-3, "L = {l}: {coarse} vs {fine}");
        }
    }
}

#[test]
fn eight_blocks_match_monte_carlo() {
    let d = SnrDistribution::rayleigh_db(6.0).unwrap();
    let spec = TransmissionSpec::new(4e5, b20(), T_C).unwrap();
    let conv = dor_multiblock(&spec, 8, &d, &RatePolicy::Ora, None).unwrap();
    let t = ThresholdDuration::new(8.0 * T_C).unwrap();
    let mc = estimate_dor(&spec, t, &RatePolicy::Ora, &d, 1_000_000, 7).unwrap();
    assert!(mc.agrees_with(conv, 3.0), "conv {conv}, mc {mc:?}");
}

#[test]
fn fractional_duration_matches_monte_carlo() {
    let d = SnrDistribution::rayleigh_db(6.0).unwrap();
    let h = EntropyThreshold::new(2.5e5).unwrap();
    let conv = ior_multiblock(h, 3.5 * T_C, T_C, &d, &RatePolicy::Ora, b20(), None).unwrap();
    let mc = estimate_ior(h, 3.5 * T_C, T_C, &RatePolicy::Ora, &d, b20(), 1_000_000, 8).unwrap();
    assert!(mc.agrees_with(conv, 3.0), "conv {conv}, mc {mc:?}");
    let zero = ior_multiblock(EntropyThreshold::new(1e-6).unwrap(), 3.5 * T_C, T_C, &d, &RatePolicy::Ora, b20(), None)
        .unwrap();
    assert!(zero < 1e-9);
}

#[test]
fn three_way_agreement() {
    for db in [0.0, 6.0, 12.0] {
        let d = SnrDistribution::rayleigh_db(db).unwrap();
        for policy in [RatePolicy::Ora, RatePolicy::opra(&d).unwrap()] {
            // payload near the median of one block
            let h = T_C * 2e7 * policy.spectral_efficiency(d.quantile(0.5).unwrap());
            let spec = TransmissionSpec::new(h, b20(), T_C).unwrap();
            let t = ThresholdDuration::new(T_C).unwrap();
            let exact = dor_single_block(&spec, t, &d, &policy);
            let conv = dor_multiblock(&spec, 1, &d, &policy, None).unwrap();
            let mc = estimate_dor(&spec, t, &policy, &d, 1_000_000, 21).unwrap();
            assert!((exact - conv).abs() < 1e-4);
            assert!(mc.agrees_with(exact, 3.0) && mc.agrees_with(conv, 3.0));

            let spec = TransmissionSpec::new(3.0 * h, b20(), T_C).unwrap();
            let conv = dor_multiblock(&spec, 4, &d, &policy, None).unwrap();
            let t = ThresholdDuration::new(4.0 * T_C).unwrap();
            let mc = estimate_dor(&spec, t, &policy, &d, 1_000_000, 22).unwrap();
            assert!(mc.agrees_with(conv, 3.0), "{db} dB {policy:?}: conv {conv}, mc {mc:?}");
        }
    }
}

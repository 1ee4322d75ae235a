use fading_limits_core::analytic::{dor_single_block, ior_single_block};
use fading_limits_core::strategy::{instantaneous_rate, no_transmission_probability};
use fading_limits_core::{
    Bandwidth, EntropyThreshold, RatePolicy, SnrDistribution, ThresholdDuration, TransmissionSpec,
};
use proptest::prelude::*;

fn b20() -> Bandwidth {
    Bandwidth::new(20e6).unwrap()
}

fn policies(db: f64) -> (SnrDistribution, [RatePolicy; 2]) {
    let d = SnrDistribution::rayleigh_db(db).unwrap();
    let opra = RatePolicy::opra(&d).unwrap();
    (d, [RatePolicy::Ora, opra])
}

proptest! {
    #[test]
    fn rate_is_nondecreasing(cutoff in 0.05f64..1.0, g in 0.0f64..1e3, dg in 0.0f64..10.0) {
        for policy in [RatePolicy::Ora, RatePolicy::opra_with_cutoff(cutoff).unwrap()] {
            prop_assert!(instantaneous_rate(&policy, g + dg, b20()) >= instantaneous_rate(&policy, g, b20()));
        }
    }

    #[test]
    fn opra_below_ora_exactly_when_ratio_is_smaller(cutoff in 0.05f64..1.0, g in 1e-6f64..1e3) {
        let opra = RatePolicy::opra_with_cutoff(cutoff).unwrap();
        let lhs = g / cutoff;
        let rhs = 1.0 + g;
        prop_assume!((lhs - rhs).abs() > 1e-9 * rhs);
        let ordered = instantaneous_rate(&opra, g, b20()) < instantaneous_rate(&RatePolicy::Ora, g, b20());
        prop_assert_eq!(ordered, lhs < rhs);
    }

    #[test]
    fn outages_are_probabilities(db in -15.0f64..25.0, h in 1.0f64..1e8, t in 1e-6f64..10.0) {
        let (d, pols) = policies(db);
        let spec = TransmissionSpec::new(h, b20(), 1.0).unwrap();
        for p in &pols {
            let dor = dor_single_block(&spec, ThresholdDuration::new(t).unwrap(), &d, p);
            prop_assert!((0.0..=1.0).contains(&dor));
        }
    }

    #[test]
    fn dor_equals_ior_bit_for_bit(db in -15.0f64..25.0, h in 1.0f64..1e8, t in 1e-6f64..10.0) {
        let (d, pols) = policies(db);
        let spec = TransmissionSpec::new(h, b20(), 1.0).unwrap();
        for p in &pols {
            let dor = dor_single_block(&spec, ThresholdDuration::new(t).unwrap(), &d, p);
            let ior = ior_single_block(EntropyThreshold::new(h).unwrap(), t, b20(), &d, p);
            prop_assert_eq!(dor.to_bits(), ior.to_bits());
        }
    }

    #[test]
    fn dor_monotone(db in -10.0f64..20.0, h in 1e3f64..1e7, t in 1e-5f64..1.0, k in 1.0f64..4.0) {
        let (d, pols) = policies(db);
        let spec = TransmissionSpec::new(h, b20(), 1.0).unwrap();
        let bigger = TransmissionSpec::new(h * k, b20(), 1.0).unwrap();
        let t1 = ThresholdDuration::new(t).unwrap();
        let t2 = ThresholdDuration::new(t * k).unwrap();
        for p in &pols {
            prop_assert!(dor_single_block(&spec, t2, &d, p) <= dor_single_block(&spec, t1, &d, p));
            prop_assert!(dor_single_block(&bigger, t1, &d, p) >= dor_single_block(&spec, t1, &d, p));
        }
    }

    #[test]
    fn ior_monotone(db in -10.0f64..20.0, h in 1e3f64..1e7, t in 1e-5f64..1.0, k in 1.0f64..4.0) {
        let (d, pols) = policies(db);
        let h1 = EntropyThreshold::new(h).unwrap();
        let h2 = EntropyThreshold::new(h * k).unwrap();
        for p in &pols {
            prop_assert!(ior_single_block(h2, t, b20(), &d, p) >= ior_single_block(h1, t, b20(), &d, p));
            prop_assert!(ior_single_block(h1, t * k, b20(), &d, p) <= ior_single_block(h1, t, b20(), &d, p));
        }
    }

    #[test]
    fn quantile_inverts_cdf(db in -20.0f64..30.0, p in 0.0f64..0.999) {
        let d = SnrDistribution::rayleigh_db(db).unwrap();
        prop_assert!((d.cdf(d.quantile(p).unwrap()) - p).abs() < 1e-12);
    }
}

/// ORA has the lower single-block DOR exactly when `2^e·(1 − γ_T) ≤ 1` with
/// `e = H/(B·T_th)`, so OPRA always wins for stringent enough thresholds.
#[test]
fn ora_opra_ordering_follows_the_crossover_efficiency() {
    for db in [-10.0, -5.0, 0.0, 6.0, 12.0] {
        let (d, [ora, opra]) = policies(db);
        let cutoff = opra.cutoff().unwrap();
        let crossover = -(1.0 - cutoff).log2();
        for k in 0..200 {
            let e = 0.01 * 1.03f64.powi(k);
            if (e - crossover).abs() < 1e-6 {
                continue;
            }
            let spec = TransmissionSpec::new(e * 20e6 * 1e-3, b20(), 1.0).unwrap();
            let t = ThresholdDuration::new(1e-3).unwrap();
            let (a, b) = (dor_single_block(&spec, t, &d, &ora), dor_single_block(&spec, t, &d, &opra));
            if a == 1.0 && b == 1.0 {
                continue;
            }
            assert_eq!(a <= b, e < crossover, "{db} dB, e = {e}: ora {a}, opra {b}");
        }
    }
}

#[test]
fn six_db_crossover_in_threshold() {
    let (d, [ora, opra]) = policies(6.0);
    let spec = TransmissionSpec::new(4e5, b20(), 10.0).unwrap();
    let grid: Vec<f64> = (0..=80).map(|k| 1e-4 * 10f64.powf(k as f64 / 20.0)).collect();
    let signs: Vec<i8> = grid
        .iter()
        .map(|&t| {
            let t = ThresholdDuration::new(t).unwrap();
            let diff = dor_single_block(&spec, t, &d, &opra) - dor_single_block(&spec, t, &d, &ora);
            if diff < 0.0 {
                -1
            } else if diff > 0.0 {
                1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    assert_eq!(signs.first(), Some(&-1));
    assert_eq!(signs.last(), Some(&1));
    assert_eq!(signs.windows(2).filter(|w| w[0] != w[1]).count(), 1);
}

#[test]
fn opra_dor_tends_to_the_silence_probability() {
    let (d, [_, opra]) = policies(6.0);
    let floor = no_transmission_probability(&d, &opra);
    let spec = TransmissionSpec::new(4e5, b20(), 1e12).unwrap();
    let far = dor_single_block(&spec, ThresholdDuration::new(1e10).unwrap(), &d, &opra);
    assert!((far - floor).abs() < 1e-9);
}

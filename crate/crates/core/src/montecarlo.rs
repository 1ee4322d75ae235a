//! Seeded episode-level simulation of block-fading transmission.
//!
//! An episode draws one SNR per coherence block and either delivers a
//! payload (MTT episodes) or transmits for a fixed duration (MET episodes).
//! Every episode owns a generator seeded from `(master_seed, index)`, so an
//! estimate depends only on the master seed and the episode count, never on
//! how episodes are split across workers.

use alloc::format;
use alloc::vec::Vec;
use core::ops::Range;

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::analytic::{EntropyThreshold, ThresholdDuration, TransmissionSpec};
use crate::channel::SnrDistribution;
use crate::multiblock::split_blocks;
use crate::strategy::{instantaneous_rate, Bandwidth, RatePolicy};
use crate::{Error, Result};

/// Smallest episode count accepted by the estimators.
pub const MIN_EPISODES: u64 = 100;
const Z95: f64 = 1.959_963_984_540_054;

/// One simulated payload delivery.
#[derive(Debug, Clone, PartialEq)]
pub struct EpisodeTrace {
    /// SNR of every block that was drawn.
    pub block_snrs: Vec<f64>,
    /// Capacity of each drawn block, `T_c·rate(γ_i)`, in bits.
    pub per_block_bits: Vec<f64>,
    /// Delivery time, or `max_blocks·T_c` when censored.
    pub mtt_s: f64,
    pub blocks_used: usize,
    /// The payload was not delivered within `max_blocks`.
    pub censored: bool,
}

/// Monte Carlo estimate of an outage probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub probability: f64,
    pub n_episodes: u64,
    pub std_error: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub master_seed: u64,
}

impl McEstimate {
    /// Indicator estimator with a normal-approximation 95% interval.
    pub fn from_count(outages: u64, n_episodes: u64, master_seed: u64) -> Self {
        let n = n_episodes as f64;
        let probability = outages as f64 / n;
        let std_error = libm::sqrt(probability * (1.0 - probability) / n);
        Self {
            probability,
            n_episodes,
            std_error,
            ci95_low: (probability - Z95 * std_error).max(0.0),
            ci95_high: (probability + Z95 * std_error).min(1.0),
            master_seed,
        }
    }

    /// Standard error of an indicator estimator with true probability
    /// `reference`, at this sample size.
    pub fn reference_std_error(&self, reference: f64) -> f64 {
        libm::sqrt(reference * (1.0 - reference) / self.n_episodes as f64)
    }

    /// Number of standard errors between the estimate and `reference`.
    ///
    /// The larger of the empirical and the reference standard error is used,
    /// so an estimate of exactly 0 or 1 is not judged with a zero error bar.
    pub fn z_score(&self, reference: f64) -> f64 {
        let sigma = self.std_error.max(self.reference_std_error(reference));
        let diff = (self.probability - reference).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / sigma
        }
    }

    pub fn agrees_with(&self, reference: f64, sigmas: f64) -> bool {
        self.z_score(reference) <= sigmas
    }
}

/// Seed of episode `index` under `master_seed` (SplitMix64 finaliser).
pub fn episode_seed(master_seed: u64, index: u64) -> u64 {
    let mut z = master_seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn episode_rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Block cap used by [`estimate_dor`]: `⌈10·T_th/T_c⌉ + 64`.
pub fn default_max_blocks(t_th: ThresholdDuration, t_c: f64) -> usize {
    let blocks = libm::ceil(10.0 * t_th.seconds() / t_c);
    if blocks >= (usize::MAX / 2) as f64 {
        usize::MAX / 2
    } else {
        blocks as usize + 64
    }
}

/// Simulates one delivery of `spec.entropy_bits()`; the final block is used
/// fractionally.
pub fn simulate_mtt(
    spec: &TransmissionSpec,
    policy: &RatePolicy,
    dist: &SnrDistribution,
    seed: u64,
    max_blocks: usize,
) -> Result<EpisodeTrace> {
    if max_blocks == 0 {
        return Err(Error::Domain("max_blocks must be at least 1".into()));
    }
    let (h, t_c, b) = (spec.entropy_bits(), spec.coherence_time_s(), spec.bandwidth());
    let mut rng = episode_rng(seed);
    let mut trace = EpisodeTrace {
        block_snrs: Vec::new(),
        per_block_bits: Vec::new(),
        mtt_s: max_blocks as f64 * t_c,
        blocks_used: max_blocks,
        censored: true,
    };
    let mut delivered = 0.0;
    for k in 0..max_blocks {
        let snr = dist.sample(&mut rng);
        let rate = instantaneous_rate(policy, snr, b);
        let bits = t_c * rate;
        trace.block_snrs.push(snr);
        trace.per_block_bits.push(bits);
        if rate > 0.0 && delivered + bits >= h {
            trace.mtt_s = k as f64 * t_c + (h - delivered) / rate;
            trace.blocks_used = k + 1;
            trace.censored = false;
            break;
        }
        delivered += bits;
    }
    Ok(trace)
}

// Same draws as `simulate_mtt`, stopping as soon as the outcome against
// `t_th` is known.
fn mtt_exceeds(
    spec: &TransmissionSpec,
    t_th: f64,
    policy: &RatePolicy,
    dist: &SnrDistribution,
    seed: u64,
    max_blocks: usize,
) -> bool {
    let (h, t_c, b) = (spec.entropy_bits(), spec.coherence_time_s(), spec.bandwidth());
    let mut rng = episode_rng(seed);
    let mut delivered = 0.0;
    for k in 0..max_blocks {
        let start = k as f64 * t_c;
        if start >= t_th {
            return true;
        }
        let rate = instantaneous_rate(policy, dist.sample(&mut rng), b);
        let bits = t_c * rate;
        if rate > 0.0 && delivered + bits >= h {
            return start + (h - delivered) / rate > t_th;
        }
        delivered += bits;
    }
    true
}

/// Counts episodes in `episodes` whose MTT exceeds `t_th`. Censored
/// episodes count as outages.
pub fn count_dor_outages(
    spec: &TransmissionSpec,
    t_th: ThresholdDuration,
    policy: &RatePolicy,
    dist: &SnrDistribution,
    master_seed: u64,
    episodes: Range<u64>,
) -> u64 {
    let max_blocks = default_max_blocks(t_th, spec.coherence_time_s());
    episodes
        .filter(|&i| mtt_exceeds(spec, t_th.seconds(), policy, dist, episode_seed(master_seed, i), max_blocks))
        .count() as u64
}

fn check_episodes(n_episodes: u64) -> Result<()> {
    if n_episodes >= MIN_EPISODES {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "at least {MIN_EPISODES} episodes are required, got {n_episodes}"
        )))
    }
}

/// Monte Carlo delay outage rate `Pr[MTT > T_th]`.
pub fn estimate_dor(
    spec: &TransmissionSpec,
    t_th: ThresholdDuration,
    policy: &RatePolicy,
    dist: &SnrDistribution,
    n_episodes: u64,
    master_seed: u64,
) -> Result<McEstimate> {
    check_episodes(n_episodes)?;
    let outages = count_dor_outages(spec, t_th, policy, dist, master_seed, 0..n_episodes);
    Ok(McEstimate::from_count(outages, n_episodes, master_seed))
}

/// Entropy delivered in `duration_s`: full blocks plus the remaining time at
/// the rate of one more block.
pub fn simulate_met(
    duration_s: f64,
    t_c: f64,
    policy: &RatePolicy,
    dist: &SnrDistribution,
    b: Bandwidth,
    seed: u64,
) -> f64 {
    let (full, remainder) = split_blocks(duration_s, t_c);
    let mut rng = episode_rng(seed);
    let mut bits = 0.0;
    for _ in 0..full {
        bits += t_c * instantaneous_rate(policy, dist.sample(&mut rng), b);
    }
    if remainder > 0.0 {
        bits += remainder * instantaneous_rate(policy, dist.sample(&mut rng), b);
    }
    bits
}

/// Counts episodes in `episodes` whose MET falls below `h_th`.
#[allow(clippy::too_many_arguments)]
pub fn count_ior_outages(
    h_th: EntropyThreshold,
    duration_s: f64,
    t_c: f64,
    policy: &RatePolicy,
    dist: &SnrDistribution,
    b: Bandwidth,
    master_seed: u64,
    episodes: Range<u64>,
) -> u64 {
    episodes
        .filter(|&i| simulate_met(duration_s, t_c, policy, dist, b, episode_seed(master_seed, i)) < h_th.bits())
        .count() as u64
}

/// Monte Carlo information outage rate `Pr[MET(T) < H_th]`.
#[allow(clippy::too_many_arguments)]
pub fn estimate_ior(
    h_th: EntropyThreshold,
    duration_s: f64,
    t_c: f64,
    policy: &RatePolicy,
    dist: &SnrDistribution,
    b: Bandwidth,
    n_episodes: u64,
    master_seed: u64,
) -> Result<McEstimate> {
    check_episodes(n_episodes)?;
    if !(duration_s > 0.0 && t_c > 0.0 && duration_s.is_finite() && t_c.is_finite()) {
        return Err(Error::Domain(format!(
            "duration and coherence time must be positive, got {duration_s} and {t_c}"
        )));
    }
    let outages = count_ior_outages(h_th, duration_s, t_c, policy, dist, b, master_seed, 0..n_episodes);
    Ok(McEstimate::from_count(outages, n_episodes, master_seed))
}

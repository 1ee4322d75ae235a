//! Multi-threaded Monte Carlo estimation.
//!
//! Episodes are split into fixed chunks and the outage counts summed, so
//! the result is identical for any number of worker threads.

use fading_limits_core::montecarlo::{count_dor_outages, count_ior_outages, MIN_EPISODES};
use fading_limits_core::{
    Bandwidth, EntropyThreshold, Error, McEstimate, RatePolicy, SnrDistribution, ThresholdDuration,
    TransmissionSpec,
};
use rayon::prelude::*;

const CHUNK: u64 = 1 << 14;

fn chunks(n_episodes: u64) -> impl IndexedParallelIterator<Item = std::ops::Range<u64>> {
    let count = usize::try_from(n_episodes.div_ceil(CHUNK)).expect("chunk count fits in usize");
    (0..count).into_par_iter().map(move |c| {
        let c = c as u64;
        c * CHUNK..((c + 1) * CHUNK).min(n_episodes)
    })
}

fn check(n_episodes: u64) -> Result<(), Error> {
    if n_episodes < MIN_EPISODES {
        return Err(Error::Domain(format!(
            "at least {MIN_EPISODES} episodes are required, got {n_episodes}"
        )));
    }
    Ok(())
}

/// Parallel counterpart of `montecarlo::estimate_dor`.
pub fn estimate_dor(
    spec: &TransmissionSpec,
    t_th: ThresholdDuration,
    policy: &RatePolicy,
    dist: &SnrDistribution,
    n_episodes: u64,
    master_seed: u64,
) -> Result<McEstimate, Error> {
    check(n_episodes)?;
    let outages = chunks(n_episodes)
        .map(|r| count_dor_outages(spec, t_th, policy, dist, master_seed, r))
        .sum();
    Ok(McEstimate::from_count(outages, n_episodes, master_seed))
}

/// Parallel counterpart of `montecarlo::estimate_ior`.
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
) -> Result<McEstimate, Error> {
    check(n_episodes)?;
    if !(duration_s > 0.0 && t_c > 0.0) {
        return Err(Error::Domain("duration and coherence time must be positive".into()));
    }
    let outages = chunks(n_episodes)
        .map(|r| count_ior_outages(h_th, duration_s, t_c, policy, dist, b, master_seed, r))
        .sum();
    Ok(McEstimate::from_count(outages, n_episodes, master_seed))
}

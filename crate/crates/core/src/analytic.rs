//! Closed-form limits for a transmission confined to one coherence time,
//! and the ergodic limits for transmissions spanning very many.
//!
//! Over one coherence time the SNR is frozen, so each outage event reduces
//! to the SNR falling below a threshold:
//!
//! * ORA: `DOR = F(2^(H/(B·T_th)) − 1)` and `IOR = F(2^(H_th/(B·T)) − 1)`;
//! * OPRA: `DOR = F(γ_T·2^(H/(B·T_th)))` and `IOR = F(γ_T·2^(H_th/(B·T)))`,
//!
//! where `F` is the SNR cdf. `{MTT(H) > T}` and `{MET(T) < H}` are the same
//! event, so DOR and IOR share one evaluation path.

use alloc::format;

use crate::channel::SnrDistribution;
use crate::strategy::{ergodic_capacity, instantaneous_rate, Bandwidth, RatePolicy};
use crate::{Error, Result};

/// Payload entropy `H`, bandwidth `B` and coherence time `T_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionSpec {
    entropy_bits: f64,
    bandwidth: Bandwidth,
    coherence_time_s: f64,
}

impl TransmissionSpec {
    pub fn new(entropy_bits: f64, bandwidth: Bandwidth, coherence_time_s: f64) -> Result<Self> {
        positive("entropy", entropy_bits)?;
        positive("coherence time", coherence_time_s)?;
        Ok(Self {
            entropy_bits,
            bandwidth,
            coherence_time_s,
        })
    }

    pub fn entropy_bits(&self) -> f64 {
        self.entropy_bits
    }

    pub fn bandwidth(&self) -> Bandwidth {
        self.bandwidth
    }

    pub fn coherence_time_s(&self) -> f64 {
        self.coherence_time_s
    }
}

/// Delay threshold `T_th` in seconds.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct ThresholdDuration(f64);

impl ThresholdDuration {
    pub fn new(seconds: f64) -> Result<Self> {
        positive("threshold duration", seconds).map(Self)
    }

    pub fn seconds(&self) -> f64 {
        self.0
    }
}

/// Entropy threshold `H_th` in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropyThreshold(f64);

impl EntropyThreshold {
    pub fn new(bits: f64) -> Result<Self> {
        positive("entropy threshold", bits).map(Self)
    }

    pub fn bits(&self) -> f64 {
        self.0
    }
}

fn positive(what: &str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain(format!("{what} must be positive and finite, got {value}")))
    }
}

/// Time to deliver the payload at a frozen SNR; `+∞` when the rate is zero.
pub fn mtt_instantaneous(spec: &TransmissionSpec, policy: &RatePolicy, snr: f64) -> f64 {
    let rate = instantaneous_rate(policy, snr, spec.bandwidth);
    if rate > 0.0 {
        spec.entropy_bits / rate
    } else {
        f64::INFINITY
    }
}

/// `H / C̄`, the transmission time once the payload spans many coherence
/// times.
pub fn mtt_ergodic(spec: &TransmissionSpec, dist: &SnrDistribution, policy: &RatePolicy) -> Result<f64> {
    Ok(spec.entropy_bits / ergodic_capacity(dist, policy, spec.bandwidth)?)
}

/// `T·rate(γ)`, the deliverable entropy within one coherence time.
pub fn met_instantaneous(duration_s: f64, b: Bandwidth, policy: &RatePolicy, snr: f64) -> f64 {
    duration_s * instantaneous_rate(policy, snr, b)
}

/// `T·C̄`.
pub fn met_ergodic(duration_s: f64, dist: &SnrDistribution, policy: &RatePolicy, b: Bandwidth) -> Result<f64> {
    Ok(duration_s * ergodic_capacity(dist, policy, b)?)
}

/// `Pr[T·rate(γ) < bits]` for a frozen SNR.
fn single_block_outage(bits: f64, seconds: f64, b: Bandwidth, dist: &SnrDistribution, policy: &RatePolicy) -> f64 {
    let efficiency = bits / (b.hz() * seconds);
    // 2^efficiency overflows past ~1024 bit/s/Hz; the cdf saturates at 1.
    let snr = policy.snr_for_efficiency(efficiency);
    if snr.is_finite() {
        dist.cdf(snr)
    } else {
        1.0
    }
}

/// Delay outage rate `Pr[MTT > T_th]` within one coherence time.
pub fn dor_single_block(
    spec: &TransmissionSpec,
    t_th: ThresholdDuration,
    dist: &SnrDistribution,
    policy: &RatePolicy,
) -> f64 {
    single_block_outage(spec.entropy_bits, t_th.seconds(), spec.bandwidth, dist, policy)
}

/// Information outage rate `Pr[MET(T) < H_th]` within one coherence time.
pub fn ior_single_block(
    h_th: EntropyThreshold,
    duration_s: f64,
    b: Bandwidth,
    dist: &SnrDistribution,
    policy: &RatePolicy,
) -> f64 {
    single_block_outage(h_th.bits(), duration_s, b, dist, policy)
}

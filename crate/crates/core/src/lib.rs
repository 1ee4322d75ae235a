//! Data-oriented performance limits for adaptive transmission over
//! Rayleigh block-fading channels.
//!
//! The crate computes the minimum transmission time (MTT) of a payload,
//! the maximum entropy throughput (MET) of a time-bandwidth resource, and
//! their outage probabilities, the delay outage rate (DOR) and the
//! information outage rate (IOR). Two CSIT strategies are covered:
//!
//! * optimal rate adaptation (ORA), rate `B·log2(1 + γ)` at constant power;
//! * optimal power and rate adaptation (OPRA), water-filling power with rate
//!   `B·log2(γ / γ_T)` above the cutoff `γ_T` and silence below it.
//!
//! Three evaluation routes are provided and cross-check each other:
//!
//! * [`analytic`]: closed forms for a transmission confined to one coherence
//!   time, and the ergodic (many coherence times) limits;
//! * [`multiblock`]: numerical convolution of the per-block entropy
//!   distribution for transmissions spanning several coherence times;
//! * [`montecarlo`]: a seeded episode simulator.
//!
//! The crate is `no_std` and only needs `alloc`. IO, the command-line front
//! end and the multi-threaded Monte Carlo driver live in the `fading-limits`
//! crate.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod channel;
mod error;
mod fft;
pub mod montecarlo;
pub mod multiblock;
pub mod quad;
pub mod special;
pub mod strategy;

pub use analytic::{EntropyThreshold, ThresholdDuration, TransmissionSpec};
pub use channel::{AverageSnr, SnrDistribution};
pub use error::{Error, Result};
pub use montecarlo::{EpisodeTrace, McEstimate};
pub use multiblock::EntropyDistribution;
pub use strategy::{Bandwidth, RatePolicy};

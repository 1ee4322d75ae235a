//! ORA and OPRA rate laws, the water-filling cutoff, and ergodic capacity.

use alloc::format;
use core::f64::consts::LN_2;

use crate::channel::SnrDistribution;
use crate::quad::{self, Tolerance};
use crate::special::{exp_scaled_e1, exponential_integral_e1};
use crate::{Error, Result};

/// Lower end of the initial cutoff bracket.
pub const CUTOFF_BRACKET_LOW: f64 = 1e-9;
/// Largest acceptable `|residual(γ_T)|`.
pub const CUTOFF_RESIDUAL_TOLERANCE: f64 = 1e-10;
const MAX_BISECTIONS: usize = 200;
const MAX_BRACKET_DOUBLINGS: usize = 1100;

const QUAD_TOL: Tolerance = Tolerance {
    absolute: 1e-300,
    relative: 1e-13,
    max_intervals: 4000,
};

/// Channel bandwidth in hertz.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Bandwidth(f64);

impl Bandwidth {
    pub fn new(hz: f64) -> Result<Self> {
        if hz > 0.0 && hz.is_finite() {
            Ok(Self(hz))
        } else {
            Err(Error::Domain(format!("bandwidth must be positive and finite, got {hz} Hz")))
        }
    }

    pub fn hz(&self) -> f64 {
        self.0
    }
}

/// Channel-adaptive transmission strategy with full CSIT.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatePolicy {
    /// Optimal rate adaptation at constant power.
    Ora,
    /// Optimal power and rate adaptation. `cutoff` is the water-filling
    /// threshold `γ_T`; no transmission happens below it.
    Opra { cutoff: f64 },
}

impl RatePolicy {
    /// OPRA with the water-filling cutoff solved for `dist`.
    pub fn opra(dist: &SnrDistribution) -> Result<Self> {
        waterfilling_cutoff(dist).map(|cutoff| Self::Opra { cutoff })
    }

    /// OPRA with a caller-supplied cutoff.
    pub fn opra_with_cutoff(cutoff: f64) -> Result<Self> {
        if cutoff > 0.0 && cutoff.is_finite() {
            Ok(Self::Opra { cutoff })
        } else {
            Err(Error::Domain(format!("OPRA cutoff must be positive and finite, got {cutoff}")))
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Ora => "ora",
            Self::Opra { .. } => "opra",
        }
    }

    pub fn cutoff(&self) -> Option<f64> {
        match *self {
            Self::Ora => None,
            Self::Opra { cutoff } => Some(cutoff),
        }
    }

    /// Spectral efficiency in bit/s/Hz at SNR `snr`.
    pub fn spectral_efficiency(&self, snr: f64) -> f64 {
        match *self {
            Self::Ora => libm::log1p(snr.max(0.0)) / LN_2,
            Self::Opra { cutoff } => {
                if snr > cutoff {
                    libm::log2(snr / cutoff)
                } else {
                    0.0
                }
            }
        }
    }

    /// Lowest SNR at which the spectral efficiency reaches `efficiency`
    /// bit/s/Hz. May overflow to `+∞`.
    pub fn snr_for_efficiency(&self, efficiency: f64) -> f64 {
        let exponent = efficiency * LN_2;
        match *self {
            Self::Ora => libm::expm1(exponent),
            Self::Opra { cutoff } => cutoff * libm::exp(exponent),
        }
    }
}

/// Instantaneous rate in bit/s.
pub fn instantaneous_rate(policy: &RatePolicy, snr: f64, b: Bandwidth) -> f64 {
    b.hz() * policy.spectral_efficiency(snr)
}

/// Water-filling power-constraint residual in closed form for Rayleigh
/// fading: `e^(−γ_T/γ̄)/γ_T − E1(γ_T/γ̄)/γ̄ − 1`.
pub fn cutoff_residual(dist: &SnrDistribution, cutoff: f64) -> Result<f64> {
    let mean = dist.rayleigh_mean("water-filling residual")?;
    check_cutoff(cutoff)?;
    let a = cutoff / mean;
    Ok(libm::exp(-a) / cutoff - exponential_integral_e1(a)? / mean - 1.0)
}

/// The same residual by adaptive quadrature of
/// `∫_{γ_T}^∞ (1/γ_T − 1/γ)·p(γ) dγ − 1`.
pub fn cutoff_residual_quadrature(dist: &SnrDistribution, cutoff: f64) -> Result<f64> {
    let mean = dist.rayleigh_mean("water-filling residual")?;
    check_cutoff(cutoff)?;
    let integral = quad::integrate_to_infinity(
        |g| (1.0 / cutoff - 1.0 / g) * libm::exp(-g / mean) / mean,
        cutoff,
        mean,
        QUAD_TOL,
    )?;
    Ok(integral.value - 1.0)
}

fn check_cutoff(cutoff: f64) -> Result<()> {
    if cutoff > 0.0 && cutoff.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("cutoff SNR must be positive and finite, got {cutoff}")))
    }
}

/// Solves the water-filling cutoff `γ_T` of the unit-average-power
/// constraint by bracketed bisection.
///
/// The residual is strictly decreasing in `γ_T`. The bracket starts at
/// `[1e-9, γ̄]` and the upper end doubles until the residual turns negative.
pub fn waterfilling_cutoff(dist: &SnrDistribution) -> Result<f64> {
    let mean = dist.rayleigh_mean("water-filling cutoff")?;
    let residual = |c: f64| cutoff_residual(dist, c);

    let mut lo = CUTOFF_BRACKET_LOW;
    let r_lo = residual(lo)?;
    if !(r_lo > 0.0) {
        return Err(Error::Numerical(format!(
            "water-filling cutoff for mean SNR {mean:e} lies below the solver range \
             (residual at {lo:e} is {r_lo:e})"
        )));
    }
    let mut hi = mean.max(2.0 * lo);
    let mut r_hi = residual(hi)?;
    let mut doublings = 0;
    while r_hi >= 0.0 {
        doublings += 1;
        if doublings > MAX_BRACKET_DOUBLINGS || !hi.is_finite() {
            return Err(Error::Numerical(format!(
                "could not bracket the water-filling cutoff for mean SNR {mean:e} \
                 (last upper end {hi:e}, residual {r_hi:e})"
            )));
        }
        lo = hi;
        hi *= 2.0;
        r_hi = residual(hi)?;
    }

    let (mut best, mut best_residual) = (hi, r_hi);
    for _ in 0..MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let r = residual(mid)?;
        if r.abs() < best_residual.abs() {
            best = mid;
            best_residual = r;
        }
        if r == 0.0 {
            break;
        }
        if r > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if best_residual.abs() < CUTOFF_RESIDUAL_TOLERANCE {
        Ok(best)
    } else {
        Err(Error::Numerical(format!(
            "water-filling bisection ended at {best:e} with residual {best_residual:e}"
        )))
    }
}

/// Probability that OPRA stays silent, `Pr[γ < γ_T]`. Zero for ORA.
pub fn no_transmission_probability(dist: &SnrDistribution, policy: &RatePolicy) -> f64 {
    match policy.cutoff() {
        Some(c) => dist.cdf(c),
        None => 0.0,
    }
}

/// Ergodic capacity in bit/s by adaptive quadrature of the rate against
/// the SNR density.
pub fn ergodic_capacity(dist: &SnrDistribution, policy: &RatePolicy, b: Bandwidth) -> Result<f64> {
    let mean = dist.rayleigh_mean("ergodic capacity")?;
    let efficiency = match *policy {
        // γ = γ̄·t
        RatePolicy::Ora => quad::integrate_to_infinity(
            |t| libm::log1p(mean * t) / LN_2 * libm::exp(-t),
            0.0,
            1.0,
            QUAD_TOL,
        )?,
        RatePolicy::Opra { cutoff } => quad::integrate_to_infinity(
            |g| libm::log2(g / cutoff) * libm::exp(-g / mean) / mean,
            cutoff,
            mean,
            QUAD_TOL,
        )?,
    };
    Ok(b.hz() * efficiency.value)
}

/// Rayleigh ergodic capacity in closed form: `(B/ln2)·e^(1/γ̄)·E1(1/γ̄)`
/// for ORA and `(B/ln2)·E1(γ_T/γ̄)` for OPRA.
pub fn ergodic_capacity_closed_form(dist: &SnrDistribution, policy: &RatePolicy, b: Bandwidth) -> Result<f64> {
    let mean = dist.rayleigh_mean("ergodic capacity")?;
    let nats = match *policy {
        RatePolicy::Ora => exp_scaled_e1(1.0 / mean)?,
        RatePolicy::Opra { cutoff } => exponential_integral_e1(cutoff / mean)?,
    };
    Ok(b.hz() * nats / LN_2)
}

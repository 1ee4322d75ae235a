//! Exponential integral `E1`.

use alloc::format;

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const TERM_TOLERANCE: f64 = 1e-16;
const MAX_TERMS: usize = 500;

/// `E1(x) = ∫_x^∞ e^(−t)/t dt` for `x > 0`.
///
/// Power series for `x ≤ 1`, modified-Lentz continued fraction above. The
/// result underflows to zero for `x` beyond roughly 740.
pub fn exponential_integral_e1(x: f64) -> Result<f64> {
    check_domain(x)?;
    if x <= 1.0 {
        Ok(series(x))
    } else {
        Ok(continued_fraction_scaled(x) * libm::exp(-x))
    }
}

/// `e^x · E1(x)`, finite for every `x > 0`.
///
/// Rayleigh capacities need `e^(1/γ̄)·E1(1/γ̄)`, whose factors overflow and
/// underflow separately at low average SNR.
pub fn exp_scaled_e1(x: f64) -> Result<f64> {
    check_domain(x)?;
    if x <= 1.0 {
        Ok(libm::exp(x) * series(x))
    } else {
        Ok(continued_fraction_scaled(x))
    }
}

fn check_domain(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("E1 needs a positive finite argument, got {x}")))
    }
}

// −γ − ln x − Σ_{k≥1} (−x)^k / (k·k!)
fn series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut power = 1.0;
    for k in 1..MAX_TERMS {
        let k = k as f64;
        power *= -x / k;
        let term = power / k;
        sum += term;
        if term.abs() < TERM_TOLERANCE * sum.abs() {
            break;
        }
    }
    -EULER_GAMMA - libm::log(x) - sum
}

// e^x·E1(x) = 1/(x+1− 1/(x+3− 4/(x+5− ...)))
fn continued_fraction_scaled(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = x + 1.0;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_TERMS {
        let an = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        let delta = c * d;
        h *= delta;
        if (delta - 1.0).abs() < TERM_TOLERANCE {
            break;
        }
    }
    h
}

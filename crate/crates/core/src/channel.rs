//! Instantaneous received-SNR models and i.i.d. block-fading sequences.

use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::{Error, Result};

/// Average received SNR, held in both decibels and linear scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AverageSnr {
    db: f64,
    linear: f64,
}

impl AverageSnr {
    pub fn from_db(db: f64) -> Result<Self> {
        let linear = libm::pow(10.0, db / 10.0);
        if !(db.is_finite() && linear > 0.0 && linear.is_finite()) {
            return Err(Error::Domain(format!("average SNR of {db} dB is outside the representable range")));
        }
        Ok(Self { db, linear })
    }

    pub fn from_linear(linear: f64) -> Result<Self> {
        if !(linear > 0.0 && linear.is_finite()) {
            return Err(Error::Domain(format!("average SNR must be positive and finite, got {linear}")));
        }
        Ok(Self {
            db: 10.0 * libm::log10(linear),
            linear,
        })
    }

    pub fn db(&self) -> f64 {
        self.db
    }

    pub fn linear(&self) -> f64 {
        self.linear
    }
}

/// Statistical model of the instantaneous received SNR `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SnrDistribution {
    /// Rayleigh envelope fading: `γ` is exponential with mean `γ̄`.
    Rayleigh { mean: AverageSnr },
    /// Constant SNR. Only cdf, quantile and sampling are defined.
    Degenerate { snr: f64 },
}

impl SnrDistribution {
    pub fn rayleigh(mean: AverageSnr) -> Self {
        Self::Rayleigh { mean }
    }

    pub fn rayleigh_db(db: f64) -> Result<Self> {
        AverageSnr::from_db(db).map(Self::rayleigh)
    }

    pub fn degenerate(snr: f64) -> Result<Self> {
        if !(snr >= 0.0 && snr.is_finite()) {
            return Err(Error::Domain(format!("fixed SNR must be finite and non-negative, got {snr}")));
        }
        Ok(Self::Degenerate { snr })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Rayleigh { .. } => "Rayleigh",
            Self::Degenerate { .. } => "degenerate",
        }
    }

    /// Mean of `γ` in linear scale.
    pub fn mean_linear(&self) -> f64 {
        match *self {
            Self::Rayleigh { mean } => mean.linear(),
            Self::Degenerate { snr } => snr,
        }
    }

    pub(crate) fn unsupported(&self, operation: &'static str) -> Error {
        Error::Unsupported {
            operation,
            kind: self.kind(),
        }
    }

    /// Returns the Rayleigh mean or an unsupported-operation error.
    pub(crate) fn rayleigh_mean(&self, operation: &'static str) -> Result<f64> {
        match *self {
            Self::Rayleigh { mean } => Ok(mean.linear()),
            Self::Degenerate { .. } => Err(self.unsupported(operation)),
        }
    }

    pub fn pdf(&self, snr: f64) -> Result<f64> {
        let mean = self.rayleigh_mean("pdf")?;
        if !(snr >= 0.0) {
            return Err(Error::Domain(format!("pdf needs a non-negative SNR, got {snr}")));
        }
        Ok(libm::exp(-snr / mean) / mean)
    }

    /// `Pr[γ ≤ x]`. Both kinds put no mass on a single point except
    /// `Degenerate`, whose step is right-continuous at the fixed SNR.
    pub fn cdf(&self, snr: f64) -> f64 {
        match *self {
            Self::Rayleigh { mean } => -libm::expm1(-snr.max(0.0) / mean.linear()),
            Self::Degenerate { snr: fixed } => {
                if snr >= fixed {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// `Pr[γ > x]`, accurate far into the tail.
    pub fn survival(&self, snr: f64) -> f64 {
        match *self {
            Self::Rayleigh { mean } => libm::exp(-snr.max(0.0) / mean.linear()),
            Self::Degenerate { .. } => 1.0 - self.cdf(snr),
        }
    }

    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::Domain(format!("quantile level must lie in [0, 1), got {p}")));
        }
        Ok(self.quantile_unchecked(p))
    }

    fn quantile_unchecked(&self, p: f64) -> f64 {
        match *self {
            Self::Rayleigh { mean } => -mean.linear() * libm::log1p(-p),
            Self::Degenerate { snr } => snr,
        }
    }

    /// SNR whose upper tail has probability `tail`, without the
    /// cancellation of `quantile(1 − tail)`.
    pub(crate) fn upper_quantile(&self, tail: f64) -> f64 {
        match *self {
            Self::Rayleigh { mean } => -mean.linear() * libm::log(tail),
            Self::Degenerate { snr } => snr,
        }
    }

    /// One draw by inversion.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Self::Rayleigh { .. } => self.quantile_unchecked(rng.random::<f64>()),
            Self::Degenerate { snr } => snr,
        }
    }

    /// `count` i.i.d. block SNRs, deterministic in `seed`.
    pub fn sample_sequence(&self, count: usize, seed: u64) -> Vec<f64> {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
        (0..count).map(|_| self.sample(&mut rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_snr() -> SnrDistribution {
        SnrDistribution::rayleigh_db(6.0).unwrap()
    }

    #[test]
    fn db_conversion() {
        let s = AverageSnr::from_db(6.0).unwrap();
        assert!((s.linear() - 3.981_071_705_534_972).abs() < 1e-12 * s.linear());
        let back = AverageSnr::from_linear(s.linear()).unwrap();
        assert!((back.db() - 6.0).abs() < 1e-12);
        assert!(AverageSnr::from_db(-4000.0).is_err());
        assert!(AverageSnr::from_linear(0.0).is_err());
    }

    #[test]
    fn pdf_values() {
        let unit = SnrDistribution::rayleigh(AverageSnr::from_linear(1.0).unwrap());
        assert_eq!(unit.pdf(0.0).unwrap(), 1.0);
        let d = SnrDistribution::rayleigh(AverageSnr::from_linear(3.9811).unwrap());
        let expected = libm::exp(-1.0) / 3.9811;
        assert!((d.pdf(3.9811).unwrap() - expected).abs() < 1e-15);
        assert_eq!(d.pdf(1e6).unwrap(), 0.0);
        assert!(d.pdf(-1.0).is_err());
    }

    #[test]
    fn pdf_on_degenerate_is_unsupported() {
        let d = SnrDistribution::degenerate(5.0).unwrap();
        assert!(matches!(d.pdf(1.0), Err(Error::Unsupported { .. })));
    }

    #[test]
    fn cdf_values() {
        assert_eq!(fig_snr().cdf(0.0), 0.0);
        assert_eq!(fig_snr().cdf(-3.0), 0.0);
        let d = SnrDistribution::rayleigh(AverageSnr::from_linear(3.9811).unwrap());
        assert!((d.cdf(3.0) - (1.0 - libm::exp(-3.0 / 3.9811))).abs() < 1e-15);
        assert_eq!(fig_snr().cdf(f64::INFINITY), 1.0);
        let step = SnrDistribution::degenerate(5.0).unwrap();
        assert_eq!(step.cdf(4.0), 0.0);
        assert_eq!(step.cdf(6.0), 1.0);
    }

    #[test]
    fn quantile_values() {
        assert_eq!(fig_snr().quantile(0.0).unwrap(), 0.0);
        let d = SnrDistribution::rayleigh(AverageSnr::from_linear(2.0).unwrap());
        let q = d.quantile(1.0 - libm::exp(-1.0)).unwrap();
        assert!((q - 2.0).abs() < 1e-12);
        assert_eq!(SnrDistribution::degenerate(5.0).unwrap().quantile(0.3).unwrap(), 5.0);
        assert!(d.quantile(1.0).is_err());
        assert!(d.quantile(-0.1).is_err());
    }

    #[test]
    fn quantile_inverts_cdf() {
        let d = fig_snr();
        for p in [0.01, 0.1, 0.5, 0.9, 0.99] {
            let q = d.quantile(p).unwrap();
            assert!((d.cdf(q) - p).abs() < 1e-12, "p = {p}");
        }
    }

    #[test]
    fn upper_quantile_matches() {
        let d = fig_snr();
        let q = d.upper_quantile(1e-3);
        assert!((d.survival(q) - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn degenerate_sequence() {
        let d = SnrDistribution::degenerate(5.0).unwrap();
        assert_eq!(d.sample_sequence(3, 7), [5.0, 5.0, 5.0]);
    }

    #[test]
    fn sequences_are_seeded() {
        let d = fig_snr();
        assert_eq!(d.sample_sequence(100, 42), d.sample_sequence(100, 42));
        assert_ne!(d.sample_sequence(100, 42), d.sample_sequence(100, 43));
    }
}

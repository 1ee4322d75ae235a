//! Distribution of the entropy delivered over several coherence blocks.
//!
//! Each block delivers `S = T_c·B·log2(1 + γ)` bits under ORA, or
//! `T_c·B·log2(γ/γ_T)` under OPRA with an atom at zero of mass `Pr[γ ≤ γ_T]`.
//! The continuous part is discretised on a uniform lattice: cell `i` holds
//! the probability of `S ∈ ((i−½)h, (i+½)h]` (cell 0 starts at 0) and is
//! treated as spread uniformly over that range. Sums of i.i.d. blocks are
//! lattice convolutions; the zero atom is carried exactly.

use alloc::format;
use alloc::vec::Vec;

use crate::analytic::{EntropyThreshold, TransmissionSpec};
use crate::channel::SnrDistribution;
use crate::fft;
use crate::strategy::{no_transmission_probability, Bandwidth, RatePolicy};
use crate::{Error, Result};

/// Tail probability beyond the last cell of a per-block distribution.
pub const TAIL_MASS: f64 = 1e-9;
/// Largest tolerated probability mass lost to truncation.
pub const MASS_TOLERANCE: f64 = 1e-6;
/// Cells spanning the 99.999-percentile of one block in the default grid.
pub const DEFAULT_GRID_CELLS: usize = 4096;
const DEFAULT_GRID_TAIL: f64 = 1e-5;
const MAX_CELLS: usize = 1 << 24;
// Upper-tail mass dropped after each convolution.
const TRIM_MASS: f64 = 1e-15;

/// Atom at zero plus a lattice density of non-negative entropy, in bits.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyDistribution {
    atom_at_zero: f64,
    grid_step_bits: f64,
    density: Vec<f64>,
    lost_mass: f64,
}

impl EntropyDistribution {
    /// Builds a distribution from per-cell probabilities.
    pub fn from_cell_masses(atom_at_zero: f64, grid_step_bits: f64, masses: &[f64]) -> Result<Self> {
        check_step(grid_step_bits)?;
        if !(0.0..=1.0).contains(&atom_at_zero) || masses.iter().any(|m| !(*m >= 0.0 && m.is_finite())) {
            return Err(Error::Domain("cell masses must be finite probabilities".into()));
        }
        let total = atom_at_zero + masses.iter().sum::<f64>();
        if total > 1.0 + MASS_TOLERANCE {
            return Err(Error::Domain(format!("cell masses sum to {total}, above 1")));
        }
        Ok(Self {
            atom_at_zero,
            grid_step_bits,
            density: masses.iter().map(|m| m / grid_step_bits).collect(),
            lost_mass: (1.0 - total).max(0.0),
        })
    }

    fn from_masses_unchecked(atom_at_zero: f64, grid_step_bits: f64, masses: Vec<f64>, lost_mass: f64) -> Self {
        let mut density = masses;
        for d in &mut density {
            *d /= grid_step_bits;
        }
        Self {
            atom_at_zero,
            grid_step_bits,
            density,
            lost_mass,
        }
    }

    pub fn atom_at_zero(&self) -> f64 {
        self.atom_at_zero
    }

    pub fn grid_step_bits(&self) -> f64 {
        self.grid_step_bits
    }

    /// Density in 1/bit at the lattice points `i·h`.
    pub fn density(&self) -> &[f64] {
        &self.density
    }

    /// Upper edge of the last cell.
    pub fn s_max(&self) -> f64 {
        (self.density.len() as f64 - 0.5).max(0.5) * self.grid_step_bits
    }

    /// Probability mass dropped beyond `s_max`.
    pub fn lost_mass(&self) -> f64 {
        self.lost_mass
    }

    pub fn cell_masses(&self) -> impl Iterator<Item = f64> + '_ {
        self.density.iter().map(move |d| d * self.grid_step_bits)
    }

    /// `atom + h·Σ density`.
    pub fn total_mass(&self) -> f64 {
        self.atom_at_zero + self.cell_masses().sum::<f64>()
    }

    pub fn mean(&self) -> f64 {
        let h = self.grid_step_bits;
        self.cell_masses().enumerate().map(|(i, m)| i as f64 * h * m).sum()
    }

    pub fn variance(&self) -> f64 {
        let h = self.grid_step_bits;
        let second: f64 = self
            .cell_masses()
            .enumerate()
            .map(|(i, m)| {
                let s = i as f64 * h;
                s * s * m
            })
            .sum();
        let mean = self.mean();
        second - mean * mean
    }

    /// `Pr[S < bits]`.
    pub fn cdf(&self, bits: f64) -> f64 {
        if !(bits > 0.0) {
            return 0.0;
        }
        let h = self.grid_step_bits;
        let cell = libm::floor(bits / h + 0.5);
        let mut acc = self.atom_at_zero;
        if cell >= self.density.len() as f64 {
            acc += self.cell_masses().sum::<f64>();
            return acc.min(1.0);
        }
        let cell = cell as usize;
        acc += self.cell_masses().take(cell).sum::<f64>();
        let lo = if cell == 0 { 0.0 } else { (cell as f64 - 0.5) * h };
        let hi = (cell as f64 + 0.5) * h;
        acc += self.density[cell] * h * ((bits - lo) / (hi - lo)).clamp(0.0, 1.0);
        acc.clamp(0.0, 1.0)
    }
}

fn check_step(step: f64) -> Result<()> {
    if step > 0.0 && step.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("grid step must be positive and finite, got {step}")))
    }
}

fn check_duration(what: &str, seconds: f64) -> Result<()> {
    if seconds > 0.0 && seconds.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be positive and finite, got {seconds}")))
    }
}

/// Default lattice step: the 99.999-percentile of one block's entropy over
/// [`DEFAULT_GRID_CELLS`].
pub fn default_grid_step(dist: &SnrDistribution, policy: &RatePolicy, block_s: f64, b: Bandwidth) -> Result<f64> {
    dist.rayleigh_mean("entropy distribution")?;
    check_duration("block duration", block_s)?;
    let snr = dist.upper_quantile(DEFAULT_GRID_TAIL);
    let bits = block_s * b.hz() * policy.spectral_efficiency(snr);
    if bits > 0.0 {
        Ok(bits / DEFAULT_GRID_CELLS as f64)
    } else {
        Err(Error::Numerical(format!(
            "{} delivers nothing at the 99.999-percentile SNR {snr:e}",
            policy.name()
        )))
    }
}

/// Lattice distribution of the entropy delivered by one block of length
/// `t_c`.
pub fn per_block_entropy_distribution(
    dist: &SnrDistribution,
    policy: &RatePolicy,
    t_c: f64,
    b: Bandwidth,
    grid_step_bits: f64,
) -> Result<EntropyDistribution> {
    dist.rayleigh_mean("entropy distribution")?;
    check_duration("block duration", t_c)?;
    check_step(grid_step_bits)?;
    let bits_per_efficiency = t_c * b.hz();
    let atom = no_transmission_probability(dist, policy);
    // Pr[S > s] for s > 0, and the whole continuous mass at s = 0.
    let survival = |s: f64| dist.survival(policy.snr_for_efficiency(s.max(0.0) / bits_per_efficiency));

    let s_tail = bits_per_efficiency * policy.spectral_efficiency(dist.upper_quantile(TAIL_MASS));
    let cells = libm::ceil(s_tail / grid_step_bits + 0.5).max(1.0);
    if cells > MAX_CELLS as f64 {
        return Err(Error::Numerical(format!(
            "grid step {grid_step_bits:e} bits needs {cells:e} cells (limit {MAX_CELLS})"
        )));
    }
    let cells = cells as usize;
    let mut masses = Vec::with_capacity(cells);
    let mut upper = survival(0.0);
    for i in 0..cells {
        let edge = (i as f64 + 0.5) * grid_step_bits;
        let next = survival(edge);
        masses.push((upper - next).max(0.0));
        upper = next;
    }
    let ed = EntropyDistribution::from_masses_unchecked(atom, grid_step_bits, masses, upper);
    debug_assert!((ed.total_mass() + ed.lost_mass - 1.0).abs() < 1e-9);
    Ok(ed)
}

fn combine(a: &EntropyDistribution, b: &EntropyDistribution, max_cells: usize) -> Result<EntropyDistribution> {
    let h = a.grid_step_bits;
    if (b.grid_step_bits - h).abs() > 1e-12 * h {
        return Err(Error::Domain(format!(
            "cannot convolve grids of step {h:e} and {:e}",
            b.grid_step_bits
        )));
    }
    let ma: Vec<f64> = a.cell_masses().collect();
    let mb: Vec<f64> = b.cell_masses().collect();
    let mut out = fft::convolve(&ma, &mb, max_cells);
    let len = out.len().max(ma.len().min(max_cells)).max(mb.len().min(max_cells));
    out.resize(len, 0.0);
    for (o, m) in out.iter_mut().zip(&mb) {
        *o += a.atom_at_zero * m;
    }
    for (o, m) in out.iter_mut().zip(&ma) {
        *o += b.atom_at_zero * m;
    }
    let atom = a.atom_at_zero * b.atom_at_zero;

    // Drop the far tail that carries no meaningful probability.
    let mut tail = 0.0;
    while let Some(&last) = out.last() {
        if out.len() > 1 && tail + last < TRIM_MASS {
            tail += last;
            out.pop();
        } else {
            break;
        }
    }
    let lost = (1.0 - atom - out.iter().sum::<f64>()).max(0.0);
    Ok(EntropyDistribution::from_masses_unchecked(atom, h, out, lost))
}

fn convolve_capped(ed: &EntropyDistribution, blocks: usize, max_cells: usize) -> Result<EntropyDistribution> {
    if blocks == 0 {
        return Err(Error::Domain("number of blocks must be at least 1".into()));
    }
    let mut result: Option<EntropyDistribution> = None;
    let mut base = ed.clone();
    let mut remaining = blocks;
    loop {
        if remaining & 1 == 1 {
            result = Some(match result {
                None => base.clone(),
                Some(r) => combine(&r, &base, max_cells)?,
            });
        }
        remaining >>= 1;
        if remaining == 0 {
            break;
        }
        base = combine(&base, &base, max_cells)?;
    }
    Ok(result.expect("blocks >= 1"))
}

/// Distribution of the sum of `blocks` i.i.d. copies of `ed`, by binary
/// exponentiation of lattice convolutions.
pub fn convolve(ed: &EntropyDistribution, blocks: usize) -> Result<EntropyDistribution> {
    let sum = convolve_capped(ed, blocks, MAX_CELLS)?;
    if sum.lost_mass > MASS_TOLERANCE {
        return Err(Error::Numerical(format!(
            "convolution of {blocks} blocks lost {:e} probability mass",
            sum.lost_mass
        )));
    }
    Ok(sum)
}

// Cells at or beyond `limit_bits` cannot affect Pr[S < limit_bits] for
// non-negative summands, so they are dropped early.
fn cells_below(limit_bits: f64, step: f64) -> usize {
    let cells = libm::ceil(limit_bits / step + 0.5) + 1.0;
    if cells >= MAX_CELLS as f64 {
        MAX_CELLS
    } else {
        cells as usize
    }
}

/// `Pr[MTT > L·T_c] = Pr[S_1 + … + S_L < H]`.
pub fn dor_multiblock(
    spec: &TransmissionSpec,
    blocks: usize,
    dist: &SnrDistribution,
    policy: &RatePolicy,
    grid_step_bits: Option<f64>,
) -> Result<f64> {
    let (t_c, b) = (spec.coherence_time_s(), spec.bandwidth());
    let step = match grid_step_bits {
        Some(step) => step,
        None => default_grid_step(dist, policy, t_c, b)?,
    };
    let block = per_block_entropy_distribution(dist, policy, t_c, b, step)?;
    let h = spec.entropy_bits();
    let sum = convolve_capped(&block, blocks, cells_below(h, step))?;
    Ok(sum.cdf(h))
}

/// `Pr[MET(duration) < H_th]` over `⌊duration/T_c⌋` full blocks plus one
/// partial block whose rate is held for the remaining time.
pub fn ior_multiblock(
    h_th: EntropyThreshold,
    duration_s: f64,
    t_c: f64,
    dist: &SnrDistribution,
    policy: &RatePolicy,
    b: Bandwidth,
    grid_step_bits: Option<f64>,
) -> Result<f64> {
    check_duration("duration", duration_s)?;
    check_duration("coherence time", t_c)?;
    let (full, remainder) = split_blocks(duration_s, t_c);
    let step = match grid_step_bits {
        Some(step) => step,
        None => default_grid_step(dist, policy, duration_s.min(t_c), b)?,
    };
    let limit = cells_below(h_th.bits(), step);
    let whole = if full > 0 {
        let block = per_block_entropy_distribution(dist, policy, t_c, b, step)?;
        Some(convolve_capped(&block, full, limit)?)
    } else {
        None
    };
    let partial = if remainder > 0.0 {
        Some(per_block_entropy_distribution(dist, policy, remainder, b, step)?)
    } else {
        None
    };
    let sum = match (whole, partial) {
        (Some(w), Some(p)) => combine(&w, &p, limit)?,
        (Some(w), None) => w,
        (None, Some(p)) => p,
        (None, None) => unreachable!("duration is positive"),
    };
    Ok(sum.cdf(h_th.bits()))
}

/// Number of complete coherence blocks in `duration_s` and the leftover
/// time, snapping round-off at block boundaries.
pub fn split_blocks(duration_s: f64, t_c: f64) -> (usize, f64) {
    const SNAP: f64 = 1e-9;
    let ratio = duration_s / t_c;
    let mut full = libm::floor(ratio);
    let mut frac = ratio - full;
    if frac > 1.0 - SNAP {
        full += 1.0;
        frac = 0.0;
    } else if frac < SNAP {
        frac = 0.0;
    }
    (full as usize, frac * t_c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{dor_single_block, ior_single_block, ThresholdDuration};

    fn b20() -> Bandwidth {
        Bandwidth::new(2e7).unwrap()
    }

    fn fig() -> SnrDistribution {
        SnrDistribution::rayleigh_db(6.0).unwrap()
    }

    fn block(policy: &RatePolicy) -> EntropyDistribution {
        let step = default_grid_step(&fig(), policy, 2e-3, b20()).unwrap();
        per_block_entropy_distribution(&fig(), policy, 2e-3, b20(), step).unwrap()
    }

    #[test]
    fn per_block_mass_and_atom() {
        let ora = block(&RatePolicy::Ora);
        assert_eq!(ora.atom_at_zero(), 0.0);
        assert!((ora.total_mass() - 1.0).abs() < 1e-6);
        assert!(ora.lost_mass() < TAIL_MASS * 1.01);

        let opra = RatePolicy::opra(&fig()).unwrap();
        let ed = block(&opra);
        let floor = 1.0 - libm::exp(-opra.cutoff().unwrap() / fig().mean_linear());
        assert!((ed.atom_at_zero() - floor).abs() < 1e-15);
        assert!((ed.total_mass() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn single_convolution_is_identity() {
        let ed = block(&RatePolicy::Ora);
        assert_eq!(convolve(&ed, 1).unwrap(), ed);
        assert!(convolve(&ed, 0).is_err());
    }

    #[test]
    fn point_mass_sums_deterministically() {
        let mut masses = [0.0; 11];
        masses[10] = 1.0;
        let ed = EntropyDistribution::from_cell_masses(0.0, 3.0, &masses).unwrap();
        let sum = convolve(&ed, 4).unwrap();
        let m: Vec<f64> = sum.cell_masses().collect();
        assert!((m[40] - 1.0).abs() < 1e-12);
        assert!(m.iter().enumerate().all(|(i, v)| i == 40 || v.abs() < 1e-12));
        assert!((sum.mean() - 120.0).abs() < 1e-9);
    }

    #[test]
    fn atoms_multiply() {
        let ed = EntropyDistribution::from_cell_masses(0.25, 1.0, &[0.0, 0.75]).unwrap();
        let sum = convolve(&ed, 3).unwrap();
        assert!((sum.atom_at_zero() - 0.25f64.powi(3)).abs() < 1e-15);
        assert!((sum.total_mass() - 1.0).abs() < 1e-12);
        assert!((sum.cdf(1e-9) - 0.25f64.powi(3)).abs() < 1e-9);
    }

    #[test]
    fn mass_above_one_rejected() {
        assert!(EntropyDistribution::from_cell_masses(0.5, 1.0, &[0.6]).is_err());
        assert!(EntropyDistribution::from_cell_masses(0.0, 0.0, &[0.5]).is_err());
    }

    #[test]
    fn cdf_is_monotone_and_bounded() {
        let ed = convolve(&block(&RatePolicy::Ora), 3).unwrap();
        let mut prev = 0.0;
        for k in 0..200 {
            let c = ed.cdf(k as f64 * ed.s_max() / 150.0);
            assert!(c >= prev && c <= 1.0);
            prev = c;
        }
        assert!(prev > 1.0 - 1e-6);
    }

    #[test]
    fn single_block_consistency() {
        let d = fig();
        for policy in [RatePolicy::Ora, RatePolicy::opra(&d).unwrap()] {
            for h in [2e4, 8e4, 1.5e5] {
                let spec = TransmissionSpec::new(h, b20(), 2e-3).unwrap();
                let conv = dor_multiblock(&spec, 1, &d, &policy, None).unwrap();
                let exact = dor_single_block(&spec, ThresholdDuration::new(2e-3).unwrap(), &d, &policy);
                assert!((conv - exact).abs() < 1e-4, "{conv} vs {exact}");

                let th = EntropyThreshold::new(h).unwrap();
                let conv = ior_multiblock(th, 1e-3, 2e-3, &d, &policy, b20(), None).unwrap();
                let exact = ior_single_block(th, 1e-3, b20(), &d, &policy);
                assert!((conv - exact).abs() < 1e-4, "{conv} vs {exact}");
            }
        }
    }

    #[test]
    fn small_entropy_limits() {
        let d = fig();
        let spec = TransmissionSpec::new(1e-3, b20(), 2e-3).unwrap();
        assert!(dor_multiblock(&spec, 3, &d, &RatePolicy::Ora, None).unwrap() < 1e-6);
        let opra = RatePolicy::opra(&d).unwrap();
        let atom = no_transmission_probability(&d, &opra);
        let dor = dor_multiblock(&spec, 3, &d, &opra, None).unwrap();
        assert!((dor - atom.powi(3)).abs() < 1e-6);
    }

    #[test]
    fn splits_blocks() {
        assert_eq!(split_blocks(7e-3, 2e-3).0, 3);
        assert!((split_blocks(7e-3, 2e-3).1 - 1e-3).abs() < 1e-15);
        assert_eq!(split_blocks(6e-3, 2e-3), (3, 0.0));
        assert_eq!(split_blocks(1e-3, 2e-3).0, 0);
    }

    #[test]
    fn degenerate_is_unsupported() {
        let d = SnrDistribution::degenerate(3.0).unwrap();
        let r = per_block_entropy_distribution(&d, &RatePolicy::Ora, 1e-3, b20(), 10.0);
        assert!(matches!(r, Err(Error::Unsupported { .. })));
    }
}

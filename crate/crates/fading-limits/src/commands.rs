//! Command implementations. Each returns a CSV table; nothing here does IO.

use fading_limits_core::analytic::ior_single_block;
use fading_limits_core::multiblock::ior_multiblock;
use fading_limits_core::strategy::{cutoff_residual, no_transmission_probability};
use fading_limits_core::{
    Bandwidth, EntropyThreshold, McEstimate, RatePolicy, SnrDistribution, ThresholdDuration, TransmissionSpec,
};

use crate::cli::Metric;
use crate::config::{CommandKind, PolicyKind, RunConfig};
use crate::csv::{number, Table};
use crate::parallel;
use crate::units::Sweep;
use crate::CliError;

/// Largest Monte Carlo deviation, in standard errors, that `simulate`
/// accepts.
pub const AGREEMENT_SIGMAS: f64 = 4.0;

/// A command's CSV plus an optional human-readable summary.
#[derive(Debug, Clone)]
pub struct Output {
    pub table: Table,
    pub summary: Option<String>,
    /// Set when the run detected an oracle disagreement.
    pub disagreement: Option<String>,
}

impl From<Table> for Output {
    fn from(table: Table) -> Self {
        Self {
            table,
            summary: None,
            disagreement: None,
        }
    }
}

pub fn run(config: &RunConfig) -> Result<Output, CliError> {
    match config.command {
        CommandKind::Threshold => threshold(config).map(Output::from),
        CommandKind::DorCurve => dor_curve(config).map(Output::from),
        CommandKind::IorCurve => ior_curve(config).map(Output::from),
        CommandKind::Simulate(metric) => simulate(config, metric),
    }
}

struct Channel {
    snr_db: f64,
    dist: SnrDistribution,
    ora: RatePolicy,
    opra: RatePolicy,
}

impl Channel {
    fn new(snr_db: f64) -> Result<Self, CliError> {
        let dist = SnrDistribution::rayleigh_db(snr_db)?;
        Ok(Self {
            snr_db,
            dist,
            ora: RatePolicy::Ora,
            opra: RatePolicy::opra(&dist)?,
        })
    }

    fn policy(&self, kind: PolicyKind) -> &RatePolicy {
        match kind {
            PolicyKind::Ora => &self.ora,
            PolicyKind::Opra => &self.opra,
        }
    }
}

pub fn threshold(config: &RunConfig) -> Result<Table, CliError> {
    let mut table = Table::new([
        "snr_db",
        "snr_linear",
        "cutoff_linear",
        "cutoff_db",
        "residual",
        "no_transmission_probability",
    ]);
    for &db in &config.snr_db {
        let ch = Channel::new(db)?;
        let cutoff = ch.opra.cutoff().expect("OPRA has a cutoff");
        table.push(vec![
            number(Some(db)),
            number(Some(ch.dist.mean_linear())),
            number(Some(cutoff)),
            number(Some(10.0 * cutoff.log10())),
            number(Some(cutoff_residual(&ch.dist, cutoff)?)),
            number(Some(no_transmission_probability(&ch.dist, &ch.opra))),
        ]);
    }
    Ok(table)
}

fn sweep_values(config: &RunConfig, sweep: &Sweep) -> Result<Vec<f64>, CliError> {
    sweep.values(config.points, config.log_sweep)
}

fn metric_columns(prefix: &str, config: &RunConfig) -> Vec<String> {
    let mut cols = Vec::new();
    let m = config.methods;
    for (enabled, suffix) in [(m.analytic, "analytic"), (m.convolution, "conv")] {
        if enabled {
            cols.extend(config.policies.iter().map(|p| format!("{prefix}_{}_{suffix}", p.name())));
        }
    }
    if m.montecarlo {
        for p in &config.policies {
            cols.push(format!("{prefix}_{}_mc", p.name()));
            cols.push(format!("{prefix}_{}_mc_stderr", p.name()));
        }
    }
    cols
}

/// One outage query: `Pr[MET(seconds) < bits]`, equivalently
/// `Pr[MTT(bits) > seconds]`.
struct Query<'a> {
    channel: &'a Channel,
    bits: f64,
    seconds: f64,
    coherence_s: Option<f64>,
    bandwidth: Bandwidth,
}

impl Query<'_> {
    /// Coherence time used by the block-level methods. Slow fading keeps
    /// the whole transmission in one block.
    fn block_s(&self) -> f64 {
        self.coherence_s.unwrap_or(self.seconds)
    }

    fn single_block(&self) -> bool {
        self.seconds <= self.block_s()
    }

    fn analytic(&self, policy: &RatePolicy) -> Result<Option<f64>, CliError> {
        if !self.single_block() {
            return Ok(None);
        }
        let h = EntropyThreshold::new(self.bits)?;
        Ok(Some(ior_single_block(h, self.seconds, self.bandwidth, &self.channel.dist, policy)))
    }

    fn convolution(&self, policy: &RatePolicy) -> Result<f64, CliError> {
        let h = EntropyThreshold::new(self.bits)?;
        Ok(ior_multiblock(
            h,
            self.seconds,
            self.block_s(),
            &self.channel.dist,
            policy,
            self.bandwidth,
            None,
        )?)
    }

    fn monte_carlo(&self, metric: Metric, policy: &RatePolicy, n: u64, seed: u64) -> Result<McEstimate, CliError> {
        let dist = &self.channel.dist;
        Ok(match metric {
            Metric::Dor => {
                let spec = TransmissionSpec::new(self.bits, self.bandwidth, self.block_s())?;
                let t = ThresholdDuration::new(self.seconds)?;
                parallel::estimate_dor(&spec, t, policy, dist, n, seed)?
            }
            Metric::Ior => {
                let h = EntropyThreshold::new(self.bits)?;
                parallel::estimate_ior(h, self.seconds, self.block_s(), policy, dist, self.bandwidth, n, seed)?
            }
        })
    }

    fn cells(&self, config: &RunConfig, metric: Metric) -> Result<Vec<String>, CliError> {
        let mut cells = Vec::new();
        let policies: Vec<&RatePolicy> = config.policies.iter().map(|&k| self.channel.policy(k)).collect();
        if config.methods.analytic {
            for p in &policies {
                cells.push(number(self.analytic(p)?));
            }
        }
        if config.methods.convolution {
            for p in &policies {
                cells.push(number(Some(self.convolution(p)?)));
            }
        }
        if config.methods.montecarlo {
            for p in &policies {
                let est = self.monte_carlo(metric, p, config.n_episodes, config.seed)?;
                cells.push(number(Some(est.probability)));
                cells.push(number(Some(est.std_error)));
            }
        }
        Ok(cells)
    }
}

fn list(sweep: &Sweep, flag: &str) -> Result<Vec<f64>, CliError> {
    match sweep {
        Sweep::List(v) => Ok(v.clone()),
        Sweep::Range { .. } => Err(CliError::Usage(format!("{flag} must be a value or a list here"))),
    }
}

/// DOR against the delay threshold, one block of rows per (SNR, H) pair.
pub fn dor_curve(config: &RunConfig) -> Result<Table, CliError> {
    let mut header = vec!["threshold_s".to_owned(), "snr_db".into(), "entropy_bits".into()];
    header.extend(metric_columns("dor", config));
    let mut table = Table::new(header);
    let thresholds = sweep_values(config, &config.threshold_s)?;
    let bandwidth = Bandwidth::new(config.bandwidth_hz)?;
    for &db in &config.snr_db {
        let channel = Channel::new(db)?;
        for bits in list(&config.entropy, "--entropy")? {
            for &seconds in &thresholds {
                let q = Query {
                    channel: &channel,
                    bits,
                    seconds,
                    coherence_s: config.coherence_s,
                    bandwidth,
                };
                let mut row = vec![number(Some(seconds)), number(Some(channel.snr_db)), number(Some(bits))];
                row.extend(q.cells(config, Metric::Dor)?);
                table.push(row);
            }
        }
    }
    Ok(table)
}

/// IOR against the entropy threshold, one block of rows per (SNR, T) pair.
pub fn ior_curve(config: &RunConfig) -> Result<Table, CliError> {
    let mut header = vec!["entropy_bits".to_owned(), "snr_db".into(), "duration_s".into()];
    header.extend(metric_columns("ior", config));
    let mut table = Table::new(header);
    let thresholds = sweep_values(config, &config.entropy)?;
    let bandwidth = Bandwidth::new(config.bandwidth_hz)?;
    for &db in &config.snr_db {
        let channel = Channel::new(db)?;
        for seconds in list(&config.duration_s, "--duration-ms")? {
            for &bits in &thresholds {
                let q = Query {
                    channel: &channel,
                    bits,
                    seconds,
                    coherence_s: config.coherence_s,
                    bandwidth,
                };
                let mut row = vec![number(Some(bits)), number(Some(channel.snr_db)), number(Some(seconds))];
                row.extend(q.cells(config, Metric::Ior)?);
                table.push(row);
            }
        }
    }
    Ok(table)
}

fn single(sweep: &Sweep, flag: &str) -> Result<f64, CliError> {
    match sweep {
        Sweep::List(v) if v.len() == 1 => Ok(v[0]),
        _ => Err(CliError::Usage(format!("simulate takes a single value for {flag}"))),
    }
}

/// Monte Carlo estimates with their references. The closed form applies
/// when the transmission fits in one coherence time; the convolution
/// engine applies always.
pub fn simulate(config: &RunConfig, metric: Metric) -> Result<Output, CliError> {
    let bits = single(&config.entropy, "--entropy")?;
    let seconds = match metric {
        Metric::Dor => single(&config.threshold_s, "--threshold-ms")?,
        Metric::Ior => single(&config.duration_s, "--duration-ms")?,
    };
    let bandwidth = Bandwidth::new(config.bandwidth_hz)?;
    let mut table = Table::new([
        "metric",
        "policy",
        "snr_db",
        "entropy_bits",
        "time_s",
        "coherence_s",
        "probability",
        "std_error",
        "ci95_low",
        "ci95_high",
        "n_episodes",
        "seed",
        "analytic",
        "convolution",
        "z_analytic",
        "z_convolution",
        "agreement",
    ]);
    let mut summary = String::new();
    let mut failures = Vec::new();
    let metric_name = match metric {
        Metric::Dor => "dor",
        Metric::Ior => "ior",
    };
    for &db in &config.snr_db {
        let channel = Channel::new(db)?;
        for &kind in &config.policies {
            let policy = channel.policy(kind);
            let q = Query {
                channel: &channel,
                bits,
                seconds,
                coherence_s: config.coherence_s,
                bandwidth,
            };
            let est = q.monte_carlo(metric, policy, config.n_episodes, config.seed)?;
            let analytic = q.analytic(policy)?;
            let convolution = q.convolution(policy)?;
            let z_analytic = analytic.map(|p| est.z_score(p));
            let z_convolution = est.z_score(convolution);
            let ok = z_analytic.is_none_or(|z| z <= AGREEMENT_SIGMAS) && z_convolution <= AGREEMENT_SIGMAS;
            if !ok {
                failures.push(format!("{metric_name} {} at {db} dB", kind.name()));
            }
            summary.push_str(&format!(
                "{metric_name} {:<4} {db:>6} dB: mc {:.6} ± {:.6}, conv {:.6}{}  {}\n",
                kind.name(),
                est.probability,
                est.std_error,
                convolution,
                analytic.map(|a| format!(", analytic {a:.6}")).unwrap_or_default(),
                if ok { "ok" } else { "FAIL" }
            ));
            table.push(vec![
                metric_name.to_owned(),
                kind.name().to_owned(),
                number(Some(db)),
                number(Some(bits)),
                number(Some(seconds)),
                number(Some(q.block_s())),
                number(Some(est.probability)),
                number(Some(est.std_error)),
                number(Some(est.ci95_low)),
                number(Some(est.ci95_high)),
                est.n_episodes.to_string(),
                est.master_seed.to_string(),
                number(analytic),
                number(Some(convolution)),
                number(z_analytic),
                number(Some(z_convolution)),
                if ok { "ok" } else { "FAIL" }.to_owned(),
            ]);
        }
    }
    Ok(Output {
        table,
        summary: Some(summary),
        disagreement: (!failures.is_empty()).then(|| failures.join("; ")),
    })
}

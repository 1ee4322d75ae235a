//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "fading-limits",
    version,
    about = "Delay and information outage of ORA/OPRA transmission over Rayleigh block fading"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Water-filling cutoff γ_T, its residual and the OPRA no-transmission
    /// probability, one CSV row per average SNR.
    Threshold(ThresholdArgs),
    /// Delay outage rate Pr[MTT > T_th] swept over the delay threshold.
    DorCurve(RunArgs),
    /// Information outage rate Pr[MET(T) < H_th] swept over the entropy threshold.
    IorCurve(RunArgs),
    /// One Monte Carlo estimate per policy, checked against the closed form
    /// and the convolution engine. Exits with 3 when they disagree by more
    /// than 4 standard errors.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    /// Average SNR in dB; a comma-separated list is accepted [default: 6]
    #[arg(long, allow_hyphen_values = true)]
    pub snr_db: Option<String>,

    /// Write the CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyChoice {
    Ora,
    Opra,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodChoice {
    /// Closed form for a transmission within one coherence time
    Analytic,
    /// Numerical convolution over coherence blocks
    Convolution,
    /// Seeded Monte Carlo simulation
    Montecarlo,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// DOR vs T_th: γ̄ = 6 dB, H ∈ {50KB, 200KB}, T_th 0.1 ms..1 s
    Fig1,
    /// DOR vs T_th: H = 50KB, γ̄ ∈ {−5, 0, 6, 12} dB, T_th 0.1 ms..1 s
    Fig2,
    /// IOR vs H_th: γ̄ = 6 dB, T ∈ {10, 30} ms, H_th 1Kb..10Mb
    Fig3,
    /// IOR vs H_th: T = 30 ms, γ̄ ∈ {−5, 0, 6, 12} dB, H_th 1Kb..10Mb
    Fig4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Dor,
    Ior,
}

/// Lists are comma separated (`-5,0,6`); sweeps are `start:stop`.
#[derive(Debug, Args)]
pub struct RunArgs {
    /// Named parameter set for a standard comparison plot; explicit flags override it
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,

    /// Average SNR in dB, list allowed [default: 6]
    #[arg(long, allow_hyphen_values = true)]
    pub snr_db: Option<String>,

    /// Channel bandwidth in Hz [default: 20e6]
    #[arg(long)]
    pub bandwidth_hz: Option<f64>,

    /// Payload entropy H (dor-curve, list) or entropy threshold H_th
    /// (ior-curve, sweep or list) as <value><unit>, unit one of bits, Kb, KB,
    /// Mb, MB with 1 KB = 8000 bits [default: 50KB; ior-curve 1Kb:10Mb]
    #[arg(long)]
    pub entropy: Option<String>,

    /// Coherence time T_c in ms; omit for slow fading, where every
    /// transmission stays within one coherence time
    #[arg(long)]
    pub coherence_ms: Option<f64>,

    /// Delay threshold T_th in ms, sweep or list [default: 0.1:1000]
    #[arg(long)]
    pub threshold_ms: Option<String>,

    /// Transmission duration T in ms for IOR, list allowed [default: 30]
    #[arg(long)]
    pub duration_ms: Option<String>,

    /// Adaptation policy
    #[arg(long, value_enum, default_value_t = PolicyChoice::Both)]
    pub policy: PolicyChoice,

    /// Evaluation method for curve columns
    #[arg(long, value_enum, default_value_t = MethodChoice::Analytic)]
    pub method: MethodChoice,

    /// Monte Carlo episodes per point
    #[arg(long, default_value_t = 100_000)]
    pub episodes: u64,

    /// Monte Carlo master seed
    #[arg(long, env = "FADING_LIMITS_SEED", default_value_t = 1)]
    pub seed: u64,

    /// Points in a start:stop sweep [default: 50; presets 81]
    #[arg(long)]
    pub grid_points: Option<usize>,

    /// Space sweep points logarithmically (always on for presets)
    #[arg(long)]
    pub log_sweep: bool,

    /// Worker threads for Monte Carlo, 0 for all cores
    #[arg(long, default_value_t = 0)]
    pub threads: usize,

    /// Write the CSV here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Outage metric to estimate
    #[arg(long, value_enum, default_value_t = Metric::Dor)]
    pub metric: Metric,

    #[command(flatten)]
    pub run: RunArgs,
}

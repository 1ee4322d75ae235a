//! Validated run configuration assembled from flags and presets.

use crate::cli::{Metric, MethodChoice, PolicyChoice, Preset, RunArgs, ThresholdArgs};
use crate::units::{parse_entropy, positive_ms, Sweep};
use crate::CliError;

const DEFAULT_POINTS: usize = 50;
const PRESET_POINTS: usize = 81;

/// Which command a configuration is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Threshold,
    DorCurve,
    IorCurve,
    Simulate(Metric),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Methods {
    pub analytic: bool,
    pub convolution: bool,
    pub montecarlo: bool,
}

impl From<MethodChoice> for Methods {
    fn from(choice: MethodChoice) -> Self {
        let all = choice == MethodChoice::All;
        Self {
            analytic: all || choice == MethodChoice::Analytic,
            convolution: all || choice == MethodChoice::Convolution,
            montecarlo: all || choice == MethodChoice::Montecarlo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    Ora,
    Opra,
}

impl PolicyKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Ora => "ora",
            Self::Opra => "opra",
        }
    }
}

/// Everything a command needs, with units resolved: SNR in dB, entropy in
/// bits, times in seconds.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub snr_db: Vec<f64>,
    pub bandwidth_hz: f64,
    pub entropy: Sweep,
    pub coherence_s: Option<f64>,
    pub threshold_s: Sweep,
    pub duration_s: Sweep,
    pub policies: Vec<PolicyKind>,
    pub methods: Methods,
    pub n_episodes: u64,
    pub seed: u64,
    pub points: usize,
    pub log_sweep: bool,
}

struct Defaults {
    snr_db: &'static str,
    entropy: &'static str,
    threshold_ms: &'static str,
    duration_ms: &'static str,
}

fn defaults(command: CommandKind, preset: Option<Preset>) -> Result<Defaults, CliError> {
    let base = Defaults {
        snr_db: "6",
        entropy: "50KB",
        threshold_ms: "0.1:1000",
        duration_ms: "30",
    };
    let sweep_entropy = "1Kb:10Mb";
    Ok(match (command, preset) {
        (_, None) => match command {
            CommandKind::IorCurve => Defaults {
                entropy: sweep_entropy,
                ..base
            },
            CommandKind::Simulate(_) => Defaults {
                threshold_ms: "10",
                ..base
            },
            _ => base,
        },
        // Two payload sizes, a small and a large one.
        (CommandKind::DorCurve, Some(Preset::Fig1)) => Defaults {
            entropy: "50KB,200KB",
            ..base
        },
        (CommandKind::DorCurve, Some(Preset::Fig2)) => Defaults {
            snr_db: "-5,0,6,12",
            ..base
        },
        (CommandKind::IorCurve, Some(Preset::Fig3)) => Defaults {
            entropy: sweep_entropy,
            duration_ms: "10,30",
            ..base
        },
        (CommandKind::IorCurve, Some(Preset::Fig4)) => Defaults {
            snr_db: "-5,0,6,12",
            entropy: sweep_entropy,
            ..base
        },
        (_, Some(p)) => {
            return Err(CliError::Usage(format!(
                "preset {p:?} does not apply to this command (fig1/fig2: dor-curve, fig3/fig4: ior-curve)"
            )))
        }
    })
}

fn parse_snr_list(text: &str) -> Result<Vec<f64>, CliError> {
    match Sweep::parse_numbers(text, "SNR in dB")? {
        Sweep::List(v) => Ok(v),
        Sweep::Range { .. } => Err(CliError::Usage("--snr-db takes a value or a list, not a sweep".into())),
    }
}

pub fn threshold_config(args: &ThresholdArgs) -> Result<RunConfig, CliError> {
    let snr_db = parse_snr_list(args.snr_db.as_deref().unwrap_or("6"))?;
    Ok(RunConfig {
        command: CommandKind::Threshold,
        snr_db,
        bandwidth_hz: 20e6,
        entropy: Sweep::List(vec![4e5]),
        coherence_s: None,
        threshold_s: Sweep::List(vec![]),
        duration_s: Sweep::List(vec![]),
        policies: vec![PolicyKind::Opra],
        methods: MethodChoice::Analytic.into(),
        n_episodes: 0,
        seed: 0,
        points: DEFAULT_POINTS,
        log_sweep: false,
    })
}

pub fn run_config(command: CommandKind, args: &RunArgs) -> Result<RunConfig, CliError> {
    let d = defaults(command, args.preset)?;
    let snr_db = parse_snr_list(args.snr_db.as_deref().unwrap_or(d.snr_db))?;
    let bandwidth_hz = args.bandwidth_hz.unwrap_or(20e6);
    if !(bandwidth_hz > 0.0 && bandwidth_hz.is_finite()) {
        return Err(CliError::Usage(format!("bandwidth must be positive, got {bandwidth_hz}")));
    }
    let entropy = Sweep::parse(args.entropy.as_deref().unwrap_or(d.entropy), parse_entropy)?;
    let threshold_s = Sweep::parse(args.threshold_ms.as_deref().unwrap_or(d.threshold_ms), positive_ms)?;
    let duration_s = Sweep::parse(args.duration_ms.as_deref().unwrap_or(d.duration_ms), positive_ms)?;
    let coherence_s = match args.coherence_ms {
        Some(ms) if ms > 0.0 && ms.is_finite() => Some(ms * 1e-3),
        Some(ms) => return Err(CliError::Usage(format!("coherence time must be positive, got {ms} ms"))),
        None => None,
    };
    let policies = match args.policy {
        PolicyChoice::Ora => vec![PolicyKind::Ora],
        PolicyChoice::Opra => vec![PolicyKind::Opra],
        PolicyChoice::Both => vec![PolicyKind::Ora, PolicyKind::Opra],
    };
    let points = args.grid_points.unwrap_or(if args.preset.is_some() {
        PRESET_POINTS
    } else {
        DEFAULT_POINTS
    });

    match command {
        CommandKind::DorCurve if entropy.is_range() => {
            return Err(CliError::Usage("dor-curve sweeps --threshold-ms; give --entropy as a list".into()))
        }
        CommandKind::IorCurve if duration_s.is_range() => {
            return Err(CliError::Usage("ior-curve sweeps --entropy; give --duration-ms as a list".into()))
        }
        CommandKind::Simulate(_)
            if entropy.is_range() || threshold_s.is_range() || duration_s.is_range() =>
        {
            return Err(CliError::Usage("simulate takes single values, not sweeps".into()))
        }
        _ => {}
    }
    if matches!(command, CommandKind::Simulate(_)) && args.episodes < 100 {
        return Err(CliError::Usage(format!("simulate needs at least 100 episodes, got {}", args.episodes)));
    }

    Ok(RunConfig {
        command,
        snr_db,
        bandwidth_hz,
        entropy,
        coherence_s,
        threshold_s,
        duration_s,
        policies,
        methods: args.method.into(),
        n_episodes: args.episodes,
        seed: args.seed,
        points,
        log_sweep: args.log_sweep || args.preset.is_some(),
    })
}

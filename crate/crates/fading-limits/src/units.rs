//! Quantities with units as accepted on the command line.
//!
//! Entropy takes an optional unit suffix: `bits` (the default), `Kb`/`Mb`
//! (10^3/10^6 bits) or `KB`/`MB` (10^3/10^6 bytes of 8 bits). So `50KB` is
//! 400 000 bits.

use crate::CliError;

const ENTROPY_UNITS: [(&str, f64); 6] = [
    ("bits", 1.0),
    ("bit", 1.0),
    ("Kb", 1e3),
    ("KB", 8e3),
    ("Mb", 1e6),
    ("MB", 8e6),
];

fn number(text: &str, what: &str) -> Result<f64, CliError> {
    text.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Usage(format!("cannot read {what} from {text:?}")))
}

/// Parses `<value>[unit]` into bits.
pub fn parse_entropy(text: &str) -> Result<f64, CliError> {
    let text = text.trim();
    let (value, scale) = ENTROPY_UNITS
        .iter()
        .find_map(|(unit, scale)| text.strip_suffix(unit).map(|v| (v, *scale)))
        .unwrap_or((text, 1.0));
    let bits = number(value, "entropy")? * scale;
    if bits > 0.0 {
        Ok(bits)
    } else {
        Err(CliError::Usage(format!("entropy must be positive, got {text:?}")))
    }
}

/// A swept or listed parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    List(Vec<f64>),
    Range { start: f64, stop: f64 },
}

impl Sweep {
    /// Parses `a:b` as a range and `a[,b…]` as a list, reading each item
    /// with `item`.
    pub fn parse(text: &str, item: impl Fn(&str) -> Result<f64, CliError>) -> Result<Self, CliError> {
        if let Some((a, b)) = text.split_once(':') {
            let (start, stop) = (item(a)?, item(b)?);
            if !(start < stop) {
                return Err(CliError::Usage(format!("sweep start must be below stop in {text:?}")));
            }
            return Ok(Self::Range { start, stop });
        }
        let values = text.split(',').map(item).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::List(values))
    }

    pub fn parse_numbers(text: &str, what: &str) -> Result<Self, CliError> {
        Self::parse(text, |s| number(s, what))
    }

    /// Grid values; ranges expand to `points` linear or logarithmic steps.
    pub fn values(&self, points: usize, log: bool) -> Result<Vec<f64>, CliError> {
        match *self {
            Self::List(ref v) => Ok(v.clone()),
            Self::Range { start, stop } => {
                if points < 2 {
                    return Err(CliError::Usage(format!("a sweep needs at least 2 points, got {points}")));
                }
                if log && !(start > 0.0) {
                    return Err(CliError::Usage("a logarithmic sweep needs a positive start".into()));
                }
                let last = (points - 1) as f64;
                Ok((0..points)
                    .map(|k| {
                        let f = k as f64 / last;
                        if k + 1 == points {
                            stop
                        } else if log {
                            start * (stop / start).powf(f)
                        } else {
                            start + (stop - start) * f
                        }
                    })
                    .collect())
            }
        }
    }

    pub fn is_range(&self) -> bool {
        matches!(self, Self::Range { .. })
    }
}

/// Milliseconds to seconds, rejecting non-positive values.
pub fn positive_ms(text: &str) -> Result<f64, CliError> {
    let ms = number(text, "duration in ms")?;
    if ms > 0.0 {
        Ok(ms * 1e-3)
    } else {
        Err(CliError::Usage(format!("durations must be positive, got {text:?} ms")))
    }
}

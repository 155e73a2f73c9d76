//! Report formatting: human-readable numbers at a configurable number of
//! significant digits, and a machine-readable CSV section at full precision.

use serde::Deserialize;

/// Display settings, optionally loaded from a `--config` file.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DisplayConfig {
    /// Significant digits for human-readable report numbers.
    #[serde(default = "default_sig_digits")]
    pub sig_digits: usize,
}

fn default_sig_digits() -> usize {
    6
}

impl Default for DisplayConfig {
    fn default() -> Self {
        Self {
            sig_digits: default_sig_digits(),
        }
    }
}

/// Format with the given number of significant digits, fixed notation.
pub fn sig(value: f64, digits: usize) -> String {
    if !value.is_finite() {
        return format!("{value}");
    }
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = digits as i32 - 1 - magnitude;
    if (0..=17).contains(&decimals) {
        format!("{value:.*}", decimals as usize)
    } else {
        // Extreme magnitudes would show false precision in fixed notation.
        format!("{value:.*e}", digits.saturating_sub(1))
    }
}

/// Fixed three-decimal display used by the comparison table.
pub fn dec3(value: f64) -> String {
    format!("{value:.3}")
}

/// Full-precision value for the machine section: the shortest decimal string
/// that parses back to the same binary value.
pub fn full(value: f64) -> String {
    format!("{value}")
}

/// Full precision for an optional capability index; `None` prints as the
/// explicit marker for a perfect batch.
pub fn full_opt(value: Option<f64>) -> String {
    match value {
        Some(v) => full(v),
        None => "undefined".to_string(),
    }
}

/// Human display for an optional capability index.
pub fn sig_opt(value: Option<f64>, digits: usize) -> String {
    match value {
        Some(v) => sig(v, digits),
        None => "perfect (undefined)".to_string(),
    }
}

/// A report: human-readable text plus machine-readable CSV rows emitted at
/// full precision under a fixed marker line.
#[derive(Debug, Default)]
pub struct Report {
    human: String,
    machine: Vec<Vec<String>>,
}

pub const MACHINE_MARKER: &str = "--- machine-readable (csv, full precision) ---";

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        self.human.push_str(text.as_ref());
        self.human.push('\n');
    }

    pub fn blank(&mut self) {
        self.human.push('\n');
    }

    pub fn record(&mut self, fields: &[&str]) {
        self.machine
            .push(fields.iter().map(|s| s.to_string()).collect());
    }

    pub fn render(&self) -> String {
        let mut out = self.human.clone();
        out.push('\n');
        out.push_str(MACHINE_MARKER);
        out.push('\n');
        for row in &self.machine {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

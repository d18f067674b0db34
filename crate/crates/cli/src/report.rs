//! Output plumbing: format selection, value rendering, CSV escaping.

use clap::ValueEnum;
use serde_json::Value;
use spinchain::exact::{format_decimal, format_rational};
use spinchain::{EvalMode, Rational, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Render an evaluated partition-function value: exact τ keeps the exact
/// rational, decimal mode prints the requested number of digits.
pub fn render_value(value: &Rational, mode: &EvalMode) -> String {
    match mode {
        EvalMode::ExactTau(_) => format_rational(value),
        EvalMode::Decimal { digits, .. } => format_decimal(value, *digits),
    }
}

/// JSON description of the evaluation mode, for output headers.
pub fn mode_json(mode: &EvalMode) -> Value {
    match mode {
        EvalMode::ExactTau(tau) => serde_json::json!({
            "kind": "exact-tau",
            "tau": format_rational(tau),
        }),
        EvalMode::Decimal { beta, digits } => serde_json::json!({
            "kind": "decimal",
            "beta": format_rational(beta),
            "digits": digits,
        }),
    }
}

/// Compact single-field spectrum rendering for CSV: `E:N;E:N;…`.
pub fn spectrum_csv(spectrum: &Spectrum) -> String {
    spectrum
        .terms()
        .map(|(e, n)| format!("{}:{}", format_rational(e), format_rational(n)))
        .collect::<Vec<_>>()
        .join(";")
}

/// Standard CSV escaping: quote when the field contains a comma, quote,
/// or newline, doubling inner quotes.
pub fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

pub fn print_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

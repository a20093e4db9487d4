//! Number formatting shared by the table writers.

/// Scientific notation with `digits` significant digits, e.g. `4.25103e23`.
pub fn sci(value: f64, digits: usize) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    format!("{:.*e}", digits.saturating_sub(1), value)
}

/// `value` rounded to `digits` significant digits.
pub fn round_sig(value: f64, digits: usize) -> f64 {
    if !value.is_finite() || value == 0.0 {
        return value;
    }
    sci(value, digits).parse().unwrap_or(value)
}

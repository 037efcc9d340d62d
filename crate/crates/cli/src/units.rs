//! Numbers with optional SI-prefixed unit suffixes, e.g. `1.5nH`, `20 fF`,
//! `0.33ps`, `25.8ohm`, `180ueV`. A bare number is taken in base SI units.

use rfsquid::constants::ELECTRON_VOLT;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Henry,
    Farad,
    Ampere,
    Metre,
    Second,
    Ohm,
    /// Joules, or electron-volts with an `eV` suffix.
    Energy,
    /// Plain number, no suffix allowed.
    Dimensionless,
}

impl Unit {
    fn symbols(self) -> &'static [(&'static str, f64)] {
        match self {
            Unit::Henry => &[("H", 1.0)],
            Unit::Farad => &[("F", 1.0)],
            Unit::Ampere => &[("A", 1.0)],
            Unit::Metre => &[("m", 1.0)],
            Unit::Second => &[("s", 1.0)],
            Unit::Ohm => &[("ohm", 1.0), ("Ohm", 1.0), ("Ω", 1.0)],
            Unit::Energy => &[("eV", ELECTRON_VOLT), ("J", 1.0)],
            Unit::Dimensionless => &[],
        }
    }
}

fn prefix(p: &str) -> Option<f64> {
    Some(match p {
        "" => 1.0,
        "f" => 1e-15,
        "p" => 1e-12,
        "n" => 1e-9,
        "u" | "µ" | "μ" => 1e-6,
        "m" => 1e-3,
        "k" => 1e3,
        "M" => 1e6,
        "G" => 1e9,
        _ => return None,
    })
}

/// Split `text` into its numeric part and suffix.
fn split_number(text: &str) -> (&str, &str) {
    let t = text.trim();
    let mut end = 0;
    let bytes = t.as_bytes();
    while end < bytes.len() {
        let c = bytes[end] as char;
        let exponent_sign = (c == '+' || c == '-') && end > 0 && matches!(bytes[end - 1], b'e' | b'E');
        // 'e' only counts as an exponent when a digit or sign follows
        let exponent = (c == 'e' || c == 'E')
            && end > 0
            && bytes.get(end + 1).is_some_and(|n| n.is_ascii_digit() || *n == b'-' || *n == b'+');
        if c.is_ascii_digit() || c == '.' || (end == 0 && (c == '-' || c == '+')) || exponent || exponent_sign {
            end += 1;
        } else {
            break;
        }
    }
    (&t[..end], t[end..].trim())
}

pub fn parse_quantity(text: &str, unit: Unit) -> Result<f64, String> {
    let (num, suffix) = split_number(text);
    let value: f64 = num
        .parse()
        .map_err(|_| format!("`{text}` is not a number"))?;
    if suffix.is_empty() {
        return Ok(value);
    }
    for (symbol, scale) in unit.symbols() {
        if let Some(p) = suffix.strip_suffix(symbol) {
            if let Some(f) = prefix(p) {
                return Ok(value * f * scale);
            }
        }
    }
    Err(match unit {
        Unit::Dimensionless => format!("`{text}` takes no unit"),
        _ => format!("unknown unit `{suffix}` in `{text}`"),
    })
}

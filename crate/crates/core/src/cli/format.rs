//! Locale-independent number formatting for CSV and SVG output.

/// Significant digits in every CSV cell.
pub const CSV_DIGITS: usize = 12;

pub const MISSING: &str = "NA";

/// `printf("%.{digits}g")` semantics, with `-0` normalized to `0`.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn num(x: f64) -> String {
    fmt_sig(x, CSV_DIGITS)
}

pub fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| MISSING.to_string(), num)
}

pub fn flag(b: bool) -> String {
    b.to_string()
}

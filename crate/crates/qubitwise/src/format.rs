//! Number formatting for CLI output: 12 significant digits, `%g` style,
//! trailing zeros trimmed, `-0` printed as `0`, magnitudes below 1e-12
//! printed as `0`.

use qubitwise_core::Complex;

pub const SIGNIFICANT_DIGITS: usize = 12;
/// Values with smaller magnitude print as `0`.
pub const ZERO_THRESHOLD: f64 = 1e-12;

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x.abs() < ZERO_THRESHOLD {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    } else {
        format!("{}e{exp}", trim_fraction(mantissa))
    }
}

/// `re`, `imi`, or `re+imi` / `re-imi`, dropping a part that prints as 0.
pub fn complex(z: Complex) -> String {
    let re = real(z.re);
    let im = real(z.im);
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}{im}i"),
        _ => format!("{re}+{im}i"),
    }
}

/// `index` as `width` binary digits, most significant qubit first. A
/// zero-width index prints as `-`.
pub fn bits(index: usize, width: usize) -> String {
    if width == 0 {
        "-".into()
    } else {
        format!("{index:0width$b}")
    }
}

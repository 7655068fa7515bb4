//! Deterministic number formatting for CSV output.

/// Format with 12 significant digits, trimming like C's `%.12g`:
/// fixed-point notation for exponents in [-4, 12), scientific otherwise,
/// trailing zeros removed. Negative zero prints as `0`. The output is
/// byte-deterministic for a given value.
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }

    let sci = format!("{:.11e}", x);
    let (mant, exp) = sci.split_once('e').expect("float e-format always has an exponent");
    let exp: i32 = exp.parse().expect("float exponent is an integer");

    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let fixed = format!("{:.*}", decimals, x);
        let trimmed = fixed.trim_end_matches('0').trim_end_matches('.');
        trimmed.to_string()
    } else {
        let mant = mant.trim_end_matches('0').trim_end_matches('.');
        format!("{mant}e{exp}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_values() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(-0.0), "0");
        assert_eq!(fmt_g(0.4), "0.4");
        assert_eq!(fmt_g(-0.4), "-0.4");
        assert_eq!(fmt_g(1.5), "1.5");
        assert_eq!(fmt_g(std::f64::consts::PI), "3.14159265359");
    }

    #[test]
    fn scientific_values() {
        assert_eq!(fmt_g(6.4518770111e-5), "6.4518770111e-5");
        assert_eq!(fmt_g(1e15), "1e15");
        assert_eq!(fmt_g(-2.5e-13), "-2.5e-13");
    }

    #[test]
    fn twelve_significant_digits_round_trip() {
        for &x in &[0.1 + 0.2, 2.914213562373095, 1.0 / 3.0, 6.62e-12, 123456.789012345] {
            let s = fmt_g(x);
            let back: f64 = s.parse().unwrap();
            assert!(((back - x) / x).abs() < 1e-11, "{x} -> {s} -> {back}");
            assert_eq!(fmt_g(back), s, "formatting must be a fixed point after reparse");
        }
    }
}

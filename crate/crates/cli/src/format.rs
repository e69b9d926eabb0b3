//! Number formatting for terminal and CSV output.

/// `value` rounded to `digits` significant digits: positional notation for
/// moderate magnitudes with trailing zeros dropped, scientific otherwise.
pub fn significant(value: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if value == 0.0 {
        return "0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    // the exponent after rounding, read back from scientific form
    let sci = format!("{:.*e}", digits - 1, value);
    let exp: i32 = sci[sci.find('e').expect("scientific") + 1..].parse().expect("exponent");
    if !(-5..digits as i32).contains(&exp) {
        return sci;
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let fixed = format!("{value:.decimals$}");
    if fixed.contains('.') {
        fixed.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        fixed
    }
}

/// CSV field for a real number: always scientific with 15 significant
/// digits, so every field carries full precision.
pub fn csv_real(value: f64) -> String {
    format!("{value:.14e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(significant((-1f64).exp(), 12), "0.367879441171");
        assert_eq!(significant(0.0, 12), "0");
        assert_eq!(significant(1.5, 12), "1.5");
        assert_eq!(significant(-2.0, 12), "-2");
        assert_eq!(significant(123456.0, 12), "123456");
        assert_eq!(significant(1.234e-7, 12), "1.23400000000e-7");
        assert_eq!(significant(9.9999999999999, 12), "10");
        assert_eq!(significant(1e15, 12), "1.00000000000e15");
        assert_eq!(significant(0.00012345678901234, 12), "0.000123456789012");
    }

    #[test]
    fn csv_fields_round_trip() {
        for v in [0.0, 1.0, 0.1, 1e-300, 123.456, std::f64::consts::PI] {
            let s = csv_real(v);
            let back: f64 = s.parse().unwrap();
            assert!((back - v).abs() <= 1e-14 * v.abs());
            assert!(!s.contains(','));
        }
        assert_eq!(csv_real(0.5), "5.00000000000000e-1");
    }
}

//! Fixed-precision numeric formatting shared by every text and JSON emitter.

use serde::Serializer;

/// Significant digits used for all emitted numbers.
pub const SIG_DIGITS: usize = 9;

/// Rounds `x` to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let s = format!("{:.*e}", SIG_DIGITS - 1, x);
    s.parse().unwrap_or(x)
}

/// [`SIG_DIGITS`] significant digits, trailing zeros kept. Plain decimal for
/// magnitudes in `[1e-4, 1e15)`, exponent form (`1.00000000e-17`) outside.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let r = round_sig(x);
    let exp = r.abs().log10().floor() as i32;
    if !(-4..15).contains(&exp) {
        return format!("{:.*e}", SIG_DIGITS - 1, r);
    }
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    format!("{r:.decimals$}")
}

/// Probabilities are printed with nine decimals, e.g. `1.000000000`.
pub fn format_prob(p: f64) -> String {
    format!("{p:.9}")
}

pub(crate) fn ser_sig<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(round_sig(*x))
}

pub(crate) fn ser_sig_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| round_sig(*x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_sig(std::f64::consts::FRAC_PI_2), "1.57079633");
        assert_eq!(format_sig(0.047619047619), "0.0476190476");
        assert_eq!(format_sig(1234.5), "1234.50000");
        assert_eq!(format_sig(-0.5), "-0.500000000");
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(3.898171832e-17), "3.89817183e-17");
        assert_eq!(format_sig(0.000123), "0.000123000000");
    }

    #[test]
    fn rounding() {
        assert_eq!(round_sig(1.0 / 21.0), 0.0476190476);
        assert_eq!(round_sig(0.9999999999999), 1.0);
        assert_eq!(format_prob(1.0), "1.000000000");
    }
}

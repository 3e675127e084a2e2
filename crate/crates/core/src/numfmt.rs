//! Round-trip float formatting shared by the CSV and JSON writers.

/// 17 significant digits in scientific notation; parses back to the same bits.
pub fn format_float(v: f64) -> String {
    if v == 0.0 {
        // keep the sign of negative zero
        return if v.is_sign_negative() { "-0.0000000000000000e0".into() } else { "0.0000000000000000e0".into() };
    }
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        assert_eq!(format_float(-0.1), "-1.0000000000000001e-1");
        assert_eq!(format_float(0.0), "0.0000000000000000e0");
    }

    proptest! {
        #[test]
        fn round_trips_bit_for_bit(bits in any::<u64>()) {
            let v = f64::from_bits(bits);
            prop_assume!(v.is_finite());
            let back: f64 = format_float(v).parse().unwrap();
            prop_assert_eq!(back.to_bits(), v.to_bits());
        }
    }
}

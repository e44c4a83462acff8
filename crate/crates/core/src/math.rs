//! Float helpers that work without `std`.

/// `base^exp` for a nonnegative integer exponent.
///
/// Exponents up to 64 use exact repeated squaring; larger ones go through
/// `exp(exp * ln base)`.
pub(crate) fn powu(base: f64, exp: u64) -> f64 {
    if exp <= 64 {
        let mut acc = 1.0;
        let mut b = base;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc *= b;
            }
            b *= b;
            e >>= 1;
        }
        acc
    } else if base == 0.0 {
        0.0
    } else {
        libm::exp(exp as f64 * libm::log(base))
    }
}

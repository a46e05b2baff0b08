//! Extended-precision scalar helpers on top of [`rug::Float`] (MPFR).
//!
//! Every polynomial value in this crate carries its own mantissa width in
//! bits. The default of 256 bits exists because normalized coefficients of
//! degree-10^4 families span thousands of orders of magnitude and `f64`
//! destroys the coefficient ratios the S-transform is made of. Ratios
//! themselves are well-conditioned, so no log-space representation is used.

use rug::float::Round;
use rug::ops::AssignRound;
pub use rug::Float;

use crate::error::{Error, Result};

/// Mantissa width in bits.
pub type Prec = u32;

/// Default mantissa width for all polynomial arithmetic.
pub const DEFAULT_PREC: Prec = 256;

/// A fresh zero at the given precision.
pub fn zero(prec: Prec) -> Float {
    Float::new(prec)
}

/// `v` as a `Float` at the given precision.
pub fn real<T>(prec: Prec, v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = std::cmp::Ordering>,
{
    Float::with_val(prec, v)
}

/// The exact power of two `2^e`.
pub fn pow2(prec: Prec, e: i32) -> Float {
    Float::with_val(prec, 1u32) << e
}

/// Binomial coefficient `C(d, k)` as a `Float`.
///
/// Computed by the running product `c * (d - j) / (j + 1)`; every
/// intermediate value is an integer, so the result is exact whenever it is
/// representable at `prec` bits.
pub fn binom(prec: Prec, d: usize, k: usize) -> Float {
    let k = k.min(d - k.min(d));
    let mut c = Float::with_val(prec, 1u32);
    for j in 0..k {
        c *= (d - j) as u64;
        c /= (j + 1) as u64;
    }
    c
}

/// Falling factorial `(x)_k = x (x-1) ... (x-k+1)` with `(x)_0 = 1`.
pub fn falling(x: &Float, k: usize) -> Float {
    let prec = x.prec();
    let mut acc = Float::with_val(prec, 1u32);
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term -= 1u32;
    }
    acc
}

/// Decimal-string form that parses back to the identical `Float` at the
/// same precision (MPFR chooses the digit count for exact round-trip).
pub fn to_decimal(x: &Float) -> String {
    x.to_string_radix(10, None)
}

/// Parse a decimal string at the given precision.
pub fn parse_decimal(prec: Prec, s: &str) -> Result<Float> {
    Float::parse(s)
        .map(|incomplete| Float::with_val(prec, incomplete))
        .map_err(|e| Error::Parse(format!("invalid decimal value {s:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binom_small_exact() {
        assert_eq!(binom(64, 5, 2), 10);
        assert_eq!(binom(64, 10, 0), 1);
        assert_eq!(binom(64, 10, 10), 1);
        assert_eq!(binom(256, 52, 26), 495918532948104u64);
    }

    #[test]
    fn falling_matches_hand_values() {
        let x = real(128, 6);
        assert_eq!(falling(&x, 3), 120); // 6*5*4
        assert_eq!(falling(&x, 0), 1);
        let y = real(128, -1);
        assert_eq!(falling(&y, 3), -6); // (-1)(-2)(-3)
    }

    #[test]
    fn decimal_round_trip_is_lossless() {
        let x = real(256, 1u32) / 3u32;
        let s = to_decimal(&x);
        let y = parse_decimal(256, &s).unwrap();
        assert_eq!(x, y);
    }
}

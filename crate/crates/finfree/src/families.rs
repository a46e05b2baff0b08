//! Closed-form generators for the hypergeometric polynomial families:
//! Laguerre, Bessel, Jacobi, Bernoulli (two-point), the reversed standard
//! Laguerre `f_d`, the multiplicative Poisson base, and the symmetric
//! Hermite/Chebyshev families.
//!
//! The general hypergeometric polynomial has normalized coefficients
//!
//! ```text
//! e~_k = d^(k(i-j)) * prod_s (b_s d)_k / prod_r (a_r d)_k
//! ```
//!
//! with `j` numerator ("above") and `i` denominator ("below") parameters
//! and falling factorials `(x)_k`. All products run iteratively in
//! extended precision; no Gamma-function evaluation, so integer-offset
//! arguments stay exact and poles need no handling.

use crate::error::{Error, Result};
use crate::poly::{Poly, SymPoly};
use crate::real::{real, zero, Float, Prec};

/// Hypergeometric parameter set: `above` are numerator parameters,
/// `below` denominator parameters.
#[derive(Debug, Clone)]
pub struct HGParams {
    pub d: usize,
    pub above: Vec<f64>,
    pub below: Vec<f64>,
}

/// Builds the hypergeometric polynomial from parameters already
/// multiplied by `d` (exact integer-valued arguments stay exact).
pub fn hgp_scaled(
    d: usize,
    prec: Prec,
    above_xd: &[Float],
    below_xd: &[Float],
) -> Result<Poly> {
    for x in below_xd {
        // a denominator parameter on the lattice {1..d-1} hits a zero of
        // the falling factorial (the paper's excluded set {1/d..(d-1)/d})
        if x.is_integer() {
            let xi = x.to_f64();
            if xi >= 1.0 && xi <= (d - 1) as f64 {
                return Err(Error::InvalidInput(format!(
                    "excluded denominator parameter: {}/d", xi
                )));
            }
        }
    }
    let i = below_xd.len() as i32;
    let j = above_xd.len() as i32;
    let dpow = real(prec, d as u32);
    let mut coeffs = Vec::with_capacity(d + 1);
    coeffs.push(real(prec, 1u32));
    let mut num = real(prec, 1u32);
    let mut den = real(prec, 1u32);
    let mut dfac = real(prec, 1u32);
    for k in 1..=d {
        for b in above_xd {
            num *= Float::with_val(prec, b - (k as u32 - 1));
        }
        for a in below_xd {
            den *= Float::with_val(prec, a - (k as u32 - 1));
        }
        match (i - j).cmp(&0) {
            std::cmp::Ordering::Greater => {
                for _ in 0..(i - j) {
                    dfac *= &dpow;
                }
            }
            std::cmp::Ordering::Less => {
                for _ in 0..(j - i) {
                    dfac /= &dpow;
                }
            }
            std::cmp::Ordering::Equal => {}
        }
        let mut c = Float::with_val(prec, &num / &den);
        c *= &dfac;
        coeffs.push(c);
    }
    Poly::from_normalized_coeffs(coeffs)
}

/// Hypergeometric polynomial from real parameters.
pub fn hgp(params: &HGParams, prec: Prec) -> Result<Poly> {
    let above: Vec<Float> = params
        .above
        .iter()
        .map(|&b| real(prec, b) * params.d as u32)
        .collect();
    let below: Vec<Float> = params
        .below
        .iter()
        .map(|&a| real(prec, a) * params.d as u32)
        .collect();
    hgp_scaled(params.d, prec, &above, &below)
}

/// Flips root signs: `e~_k <- (-1)^k e~_k` (the monic reflection
/// `(-1)^d p(-x)`).
fn reflect(p: &Poly) -> Poly {
    let prec = p.prec();
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let mut v = Float::with_val(prec, c);
            if k % 2 == 1 {
                v = -v;
            }
            v
        })
        .collect();
    Poly::from_normalized_coeffs(coeffs).expect("reflection preserves e~_0")
}

/// Normalized Laguerre polynomial: `e~_k = (bd)_k / d^k`. Positive-rooted
/// for `b > 1 - 1/d`.
pub fn laguerre(d: usize, b: f64, prec: Prec) -> Result<Poly> {
    let bd = real(prec, b) * d as u32;
    hgp_scaled(d, prec, &[bd], &[])
}

pub fn laguerre_in_region(d: usize, b: f64) -> bool {
    b > 1.0 - 1.0 / d as f64
}

/// Bessel polynomial (reversed-Laguerre side): the reflection of the
/// hypergeometric polynomial with one denominator parameter `a`.
/// Positive-rooted for `a < 0`.
pub fn bessel(d: usize, a: f64, prec: Prec) -> Result<Poly> {
    let ad = real(prec, a) * d as u32;
    Ok(reflect(&hgp_scaled(d, prec, &[], &[ad])?))
}

pub fn bessel_in_region(a: f64) -> bool {
    a < 0.0
}

/// Which of the three highlighted Jacobi parameter regions `(b, a)`
/// falls in, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiRegion {
    /// `b > 1`, `a > b + 1`: roots in `[0, 1]`.
    PositiveUnit,
    /// `b > 1`, `a < 0`: the reflection has nonnegative roots.
    Reflected,
    /// `a < 0`, `b < a - 1`: strictly positive roots.
    PositiveOuter,
    Outside,
}

pub fn jacobi_region(b: f64, a: f64) -> JacobiRegion {
    if b > 1.0 && a > b + 1.0 {
        JacobiRegion::PositiveUnit
    } else if b > 1.0 && a < 0.0 {
        JacobiRegion::Reflected
    } else if a < 0.0 && b < a - 1.0 {
        JacobiRegion::PositiveOuter
    } else {
        JacobiRegion::Outside
    }
}

/// Modified Jacobi polynomial with numerator parameter `b` and
/// denominator parameter `a`, reflected in the region where the
/// reflection is the positive-rooted family member. Out-of-region
/// parameters still produce the polynomial; callers can consult
/// [`jacobi_region`].
pub fn jacobi(d: usize, b: f64, a: f64, prec: Prec) -> Result<Poly> {
    let bd = real(prec, b) * d as u32;
    let ad = real(prec, a) * d as u32;
    let p = hgp_scaled(d, prec, &[bd], &[ad])?;
    Ok(match jacobi_region(b, a) {
        JacobiRegion::Reflected => reflect(&p),
        _ => p,
    })
}

/// Two-point polynomial `Dil_a (x^(d-l) (x-1)^l)`:
/// `e~_k = a^k (l)_k / (d)_k`, exact integer falling-factorial ratios.
pub fn bernoulli_poly(d: usize, l: usize, a: f64, prec: Prec) -> Result<Poly> {
    if l > d {
        return Err(Error::InvalidInput(format!("need l <= d, got l={l}, d={d}")));
    }
    let p = hgp_scaled(d, prec, &[real(prec, l as u32)], &[real(prec, d as u32)])?;
    if a == 1.0 {
        Ok(p)
    } else {
        p.dilate(&real(prec, a))
    }
}

/// The reversed standard Laguerre polynomial `f_d`: `e~_k = d^k / k!`,
/// the finite analogue of the positive free 1/2-stable law. Its finite
/// S-transform is exactly `k/d`.
pub fn f_d(d: usize, prec: Prec) -> Result<Poly> {
    let mut coeffs = Vec::with_capacity(d + 1);
    coeffs.push(real(prec, 1u32));
    let mut c = real(prec, 1u32);
    for k in 1..=d {
        c *= d as u32;
        c /= k as u32;
        coeffs.push(c.clone());
    }
    Poly::from_normalized_coeffs(coeffs)
}

/// Multiplicative Poisson base `(x - (beta-1)/beta)(x - 1)^(d-1)`:
/// `e~_k = (d beta - k)/(d beta)`. Requires `beta` outside `[0, 1]`.
pub fn poisson_base(d: usize, beta: f64, prec: Prec) -> Result<Poly> {
    if (0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidInput(format!(
            "poisson base needs beta outside [0,1], got {beta}"
        )));
    }
    let dbeta = real(prec, beta) * d as u32;
    let coeffs = (0..=d)
        .map(|k| {
            let mut v = Float::with_val(prec, &dbeta - k as u32);
            v /= &dbeta;
            v
        })
        .collect();
    Poly::from_normalized_coeffs(coeffs)
}

fn sym_from_even_ratio(
    two_d: usize,
    prec: Prec,
    ratio: impl Fn(usize) -> Float,
) -> Result<SymPoly> {
    if two_d % 2 != 0 || two_d == 0 {
        return Err(Error::InvalidInput("symmetric family needs even degree".into()));
    }
    let d = two_d / 2;
    let mut coeffs = vec![zero(prec); two_d + 1];
    coeffs[0] = real(prec, 1u32);
    let mut c = real(prec, 1u32);
    for k in 1..=d {
        c *= ratio(k);
        c = -c;
        coeffs[2 * k] = c.clone();
    }
    SymPoly::from_inner(Poly::from_normalized_coeffs(coeffs)?)
}

/// Normalized Hermite polynomial of even degree `2d`:
/// `e~_2k = (-1)^k (2k)! / (k! (4d)^k)`; converges to the semicircle.
pub fn hermite(two_d: usize, prec: Prec) -> Result<SymPoly> {
    let d = two_d / 2;
    sym_from_even_ratio(two_d, prec, |k| {
        // e~_2k / e~_(2k-2) = -(2k-1)/(2d)
        let mut r = real(prec, (2 * k - 1) as u32);
        r /= 2 * d as u32;
        r
    })
}

/// Normalized Chebyshev polynomial of the first kind, degree `2d`:
/// `e~_2k = (-1)^k (2k)_k / ((2d-1)_k 2^(2k))`; converges to the arcsine
/// law on `(-1, 1)`.
pub fn chebyshev_t(two_d: usize, prec: Prec) -> Result<SymPoly> {
    let d = two_d / 2;
    sym_from_even_ratio(two_d, prec, |k| {
        // ratio magnitude: (2k-1) / (2 (2d-k))
        let mut r = real(prec, (2 * k - 1) as u32);
        r /= 2 * (2 * d - k) as u32;
        r
    })
}

/// Normalized Chebyshev polynomial of the second kind, degree `2d`; same
/// arcsine limit as the first kind.
pub fn chebyshev_u(two_d: usize, prec: Prec) -> Result<SymPoly> {
    let d = two_d / 2;
    sym_from_even_ratio(two_d, prec, |k| {
        // ratio magnitude: (2k-1) / (2 (2d-k+1))
        let mut r = real(prec, (2 * k - 1) as u32);
        r /= 2 * (2 * d - k + 1) as u32;
        r
    })
}

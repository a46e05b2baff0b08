//! The two finite free convolutions, n-fold multiplicative powers,
//! fractional additive powers, and max-convolution powers.
//!
//! Both convolutions act coefficientwise on the normalized coefficients:
//! additively through the binomial convolution
//! `e~_k(p boxplus q) = sum_j C(k,j) e~_j(p) e~_(k-j)(q)` and
//! multiplicatively through the plain product
//! `e~_k(p boxtimes q) = e~_k(p) e~_k(q)`.

use crate::cumulants::{cumulants, from_cumulants, CumulantVec, MAX_CUMULANT_ORDER};
use crate::error::{Error, Result};
use crate::poly::{Poly, RootSet};
use crate::real::{binom, real, zero, Float};

fn check_degrees(p: &Poly, q: &Poly) -> Result<()> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch { left: p.degree(), right: q.degree() });
    }
    Ok(())
}

/// Finite free additive convolution `p boxplus_d q`.
pub fn boxplus(p: &Poly, q: &Poly) -> Result<Poly> {
    check_degrees(p, q)?;
    let d = p.degree();
    let prec = p.prec().max(q.prec());
    let mut coeffs = Vec::with_capacity(d + 1);
    for k in 0..=d {
        let mut acc = zero(prec);
        for j in 0..=k {
            let mut t = Float::with_val(prec, p.coeff(j) * q.coeff(k - j));
            t *= binom(prec, k, j);
            acc += t;
        }
        coeffs.push(acc);
    }
    Poly::from_normalized_coeffs(coeffs)
}

/// Finite free multiplicative convolution `p boxtimes_d q`.
pub fn boxtimes(p: &Poly, q: &Poly) -> Result<Poly> {
    check_degrees(p, q)?;
    let d = p.degree();
    let prec = p.prec().max(q.prec());
    let coeffs = (0..=d)
        .map(|k| Float::with_val(prec, p.coeff(k) * q.coeff(k)))
        .collect();
    Poly::from_normalized_coeffs(coeffs)
}

/// n-fold multiplicative convolution power: `e~_k <- e~_k^n`, exact in
/// exponent space (MPFR's exponent range covers any realistic n).
pub fn boxtimes_power(p: &Poly, n: u32) -> Result<Poly> {
    if n == 0 {
        return Err(Error::InvalidInput("boxtimes power needs n >= 1".into()));
    }
    let d = p.degree();
    let prec = p.prec();
    let coeffs = (0..=d)
        .map(|k| Float::with_val(prec, rug::ops::Pow::pow(p.coeff(k), n)))
        .collect();
    Poly::from_normalized_coeffs(coeffs)
}

/// Fractional additive convolution power `p^{boxplus_d t}`, the
/// degree-`d` polynomial whose cumulants are `t * kappa_n(p)`.
///
/// Integer `t` works at any degree via iterated convolution; non-integer
/// `t` takes the cumulant path, which needs the full triangular
/// inversion and is therefore capped at `d <= 12`. The paper's
/// algorithms only ever use `t = d/j`, realized there by
/// `dilate(d/j, diff_kd(p, j))` at degree `j`.
pub fn boxplus_fractional(p: &Poly, t: f64) -> Result<Poly> {
    if t < 1.0 {
        return Err(Error::InvalidInput(format!(
            "fractional convolution power defined only for t >= 1, got {t}"
        )));
    }
    let d = p.degree();
    if t.fract() == 0.0 && t <= u32::MAX as f64 {
        let n = t as u32;
        let mut acc = p.clone();
        for _ in 1..n {
            acc = boxplus(&acc, p)?;
        }
        return Ok(acc);
    }
    if d > MAX_CUMULANT_ORDER {
        return Err(Error::InvalidInput(format!(
            "non-integer fractional power needs the full cumulant inversion and is capped at d <= {MAX_CUMULANT_ORDER}; for rational t = d/j use dilate(d/j, diff_kd(p, j))"
        )));
    }
    let prec = p.prec();
    let kv = cumulants(p, d)?;
    let tf = real(prec, t);
    let scaled: Vec<Float> =
        kv.values().iter().map(|k| Float::with_val(prec, k * &tf)).collect();
    from_cumulants(&CumulantVec::new(d, scaled), d)
}

/// Finite max-convolution power `p^{boxlor d/k}`: the degree-`k`
/// polynomial keeping the top `k` roots.
pub fn max_power(rs: &RootSet, k: usize, prec: crate::real::Prec) -> Result<Poly> {
    let d = rs.len();
    if k < 1 || k > d {
        return Err(Error::InvalidInput(format!("max power index k={k} out of 1..={d}")));
    }
    let top = RootSet::new(rs.roots()[..k].to_vec());
    Poly::from_roots(&top, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{pow2, DEFAULT_PREC as P};

    fn poly_from(roots: &[f64]) -> Poly {
        Poly::from_roots(&RootSet::from_f64(P, roots), P).unwrap()
    }

    fn assert_coeffs_close(p: &Poly, q: &Poly, bits: i32) {
        for k in 0..=p.degree() {
            let diff = Float::with_val(P, p.coeff(k) - q.coeff(k)).abs();
            let scale = p.coeff(k).clone().abs().max(&real(P, 1.0));
            assert!(diff <= scale * pow2(P, bits), "k={k}");
        }
    }

    #[test]
    fn boxplus_identity_is_x_pow_d() {
        let p = poly_from(&[0.5, 2.0, 7.0]);
        let e = Poly::x_pow(3, P).unwrap();
        let s = boxplus(&p, &e).unwrap();
        assert_eq!(s.coeffs(), p.coeffs());
    }

    #[test]
    fn boxplus_free_clt_step() {
        // (x^2-1) boxplus (x^2-1) = x^2 - 2
        let p = poly_from(&[-1.0, 1.0]);
        let s = boxplus(&p, &p).unwrap();
        assert!(s.coeff(1).is_zero());
        assert_eq!(*s.coeff(2), -2);
    }

    #[test]
    fn boxplus_with_dirac_is_shift() {
        let p = poly_from(&[0.25, 1.0, 3.5, 6.0]);
        let c = real(P, 1.375);
        let dirac = Poly::dirac(4, &c, P).unwrap();
        let a = boxplus(&p, &dirac).unwrap();
        let b = p.shift(&c).unwrap();
        assert_coeffs_close(&a, &b, -(P as i32) + 16);
    }

    #[test]
    fn boxtimes_identity_is_dirac_one() {
        let p = poly_from(&[0.5, 2.0, 7.0]);
        let one = Poly::dirac(3, &real(P, 1u32), P).unwrap();
        let s = boxtimes(&p, &one).unwrap();
        assert_eq!(s.coeffs(), p.coeffs());
    }

    #[test]
    fn boxtimes_hand_example() {
        // x(x-1) boxtimes x(x-1) = x(x - 1/2)
        let p = poly_from(&[0.0, 1.0]);
        let s = boxtimes(&p, &p).unwrap();
        assert_eq!(*s.coeff(1), 0.25);
        assert!(s.coeff(2).is_zero());
        let expect = poly_from(&[0.0, 0.5]);
        assert_eq!(s.coeff(1), expect.coeff(1));
    }

    #[test]
    fn degree_mismatch_rejected() {
        let p = poly_from(&[1.0, 2.0]);
        let q = poly_from(&[1.0, 2.0, 3.0]);
        assert!(boxplus(&p, &q).is_err());
        assert!(boxtimes(&p, &q).is_err());
    }

    #[test]
    fn boxtimes_power_basics() {
        let p = poly_from(&[0.5, 2.0, 7.0]);
        let s = boxtimes_power(&p, 1).unwrap();
        assert_eq!(s.coeffs(), p.coeffs());
        let one = Poly::dirac(5, &real(P, 1u32), P).unwrap();
        let s = boxtimes_power(&one, 37).unwrap();
        assert_eq!(s.coeffs(), one.coeffs());
    }

    #[test]
    fn fractional_power_identity_and_linearity() {
        let p = poly_from(&[0.5, 1.5, 2.5, 4.0]);
        let s = boxplus_fractional(&p, 1.0).unwrap();
        assert_coeffs_close(&s, &p, -(P as i32) + 16);
        // kappa_2 doubles at t = 2
        let s2 = boxplus_fractional(&p, 2.0).unwrap();
        let k_p = cumulants(&p, 2).unwrap();
        let k_s = cumulants(&s2, 2).unwrap();
        let twice = Float::with_val(P, k_p.kappa(2) * 2u32);
        let diff = Float::with_val(P, k_s.kappa(2) - &twice).abs();
        assert!(diff <= twice.abs() * pow2(P, -(P as i32) + 24));
    }

    #[test]
    fn fractional_power_rejects_small_t() {
        let p = poly_from(&[1.0, 2.0]);
        assert!(boxplus_fractional(&p, 0.5).is_err());
    }

    #[test]
    fn fractional_dual_path_identity() {
        // d=6, j=3, t = d/j = 2: kappa_n^(3)(Dil_2 D_(3,6) p) matches
        // kappa_n^(6)(p^boxplus2) scaled per the derivative identity
        // kappa_n^(j)(D_(j,d) p) = (j/d)^(n-1) kappa_n^(d)(p)
        let p = poly_from(&[0.5, 1.0, 2.0, 3.0, 4.0, 5.5]);
        let lhs = p.diff_kd(3).unwrap().dilate(&real(P, 2u32)).unwrap();
        let k_lhs = cumulants(&lhs, 3).unwrap();
        let rhs = boxplus_fractional(&p, 2.0).unwrap();
        let k_rhs = cumulants(&rhs, 3).unwrap();
        for n in 1..=3usize {
            // kappa_n^(3)(Dil_2 D_36 p) = 2^n (1/2)^(n-1) kappa_n(p)
            //                           = 2 kappa_n(p) = kappa_n(p^boxplus2)
            let diff = Float::with_val(P, k_lhs.kappa(n) - k_rhs.kappa(n)).abs();
            let scale = k_rhs.kappa(n).clone().abs().max(&real(P, 1.0));
            assert!(diff <= scale * pow2(P, -(P as i32) + 32), "n={n}");
        }
    }

    #[test]
    fn max_power_truncates_top_roots() {
        let rs = RootSet::from_f64(P, &[3.0, 2.0, 1.0]);
        let p = max_power(&rs, 2, P).unwrap();
        let expect = poly_from(&[3.0, 2.0]);
        assert_eq!(p.coeffs(), expect.coeffs());
        let full = max_power(&rs, 3, P).unwrap();
        assert_eq!(full.coeffs(), poly_from(&[3.0, 2.0, 1.0]).coeffs());
        assert!(max_power(&rs, 0, P).is_err());
        assert!(max_power(&rs, 4, P).is_err());
    }
}

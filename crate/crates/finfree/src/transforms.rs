//! The finite S-transform, finite T-transform, symmetric finite
//! S-transform, and the limit maps `Phi_d` and `Theta_d`.
//!
//! For `p` with nonnegative roots and zero multiplicity `r`, the finite
//! S-transform is the ratio grid
//!
//! ```text
//! S(-k/d) = e~_(k-1)/e~_k,   k = 1..d-r,
//! ```
//!
//! the finite T-transform is its reciprocal rearranged as a
//! right-continuous non-decreasing step function on (0,1), and the roots
//! of `Phi_d(p)` are the reciprocals `e~_k/e~_(k-1)`.

use crate::conv::boxtimes;
use crate::error::{Error, Result};
use crate::families;
use crate::poly::{Poly, RootSet, SymPoly};
use crate::real::{real, zero, Float, Prec};

/// Which transform a sampled grid belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    S,
    T,
    SymS,
}

impl TransformKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TransformKind::S => "s",
            TransformKind::T => "t",
            TransformKind::SymS => "syms",
        }
    }
}

/// Sampled finite transform values with domain metadata.
///
/// For `S`: `values[k-1] = S(-k/d)` on the grid `-k/d`, `k = 1..d-r`.
/// For `T`: `values[k-1]` is the value on `[(k-1)/d, k/d)`, `k = 1..d`,
/// identically zero for `k <= r`.
/// For `SymS`: the transform's value is `i * m` on the positive imaginary
/// axis; `values[k-1]` stores the positive real part `m_k` with grid
/// `-k/d` over the half degree.
#[derive(Debug, Clone)]
pub struct FiniteTransform {
    pub kind: TransformKind,
    pub d: usize,
    pub r: usize,
    grid: Vec<f64>,
    values: Vec<Float>,
}

impl FiniteTransform {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[Float] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `S(-k/d)` (or the SymS positive part `m_k`), 1-indexed.
    pub fn value_at(&self, k: usize) -> &Float {
        &self.values[k - 1]
    }

    /// Step-function evaluation for T-kind transforms, right-continuous:
    /// the value on `[(k-1)/d, k/d)`.
    pub fn eval_t(&self, t: f64) -> Result<Float> {
        if self.kind != TransformKind::T {
            return Err(Error::InvalidInput("eval_t needs a T-transform".into()));
        }
        if !(0.0..1.0).contains(&t) {
            return Err(Error::InvalidInput(format!("t={t} outside (0,1)")));
        }
        let k = ((t * self.d as f64).floor() as usize).min(self.d - 1);
        Ok(self.values[k].clone())
    }
}

/// Validates the nonnegative-root sign pattern and returns the zero
/// multiplicity `r` read off the trailing zero coefficients.
fn nonneg_zero_multiplicity(p: &Poly) -> Result<usize> {
    if !p.has_nonneg_sign_pattern() {
        return Err(Error::NegativeRoot(
            "coefficient signs violate the nonnegative-root pattern".into(),
        ));
    }
    Ok(p.zero_multiplicity())
}

/// Finite S-transform of `p` with nonnegative roots:
/// `S(-k/d) = e~_(k-1)/e~_k` for `k = 1..d-r`.
pub fn finite_s(p: &Poly) -> Result<FiniteTransform> {
    if p.is_x_pow_d() {
        return Err(Error::STransformUndefined);
    }
    let r = nonneg_zero_multiplicity(p)?;
    let d = p.degree();
    let prec = p.prec();
    let mut grid = Vec::with_capacity(d - r);
    let mut values = Vec::with_capacity(d - r);
    for k in 1..=d - r {
        grid.push(-(k as f64) / d as f64);
        values.push(Float::with_val(prec, p.coeff(k - 1) / p.coeff(k)));
    }
    Ok(FiniteTransform { kind: TransformKind::S, d, r, grid, values })
}

/// Finite T-transform of `p` with nonnegative roots: the step function
/// with value `e~_(d-k+1)/e~_(d-k)` on `[(k-1)/d, k/d)` and 0 below
/// `r/d`. For `x^d` this is identically zero.
pub fn finite_t(p: &Poly) -> Result<FiniteTransform> {
    let r = nonneg_zero_multiplicity(p)?;
    let d = p.degree();
    let prec = p.prec();
    let mut grid = Vec::with_capacity(d);
    let mut values = Vec::with_capacity(d);
    for k in 1..=d {
        grid.push((k - 1) as f64 / d as f64);
        if k <= r {
            values.push(zero(prec));
        } else {
            values.push(Float::with_val(prec, p.coeff(d - k + 1) / p.coeff(d - k)));
        }
    }
    Ok(FiniteTransform { kind: TransformKind::T, d, r, grid, values })
}

/// Symmetric finite S-transform of an even polynomial: stores the
/// positive real `m_k = sqrt(-e~_(2(k-1))/e~_(2k))`, the transform value
/// being `i * m_k` on the positive imaginary axis.
pub fn finite_s_symmetric(sp: &SymPoly) -> Result<FiniteTransform> {
    let d = sp.half_degree();
    let prec = sp.prec();
    let inner = sp.inner();
    // multiplicity at zero is 2r; r in half-degree units
    let r2 = inner.zero_multiplicity();
    if r2 % 2 != 0 {
        return Err(Error::InvalidInput("odd zero multiplicity in symmetric polynomial".into()));
    }
    let r = r2 / 2;
    if r == d {
        return Err(Error::STransformUndefined);
    }
    let mut grid = Vec::with_capacity(d - r);
    let mut values = Vec::with_capacity(d - r);
    for k in 1..=d - r {
        grid.push(-(k as f64) / d as f64);
        let mut ratio = Float::with_val(prec, inner.coeff(2 * (k - 1)) / inner.coeff(2 * k));
        ratio = -ratio;
        if ratio < 0u32 {
            return Err(Error::InvalidInput(format!(
                "even-coefficient ratio at k={k} has the wrong sign for a symmetric polynomial"
            )));
        }
        values.push(ratio.sqrt());
    }
    Ok(FiniteTransform { kind: TransformKind::SymS, d, r, grid, values })
}

/// The Tucci–Haagerup–Möller limit polynomial `Phi_d(p)`: root `k` is
/// `e~_k/e~_(k-1)` for `k <= d-r` and 0 beyond. Newton's inequality makes
/// the ratio sequence non-increasing, so this is a valid root multiset.
pub fn phi_d(p: &Poly) -> Result<Poly> {
    let r = nonneg_zero_multiplicity(p)?;
    let d = p.degree();
    let prec = p.prec();
    let mut roots = Vec::with_capacity(d);
    for k in 1..=d - r {
        roots.push(Float::with_val(prec, p.coeff(k) / p.coeff(k - 1)));
    }
    roots.extend(std::iter::repeat_with(|| zero(prec)).take(r));
    Poly::from_roots(&RootSet::new(roots), prec)
}

/// `Theta_d(p) = Phi_d(p boxtimes_d f_d)` with `f_d` the reversed
/// standard Laguerre polynomial.
pub fn theta_d(p: &Poly) -> Result<Poly> {
    let fd = families::f_d(p.degree(), p.prec())?;
    phi_d(&boxtimes(p, &fd)?)
}

/// Desk-scale side of the coefficient geometric limit: `(e~_k)^(1/d)`,
/// computed in log space.
pub fn coeff_geometric_limit(p: &Poly, k: usize) -> Result<Float> {
    let d = p.degree();
    if k < 1 || k > d {
        return Err(Error::InvalidInput(format!("index k={k} out of 1..={d}")));
    }
    if *p.coeff(k) <= 0u32 {
        return Err(Error::InvalidInput("coefficient must be positive for the geometric limit".into()));
    }
    let prec = p.prec();
    let mut ln = Float::with_val(prec, p.coeff(k).ln_ref());
    ln /= d as u32;
    Ok(ln.exp())
}

/// Cauchy transform of the empirical root distribution at a real point
/// outside the root hull: `G(z) = (1/d) sum 1/(z - lambda_i)`.
pub fn cauchy_at(rs: &RootSet, z: &Float, prec: Prec) -> Result<Float> {
    let lo = rs.min_root();
    let hi = rs.max_root();
    if z >= lo && z <= hi {
        return Err(Error::InvalidInput(
            "Cauchy transform evaluated inside the root hull".into(),
        ));
    }
    let mut sum = zero(prec);
    for lam in rs.roots() {
        let mut den = Float::with_val(prec, z - lam);
        den.recip_mut();
        sum += den;
    }
    Ok(sum / rs.len() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::{pow2, DEFAULT_PREC as P};

    fn poly_from(roots: &[f64]) -> Poly {
        Poly::from_roots(&RootSet::from_f64(P, roots), P).unwrap()
    }

    fn rel_close(a: &Float, b: &Float, bits: i32) -> bool {
        let diff = Float::with_val(P, a - b).abs();
        let scale = a.clone().abs().max(&b.clone().abs()).max(&real(P, 1e-300));
        diff <= scale * pow2(P, bits)
    }

    #[test]
    fn s_of_dirac_is_constant() {
        let c = 2.5f64;
        let p = poly_from(&[c; 7]);
        let s = finite_s(&p).unwrap();
        assert_eq!(s.len(), 7);
        let expect = Float::with_val(P, real(P, c).recip_ref());
        for k in 1..=7 {
            assert!(rel_close(s.value_at(k), &expect, -(P as i32) + 24));
        }
    }

    #[test]
    fn s_undefined_for_x_pow_d() {
        let p = Poly::x_pow(4, P).unwrap();
        assert!(matches!(finite_s(&p), Err(Error::STransformUndefined)));
    }

    #[test]
    fn s_rejects_negative_roots() {
        let p = poly_from(&[-1.0, 2.0]);
        assert!(matches!(finite_s(&p), Err(Error::NegativeRoot(_))));
    }

    #[test]
    fn s_strictly_increasing_in_k() {
        // two distinct roots: Newton's inequality makes S(-k/d) strictly
        // increasing in k
        let p = poly_from(&[0.5, 1.0, 2.0, 3.5]);
        let s = finite_s(&p).unwrap();
        for k in 1..s.len() {
            assert!(s.value_at(k + 1) > s.value_at(k));
        }
    }

    #[test]
    fn s_extreme_values() {
        // S(-1/d) = 1/mean and, with no zero roots, S(-1) = -G(0)
        let roots = [0.5, 1.25, 2.0, 4.0];
        let p = poly_from(&roots);
        let s = finite_s(&p).unwrap();
        let mut mean = zero(P);
        for r in &roots {
            mean += real(P, *r);
        }
        mean /= 4u32;
        let expect = Float::with_val(P, mean.recip_ref());
        assert!(rel_close(s.value_at(1), &expect, -(P as i32) + 24));
        let rs = RootSet::from_f64(P, &roots);
        let g0 = cauchy_at(&rs, &zero(P), P).unwrap();
        let minus_g0 = Float::with_val(P, -&g0);
        assert!(rel_close(s.value_at(4), &minus_g0, -(P as i32) + 24));
    }

    #[test]
    fn t_transform_step_structure() {
        // x^d gives T identically 0; Dirac gives T identically c
        let xd = Poly::x_pow(3, P).unwrap();
        let t = finite_t(&xd).unwrap();
        for k in 1..=3 {
            assert!(t.value_at(k).is_zero());
        }
        let p = poly_from(&[2.0; 3]);
        let t = finite_t(&p).unwrap();
        for k in 1..=3 {
            assert!(rel_close(t.value_at(k), &real(P, 2.0), -(P as i32) + 24));
        }
        assert!(rel_close(&t.eval_t(0.99).unwrap(), &real(P, 2.0), -(P as i32) + 24));
    }

    #[test]
    fn t_and_s_reciprocal_relation() {
        // T((d-k)/d) = 1/S(-k/d) on the common domain
        let p = poly_from(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        let d = 5usize;
        let r = 1usize;
        let s = finite_s(&p).unwrap();
        let t = finite_t(&p).unwrap();
        assert_eq!(s.r, r);
        for k in 1..=d - r {
            let tv = t.eval_t((d - k) as f64 / d as f64).unwrap();
            let recip = Float::with_val(P, s.value_at(k).recip_ref());
            assert!(rel_close(&tv, &recip, -(P as i32) + 24), "k={k}");
        }
    }

    #[test]
    fn phi_d_fixes_dirac_and_handles_zeros() {
        let p = poly_from(&[2.5; 5]);
        let f = phi_d(&p).unwrap();
        assert_coeffs_eq_approx(&f, &p);
        let q = poly_from(&[0.0, 0.0, 1.0, 2.0]);
        let f = phi_d(&q).unwrap();
        assert_eq!(f.zero_multiplicity(), 2);
    }

    fn assert_coeffs_eq_approx(a: &Poly, b: &Poly) {
        for k in 0..=a.degree() {
            assert!(rel_close(a.coeff(k), b.coeff(k), -(P as i32) + 32), "k={k}");
        }
    }

    #[test]
    fn phi_d_of_symmetric_ratio_grid() {
        // phi roots are the coefficient ratios, non-increasing by Newton
        let p = poly_from(&[0.5, 1.5, 3.0]);
        let f = phi_d(&p).unwrap();
        let rs = f.roots().unwrap();
        for w in rs.roots().windows(2) {
            assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn syms_of_even_quartic() {
        // x^2 (x^2 - 1): half roots {1, 0}; only k=1 defined;
        // e~_2 = -C(4,2)^{-1} e_2 with e_2(sym roots {1,-1,0,0}) = -1
        let sp = SymPoly::from_half_roots(&RootSet::from_f64(P, &[0.0, 1.0]), P).unwrap();
        let s = finite_s_symmetric(&sp).unwrap();
        assert_eq!(s.len(), 1);
        // m_1 = sqrt(-e~_0/e~_2) = sqrt(6)
        let expect = real(P, 6u32).sqrt();
        assert!(rel_close(s.value_at(1), &expect, -(P as i32) + 24));
    }

    #[test]
    fn syms_matches_square_poly_relation() {
        // S~(-k/d)^2 = (1 - k/d + 1/2d)/(-k/d + 1/2d) * S_Sq(-k/d);
        // with the stored positive part m we check
        // m_k^2 = (1 - k/d + 1/2d)/(k/d - 1/2d) * S_Sq(-k/d)
        let sp =
            SymPoly::from_half_roots(&RootSet::from_f64(P, &[0.5, 1.0, 2.0, 3.0]), P).unwrap();
        let d = sp.half_degree();
        let s_sym = finite_s_symmetric(&sp).unwrap();
        let sq = sp.square_poly().unwrap();
        let s_sq = finite_s(&sq).unwrap();
        for k in 1..=d {
            // (1 - k/d + 1/2d)/(k/d - 1/2d) = (2d - 2k + 1)/(2k - 1)
            let factor = Float::with_val(
                P,
                real(P, (2 * d - 2 * k + 1) as u32) / (2 * k - 1) as u32,
            );
            let expect = Float::with_val(P, &factor * s_sq.value_at(k));
            let m2 = Float::with_val(P, s_sym.value_at(k) * s_sym.value_at(k));
            assert!(rel_close(&m2, &expect, -(P as i32) + 32), "k={k}");
        }
    }

    #[test]
    fn geometric_limit_of_dirac() {
        let p = poly_from(&[3.0; 10]);
        for k in [1usize, 5, 10] {
            let g = coeff_geometric_limit(&p, k).unwrap();
            let expect =
                Float::with_val(P, real(P, 3u32).ln() * k as u32 / 10u32).exp();
            assert!(rel_close(&g, &expect, -(P as i32) + 32));
        }
        // x(x-1) at d=2, k=1: (1/2)^(1/2)
        let q = poly_from(&[0.0, 1.0]);
        let g = coeff_geometric_limit(&q, 1).unwrap();
        let expect = real(P, 0.5).sqrt();
        assert!(rel_close(&g, &expect, -(P as i32) + 32));
    }

    #[test]
    fn cauchy_at_basics() {
        let p = RootSet::from_f64(P, &[1.0; 4]);
        let g = cauchy_at(&p, &zero(P), P).unwrap();
        assert!(rel_close(&g, &real(P, -1.0), -(P as i32) + 24));
        assert!(cauchy_at(&p, &real(P, 1.0), P).is_err());
    }
}

//! Monic real polynomials in normalized-coefficient form, root multisets,
//! elementary transformations and the normalized differentiation operator.
//!
//! A degree-`d` monic polynomial is stored as the vector `e~_0 .. e~_d` of
//! normalized elementary symmetric functions of its roots,
//!
//! ```text
//! p(x) = sum_k (-1)^k C(d,k) e~_k x^(d-k),      e~_0 = 1,
//! ```
//!
//! which is the coordinate system in which both finite free convolutions
//! and the finite S-transform are coefficientwise.

use crate::error::{Error, Result};
use crate::real::{binom, pow2, real, zero, Float, Prec};

/// Sorted real root multiset with explicit zero-multiplicity bookkeeping.
///
/// Roots are stored non-increasing. Entries flagged as zero are stored as
/// exact zeros so they propagate symbolically through coefficient
/// recurrences.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    roots: Vec<Float>,
    zero_multiplicity: usize,
}

impl RootSet {
    /// Builds a root multiset; sorts non-increasing and flags exact zeros.
    pub fn new(mut roots: Vec<Float>) -> Self {
        roots.sort_by(|a, b| b.partial_cmp(a).expect("roots must be finite"));
        let zero_multiplicity = roots.iter().filter(|r| r.is_zero()).count();
        Self { roots, zero_multiplicity }
    }

    /// Builds from f64 values at the given precision.
    pub fn from_f64(prec: Prec, roots: &[f64]) -> Self {
        Self::new(roots.iter().map(|&r| real(prec, r)).collect())
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Roots in non-increasing order; `roots()[0]` is the largest.
    pub fn roots(&self) -> &[Float] {
        &self.roots
    }

    /// Number of entries flagged exactly zero.
    pub fn zero_multiplicity(&self) -> usize {
        self.zero_multiplicity
    }

    /// Largest root.
    pub fn max_root(&self) -> &Float {
        &self.roots[0]
    }

    /// Smallest root.
    pub fn min_root(&self) -> &Float {
        &self.roots[self.roots.len() - 1]
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.to_f64()).collect()
    }
}

/// Rootwise domination: `lambda_i(p) <= lambda_i(q) + tol` for all `i`.
pub fn leq_order(p: &RootSet, q: &RootSet, tol: f64) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::DegreeMismatch { left: p.len(), right: q.len() });
    }
    Ok(p.roots()
        .iter()
        .zip(q.roots())
        .all(|(a, b)| *a <= b.clone() + tol))
}

/// Interlacing check `p ≼ q`: the alternating chain
/// `lambda_d(p) <= lambda_d(q) <= lambda_(d-1)(p) <= ... <= lambda_1(q)`,
/// strict when `strict` is set (then `tol` is ignored).
pub fn interlaces(p: &RootSet, q: &RootSet, strict: bool, tol: f64) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::DegreeMismatch { left: p.len(), right: q.len() });
    }
    let d = p.len();
    let le = |a: &Float, b: &Float| {
        if strict {
            a < b
        } else {
            *a <= b.clone() + tol
        }
    };
    for i in (0..d).rev() {
        // lambda_(i+1)(p) <= lambda_(i+1)(q) <= lambda_i(p)
        if !le(&p.roots()[i], &q.roots()[i]) {
            return Ok(false);
        }
        if i > 0 && !le(&q.roots()[i], &p.roots()[i - 1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Monic degree-`d` polynomial as normalized coefficients `e~_0 .. e~_d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Float>,
    prec: Prec,
}

impl Poly {
    /// Wraps a normalized coefficient vector `e~_0 .. e~_d`.
    pub fn from_normalized_coeffs(coeffs: Vec<Float>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidInput("degree must be at least 1".into()));
        }
        if coeffs[0] != 1u32 {
            return Err(Error::InvalidInput("e~_0 must be exactly 1".into()));
        }
        let prec = coeffs.iter().map(Float::prec).max().unwrap();
        let coeffs = coeffs
            .into_iter()
            .map(|c| if c.prec() == prec { c } else { Float::with_val(prec, c) })
            .collect();
        Ok(Self { coeffs, prec })
    }

    /// Builds `e~_k` from a closure, `k = 0..=d` (`e~_0` forced to 1).
    pub fn from_coeff_fn(d: usize, prec: Prec, f: impl Fn(usize) -> Float) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(d + 1);
        coeffs.push(Float::with_val(prec, 1u32));
        for k in 1..=d {
            coeffs.push(Float::with_val(prec, f(k)));
        }
        Self::from_normalized_coeffs(coeffs)
    }

    /// `(x - c)^d`, the Dirac polynomial at `c`: `e~_k = c^k`.
    pub fn dirac(d: usize, c: &Float, prec: Prec) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(d + 1);
        coeffs.push(real(prec, 1u32));
        let mut ck = real(prec, 1u32);
        for _ in 1..=d {
            ck = Float::with_val(prec, &ck * c);
            coeffs.push(ck.clone());
        }
        Self::from_normalized_coeffs(coeffs)
    }

    /// `x^d`: the degenerate polynomial with all roots at zero.
    pub fn x_pow(d: usize, prec: Prec) -> Result<Self> {
        Self::from_coeff_fn(d, prec, |_| zero(prec))
    }

    /// Builds the polynomial with the given root multiset.
    ///
    /// The raw elementary symmetric functions are accumulated by the stable
    /// prefix recurrence `e_k <- e_k + lambda * e_(k-1)` (never by subset
    /// sums), then normalized by `C(d,k)`.
    pub fn from_roots(roots: &RootSet, prec: Prec) -> Result<Self> {
        let d = roots.len();
        if d == 0 {
            return Err(Error::InvalidInput("degree must be at least 1".into()));
        }
        let mut e: Vec<Float> = vec![zero(prec); d + 1];
        e[0] = real(prec, 1u32);
        for (j, lam) in roots.roots().iter().enumerate() {
            // prefix of length j+1; highest reachable index is j+1
            for k in (1..=j + 1).rev() {
                let t = Float::with_val(prec, lam * &e[k - 1]);
                e[k] += t;
            }
        }
        let coeffs = e
            .into_iter()
            .enumerate()
            .map(|(k, ek)| {
                if k == 0 {
                    real(prec, 1u32)
                } else {
                    Float::with_val(prec, ek / binom(prec, d, k))
                }
            })
            .collect();
        Self::from_normalized_coeffs(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prec(&self) -> Prec {
        self.prec
    }

    /// Normalized coefficient `e~_k`.
    pub fn coeff(&self, k: usize) -> &Float {
        &self.coeffs[k]
    }

    /// All normalized coefficients `e~_0 .. e~_d`.
    pub fn coeffs(&self) -> &[Float] {
        &self.coeffs
    }

    /// Monomial coefficients `a_0 .. a_d` with `p(x) = sum_j a_j x^j`
    /// (so `a_(d-k) = (-1)^k C(d,k) e~_k`).
    pub fn monomial_coeffs(&self) -> Vec<Float> {
        let d = self.degree();
        let mut a = vec![zero(self.prec); d + 1];
        for k in 0..=d {
            let mut v = Float::with_val(self.prec, &self.coeffs[k] * &binom(self.prec, d, k));
            if k % 2 == 1 {
                v = -v;
            }
            a[d - k] = v;
        }
        a
    }

    /// Evaluates `p(x)` by Horner on the monomial coefficients.
    pub fn eval(&self, x: &Float) -> Float {
        let a = self.monomial_coeffs();
        let mut b = zero(self.prec);
        for aj in a.iter().rev() {
            b *= x;
            b += aj;
        }
        b
    }

    /// Evaluation scale `sum_j |a_j| |x|^j`, the natural conditioning
    /// bound for residual tests `|p(lambda)| <= tol * scale`.
    pub fn eval_scale(&self, x: &Float) -> Float {
        let a = self.monomial_coeffs();
        let ax = Float::with_val(self.prec, x.clone().abs());
        let mut s = zero(self.prec);
        for aj in a.iter().rev() {
            s *= &ax;
            s += Float::with_val(self.prec, aj.clone().abs());
        }
        s
    }

    /// True when every coefficient past `e~_0` is exactly zero (`p = x^d`).
    pub fn is_x_pow_d(&self) -> bool {
        self.coeffs[1..].iter().all(Float::is_zero)
    }

    /// Multiplicity of the root 0 read off the coefficients, valid for
    /// polynomials with all roots nonnegative: `r = d - max{k : e~_k != 0}`.
    pub fn zero_multiplicity(&self) -> usize {
        let d = self.degree();
        let last_nonzero = (0..=d).rev().find(|&k| !self.coeffs[k].is_zero()).unwrap_or(0);
        d - last_nonzero
    }

    /// Checks the nonnegative-root sign pattern: all `e~_k >= 0` with zeros
    /// only in a trailing block. This is the `(-1)^k`-alternation rule of
    /// signs on raw coefficients; it is necessary, not sufficient.
    pub fn has_nonneg_sign_pattern(&self) -> bool {
        let mut seen_zero = false;
        for c in &self.coeffs[1..] {
            if c.is_zero() {
                seen_zero = true;
            } else if seen_zero || *c < 0u32 {
                return false;
            }
        }
        true
    }

    /// Dilation `Dil_c p`: rescales every root by `c`, i.e. `e~_k <- c^k e~_k`.
    pub fn dilate(&self, c: &Float) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidInput("dilation factor must be nonzero".into()));
        }
        let prec = self.prec;
        let mut ck = real(prec, 1u32);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, ek) in self.coeffs.iter().enumerate() {
            if k == 0 {
                coeffs.push(real(prec, 1u32));
            } else {
                ck *= c;
                coeffs.push(Float::with_val(prec, ek * &ck));
            }
        }
        Self::from_normalized_coeffs(coeffs)
    }

    /// Shift `Shi_c p` (adds `c` to every root) via the binomial transform
    /// `e~_k <- sum_j C(k,j) e~_j c^(k-j)`, which is the additive
    /// convolution with `(x-c)^d`; no root extraction involved.
    pub fn shift(&self, c: &Float) -> Result<Self> {
        let prec = self.prec;
        let d = self.degree();
        let mut cpow = vec![real(prec, 1u32)];
        for _ in 0..d {
            let next = Float::with_val(prec, cpow.last().unwrap() * c);
            cpow.push(next);
        }
        let mut coeffs = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut acc = zero(prec);
            for j in 0..=k {
                let t = Float::with_val(prec, &self.coeffs[j] * &cpow[k - j]);
                acc += t * binom(prec, k, j);
            }
            coeffs.push(acc);
        }
        Self::from_normalized_coeffs(coeffs)
    }

    /// Root pushforward by `x -> x^c` for polynomials with nonnegative
    /// roots; extracts roots, powers them, rebuilds.
    pub fn power_map(&self, c: f64) -> Result<Self> {
        if c <= 0.0 {
            return Err(Error::InvalidInput("power-map exponent must be positive".into()));
        }
        let rs = self.roots()?;
        if *rs.min_root() < 0u32 {
            return Err(Error::NegativeRoot("power map needs nonnegative roots".into()));
        }
        let prec = self.prec;
        let cf = real(prec, c);
        let powered = rs
            .roots()
            .iter()
            .map(|lam| {
                if lam.is_zero() {
                    zero(prec)
                } else {
                    Float::with_val(prec, rug::ops::Pow::pow(lam, &cf))
                }
            })
            .collect();
        Self::from_roots(&RootSet::new(powered), prec)
    }

    /// Reversed polynomial `p^<-1>` (roots inverted):
    /// `e~_k(p^<-1>) = e~_(d-k)(p) / e~_d(p)`. Requires `e~_d > 0`.
    pub fn reverse(&self) -> Result<Self> {
        let d = self.degree();
        if self.coeffs[d] <= 0u32 {
            return Err(Error::RootAtOrBelowZero);
        }
        let prec = self.prec;
        let ed = &self.coeffs[d];
        let coeffs = (0..=d)
            .map(|k| Float::with_val(prec, &self.coeffs[d - k] / ed))
            .collect();
        Self::from_normalized_coeffs(coeffs)
    }

    /// Normalized differentiation `D_(k,d)`: differentiates `d-k` times and
    /// renormalizes to a monic degree-`k` polynomial. In normalized
    /// coordinates this is exactly coefficient truncation,
    /// `e~_j(D_(k,d) p) = e~_j(p)` for `j <= k`, so it is bit-exact.
    pub fn diff_kd(&self, k: usize) -> Result<Self> {
        let d = self.degree();
        if k < 1 || k > d {
            return Err(Error::InvalidInput(format!(
                "diff_kd index k={k} out of range 1..={d}"
            )));
        }
        Self::from_normalized_coeffs(self.coeffs[..=k].to_vec())
    }

    /// Root extraction at this polynomial's precision with the default
    /// residual tolerance `2^(-prec+32) * scale`.
    pub fn roots(&self) -> Result<RootSet> {
        let tol = pow2(self.prec, -(self.prec as i32) + 32);
        self.roots_with_tol(&tol)
    }

    /// Root extraction with an explicit relative residual tolerance.
    pub fn roots_with_tol(&self, tol: &Float) -> Result<RootSet> {
        crate::rootfind::roots_of(self, tol)
    }

    /// Convenience: sorted roots as an empirical-measure-ready vector.
    pub fn roots_f64(&self) -> Result<Vec<f64>> {
        Ok(self.roots()?.to_f64())
    }
}

/// Even polynomial of degree `2d` symmetric about 0, stored with its inner
/// coefficient vector. Odd normalized coefficients vanish; the squared
/// polynomial `Sq(p)` of degree `d` carries the same information via
/// `C(2d,2k) e~_2k(p) = (-1)^k C(d,k) e~_k(Sq(p))`.
#[derive(Debug, Clone)]
pub struct SymPoly {
    half_degree: usize,
    inner: Poly,
}

impl SymPoly {
    /// Validates an even-degree polynomial as symmetric: odd coefficients
    /// must vanish within `2^(-prec+16)` absolute tolerance.
    pub fn from_inner(inner: Poly) -> Result<Self> {
        let d2 = inner.degree();
        if d2 % 2 != 0 || d2 == 0 {
            return Err(Error::InvalidInput("symmetric polynomial needs even degree".into()));
        }
        let tol = pow2(inner.prec(), -(inner.prec() as i32) + 16);
        for k in (1..=d2).step_by(2) {
            if inner.coeff(k).clone().abs() > tol {
                return Err(Error::InvalidInput(format!(
                    "odd coefficient e~_{k} nonzero beyond tolerance"
                )));
            }
        }
        Ok(Self { half_degree: d2 / 2, inner })
    }

    /// Builds the symmetric polynomial with roots `{±lambda_i}` from the
    /// nonnegative half multiset, by constructing `Sq` from the squares
    /// and mapping its coefficients back. Symmetry is exact by
    /// construction.
    pub fn from_half_roots(half: &RootSet, prec: Prec) -> Result<Self> {
        if half.min_root().clone() < 0u32 {
            return Err(Error::NegativeRoot("half roots must be nonnegative".into()));
        }
        let d = half.len();
        let squares = RootSet::new(
            half.roots()
                .iter()
                .map(|r| Float::with_val(prec, r * r))
                .collect(),
        );
        let sq = Poly::from_roots(&squares, prec)?;
        let mut coeffs = vec![zero(prec); 2 * d + 1];
        coeffs[0] = real(prec, 1u32);
        for k in 1..=d {
            // e~_2k = (-1)^k C(d,k)/C(2d,2k) e~_k(Sq)
            let mut v = Float::with_val(prec, sq.coeff(k) * &binom(prec, d, k));
            v /= binom(prec, 2 * d, 2 * k);
            if k % 2 == 1 {
                v = -v;
            }
            coeffs[2 * k] = v;
        }
        Ok(Self { half_degree: d, inner: Poly::from_normalized_coeffs(coeffs)? })
    }

    pub fn half_degree(&self) -> usize {
        self.half_degree
    }

    /// Full degree `2d`.
    pub fn degree(&self) -> usize {
        2 * self.half_degree
    }

    pub fn inner(&self) -> &Poly {
        &self.inner
    }

    pub fn prec(&self) -> Prec {
        self.inner.prec()
    }

    /// The squared polynomial `Sq(p)` of degree `d`, with
    /// `e~_k(Sq) = (-1)^k C(2d,2k)/C(d,k) e~_2k(p)`; exact.
    pub fn square_poly(&self) -> Result<Poly> {
        let d = self.half_degree;
        let prec = self.prec();
        let coeffs = (0..=d)
            .map(|k| {
                if k == 0 {
                    real(prec, 1u32)
                } else {
                    let mut v =
                        Float::with_val(prec, self.inner.coeff(2 * k) * &binom(prec, 2 * d, 2 * k));
                    v /= binom(prec, d, k);
                    if k % 2 == 1 {
                        v = -v;
                    }
                    v
                }
            })
            .collect();
        Poly::from_normalized_coeffs(coeffs)
    }
}

//! Monte-Carlo validation of the two convolutions against expected
//! characteristic polynomials of randomly rotated matrices.
//!
//! `p boxtimes_d q` is the expected characteristic polynomial of
//! `A U B U*` and `p boxplus_d q` of `A + U B U*`, with `A`, `B` diagonal
//! root matrices and `U` Haar unitary. Sampling runs in f64; coefficient
//! accumulation in extended precision so the merge order cannot bleed
//! into the estimates.
//!
//! Determinism: every sample draws from its own counter-derived ChaCha
//! stream `(seed, sample_index)`, so results are bit-identical for a
//! fixed seed regardless of how samples are partitioned across workers.

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::real::{binom, real, zero, Float};

type C64 = Complex<f64>;

/// Accumulation precision: keeps sums (and sums of squares) of up to
/// ~2^20 f64 samples exactly representable.
const ACCUM_PREC: u32 = 192;

/// Monte-Carlo run configuration. Estimates are deterministic given
/// `(seed, samples, d)`; `workers` only partitions the sample range.
#[derive(Debug, Clone)]
pub struct McConfig {
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl McConfig {
    pub fn new(d: usize, samples: usize, seed: u64) -> Self {
        Self { d, samples, seed, workers: 1 }
    }

    fn validate(&self) -> Result<()> {
        if self.d < 1 || self.d > 16 {
            return Err(Error::InvalidInput(format!(
                "monte-carlo dimension d={} outside 1..=16 (cost guard)",
                self.d
            )));
        }
        if self.samples == 0 {
            return Err(Error::InvalidInput("need at least one sample".into()));
        }
        Ok(())
    }
}

/// Mean polynomial (normalized-coefficient form at the accumulation
/// precision) with per-coefficient standard errors for `e~_1..e~_d`.
#[derive(Debug, Clone)]
pub struct McEstimate {
    pub poly: Poly,
    pub stderr: Vec<f64>,
}

fn rng_for_sample(seed: u64, index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar-distributed unitary via complex Ginibre QR with the diagonal
/// phase normalization (plain QR is not Haar).
pub fn haar_unitary(d: usize, rng: &mut ChaCha12Rng) -> DMatrix<C64> {
    let g = DMatrix::from_fn(d, d, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        C64::new(re, im) / 2.0f64.sqrt()
    });
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..d {
        let rjj = r[(j, j)];
        let a = rjj.norm();
        let phase = if a == 0.0 { C64::new(1.0, 0.0) } else { rjj / a };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Normalized characteristic-polynomial coefficients `e~_1..e~_d` of `m`
/// by the Leverrier–Faddeev trace recursion (no eigensolver involved).
pub fn char_poly_normalized(m: &DMatrix<C64>) -> Vec<f64> {
    let d = m.nrows();
    let mut n = m.clone();
    let mut es = Vec::with_capacity(d);
    let mut e_prev = C64::new(0.0, 0.0);
    for k in 1..=d {
        if k > 1 {
            let mut shifted = n.clone();
            for i in 0..d {
                shifted[(i, i)] -= e_prev;
            }
            n = m * shifted;
        }
        let tr: C64 = (0..d).map(|i| n[(i, i)]).sum();
        let e_k = tr / k as f64;
        es.push(e_k);
        e_prev = e_k;
    }
    es.iter()
        .enumerate()
        .map(|(i, e)| {
            let k = i + 1;
            e.re / binom(64, d, k).to_f64()
        })
        .collect()
}

fn diag_from_roots(p: &Poly) -> Result<DMatrix<C64>> {
    let rs = p.roots()?;
    let d = p.degree();
    let mut m = DMatrix::from_element(d, d, C64::new(0.0, 0.0));
    for (i, r) in rs.roots().iter().enumerate() {
        m[(i, i)] = C64::new(r.to_f64(), 0.0);
    }
    Ok(m)
}

fn run_estimate(
    a: &DMatrix<C64>,
    b: &DMatrix<C64>,
    cfg: &McConfig,
    combine: impl Fn(&DMatrix<C64>, &DMatrix<C64>) -> DMatrix<C64> + Sync,
) -> McEstimate {
    let d = cfg.d;
    let workers = cfg.workers.max(1).min(cfg.samples);
    let chunk = cfg.samples.div_ceil(workers);

    let partials: Vec<(Vec<Float>, Vec<Float>)> = std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers {
            let lo = w * chunk;
            let hi = ((w + 1) * chunk).min(cfg.samples);
            let combine = &combine;
            handles.push(scope.spawn(move || {
                let mut sums = vec![zero(ACCUM_PREC); d];
                let mut sumsq = vec![zero(ACCUM_PREC); d];
                for s in lo..hi {
                    let mut rng = rng_for_sample(cfg.seed, s as u64);
                    let u = haar_unitary(d, &mut rng);
                    let ubu = &u * b * u.adjoint();
                    let m = combine(a, &ubu);
                    let es = char_poly_normalized(&m);
                    for (k, v) in es.iter().enumerate() {
                        sums[k] += *v;
                        sumsq[k] += real(ACCUM_PREC, *v).square();
                    }
                }
                (sums, sumsq)
            }));
        }
        handles.into_iter().map(|h| h.join().expect("mc worker panicked")).collect()
    });

    // merge in worker order
    let mut sums = vec![zero(ACCUM_PREC); d];
    let mut sumsq = vec![zero(ACCUM_PREC); d];
    for (ps, pq) in partials {
        for k in 0..d {
            sums[k] += &ps[k];
            sumsq[k] += &pq[k];
        }
    }

    let n = cfg.samples as u32;
    let mut coeffs = vec![real(ACCUM_PREC, 1u32)];
    let mut stderr = Vec::with_capacity(d);
    for k in 0..d {
        let mean = Float::with_val(ACCUM_PREC, &sums[k] / n);
        // sample variance / n
        let mut var = Float::with_val(ACCUM_PREC, &mean * &mean);
        var *= n;
        var = Float::with_val(ACCUM_PREC, &sumsq[k] - &var);
        if cfg.samples > 1 {
            var /= (cfg.samples - 1) as u32;
        }
        var /= n;
        if var < 0u32 {
            var = zero(ACCUM_PREC);
        }
        stderr.push(var.sqrt().to_f64());
        coeffs.push(mean);
    }
    McEstimate {
        poly: Poly::from_normalized_coeffs(coeffs).expect("mean polynomial"),
        stderr,
    }
}

/// Monte-Carlo estimate of `p boxtimes_d q` as the expected
/// characteristic polynomial of `A U B U*`. Needs nonnegative roots.
pub fn mc_boxtimes(p: &Poly, q: &Poly, cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    if p.degree() != cfg.d || q.degree() != cfg.d {
        return Err(Error::DegreeMismatch { left: p.degree(), right: q.degree() });
    }
    if !p.has_nonneg_sign_pattern() || !q.has_nonneg_sign_pattern() {
        return Err(Error::NegativeRoot(
            "multiplicative crosscheck needs positive-semidefinite root matrices".into(),
        ));
    }
    let a = diag_from_roots(p)?;
    let b = diag_from_roots(q)?;
    Ok(run_estimate(&a, &b, cfg, |a, ubu| a * ubu))
}

/// Monte-Carlo estimate of `p boxplus_d q` as the expected
/// characteristic polynomial of `A + U B U*`.
pub fn mc_boxplus(p: &Poly, q: &Poly, cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    if p.degree() != cfg.d || q.degree() != cfg.d {
        return Err(Error::DegreeMismatch { left: p.degree(), right: q.degree() });
    }
    let a = diag_from_roots(p)?;
    let b = diag_from_roots(q)?;
    Ok(run_estimate(&a, &b, cfg, |a, ubu| a + ubu))
}

/// Sample moments of the `U_11` entry of the Haar sampler:
/// `(mean_re, mean_im, mean |U_11|^2)` with their standard errors.
pub fn haar_moment_check(d: usize, samples: usize, seed: u64) -> ([f64; 3], [f64; 3]) {
    let mut sums = [0.0f64; 3];
    let mut sqs = [0.0f64; 3];
    for s in 0..samples {
        let mut rng = rng_for_sample(seed, s as u64);
        let u = haar_unitary(d, &mut rng);
        let u11 = u[(0, 0)];
        let vals = [u11.re, u11.im, u11.norm_sqr()];
        for i in 0..3 {
            sums[i] += vals[i];
            sqs[i] += vals[i] * vals[i];
        }
    }
    let n = samples as f64;
    let mut means = [0.0f64; 3];
    let mut ses = [0.0f64; 3];
    for i in 0..3 {
        means[i] = sums[i] / n;
        let var = ((sqs[i] - n * means[i] * means[i]) / (n - 1.0)).max(0.0);
        ses[i] = (var / n).sqrt();
    }
    (means, ses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::RootSet;
    use crate::real::DEFAULT_PREC as P;

    fn poly_from(roots: &[f64]) -> Poly {
        Poly::from_roots(&RootSet::from_f64(P, roots), P).unwrap()
    }

    #[test]
    fn faddeev_matches_diagonal_expansion() {
        // diag(1,2,3): e = (6, 11, 6)
        let mut m = DMatrix::from_element(3, 3, C64::new(0.0, 0.0));
        for (i, v) in [1.0, 2.0, 3.0].iter().enumerate() {
            m[(i, i)] = C64::new(*v, 0.0);
        }
        let es = char_poly_normalized(&m);
        assert!((es[0] - 6.0 / 3.0).abs() < 1e-12);
        assert!((es[1] - 11.0 / 3.0).abs() < 1e-12);
        assert!((es[2] - 6.0).abs() < 1e-12);
    }

    #[test]
    fn identity_b_reproduces_p() {
        // q = (x-1)^d: U B U* = I, so the estimate is exactly p up to
        // f64 roundoff, with no Monte-Carlo variance
        let p = poly_from(&[0.5, 1.5, 3.0]);
        let q = poly_from(&[1.0; 3]);
        let est = mc_boxtimes(&p, &q, &McConfig::new(3, 50, 42)).unwrap();
        for k in 1..=3 {
            let diff = Float::with_val(P, est.poly.coeff(k) - p.coeff(k));
            assert!(diff.abs().to_f64() < 1e-12, "k={k}");
            assert!(est.stderr[k - 1] < 1e-12);
        }
    }

    #[test]
    fn reproducibility_bit_identical() {
        let p = poly_from(&[0.0, 1.0]);
        let est1 = mc_boxtimes(&p, &p, &McConfig::new(2, 500, 7)).unwrap();
        let est2 = mc_boxtimes(&p, &p, &McConfig::new(2, 500, 7)).unwrap();
        assert_eq!(est1.poly.coeffs(), est2.poly.coeffs());
        // worker partitioning does not change the estimate
        let mut cfg = McConfig::new(2, 500, 7);
        cfg.workers = 2;
        let est3 = mc_boxtimes(&p, &p, &cfg).unwrap();
        assert_eq!(est1.poly.coeffs(), est3.poly.coeffs());
    }

    #[test]
    fn small_multiplicative_crosscheck() {
        // p = q = x(x-1), d=2: exact e~_1(p boxtimes q) = 1/4
        let p = poly_from(&[0.0, 1.0]);
        let est = mc_boxtimes(&p, &p, &McConfig::new(2, 20_000, 11)).unwrap();
        let err = (est.poly.coeff(1).to_f64() - 0.25).abs();
        assert!(err <= 4.0 * est.stderr[0], "err={err} se={}", est.stderr[0]);
    }

    #[test]
    fn small_additive_crosscheck() {
        let p = poly_from(&[0.0, 1.0, 2.0]);
        let q = poly_from(&[0.5, 1.0, 1.5]);
        let exact = crate::conv::boxplus(&p, &q).unwrap();
        let est = mc_boxplus(&p, &q, &McConfig::new(3, 20_000, 13)).unwrap();
        for k in 1..=3 {
            let err = (est.poly.coeff(k).to_f64() - exact.coeff(k).to_f64()).abs();
            assert!(err <= 4.0 * est.stderr[k - 1].max(1e-14), "k={k} err={err}");
        }
    }

    #[test]
    fn haar_first_moments() {
        let (means, ses) = haar_moment_check(4, 20_000, 5);
        assert!(means[0].abs() <= 4.0 * ses[0]);
        assert!(means[1].abs() <= 4.0 * ses[1]);
        assert!((means[2] - 0.25).abs() <= 4.0 * ses[2]);
    }

    #[test]
    fn cost_guard() {
        let p = poly_from(&[1.0; 17]);
        assert!(mc_boxtimes(&p, &p, &McConfig::new(17, 10, 1)).is_err());
        let neg = poly_from(&[-1.0, 2.0]);
        assert!(mc_boxtimes(&neg, &neg, &McConfig::new(2, 10, 1)).is_err());
    }
}

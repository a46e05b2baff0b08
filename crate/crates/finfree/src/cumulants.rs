//! Finite free cumulants: the set-partition sum over normalized
//! coefficients, its triangular inversion, and moments of the empirical
//! root distribution.
//!
//! The n-th cumulant of a degree-d polynomial is
//!
//! ```text
//! kappa_n = (-d)^(n-1)/(n-1)! * sum_{pi in P(n)} (-1)^(|pi|-1) (|pi|-1)! prod_{V in pi} e~_|V|
//! ```
//!
//! Partitions are enumerated once per n by restricted-growth strings and
//! aggregated by block-size profile; the tables are built lazily and
//! shared read-only.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::poly::{Poly, RootSet};
use crate::real::{binom, real, zero, Float, Prec};

/// Bell(12) is ~4.2 million terms; beyond that the partition sum is not
/// worth materializing, and the experiments only ever need n <= 8.
pub const MAX_CUMULANT_ORDER: usize = 12;

/// Finite free cumulants `kappa_1 .. kappa_m` of a degree-`d` polynomial.
#[derive(Debug, Clone)]
pub struct CumulantVec {
    d: usize,
    kappa: Vec<Float>,
}

impl CumulantVec {
    pub fn new(d: usize, kappa: Vec<Float>) -> Self {
        Self { d, kappa }
    }

    /// Degree of the polynomial these cumulants belong to.
    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.kappa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappa.is_empty()
    }

    /// `kappa_n`, 1-indexed.
    pub fn kappa(&self, n: usize) -> &Float {
        &self.kappa[n - 1]
    }

    pub fn values(&self) -> &[Float] {
        &self.kappa
    }
}

/// One block-size profile of set partitions of {1..n}: `sizes` sorted
/// descending, `blocks` = number of blocks, `count` = how many set
/// partitions share the profile.
struct Profile {
    sizes: Vec<u8>,
    blocks: usize,
    count: u64,
}

struct PartitionTable {
    profiles: Vec<Profile>,
}

static TABLES: [OnceLock<PartitionTable>; MAX_CUMULANT_ORDER + 1] =
    [const { OnceLock::new() }; MAX_CUMULANT_ORDER + 1];

/// Enumerates restricted-growth strings a_0..a_(n-1) (a_0 = 0,
/// a_i <= 1 + max(a_0..a_(i-1))) and aggregates block-size profiles.
fn build_table(n: usize) -> PartitionTable {
    let mut counts: HashMap<Vec<u8>, u64> = HashMap::new();
    let mut rgs = vec![0u8; n];
    rec_rgs(&mut rgs, 1, 1, &mut counts);
    let mut profiles: Vec<Profile> = counts
        .into_iter()
        .map(|(sizes, count)| Profile { blocks: sizes.len(), sizes, count })
        .collect();
    profiles.sort_by(|a, b| a.sizes.cmp(&b.sizes));
    PartitionTable { profiles }
}

fn rec_rgs(rgs: &mut Vec<u8>, i: usize, m: u8, counts: &mut HashMap<Vec<u8>, u64>) {
    let n = rgs.len();
    if i == n {
        let mut sizes = vec![0u8; m as usize];
        for &v in rgs.iter() {
            sizes[v as usize] += 1;
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        *counts.entry(sizes).or_insert(0) += 1;
        return;
    }
    for v in 0..=m {
        rgs[i] = v;
        rec_rgs(rgs, i + 1, m.max(v + 1), counts);
    }
}

fn table(n: usize) -> &'static PartitionTable {
    TABLES[n].get_or_init(|| build_table(n))
}

/// Finite free cumulants `kappa_1..kappa_m` of `p` via the set-partition
/// sum.
pub fn cumulants(p: &Poly, m: usize) -> Result<CumulantVec> {
    let d = p.degree();
    if m < 1 || m > d {
        return Err(Error::InvalidInput(format!("cumulant order m={m} out of 1..={d}")));
    }
    if m > MAX_CUMULANT_ORDER {
        return Err(Error::InvalidInput(format!(
            "cumulant order m={m} exceeds cap {MAX_CUMULANT_ORDER} (Bell-number blowup)"
        )));
    }
    let prec = p.prec();
    let kappa = (1..=m).map(|n| kappa_n(p, n, prec)).collect();
    Ok(CumulantVec::new(d, kappa))
}

fn kappa_n(p: &Poly, n: usize, prec: Prec) -> Float {
    let d = p.degree();
    let mut sum = zero(prec);
    for prof in &table(n).profiles {
        let mut term = real(prec, prof.count);
        term *= factorial(prec, prof.blocks - 1);
        if (prof.blocks - 1) % 2 == 1 {
            term = -term;
        }
        for &sz in &prof.sizes {
            term *= p.coeff(sz as usize);
        }
        sum += term;
    }
    // prefactor (-d)^(n-1)/(n-1)!
    let mut pre = real(prec, d as u32);
    if n % 2 == 0 {
        pre = -pre;
    }
    let mut pw = real(prec, 1u32);
    for _ in 1..n {
        pw *= &pre;
    }
    pw / factorial(prec, n - 1) * sum
}

fn factorial(prec: Prec, n: usize) -> Float {
    let mut f = real(prec, 1u32);
    for i in 2..=n {
        f *= i as u64;
    }
    f
}

/// Recovers the unique degree-`d` polynomial with the given cumulants by
/// solving the triangular system (`kappa_n` depends on `e~_1..e~_n` with
/// unit coefficient on `e~_n`).
pub fn from_cumulants(kv: &CumulantVec, d: usize) -> Result<Poly> {
    if kv.len() != d {
        return Err(Error::InvalidInput(format!(
            "need exactly d={d} cumulants, got {}",
            kv.len()
        )));
    }
    if d > MAX_CUMULANT_ORDER {
        return Err(Error::InvalidInput(format!(
            "cumulant inversion capped at d <= {MAX_CUMULANT_ORDER}"
        )));
    }
    let prec = kv.values().iter().map(Float::prec).max().unwrap_or(crate::real::DEFAULT_PREC);
    let mut coeffs: Vec<Float> = vec![real(prec, 1u32)];
    for n in 1..=d {
        // kappa_n * (n-1)!/(-d)^(n-1) = e~_n + (terms in e~_1..e~_(n-1))
        let mut rest = zero(prec);
        for prof in &table(n).profiles {
            if prof.blocks == 1 {
                continue;
            }
            let mut term = real(prec, prof.count);
            term *= factorial(prec, prof.blocks - 1);
            if (prof.blocks - 1) % 2 == 1 {
                term = -term;
            }
            for &sz in &prof.sizes {
                term *= &coeffs[sz as usize];
            }
            rest += term;
        }
        let mut lhs = Float::with_val(prec, kv.kappa(n) * &factorial(prec, n - 1));
        let mut dn = real(prec, d as u32);
        if n % 2 == 0 {
            dn = -dn;
        }
        let mut pw = real(prec, 1u32);
        for _ in 1..n {
            pw *= &dn;
        }
        lhs /= pw;
        coeffs.push(lhs - rest);
    }
    Poly::from_normalized_coeffs(coeffs)
}

/// Moments `m_1..m_m` of the empirical root distribution, from the roots.
pub fn moments(p: &Poly, m: usize) -> Result<Vec<Float>> {
    let rs = p.roots()?;
    Ok(moments_of_roots(&rs, m, p.prec()))
}

/// Moments from an explicit root multiset: `m_n = (1/d) sum lambda_i^n`.
pub fn moments_of_roots(rs: &RootSet, m: usize, prec: Prec) -> Vec<Float> {
    let d = rs.len();
    let mut out = Vec::with_capacity(m);
    let mut powers: Vec<Float> = rs.roots().iter().map(|r| Float::with_val(prec, r)).collect();
    for n in 1..=m {
        if n > 1 {
            for (pw, r) in powers.iter_mut().zip(rs.roots()) {
                *pw *= r;
            }
        }
        let mut s = zero(prec);
        for pw in &powers {
            s += pw;
        }
        out.push(s / d as u32);
    }
    out
}

/// Moments via Newton's identities on the raw elementary symmetric
/// functions; an algebraically independent cross-check of the root path.
pub fn moments_from_coeffs(p: &Poly, m: usize) -> Vec<Float> {
    let d = p.degree();
    let prec = p.prec();
    // raw e_k = C(d,k) e~_k
    let e: Vec<Float> = (0..=d.min(m))
        .map(|k| Float::with_val(prec, p.coeff(k) * &binom(prec, d, k)))
        .collect();
    // p_k = e_1 p_(k-1) - e_2 p_(k-2) + ... + (-1)^(k-1) k e_k
    let mut psums: Vec<Float> = Vec::with_capacity(m + 1);
    psums.push(real(prec, d as u32)); // p_0 = d
    for k in 1..=m {
        let mut acc = zero(prec);
        for j in 1..=k {
            if j > d {
                break;
            }
            let mut term = if j == k {
                real(prec, k as u32) * &e[j]
            } else {
                Float::with_val(prec, &e[j] * &psums[k - j])
            };
            if (j - 1) % 2 == 1 {
                term = -term;
            }
            acc += term;
        }
        psums.push(acc);
    }
    psums[1..].iter().map(|pk| Float::with_val(prec, pk / d as u32)).collect()
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
    fn kappa_1_is_first_coefficient() {
        let p = poly_from(&[0.7, 2.0, 5.5]);
        let kv = cumulants(&p, 3).unwrap();
        assert_eq!(kv.kappa(1), p.coeff(1));
    }

    #[test]
    fn kappa_2_key_formula() {
        // kappa_2 / d = e~_1^2 - e~_2; for p = x(x-2): e~_1 = 1, e~_2 = 0
        let p = poly_from(&[0.0, 2.0]);
        let kv = cumulants(&p, 2).unwrap();
        assert_eq!(*kv.kappa(2), 2);
        let q = poly_from(&[1.0, 3.5, 4.0, 9.0]);
        let kvq = cumulants(&q, 2).unwrap();
        let direct = Float::with_val(P, q.coeff(1) * q.coeff(1)) - q.coeff(2);
        let scaled = Float::with_val(P, kvq.kappa(2) / 4u32);
        assert!(rel_close(&scaled, &direct, -(P as i32) + 16));
    }

    #[test]
    fn dirac_has_vanishing_higher_cumulants() {
        let c = 1.75f64;
        let p = poly_from(&[c; 6]);
        let kv = cumulants(&p, 6).unwrap();
        assert!(rel_close(kv.kappa(1), &real(P, c), -(P as i32) + 16));
        for n in 2..=6 {
            assert!(
                kv.kappa(n).clone().abs() < pow2(P, -(P as i32) + 64),
                "kappa_{n} = {}",
                kv.kappa(n).to_f64()
            );
        }
    }

    #[test]
    fn order_caps_enforced() {
        let p = poly_from(&[1.0; 14]);
        assert!(cumulants(&p, 13).is_err());
        let q = poly_from(&[1.0, 2.0]);
        assert!(cumulants(&q, 3).is_err());
    }

    #[test]
    fn from_cumulants_dirac() {
        let d = 8;
        let mut kappa = vec![zero(P); d];
        kappa[0] = real(P, 3u32);
        let p = from_cumulants(&CumulantVec::new(d, kappa), d).unwrap();
        let dirac = Poly::dirac(d, &real(P, 3u32), P).unwrap();
        for k in 0..=d {
            assert!(rel_close(p.coeff(k), dirac.coeff(k), -(P as i32) + 32), "k={k}");
        }
    }

    #[test]
    fn cumulant_round_trip_degree_10() {
        let p = poly_from(&[0.5, 1.0, 1.5, 2.0, 3.0, 4.5, 5.0, 6.5, 8.0, 9.5]);
        let kv = cumulants(&p, 10).unwrap();
        let q = from_cumulants(&kv, 10).unwrap();
        for k in 0..=10 {
            assert!(rel_close(p.coeff(k), q.coeff(k), -(P as i32) + 48), "k={k}");
        }
    }

    #[test]
    fn moment_paths_agree() {
        let roots = [0.3, 1.1, 2.2, 3.3, 4.4, 5.5, 6.6, 7.7];
        let p = poly_from(&roots);
        let via_roots = moments_of_roots(&RootSet::from_f64(P, &roots), 8, P);
        let via_newton = moments_from_coeffs(&p, 8);
        for (a, b) in via_roots.iter().zip(&via_newton) {
            assert!(rel_close(a, b, -(P as i32) + 48));
        }
    }

    #[test]
    fn trivial_moments() {
        // a multiplicity-5 root is recovered to ~(2^-224)^(1/5) per entry
        let p = poly_from(&[1.0; 5]);
        let ms = moments(&p, 4).unwrap();
        for v in &ms {
            assert!(rel_close(v, &real(P, 1u32), -36));
        }
        let q = poly_from(&[-1.0, 1.0]);
        let ms = moments(&q, 2).unwrap();
        assert!(ms[0].clone().abs() < pow2(P, -200));
        assert!(rel_close(&ms[1], &real(P, 1u32), -200));
    }
}

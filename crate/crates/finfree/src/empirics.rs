//! Empirical root measures, Kolmogorov–Smirnov distance against analytic
//! laws, and CDF-level diagnostics.

use std::io::Write;

use crate::error::{Error, Result};
use crate::laws::{cdf_of, LimitLaw};
use crate::poly::RootSet;
use crate::real::{Float, Prec};

/// Uniform-weight atomic measure on sorted root locations.
#[derive(Debug, Clone)]
pub struct EmpiricalMeasure {
    atoms: Vec<f64>,
}

impl EmpiricalMeasure {
    pub fn from_rootset(rs: &RootSet) -> Self {
        let mut atoms = rs.to_f64();
        atoms.reverse(); // RootSet is non-increasing; CDF work wants ascending
        Self { atoms }
    }

    pub fn from_sorted(mut atoms: Vec<f64>) -> Self {
        atoms.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Self { atoms }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Ascending atom locations, weight `1/d` each.
    pub fn atoms(&self) -> &[f64] {
        &self.atoms
    }

    /// Empirical CDF `F(x) = #{atoms <= x} / d`.
    pub fn cdf(&self, x: f64) -> f64 {
        let n = self.atoms.partition_point(|&a| a <= x);
        n as f64 / self.atoms.len() as f64
    }
}

/// Kolmogorov–Smirnov distance between the empirical measure and an
/// analytic law: the staircase supremum
/// `max_i max(|F(a_i) - i/d|, |F(a_i) - (i-1)/d|)`.
pub fn ks_distance(em: &EmpiricalMeasure, law: &LimitLaw) -> Result<f64> {
    if em.is_empty() {
        return Err(Error::InvalidInput("empty empirical measure".into()));
    }
    let d = em.len() as f64;
    let mut sup: f64 = 0.0;
    for (i, &a) in em.atoms().iter().enumerate() {
        let f = cdf_of(law, a)?;
        sup = sup.max((f - (i + 1) as f64 / d).abs());
        sup = sup.max((f - i as f64 / d).abs());
    }
    Ok(sup)
}

/// Largest and smallest roots `(lambda_1, lambda_d)`.
pub fn extreme_roots(rs: &RootSet) -> (Float, Float) {
    (rs.max_root().clone(), rs.min_root().clone())
}

/// Cauchy transform of the empirical root distribution at a real point
/// outside the root hull (re-exported from the transform layer).
pub fn cauchy_at(rs: &RootSet, z: &Float, prec: Prec) -> Result<Float> {
    crate::transforms::cauchy_at(rs, z, prec)
}

/// Emits `(atom, F_emp, F_law)` rows as CSV for external plotting.
pub fn write_cdf_csv(
    em: &EmpiricalMeasure,
    law: &LimitLaw,
    out: &mut impl Write,
) -> Result<()> {
    writeln!(out, "atom,f_empirical,f_law")?;
    let d = em.len() as f64;
    for (i, &a) in em.atoms().iter().enumerate() {
        let f = cdf_of(law, a)?;
        writeln!(out, "{a},{},{f}", (i + 1) as f64 / d)?;
    }
    Ok(())
}

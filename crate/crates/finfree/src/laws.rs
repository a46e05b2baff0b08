//! Analytic reference laws: S-transforms, T-transforms, CDFs and support
//! endpoints that the degree sweeps converge to.
//!
//! Everything here is f64-level: the extended-precision side of the
//! library is the polynomial algebra; analytic targets are needed to
//! ~1e-14 (closed forms) or ~1e-8 (quadrature CDFs).

use crate::error::{Error, Result};

/// A reference probability law on the real line.
///
/// `Mp(b)` is the Marchenko–Pastur law with rate `b` (mean `b`);
/// `ReversedMp(a)` its reciprocal `(MP_a)^<-1>`; `Jacobi{a,b}` the
/// limiting root law of the modified Jacobi family in the region
/// `b > 1, a > b + 1`; `StableHalf` the positive free 1/2-stable law;
/// `PhiOf` the numeric law whose CDF is the inverse T-transform of its
/// base; `MaxPower` the free max-convolution power.
#[derive(Debug, Clone, PartialEq)]
pub enum LimitLaw {
    Mp { b: f64 },
    ReversedMp { a: f64 },
    Semicircle,
    Arcsine,
    Bernoulli { u: f64 },
    FreeBinomialEdge { t: f64, u: f64 },
    Jacobi { a: f64, b: f64 },
    StableHalf,
    MultPoisson { lambda: f64, beta: f64 },
    Uniform { lo: f64, hi: f64 },
    FreeBetaPrime { b: f64, a: f64 },
    PhiOf(Box<LimitLaw>),
    MaxPower { base: Box<LimitLaw>, t: f64 },
}

impl LimitLaw {
    /// Mass of the atom at zero.
    pub fn atom_at_zero(&self) -> f64 {
        match self {
            LimitLaw::Mp { b } => (1.0 - b).max(0.0),
            LimitLaw::Bernoulli { u } => 1.0 - u,
            LimitLaw::FreeBinomialEdge { t, u } => {
                // Dil_t(beta_u^(1/t)) carries an atom max(1 - u/t, 0)
                (1.0 - u / t).max(0.0)
            }
            LimitLaw::PhiOf(base) => base.atom_at_zero(),
            LimitLaw::MaxPower { base, t } => {
                let a = base.atom_at_zero();
                (t * a - (t - 1.0)).max(0.0)
            }
            _ => 0.0,
        }
    }
}

/// `S_mu(-t)` for `t` in `(0, 1 - atom)`.
pub fn s_of(law: &LimitLaw, t: f64) -> Result<f64> {
    let atom = law.atom_at_zero();
    if !(t > 0.0 && t < 1.0 - atom) {
        return Err(Error::InvalidInput(format!(
            "argument t={t} outside the S-domain (0, {})",
            1.0 - atom
        )));
    }
    match law {
        LimitLaw::Mp { b } => Ok(1.0 / (b - t)),
        LimitLaw::ReversedMp { a } => Ok(a - 1.0 + t),
        LimitLaw::Bernoulli { u } => Ok((1.0 - t) / (u - t)),
        LimitLaw::Jacobi { a, b } => Ok((a - t) / (b - t)),
        LimitLaw::StableHalf => Ok(t),
        LimitLaw::MultPoisson { lambda, beta } => Ok((lambda / (beta - t)).exp()),
        LimitLaw::Uniform { lo, hi } if lo == hi => Ok(1.0 / lo),
        other => Err(Error::UnsupportedLaw(format!("S-transform of {other:?}"))),
    }
}

/// Positive part `m` of the symmetric S-transform value `i*m` at `-t`.
pub fn syms_of(law: &LimitLaw, t: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0 - law.atom_at_zero()) {
        return Err(Error::InvalidInput(format!("argument t={t} outside (0,1)")));
    }
    match law {
        LimitLaw::Semicircle => Ok(1.0 / t.sqrt()),
        LimitLaw::Arcsine => Ok(((2.0 - t) / t).sqrt()),
        other => Err(Error::UnsupportedLaw(format!("symmetric S-transform of {other:?}"))),
    }
}

/// The (shifted) T-transform on `(0, 1)`: zero up to the atom, then the
/// reciprocal `1/S(-(1-t))`.
pub fn t_of(law: &LimitLaw, t: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&t) || t == 0.0 {
        return Err(Error::InvalidInput(format!("argument t={t} outside (0,1)")));
    }
    let atom = law.atom_at_zero();
    if t <= atom {
        return Ok(0.0);
    }
    Ok(1.0 / s_of(law, 1.0 - t)?)
}

/// Support endpoints `(L-, L+)` of the limiting Jacobi root law.
pub fn jacobi_edges(a: f64, b: f64) -> (f64, f64) {
    let s = (a - b).sqrt();
    let r = ((a - 1.0) * b).sqrt();
    (((s - r) / a).powi(2), ((s + r) / a).powi(2))
}

/// Edge positions `alpha±(t, u) = (sqrt(t(1-u)) ± sqrt(u(1-t)))^2` of the
/// differentiated two-point family.
pub fn alpha_edges(t: f64, u: f64) -> Result<(f64, f64)> {
    if !(0.0 < t && t < 1.0 && 0.0 < u && u < 1.0) {
        return Err(Error::InvalidInput(format!("alpha edges need t,u in (0,1), got ({t},{u})")));
    }
    let x = (t * (1.0 - u)).sqrt();
    let y = (u * (1.0 - t)).sqrt();
    Ok(((x - y).powi(2), (x + y).powi(2)))
}

/// Support of the law where it is known in closed form.
pub fn support_of(law: &LimitLaw) -> Option<(f64, f64)> {
    match law {
        LimitLaw::Mp { b } => {
            let s = b.sqrt();
            Some((if *b >= 1.0 { (1.0 - s).powi(2) } else { 0.0 }, (1.0 + s).powi(2)))
        }
        LimitLaw::Semicircle => Some((-2.0, 2.0)),
        LimitLaw::Arcsine => Some((-1.0, 1.0)),
        LimitLaw::Uniform { lo, hi } => Some((*lo, *hi)),
        LimitLaw::Jacobi { a, b } => {
            let (lo, hi) = jacobi_edges(*a, *b);
            Some((lo, hi))
        }
        LimitLaw::FreeBinomialEdge { t, u } => alpha_edges(*t, *u).ok(),
        LimitLaw::StableHalf => Some((0.25, f64::INFINITY)),
        _ => None,
    }
}

/// Cumulative distribution function where a closed form or a quadrature
/// density is available.
pub fn cdf_of(law: &LimitLaw, x: f64) -> Result<f64> {
    match law {
        LimitLaw::Uniform { lo, hi } => {
            if lo == hi {
                Ok(if x < *lo { 0.0 } else { 1.0 })
            } else {
                Ok(((x - lo) / (hi - lo)).clamp(0.0, 1.0))
            }
        }
        LimitLaw::Semicircle => {
            if x <= -2.0 {
                Ok(0.0)
            } else if x >= 2.0 {
                Ok(1.0)
            } else {
                Ok(0.5 + x * (4.0 - x * x).sqrt() / (4.0 * std::f64::consts::PI)
                    + (x / 2.0).asin() / std::f64::consts::PI)
            }
        }
        LimitLaw::Arcsine => {
            if x <= -1.0 {
                Ok(0.0)
            } else if x >= 1.0 {
                Ok(1.0)
            } else {
                Ok(0.5 + x.asin() / std::f64::consts::PI)
            }
        }
        LimitLaw::StableHalf => {
            if x <= 0.25 {
                Ok(0.0)
            } else {
                let v = (4.0 * x - 1.0).sqrt();
                Ok((2.0 / std::f64::consts::PI) * (v.atan() - v / (4.0 * x)))
            }
        }
        LimitLaw::Mp { b } => {
            let atom = law.atom_at_zero();
            if x < 0.0 {
                return Ok(0.0);
            }
            let s = b.sqrt();
            let (lo, hi) = ((1.0 - s).powi(2).max(0.0), (1.0 + s).powi(2));
            if x < lo {
                return Ok(atom);
            }
            if x >= hi {
                return Ok(1.0);
            }
            let f = |u: f64| {
                ((hi - u) * (u - lo)).max(0.0).sqrt() / (2.0 * std::f64::consts::PI * u)
            };
            Ok((atom + integrate_sqrt_edges(f, lo, hi, x)).clamp(0.0, 1.0))
        }
        LimitLaw::Jacobi { a, b: _ } => {
            let (lo, hi) = support_of(law).unwrap();
            if x <= lo {
                return Ok(0.0);
            }
            if x >= hi {
                return Ok(1.0);
            }
            let a = *a;
            let f = move |u: f64| {
                a / (4.0 * std::f64::consts::PI) * ((hi - u) * (u - lo)).max(0.0).sqrt()
                    / (u * (1.0 - u))
            };
            Ok(integrate_sqrt_edges(f, lo, hi, x).clamp(0.0, 1.0))
        }
        LimitLaw::PhiOf(base) => {
            let atom = base.atom_at_zero();
            if x < 0.0 {
                return Ok(0.0);
            }
            // F(x) = T^(-1)(x) on the increasing branch
            let eps = 1e-13;
            let t_lo = atom + eps;
            let t_hi = 1.0 - eps;
            let lo_val = t_of(base, t_lo)?;
            let hi_val = t_of(base, t_hi)?;
            if x <= lo_val {
                return Ok(atom);
            }
            if x >= hi_val {
                return Ok(1.0);
            }
            let (mut a, mut b) = (t_lo, t_hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if t_of(base, mid)? < x {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            Ok(0.5 * (a + b))
        }
        LimitLaw::MaxPower { base, t } => {
            let f = cdf_of(base, x)?;
            Ok((t * f - (t - 1.0)).max(0.0))
        }
        other => Err(Error::UnsupportedLaw(format!("CDF of {other:?}"))),
    }
}

/// The Tucci–Haagerup–Möller pushforward `Phi(mu)`: Dirac laws are fixed
/// points, `Phi(MP_b) = U(b-1, b)` in closed form, anything else with an
/// S-transform becomes the numeric inverse-of-T law.
pub fn phi_of(law: &LimitLaw) -> Result<LimitLaw> {
    match law {
        LimitLaw::Uniform { lo, hi } if lo == hi => Ok(law.clone()),
        LimitLaw::Mp { b } if *b >= 1.0 => Ok(LimitLaw::Uniform { lo: b - 1.0, hi: *b }),
        other => {
            s_of(other, 0.5 * (1.0 - other.atom_at_zero()))?;
            Ok(LimitLaw::PhiOf(Box::new(other.clone())))
        }
    }
}

/// Free max-convolution power `law^{boxlor t}`, `t >= 1`.
pub fn max_power_of(law: &LimitLaw, t: f64) -> Result<LimitLaw> {
    if t < 1.0 {
        return Err(Error::InvalidInput(format!("max power needs t >= 1, got {t}")));
    }
    Ok(LimitLaw::MaxPower { base: Box::new(law.clone()), t })
}

/// Integral of a density vanishing like a square root at both support
/// endpoints, from `lo` to `x`: substitute `u = lo + s^2` (and from the
/// right end `u = hi - s^2` when `x` passes the midpoint) so the
/// integrand is smooth for Gauss–Kronrod.
fn integrate_sqrt_edges(f: impl Fn(f64) -> f64 + Copy, lo: f64, hi: f64, x: f64) -> f64 {
    let mid = 0.5 * (lo + hi);
    if x <= mid {
        let g = |s: f64| 2.0 * s * f(lo + s * s);
        adaptive_gk(&g, 0.0, (x - lo).sqrt(), 1e-10, 24)
    } else {
        let g = |s: f64| 2.0 * s * f(lo + s * s);
        let left = adaptive_gk(&g, 0.0, (mid - lo).sqrt(), 1e-10, 24);
        let h = |s: f64| 2.0 * s * f(hi - s * s);
        let right = adaptive_gk(&h, (hi - x).sqrt(), (hi - mid).sqrt(), 1e-10, 24);
        left + right
    }
}

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kronrod = WGK[7] * f(c);
    let mut gauss = WG[3] * f(c);
    for i in 0..7 {
        let dx = h * XGK[i];
        let fsum = f(c - dx) + f(c + dx);
        kronrod += WGK[i] * fsum;
        if i % 2 == 1 {
            gauss += WG[i / 2] * fsum;
        }
    }
    (kronrod * h, (kronrod - gauss).abs() * h)
}

fn adaptive_gk(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    if a == b {
        return 0.0;
    }
    let (val, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        return val;
    }
    let mid = 0.5 * (a + b);
    adaptive_gk(f, a, mid, 0.5 * tol, depth - 1) + adaptive_gk(f, mid, b, 0.5 * tol, depth - 1)
}

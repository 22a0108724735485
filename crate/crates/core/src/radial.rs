//! Integral operators over radial profiles: Dirichlet energy, weighted norms,
//! the mixed coupling term, and pointwise eigen-equation residuals.
//!
//! Every N-dimensional integral reduces to `omega_{N-1} int_0^inf (...) r^{N-1} dr`;
//! the quadrature engine handles the two half-lines.

use crate::error::{Error, Result};
use crate::params::HSParams;
use crate::profile::{bubble, bubble_dtau, RadialProfile};
use crate::quad::{weighted_integral_with_breaks, DEFAULT_TOL};
use crate::special::{mu_s, sphere_measure};

/// Which eigenpair of the linearized problem to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenMode {
    /// The extremal itself, eigenvalue `mu_s`.
    First,
    /// Its scale derivative, eigenvalue `(p-1) mu_s`.
    Second,
}

/// Refuse integrands whose declared endpoint behavior is not absolutely
/// integrable. `zero_exp`/`infinity_exp` are the power-law exponents of the
/// full integrand (weight included) at 0 and infinity.
fn require_integrable(what: &str, zero_exp: f64, infinity_exp: f64) -> Result<()> {
    if !(zero_exp > -1.0) {
        return Err(Error::NonIntegrable {
            reason: format!("{what}: exponent {zero_exp:.3} at the origin is <= -1"),
        });
    }
    if !(infinity_exp < -1.0) {
        return Err(Error::NonIntegrable {
            reason: format!("{what}: declared tail exponent {infinity_exp:.3} is >= -1"),
        });
    }
    Ok(())
}

/// Tail check shared with the weighted (transformed) integrals.
pub(crate) fn require_weighted_tail(what: &str, tail_exponent: f64) -> Result<()> {
    if !(tail_exponent < -1.0) {
        return Err(Error::NonIntegrable {
            reason: format!("{what}: declared tail exponent {tail_exponent:.3} is >= -1"),
        });
    }
    Ok(())
}

fn require_regular(what: &str, u: &RadialProfile) -> Result<()> {
    if !u.regular_at_zero() {
        return Err(Error::NonIntegrable {
            reason: format!("{what}: profile is not regular at the origin"),
        });
    }
    Ok(())
}

/// `omega_{N-1} int_0^inf u'(r)^2 r^{N-1} dr`.
pub fn dirichlet_energy(u: &RadialProfile, n: u32) -> Result<f64> {
    dirichlet_energy_with_tol(u, n, DEFAULT_TOL)
}

pub fn dirichlet_energy_with_tol(u: &RadialProfile, n: u32, tol: f64) -> Result<f64> {
    if u.is_zero() {
        return Ok(0.0);
    }
    let nf = f64::from(n);
    require_regular("dirichlet_energy", u)?;
    let d = u.decay_exponent_at_infinity();
    // u' ~ r^{-d-1}, so the integrand decays like r^{N-1-2(d+1)}
    require_integrable(
        "dirichlet_energy",
        nf - 1.0 - 2.0, // gradient blow-up at worst r^{1-s} with s < 2
        if d.is_infinite() { f64::NEG_INFINITY } else { nf - 1.0 - 2.0 * (d + 1.0) },
    )?;
    let q = weighted_integral_with_breaks(|r| u.slope(r).powi(2), nf - 1.0, tol, u.breakpoints())?;
    Ok(sphere_measure(n)? * q.value)
}

/// Cross Dirichlet form `omega_{N-1} int u' v' r^{N-1} dr`.
pub fn dirichlet_inner(u: &RadialProfile, v: &RadialProfile, n: u32, tol: f64) -> Result<f64> {
    if u.is_zero() || v.is_zero() {
        return Ok(0.0);
    }
    let nf = f64::from(n);
    let breaks = join_breaks(u, v);
    let q = weighted_integral_with_breaks(|r| u.slope(r) * v.slope(r), nf - 1.0, tol, &breaks)?;
    Ok(sphere_measure(n)? * q.value)
}

fn join_breaks(u: &RadialProfile, v: &RadialProfile) -> Vec<f64> {
    let mut breaks = u.breakpoints().to_vec();
    breaks.extend_from_slice(v.breakpoints());
    breaks
}

/// Weighted p-mass `omega_{N-1} int |u|^p r^{N-1-s} dr` (the s-norm raised to p).
pub fn s_mass(u: &RadialProfile, params: &HSParams, tol: f64) -> Result<f64> {
    if u.is_zero() {
        return Ok(0.0);
    }
    require_regular("s_norm", u)?;
    let nf = params.dimension();
    let d = u.decay_exponent_at_infinity();
    require_integrable(
        "s_norm",
        nf - 1.0 - params.s,
        if d.is_infinite() { f64::NEG_INFINITY } else { nf - 1.0 - params.s - params.p * d },
    )?;
    let p = params.p;
    let q = weighted_integral_with_breaks(
        |r| u.value(r).abs().powf(p),
        nf - 1.0 - params.s,
        tol,
        u.breakpoints(),
    )?;
    Ok(sphere_measure(params.n)? * q.value)
}

/// `(int |x|^{-s} |u|^p)^{1/p}`.
pub fn s_norm(u: &RadialProfile, params: &HSParams) -> Result<f64> {
    Ok(s_mass(u, params, DEFAULT_TOL)?.powf(1.0 / params.p))
}

/// Mixed coupling mass `int |x|^{-s} |u|^alpha |v|^beta dx` (no kappa factor).
pub fn mixed_term(u: &RadialProfile, v: &RadialProfile, params: &HSParams) -> Result<f64> {
    mixed_term_with_tol(u, v, params, DEFAULT_TOL)
}

pub fn mixed_term_with_tol(
    u: &RadialProfile,
    v: &RadialProfile,
    params: &HSParams,
    tol: f64,
) -> Result<f64> {
    if u.is_zero() || v.is_zero() {
        return Ok(0.0);
    }
    require_regular("mixed_term", u)?;
    require_regular("mixed_term", v)?;
    let nf = params.dimension();
    let du = u.decay_exponent_at_infinity();
    let dv = v.decay_exponent_at_infinity();
    let tail = if du.is_infinite() || dv.is_infinite() {
        f64::NEG_INFINITY
    } else {
        nf - 1.0 - params.s - params.alpha * du - params.beta * dv
    };
    require_integrable("mixed_term", nf - 1.0 - params.s, tail)?;
    let (alpha, beta) = (params.alpha, params.beta);
    let breaks = join_breaks(u, v);
    let q = weighted_integral_with_breaks(
        |r| u.value(r).abs().powf(alpha) * v.value(r).abs().powf(beta),
        nf - 1.0 - params.s,
        tol,
        &breaks,
    )?;
    Ok(sphere_measure(params.n)? * q.value)
}

/// Maximal relative residual of `-w'' - (N-1)/r w' = Lambda r^{-s} V^{p-2} w`
/// over the given radii, with `V = U(1,1)` and `(w, Lambda)` selected by `mode`.
///
/// The second derivative comes from the closed form of the profile; nothing
/// is differenced numerically.
pub fn pde_residual(
    w: &RadialProfile,
    params: &HSParams,
    mode: EigenMode,
    radii: &[f64],
) -> Result<f64> {
    if radii.iter().any(|&r| !(r > 0.0)) {
        return Err(Error::domain("radii", "all radii must be > 0"));
    }
    let nf = params.dimension();
    let base = bubble(params, 1.0, 1.0)?;
    let ms = mu_s(params.n, params.s)?;
    let eigenvalue = match mode {
        EigenMode::First => ms,
        EigenMode::Second => (params.p - 1.0) * ms,
    };
    let mut worst: f64 = 0.0;
    for &r in radii {
        let upp = w.curvature(r).ok_or_else(|| {
            Error::domain("w", "profile has no analytic second derivative")
        })?;
        let up = w.slope(r);
        let uv = w.value(r);
        let potential = eigenvalue * r.powf(-params.s) * base.value(r).powf(params.p - 2.0) * uv;
        let lhs1 = -upp;
        let lhs2 = -(nf - 1.0) / r * up;
        let num = (lhs1 + lhs2 - potential).abs();
        let scale = lhs1.abs() + lhs2.abs() + potential.abs();
        if scale > 0.0 {
            worst = worst.max(num / scale);
        }
    }
    Ok(worst)
}

/// Log-spaced grid, inclusive of both ends.
pub fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (la, lb) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (la + (lb - la) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Convenience: the eigen-profile selected by `mode` at scale 1.
pub fn eigen_profile(params: &HSParams, mode: EigenMode) -> Result<RadialProfile> {
    match mode {
        EigenMode::First => bubble(params, 1.0, 1.0),
        EigenMode::Second => bubble_dtau(params, 1.0),
    }
}

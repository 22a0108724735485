//! Deficit functionals of the inequality and distance to the minimizer
//! manifold `{(U(k,tau), +/- t0 U(k,tau))}`.

use serde::Serialize;

use crate::coupling::{best_constant, ExtendedT, MinimizerSet};
use crate::error::{Error, Result};
use crate::opt::golden_section_min;
use crate::params::HSParams;
use crate::profile::{bubble, RadialProfile};
use crate::quad::DEFAULT_TOL;
use crate::radial::{dirichlet_energy, dirichlet_energy_with_tol, dirichlet_inner, mixed_term_with_tol, s_mass};
use crate::special::mu_s;

/// Golden-section bracket for the scale search, in natural log of the scale.
const LOG_TAU_BRACKET: (f64, f64) = (-6.0, 6.0);
const LOG_TAU_TOL: f64 = 1e-10;

/// Itemized deficit of a pair: the gap between the Dirichlet energies and the
/// best-constant multiple of the weighted norm combination.
#[derive(Debug, Clone, Serialize)]
pub struct DeficitReport {
    pub energy_u: f64,
    pub energy_v: f64,
    /// `lambda * int |x|^{-s} |u|^p`
    pub lambda_term: f64,
    /// `mu * int |x|^{-s} |v|^p`
    pub mu_term: f64,
    /// `kappa p * int |x|^{-s} |u|^alpha |v|^beta`
    pub mixed_term: f64,
    pub best_constant_used: f64,
    pub deficit: f64,
    /// `deficit / (energy_u + energy_v)`
    pub relative_deficit: f64,
}

/// Deficit of a nonnegative pair under the two-function inequality.
///
/// Nonnegative on all admissible inputs (up to quadrature noise) and zero
/// exactly on the minimizer manifold.
pub fn deficit_pair(u: &RadialProfile, v: &RadialProfile, params: &HSParams) -> Result<DeficitReport> {
    deficit_pair_with_tol(u, v, params, DEFAULT_TOL)
}

pub fn deficit_pair_with_tol(
    u: &RadialProfile,
    v: &RadialProfile,
    params: &HSParams,
    tol: f64,
) -> Result<DeficitReport> {
    let energy_u = dirichlet_energy_with_tol(u, params.n, tol)?;
    let energy_v = dirichlet_energy_with_tol(v, params.n, tol)?;
    let lambda_term = params.lambda * s_mass(u, params, tol)?;
    let mu_term = params.mu * s_mass(v, params, tol)?;
    let mixed = params.kappa * params.p * mixed_term_with_tol(u, v, params, tol)?;
    let combined = lambda_term + mu_term + mixed;
    if combined < 0.0 {
        return Err(Error::domain(
            "u",
            "the weighted norm combination is negative; the deficit is undefined for this pair",
        ));
    }
    let best = best_constant(params)?;
    let deficit = energy_u + energy_v - best * combined.powf(2.0 / params.p);
    let total_energy = energy_u + energy_v;
    Ok(DeficitReport {
        energy_u,
        energy_v,
        lambda_term,
        mu_term,
        mixed_term: mixed,
        best_constant_used: best,
        deficit,
        relative_deficit: if total_energy > 0.0 { deficit / total_energy } else { 0.0 },
    })
}

/// Single-function deficit `|grad u|^2 - mu_s (int |x|^{-s}|u|^p)^{2/p}`.
pub fn deficit_single(u: &RadialProfile, params: &HSParams) -> Result<f64> {
    let energy = dirichlet_energy(u, params.n)?;
    let mass = s_mass(u, params, DEFAULT_TOL)?;
    Ok(energy - mu_s(params.n, params.s)? * mass.powf(2.0 / params.p))
}

/// Optimal projection coefficient for a pair proportional to one profile:
/// `sigma = (a + t0 b) / (1 + t0^2)`, and `b` itself when `t0 = inf`.
pub fn sigma_projection(a: f64, b: f64, t0: &ExtendedT) -> f64 {
    match t0 {
        ExtendedT::Finite(t) => (a + t * b) / (1.0 + t * t),
        ExtendedT::Infinity => b,
    }
}

/// A pair `(a w, b w)` proportional to the normalized extremal at scale `tau`,
/// perturbing the minimizer `t0_ref`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrialPair {
    pub a: f64,
    pub b: f64,
    pub tau: f64,
    pub t0_ref: ExtendedT,
}

impl TrialPair {
    pub fn new(a: f64, b: f64, tau: f64, t0_ref: ExtendedT) -> Result<Self> {
        if !(a >= 0.0 && b >= 0.0) || (a == 0.0 && b == 0.0) {
            return Err(Error::domain(
                "a",
                format!("trial coefficients must be nonnegative and not both zero, got ({a}, {b})"),
            ));
        }
        if !(tau > 0.0) {
            return Err(Error::domain("tau", format!("must be > 0, got {tau}")));
        }
        Ok(TrialPair { a, b, tau, t0_ref })
    }

    pub fn profiles(&self, params: &HSParams) -> Result<(RadialProfile, RadialProfile)> {
        let w = bubble(params, 1.0, self.tau)?;
        let u = if self.a == 0.0 { RadialProfile::zero() } else { w.scale(self.a) };
        let v = if self.b == 0.0 { RadialProfile::zero() } else { w.scale(self.b) };
        Ok((u, v))
    }

    /// Closed-form deficit
    /// `(a^2 + b^2) mu_s - S (lambda a^p + mu b^p + kappa p a^alpha b^beta)^{2/p}`.
    pub fn closed_form_deficit(&self, params: &HSParams, g_inf: f64) -> Result<f64> {
        let ms = mu_s(params.n, params.s)?;
        let (a, b) = (self.a, self.b);
        let combined = params.lambda * a.powf(params.p)
            + params.mu * b.powf(params.p)
            + params.kappa * params.p * a.powf(params.alpha) * b.powf(params.beta);
        Ok((a * a + b * b) * ms - g_inf * ms * combined.powf(2.0 / params.p))
    }

    /// Closed-form squared gradient distance to the manifold branch at
    /// `t0_ref`: `(a - sigma)^2 mu_s + (b - t0 sigma)^2 mu_s`.
    pub fn closed_form_distance(&self, params: &HSParams) -> Result<f64> {
        let ms = mu_s(params.n, params.s)?;
        let sigma = sigma_projection(self.a, self.b, &self.t0_ref);
        Ok(match self.t0_ref {
            ExtendedT::Finite(t0) => {
                (self.a - sigma).powi(2) * ms + (self.b - t0 * sigma).powi(2) * ms
            }
            // the pair projects onto (0, sigma w)
            ExtendedT::Infinity => self.a.powi(2) * ms + (self.b - sigma).powi(2) * ms,
        })
    }
}

/// Squared gradient distance to the minimizer manifold, raw and normalized by
/// the total Dirichlet energy of the input pair.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ManifoldDistance {
    pub raw: f64,
    pub normalized: f64,
}

/// Distance from `(u, v)` to the minimizer manifold
/// `{(U(k,tau), +/- t' U(k,tau)) : k, tau > 0, t' in S}`.
///
/// The coefficient `k` enters quadratically, so the optimal `k` for fixed
/// `(tau, t')` is a ratio of gradient inner products; what remains is a 1-D
/// concave-looking search over `log tau`, done by golden section on
/// `[-6, 6]`. Both sign branches are evaluated; for nonnegative inputs the
/// positive branch always wins.
pub fn manifold_distance(
    u: &RadialProfile,
    v: &RadialProfile,
    params: &HSParams,
    minimizers: &MinimizerSet,
) -> Result<ManifoldDistance> {
    let ms = mu_s(params.n, params.s)?;
    let energy_u = dirichlet_energy(u, params.n)?;
    let energy_v = dirichlet_energy(v, params.n)?;
    let total = energy_u + energy_v;

    let mut best = f64::INFINITY;
    let mut best_log_tau = 0.0;
    for point in &minimizers.points {
        for sign in [1.0, -1.0] {
            let coupling = |tau: f64| -> Result<f64> {
                let w = bubble(params, 1.0, tau)?;
                Ok(match point.t {
                    ExtendedT::Finite(t0) => {
                        let iu = dirichlet_inner(u, &w, params.n, DEFAULT_TOL)?;
                        let iv = dirichlet_inner(v, &w, params.n, DEFAULT_TOL)?;
                        iu + sign * t0 * iv
                    }
                    ExtendedT::Infinity => sign * dirichlet_inner(v, &w, params.n, DEFAULT_TOL)?,
                })
            };
            // maximize the squared coupling over log tau; quadrature failures
            // inside the objective are routed out through a cell
            let failure = std::cell::RefCell::new(None);
            let (log_tau, neg_sq) = golden_section_min(
                |lt| match coupling(lt.exp()) {
                    Ok(c) => -(c * c),
                    Err(e) => {
                        failure.borrow_mut().get_or_insert(e);
                        f64::INFINITY
                    }
                },
                LOG_TAU_BRACKET.0,
                LOG_TAU_BRACKET.1,
                LOG_TAU_TOL,
            );
            if let Some(e) = failure.into_inner() {
                return Err(e);
            }
            let denom = match point.t {
                ExtendedT::Finite(t0) => (1.0 + t0 * t0) * ms,
                ExtendedT::Infinity => ms,
            };
            let candidate = total + neg_sq / denom;
            if candidate < best {
                best = candidate;
                best_log_tau = log_tau;
            }
        }
    }
    // only the winning branch may not sit on the bracket edge
    if (best_log_tau - LOG_TAU_BRACKET.0).abs() < 1e-6
        || (best_log_tau - LOG_TAU_BRACKET.1).abs() < 1e-6
    {
        return Err(Error::OptimizerAtBracketBoundary {
            log_tau: best_log_tau,
        });
    }
    // distances are squared norms; clamp quadrature noise on-manifold
    let raw = best.max(0.0);
    Ok(ManifoldDistance {
        raw,
        normalized: if total > 0.0 { raw / total } else { 0.0 },
    })
}

//! The radial change of variables `u(r) -> ell^{1/2} u(r^{1/ell})` that turns
//! the weighted variant of the inequality into the unweighted one, and the
//! verification of the weighted inequality with its `ell^{2/p+1}` constant.
//!
//! Only radial inputs are supported: on radial functions the angular-gradient
//! comparison behind the general inequality collapses to an identity, which is
//! exactly what the checks below exploit.

use std::sync::Arc;

use serde::Serialize;

use crate::coupling::best_constant;
use crate::deficit::deficit_pair;
use crate::error::{Error, Result};
use crate::params::HSParams;
use crate::profile::{PowerBubble, RadialProfile, StretchImage};
use crate::quad::{weighted_integral_with_breaks, DEFAULT_TOL};
use crate::radial::require_weighted_tail;
use crate::special::sphere_measure;

/// `u(r) -> ell^{1/2} u(r^{1/ell})`, the identity at `ell = 1`.
pub fn ell_transform(u: &RadialProfile, ell: f64) -> Result<RadialProfile> {
    if !(ell > 0.0 && ell <= 1.0) {
        return Err(Error::domain("ell", format!("must lie in (0, 1], got {ell}")));
    }
    if ell == 1.0 {
        return Ok(u.clone());
    }
    // a kink of the source at rho lands at rho^ell in the image
    let breakpoints = u.breakpoints().iter().map(|b| b.powf(ell)).collect();
    Ok(RadialProfile::from_parts(
        Arc::new(StretchImage {
            q: ell,
            inner: u.shape_handle(),
        }),
        u.decay_exponent_at_infinity() / ell,
        u.regular_at_zero(),
    )
    .with_breakpoints(breakpoints))
}

/// Member of the flattened extremal family
/// `c (1 + (lam r)^{(2-s) ell})^{-(N-2)/(2-s)} lam^{(N-2) ell / 2}`.
///
/// Its image under [`ell_transform`] is the ordinary extremal
/// `U(ell^{1/2} c / k0, lam^ell)`.
pub fn ell_bubble(params: &HSParams, ell: f64, c: f64, lam: f64) -> Result<RadialProfile> {
    if !(ell > 0.0 && ell <= 1.0) {
        return Err(Error::domain("ell", format!("must lie in (0, 1], got {ell}")));
    }
    if !(lam > 0.0) {
        return Err(Error::domain("lam", format!("must be > 0, got {lam}")));
    }
    if c == 0.0 || !c.is_finite() {
        return Err(Error::domain("c", format!("must be finite and nonzero, got {c}")));
    }
    let nf = params.dimension();
    let expo = (2.0 - params.s) * ell;
    let shape_pow = (nf - 2.0) / (2.0 - params.s);
    Ok(RadialProfile::from_parts(
        Arc::new(PowerBubble {
            amp: c * lam.powf((nf - 2.0) * ell / 2.0),
            scale: lam,
            expo,
            shape_pow,
        }),
        shape_pow * expo, // (N - 2) ell
        true,
    ))
}

/// Weighted Dirichlet energy `int |x|^{-(N-2)(1-ell)} |grad u|^2 dx`.
pub fn weighted_energy(u: &RadialProfile, ell: f64, n: u32) -> Result<f64> {
    if u.is_zero() {
        return Ok(0.0);
    }
    let nf = f64::from(n);
    let weight = nf - 1.0 - (nf - 2.0) * (1.0 - ell);
    let d = u.decay_exponent_at_infinity();
    require_weighted_tail("weighted_energy", weight - 2.0 * (d + 1.0))?;
    let q = weighted_integral_with_breaks(|r| u.slope(r).powi(2), weight, DEFAULT_TOL, u.breakpoints())?;
    Ok(sphere_measure(n)? * q.value)
}

/// Weighted p-mass `int |x|^{-(N-s)(1-ell)-s} |u|^p dx`.
pub fn weighted_mass(u: &RadialProfile, ell: f64, params: &HSParams) -> Result<f64> {
    if u.is_zero() {
        return Ok(0.0);
    }
    let nf = params.dimension();
    let weight = nf - 1.0 - (nf - params.s) * (1.0 - ell) - params.s;
    let d = u.decay_exponent_at_infinity();
    require_weighted_tail("weighted_mass", weight - params.p * d)?;
    let p = params.p;
    let q = weighted_integral_with_breaks(|r| u.value(r).abs().powf(p), weight, DEFAULT_TOL, u.breakpoints())?;
    Ok(sphere_measure(params.n)? * q.value)
}

/// Weighted mixed mass `int |x|^{-(N-s)(1-ell)-s} |u|^alpha |v|^beta dx`.
pub fn weighted_mixed(u: &RadialProfile, v: &RadialProfile, ell: f64, params: &HSParams) -> Result<f64> {
    if u.is_zero() || v.is_zero() {
        return Ok(0.0);
    }
    let nf = params.dimension();
    let weight = nf - 1.0 - (nf - params.s) * (1.0 - ell) - params.s;
    let tail = weight
        - params.alpha * u.decay_exponent_at_infinity()
        - params.beta * v.decay_exponent_at_infinity();
    require_weighted_tail("weighted_mixed", tail)?;
    let (alpha, beta) = (params.alpha, params.beta);
    let mut breaks = u.breakpoints().to_vec();
    breaks.extend_from_slice(v.breakpoints());
    let q = weighted_integral_with_breaks(
        |r| u.value(r).abs().powf(alpha) * v.value(r).abs().powf(beta),
        weight,
        DEFAULT_TOL,
        &breaks,
    )?;
    Ok(sphere_measure(params.n)? * q.value)
}

/// Itemized report of the weighted-inequality check.
#[derive(Debug, Clone, Serialize)]
pub struct CorollaryReport {
    pub ell: f64,
    pub weighted_energy_u: f64,
    pub weighted_energy_v: f64,
    pub lambda_term: f64,
    pub mu_term: f64,
    pub mixed_term: f64,
    /// `S * ell^{2/p + 1}`, the sharp constant of the weighted inequality.
    pub best_constant_used: f64,
    pub deficit_ell: f64,
    pub relative_deficit_ell: f64,
    /// Deficit of the transformed pair under the unweighted inequality;
    /// equals `deficit_ell` on radial inputs.
    pub deficit_transformed: f64,
}

/// Evaluate the weighted deficit of a nonnegative radial pair, cross-check it
/// against the transformed pair, and enforce both guaranteed inequalities:
/// `deficit_ell >= deficit(transformed) - 1e-7` and `deficit_ell >= -1e-7`.
pub fn corollary_check(
    u: &RadialProfile,
    v: &RadialProfile,
    ell: f64,
    params: &HSParams,
) -> Result<CorollaryReport> {
    if !(ell > 0.0 && ell <= 1.0) {
        return Err(Error::domain("ell", format!("must lie in (0, 1], got {ell}")));
    }
    let weighted_energy_u = weighted_energy(u, ell, params.n)?;
    let weighted_energy_v = weighted_energy(v, ell, params.n)?;
    let lambda_term = params.lambda * weighted_mass(u, ell, params)?;
    let mu_term = params.mu * weighted_mass(v, ell, params)?;
    let mixed = params.kappa * params.p * weighted_mixed(u, v, ell, params)?;
    let combined = lambda_term + mu_term + mixed;
    if combined < 0.0 {
        return Err(Error::domain(
            "u",
            "the weighted norm combination is negative; the deficit is undefined for this pair",
        ));
    }
    let constant = best_constant(params)? * ell.powf(2.0 / params.p + 1.0);
    let total_energy = weighted_energy_u + weighted_energy_v;
    let deficit_ell = total_energy - constant * combined.powf(2.0 / params.p);

    let tu = ell_transform(u, ell)?;
    let tv = ell_transform(v, ell)?;
    let deficit_transformed = deficit_pair(&tu, &tv, params)?.deficit;

    if deficit_ell < -1e-7 {
        return Err(Error::CheckFailed {
            what: format!("weighted deficit {deficit_ell:.3e} below -1e-7"),
        });
    }
    if deficit_transformed > deficit_ell + 1e-7 {
        return Err(Error::CheckFailed {
            what: format!(
                "transformed deficit {deficit_transformed:.3e} exceeds weighted deficit {deficit_ell:.3e}"
            ),
        });
    }

    Ok(CorollaryReport {
        ell,
        weighted_energy_u,
        weighted_energy_v,
        lambda_term,
        mu_term,
        mixed_term: mixed,
        best_constant_used: constant,
        deficit_ell,
        relative_deficit_ell: if total_energy > 0.0 {
            deficit_ell / total_energy
        } else {
            0.0
        },
        deficit_transformed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;
    use crate::profile::{bubble, perturbation_bump};
    use crate::radial::{dirichlet_energy, s_mass};
    use crate::special::bubble_norm_k0;

    fn case_i() -> HSParams {
        make_params(3, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0).unwrap()
    }

    #[test]
    fn identity_at_ell_one() {
        let p = case_i();
        let u = bubble(&p, 1.0, 1.0).unwrap();
        let t = ell_transform(&u, 1.0).unwrap();
        for &r in &[0.1, 1.0, 10.0] {
            assert_eq!(u.value(r), t.value(r));
        }
        assert!(ell_transform(&u, 0.0).is_err());
        assert!(ell_transform(&u, 1.5).is_err());
    }

    #[test]
    fn transform_chain_rule() {
        let p = case_i();
        let u = bubble(&p, 1.0, 1.0).unwrap().add(&perturbation_bump().scale(0.2));
        let t = ell_transform(&u, 0.7).unwrap();
        for &r in &[0.3, 0.9, 2.0] {
            let h = 1e-6 * r;
            let fd = (t.value(r + h) - t.value(r - h)) / (2.0 * h);
            assert!((t.slope(r) - fd).abs() <= 1e-6 * (1.0 + fd.abs()));
        }
    }

    #[test]
    fn energy_identity_for_radial_inputs() {
        let p = case_i();
        let ell = 0.7;
        let u = bubble(&p, 1.0, 1.0).unwrap();
        let tu = ell_transform(&u, ell).unwrap();
        let lhs = dirichlet_energy(&tu, p.n).unwrap();
        let rhs = weighted_energy(&u, ell, p.n).unwrap();
        assert!((lhs - rhs).abs() <= 1e-7 * rhs.max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn mass_identity_for_radial_inputs() {
        let p = case_i();
        let ell = 0.7;
        let u = bubble(&p, 1.0, 1.0).unwrap();
        let tu = ell_transform(&u, ell).unwrap();
        let lhs = s_mass(&tu, &p, 1e-11).unwrap();
        let rhs = ell.powf(p.p / 2.0 + 1.0) * weighted_mass(&u, ell, &p).unwrap();
        assert!((lhs - rhs).abs() <= 1e-7 * rhs.max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn flattened_family_maps_onto_the_extremal_family() {
        let p = case_i();
        let (ell, c, lam) = (0.5, 1.3, 2.0);
        let w = ell_bubble(&p, ell, c, lam).unwrap();
        let image = ell_transform(&w, ell).unwrap();
        let k0 = bubble_norm_k0(p.n, p.s).unwrap();
        let expected = bubble(&p, ell.sqrt() * c / k0, lam.powf(ell)).unwrap();
        for i in 0..40 {
            let r = 1e-3 * (10.0_f64).powf(6.0 * i as f64 / 39.0);
            assert!(
                (image.value(r) - expected.value(r)).abs() <= 1e-9,
                "r={r}: {} vs {}",
                image.value(r),
                expected.value(r)
            );
        }
    }

    #[test]
    fn flattened_members_have_zero_weighted_deficit() {
        let p = case_i();
        let t0 = 1.0; // minimizer of the coupling function for case I
        for &ell in &[0.3, 0.5, 0.9] {
            let w = ell_bubble(&p, ell, 1.0, 1.5).unwrap();
            let rep = corollary_check(&w, &w.scale(t0), ell, &p).unwrap();
            assert!(rep.deficit_ell.abs() <= 1e-7, "ell={ell}: {}", rep.deficit_ell);
            assert!(rep.deficit_transformed.abs() <= 1e-7);
        }
    }

    #[test]
    fn weighted_deficit_equals_transformed_deficit_on_radial_inputs() {
        let p = case_i();
        let w = ell_bubble(&p, 0.5, 1.0, 1.0).unwrap();
        let shifted = ell_bubble(&p, 0.5, 0.8, 1.7).unwrap();
        let rep = corollary_check(&w, &shifted, 0.5, &p).unwrap();
        assert!(
            (rep.deficit_ell - rep.deficit_transformed).abs() <= 1e-7 * rep.deficit_ell.abs().max(1.0),
            "{} vs {}",
            rep.deficit_ell,
            rep.deficit_transformed
        );
        assert!(rep.deficit_ell >= -1e-7);
    }

    #[test]
    fn continuity_at_the_identity() {
        let p = case_i();
        let u = bubble(&p, 1.0, 1.0).unwrap();
        let v = bubble(&p, 1.0, 1.6).unwrap();
        let at_one = corollary_check(&u, &v, 1.0, &p).unwrap().deficit_ell;
        let near_one = corollary_check(&u, &v, 1.0 - 1e-8, &p).unwrap().deficit_ell;
        let unweighted = deficit_pair(&u, &v, &p).unwrap().deficit;
        assert!((at_one - unweighted).abs() <= 1e-9 * unweighted.max(1.0));
        assert!((near_one - unweighted).abs() <= 1e-6);
    }

    #[test]
    fn squared_ell_lower_bound() {
        // int |grad u~|^2 >= ell^2 int |x|^{-(N-2)(1-ell)} |grad u|^2
        let p = case_i();
        for &ell in &[0.3, 0.5, 0.9] {
            let u = bubble(&p, 1.0, 1.0).unwrap().add(&perturbation_bump().scale(0.1));
            let tu = ell_transform(&u, ell).unwrap();
            let lhs = dirichlet_energy(&tu, p.n).unwrap();
            let rhs = weighted_energy(&u, ell, p.n).unwrap();
            assert!(lhs >= ell * ell * rhs - 1e-9, "ell={ell}: {lhs} vs {}", ell * ell * rhs);
        }
    }

    #[test]
    fn transform_direction_inequality_on_random_radial_profiles() {
        use rand::{Rng, SeedableRng};
        let p = case_i();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let bump = perturbation_bump();
        for &ell in &[0.3, 0.5, 0.9] {
            for _ in 0..7 {
                let base = ell_bubble(&p, ell, 1.0, rng.gen_range(0.5..2.0)).unwrap();
                let eps: f64 = rng.gen_range(0.0..0.2);
                // transformed bump keeps the pair inside the weighted space
                let u = base.add(&bump.scale(eps));
                let v = base.scale(rng.gen_range(0.5..1.5));
                let rep = corollary_check(&u, &v, ell, &p).unwrap();
                assert!(rep.deficit_transformed <= rep.deficit_ell + 1e-7);
            }
        }
    }

    #[test]
    fn ell_bubble_validation() {
        let p = case_i();
        assert!(ell_bubble(&p, 0.0, 1.0, 1.0).is_err());
        assert!(ell_bubble(&p, 0.5, 0.0, 1.0).is_err());
        assert!(ell_bubble(&p, 0.5, 1.0, -1.0).is_err());
    }
}

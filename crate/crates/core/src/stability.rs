//! Epsilon-sweep experiments along trial families and log-log slope fitting:
//! the empirical recovery of the stability exponent.
//!
//! Deficits along the trial families come from the scalar closed form, not
//! quadrature: at the degenerate rate the deficit scales like eps^4 and the
//! subtraction of order-one terms would otherwise hit double-precision
//! cancellation below eps ~ 1e-4. One quadrature evaluation at the largest
//! eps cross-checks the closed form.

use serde::Serialize;

use crate::coupling::{classify, find_minimizers, ExtendedT};
use crate::deficit::{deficit_pair_with_tol, TrialPair};
use crate::error::{Error, Result};
use crate::params::HSParams;
use crate::special::mu_s;

/// Default epsilon grid: 12 geometric points from 1e-1 down to 1e-3.
pub fn default_eps_grid() -> Vec<f64> {
    geometric_grid(1e-1, 1e-3, 12)
}

/// Strictly decreasing geometric grid from `hi` to `lo`.
pub fn geometric_grid(hi: f64, lo: f64, count: usize) -> Vec<f64> {
    let (la, lb) = (hi.ln(), lo.ln());
    (0..count)
        .map(|i| (la + (lb - la) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Ordinary least squares on `(ln x, ln y)`.
///
/// Returns `(slope, intercept, max_residual)` with the residual measured in
/// log space. Requires at least 4 strictly positive points.
pub fn fit_loglog(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    if xs.len() != ys.len() {
        return Err(Error::domain("xs", "xs and ys must have equal length"));
    }
    if xs.len() < 4 {
        return Err(Error::domain("xs", format!("need at least 4 points, got {}", xs.len())));
    }
    if xs.iter().chain(ys.iter()).any(|&v| !(v > 0.0)) {
        return Err(Error::domain("xs", "all points must be strictly positive"));
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("xs", "abscissae are all identical"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let max_residual = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (slope * x + intercept - y).abs())
        .fold(0.0, f64::max);
    Ok((slope, intercept, max_residual))
}

/// Result of one epsilon-sweep along a trial family.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub params: HSParams,
    pub t0: ExtendedT,
    pub epsilons: Vec<f64>,
    pub deficits: Vec<f64>,
    pub distances: Vec<f64>,
    pub slope_deficit: f64,
    pub slope_distance: f64,
    /// `slope_distance / slope_deficit`; the empirical stability exponent.
    pub iota_estimate: f64,
    /// Exponent predicted by the classification, when one applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification_iota: Option<f64>,
    pub case_label: String,
    /// Relative gap between the closed-form deficit and quadrature at the
    /// largest epsilon.
    pub quadrature_check_rel_error: f64,
    /// Largest observed `normalized distance / normalized deficit^iota`; an
    /// empirical lower bound for any admissible stability constant.
    pub observed_constant: f64,
}

impl SweepReport {
    /// Plot-ready CSV, columns `epsilon,deficit,distance`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epsilon,deficit,distance\n");
        for i in 0..self.epsilons.len() {
            out.push_str(&format!(
                "{:e},{:e},{:e}\n",
                self.epsilons[i], self.deficits[i], self.distances[i]
            ));
        }
        out
    }
}

/// Sweep the trial family `(w, (t0 + eps) w)` over the epsilon grid and fit
/// the deficit and distance rates.
///
/// `t0` must belong to the minimizer set of `params` (within 1e-8). The
/// `t0 = inf` family is handled by parameter reflection: the swapped
/// parameters see the same experiment at `t0 = 0`.
pub fn stability_sweep(params: &HSParams, t0: &ExtendedT, eps_grid: &[f64]) -> Result<SweepReport> {
    if eps_grid.len() < 4 {
        return Err(Error::domain("eps_grid", "need at least 4 epsilon values"));
    }
    if eps_grid.iter().any(|&e| !(e > 0.0 && e <= 0.3)) {
        return Err(Error::domain("eps_grid", "epsilon values must lie in (0, 0.3]"));
    }
    if eps_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::domain("eps_grid", "epsilon grid must be strictly decreasing"));
    }

    let classification = classify(params)?;
    let (work_params, work_t0) = match t0 {
        ExtendedT::Infinity => (params.swapped(), 0.0),
        ExtendedT::Finite(t) => (*params, *t),
    };
    let set = find_minimizers(&work_params)?;
    if !set.contains(&ExtendedT::Finite(work_t0), 1e-8) {
        return Err(Error::domain(
            "t0",
            format!("{t0} is not a minimizer of the coupling function for these parameters"),
        ));
    }
    let ms = mu_s(params.n, params.s)?;

    let mut deficits = Vec::with_capacity(eps_grid.len());
    let mut distances = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let pair = TrialPair::new(1.0, work_t0 + eps, 1.0, ExtendedT::Finite(work_t0))?;
        deficits.push(pair.closed_form_deficit(&work_params, set.g_inf)?);
        distances.push(pair.closed_form_distance(&work_params)?);
    }
    if deficits.iter().any(|&d| !(d > 0.0)) {
        return Err(Error::CheckFailed {
            what: "closed-form deficit not strictly positive along the trial family".into(),
        });
    }

    // quadrature spot check at the largest epsilon; the deficit there is a
    // near-cancellation of order-one integrals, so the spot check runs at a
    // tolerance well below the default
    let pair = TrialPair::new(1.0, work_t0 + eps_grid[0], 1.0, ExtendedT::Finite(work_t0))?;
    let (u, v) = pair.profiles(&work_params)?;
    let quad = deficit_pair_with_tol(&u, &v, &work_params, 1e-13)?.deficit;
    let quadrature_check_rel_error = ((quad - deficits[0]) / deficits[0]).abs();

    let (slope_deficit, _, _) = fit_loglog(eps_grid, &deficits)?;
    let (slope_distance, _, _) = fit_loglog(eps_grid, &distances)?;
    let iota_estimate = slope_distance / slope_deficit;

    // empirical stability constant along this family, in the normalized form
    let observed_constant = match classification.iota {
        Some(iota) => {
            let mut worst: f64 = 0.0;
            for i in 0..eps_grid.len() {
                let total_energy = (1.0 + (work_t0 + eps_grid[i]).powi(2)) * ms;
                let lhs = distances[i] / total_energy;
                let rhs = (deficits[i] / total_energy).powf(iota);
                worst = worst.max(lhs / rhs);
            }
            worst
        }
        None => f64::NAN,
    };

    Ok(SweepReport {
        params: *params,
        t0: *t0,
        epsilons: eps_grid.to_vec(),
        deficits,
        distances,
        slope_deficit,
        slope_distance,
        iota_estimate,
        classification_iota: classification.iota,
        case_label: classification.case.to_string(),
        quadrature_check_rel_error,
        observed_constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::degenerate_case_params;
    use crate::params::make_params;

    #[test]
    fn fit_recovers_exact_power_laws() {
        let xs: Vec<f64> = (1..=8).map(|i| 0.1 * i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
        let (slope, intercept, res) = fit_loglog(&xs, &ys).unwrap();
        assert!((slope - 2.0).abs() < 1e-12);
        assert!(intercept.abs() < 1e-12);
        assert!(res < 1e-12);

        let ys: Vec<f64> = xs.iter().map(|x| 5.0 * x.powi(4)).collect();
        let (slope, intercept, _) = fit_loglog(&xs, &ys).unwrap();
        assert!((slope - 4.0).abs() < 1e-12);
        assert!((intercept - 5.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn fit_tolerates_alternating_noise() {
        let xs: Vec<f64> = (1..=12).map(|i| 0.05 * i as f64).collect();
        let ys: Vec<f64> = xs
            .iter()
            .enumerate()
            .map(|(i, x)| x * x * if i % 2 == 0 { 1.01 } else { 0.99 })
            .collect();
        let (slope, _, res) = fit_loglog(&xs, &ys).unwrap();
        assert!((slope - 2.0).abs() < 0.02, "slope {slope}");
        assert!(res <= 0.02, "residual {res}");
    }

    #[test]
    fn fit_rejects_bad_input() {
        assert!(fit_loglog(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).is_err());
        assert!(fit_loglog(&[1.0, 2.0, 3.0, -4.0], &[1.0, 2.0, 3.0, 4.0]).is_err());
        assert!(fit_loglog(&[1.0, 2.0, 3.0, 4.0], &[1.0, 2.0, 0.0, 4.0]).is_err());
        assert!(fit_loglog(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn sweep_case_i_has_unit_exponent() {
        let p = make_params(3, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0).unwrap();
        let rep = stability_sweep(&p, &ExtendedT::Finite(1.0), &default_eps_grid()).unwrap();
        assert!((rep.slope_deficit - 2.0).abs() <= 0.05, "{}", rep.slope_deficit);
        assert!((rep.slope_distance - 2.0).abs() <= 0.05, "{}", rep.slope_distance);
        assert!((rep.iota_estimate - 1.0).abs() <= 0.05);
        assert_eq!(rep.classification_iota, Some(1.0));
        assert!(rep.quadrature_check_rel_error <= 1e-7);
        assert!(rep.observed_constant.is_finite() && rep.observed_constant > 0.0);
        // deficits strictly decreasing along decreasing eps
        assert!(rep.deficits.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn sweep_interior_degenerate_has_half_exponent() {
        let (la, mu, t0) = degenerate_case_params(3, 1.5, 1.4, 1.6, 1.0).unwrap();
        let p = make_params(3, 1.5, 1.4, 1.6, la, mu, 1.0).unwrap();
        let rep = stability_sweep(&p, &ExtendedT::Finite(t0), &default_eps_grid()).unwrap();
        assert!((rep.slope_deficit - 4.0).abs() <= 0.10, "{}", rep.slope_deficit);
        assert!((rep.slope_distance - 2.0).abs() <= 0.05);
        assert!((rep.iota_estimate - 0.5).abs() <= 0.05);
        assert_eq!(rep.classification_iota, Some(0.5));
        assert!(
            rep.quadrature_check_rel_error <= 1e-7,
            "quadrature check {}",
            rep.quadrature_check_rel_error
        );
    }

    #[test]
    fn sweep_zero_endpoint_degenerate() {
        let p = make_params(3, 1.0, 2.0, 2.0, 2.0, 1.0, 1.0).unwrap();
        let rep = stability_sweep(&p, &ExtendedT::Finite(0.0), &default_eps_grid()).unwrap();
        assert!((rep.slope_deficit - 4.0).abs() <= 0.10, "{}", rep.slope_deficit);
        assert!((rep.iota_estimate - 0.5).abs() <= 0.05);
    }

    #[test]
    fn sweep_at_infinity_reflects() {
        let p = make_params(3, 1.0, 2.0, 2.0, 1.0, 2.0, 1.0).unwrap(); // S = {inf}
        let rep = stability_sweep(&p, &ExtendedT::Infinity, &default_eps_grid()).unwrap();
        assert!((rep.slope_deficit - 4.0).abs() <= 0.10);
        assert!((rep.iota_estimate - 0.5).abs() <= 0.05);
        assert!(rep.t0.is_infinite());
        // identical numbers as the mirrored experiment at t0 = 0
        let q = p.swapped();
        let mirrored = stability_sweep(&q, &ExtendedT::Finite(0.0), &default_eps_grid()).unwrap();
        for (a, b) in rep.deficits.iter().zip(&mirrored.deficits) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn sweep_two_endpoint_case_keeps_half_exponent() {
        // minimizers at both endpoints; the degenerate one is 0
        let p = make_params(3, 0.5, 3.0, 2.0, 2.0, 2.0, 1.0).unwrap();
        let rep = stability_sweep(&p, &ExtendedT::Finite(0.0), &default_eps_grid()).unwrap();
        assert!((rep.slope_deficit - 4.0).abs() <= 0.10, "{}", rep.slope_deficit);
        assert!((rep.iota_estimate - 0.5).abs() <= 0.05);
        assert_eq!(rep.case_label, "II.4");
        // the nondegenerate endpoint sees the ordinary quadratic rate
        let rep = stability_sweep(&p, &ExtendedT::Infinity, &default_eps_grid()).unwrap();
        assert!((rep.slope_deficit - 2.0).abs() <= 0.05, "{}", rep.slope_deficit);
        assert!((rep.slope_distance - 2.0).abs() <= 0.05);
    }

    #[test]
    fn sweep_rejects_non_minimizers_and_bad_grids() {
        let p = make_params(3, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0).unwrap();
        assert!(stability_sweep(&p, &ExtendedT::Finite(0.5), &default_eps_grid()).is_err());
        assert!(stability_sweep(&p, &ExtendedT::Finite(1.0), &[0.1, 0.01]).is_err());
        assert!(stability_sweep(&p, &ExtendedT::Finite(1.0), &[0.4, 0.2, 0.1, 0.05]).is_err());
        assert!(stability_sweep(&p, &ExtendedT::Finite(1.0), &[0.01, 0.02, 0.1, 0.2]).is_err());
    }

    #[test]
    fn csv_shape() {
        let p = make_params(3, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0).unwrap();
        let rep = stability_sweep(&p, &ExtendedT::Finite(1.0), &default_eps_grid()).unwrap();
        let csv = rep.to_csv();
        assert!(csv.starts_with("epsilon,deficit,distance\n"));
        assert_eq!(csv.lines().count(), 13);
    }
}

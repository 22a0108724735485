//! Radial profiles: the extremal family, its scale derivative, compactly
//! supported perturbations, and closure under linear combination and the
//! radial change of variables used by the weighted inequality.
//!
//! Every profile carries an analytic first derivative; energies never
//! differentiate numerically. Decay metadata travels with the profile so the
//! integral operators can refuse non-integrable combinations up front.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::params::HSParams;
use crate::special::bubble_norm_k0;

/// A radial shape: value and first derivative at every `r > 0`, and, when the
/// closed form allows it, the second derivative.
pub trait RadialFn: Send + Sync {
    fn value(&self, r: f64) -> f64;
    /// du/dr
    fn slope(&self, r: f64) -> f64;
    /// d2u/dr2, for shapes with an analytic closed form.
    fn curvature(&self, _r: f64) -> Option<f64> {
        None
    }
}

/// An immutable radial function with decay metadata. Cheap to clone.
#[derive(Clone)]
pub struct RadialProfile {
    shape: Arc<dyn RadialFn>,
    decay_exponent: f64,
    regular_at_zero: bool,
    /// Radii where the profile is only C1 (second derivative jumps). The
    /// quadrature engine places panel boundaries here so its error estimates
    /// stay honest on piecewise-smooth integrands.
    breakpoints: Vec<f64>,
}

impl RadialProfile {
    pub fn from_parts(shape: Arc<dyn RadialFn>, decay_exponent: f64, regular_at_zero: bool) -> Self {
        RadialProfile {
            shape,
            decay_exponent,
            regular_at_zero,
            breakpoints: Vec::new(),
        }
    }

    pub fn with_breakpoints(mut self, breakpoints: Vec<f64>) -> Self {
        self.breakpoints = breakpoints;
        self
    }

    /// Radii where smoothness degrades to C1.
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn value(&self, r: f64) -> f64 {
        self.shape.value(r)
    }

    pub fn slope(&self, r: f64) -> f64 {
        self.shape.slope(r)
    }

    pub fn curvature(&self, r: f64) -> Option<f64> {
        self.shape.curvature(r)
    }

    pub(crate) fn shape_handle(&self) -> Arc<dyn RadialFn> {
        self.shape.clone()
    }

    /// Declared power decay `d` with `u ~ r^{-d}` at infinity
    /// (`f64::INFINITY` for compactly supported profiles).
    pub fn decay_exponent_at_infinity(&self) -> f64 {
        self.decay_exponent
    }

    /// Bounded value at the origin, with any gradient blow-up mild enough
    /// (at worst `r^{1-s}` with `s < 2`) that the weighted energy densities
    /// stay integrable there.
    pub fn regular_at_zero(&self) -> bool {
        self.regular_at_zero
    }

    pub fn is_zero(&self) -> bool {
        self.decay_exponent.is_infinite() && self.value(1.0) == 0.0 && self.value(0.3) == 0.0
    }

    /// The identically-zero profile.
    pub fn zero() -> Self {
        RadialProfile::from_parts(Arc::new(Zero), f64::INFINITY, true)
    }

    /// `c * u`.
    pub fn scale(&self, c: f64) -> Self {
        if c == 0.0 {
            return RadialProfile::zero();
        }
        RadialProfile {
            shape: Arc::new(Scaled {
                c,
                inner: self.shape.clone(),
            }),
            decay_exponent: self.decay_exponent,
            regular_at_zero: self.regular_at_zero,
            breakpoints: self.breakpoints.clone(),
        }
    }

    /// `u + v`. The declared decay is the slower of the two.
    pub fn add(&self, other: &RadialProfile) -> Self {
        let mut breakpoints = self.breakpoints.clone();
        breakpoints.extend_from_slice(&other.breakpoints);
        RadialProfile {
            shape: Arc::new(Sum {
                a: self.shape.clone(),
                b: other.shape.clone(),
            }),
            decay_exponent: self.decay_exponent.min(other.decay_exponent),
            regular_at_zero: self.regular_at_zero && other.regular_at_zero,
            breakpoints,
        }
    }

    /// Sampled table `r,u,du` for debugging; not a stability surface.
    pub fn sample_csv(&self, radii: &[f64]) -> String {
        let mut out = String::from("r,u,du\n");
        for &r in radii {
            let _ = writeln!(out, "{:e},{:e},{:e}", r, self.value(r), self.slope(r));
        }
        out
    }

    /// Check the declared decay against sampled behavior: `|u(R) R^d|` must be
    /// stable within a factor of 2 over R in {1e3, 1e4}. Compactly supported
    /// profiles pass vacuously.
    pub fn decay_matches_samples(&self) -> bool {
        let d = self.decay_exponent;
        if d.is_infinite() {
            return true;
        }
        let a = (self.value(1e3) * 1e3_f64.powf(d)).abs();
        let b = (self.value(1e4) * 1e4_f64.powf(d)).abs();
        if a == 0.0 && b == 0.0 {
            return true;
        }
        a > 0.0 && b > 0.0 && a / b < 2.0 && b / a < 2.0
    }
}

struct Zero;

impl RadialFn for Zero {
    fn value(&self, _r: f64) -> f64 {
        0.0
    }
    fn slope(&self, _r: f64) -> f64 {
        0.0
    }
    fn curvature(&self, _r: f64) -> Option<f64> {
        Some(0.0)
    }
}

struct Scaled {
    c: f64,
    inner: Arc<dyn RadialFn>,
}

impl RadialFn for Scaled {
    fn value(&self, r: f64) -> f64 {
        self.c * self.inner.value(r)
    }
    fn slope(&self, r: f64) -> f64 {
        self.c * self.inner.slope(r)
    }
    fn curvature(&self, r: f64) -> Option<f64> {
        self.inner.curvature(r).map(|v| self.c * v)
    }
}

struct Sum {
    a: Arc<dyn RadialFn>,
    b: Arc<dyn RadialFn>,
}

impl RadialFn for Sum {
    fn value(&self, r: f64) -> f64 {
        self.a.value(r) + self.b.value(r)
    }
    fn slope(&self, r: f64) -> f64 {
        self.a.slope(r) + self.b.slope(r)
    }
    fn curvature(&self, r: f64) -> Option<f64> {
        match (self.a.curvature(r), self.b.curvature(r)) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        }
    }
}

/// `amp * (1 + (scale r)^expo)^{-shape_pow}` — covers the extremal family
/// (expo = 2 - s) and the flattened family of the weighted inequality
/// (expo = (2 - s) ell).
pub(crate) struct PowerBubble {
    pub amp: f64,
    pub scale: f64,
    pub expo: f64,
    pub shape_pow: f64,
}

impl RadialFn for PowerBubble {
    fn value(&self, r: f64) -> f64 {
        let u = self.scale * r;
        self.amp * (1.0 + u.powf(self.expo)).powf(-self.shape_pow)
    }

    fn slope(&self, r: f64) -> f64 {
        let u = self.scale * r;
        let rho = u.powf(self.expo);
        -self.amp
            * self.shape_pow
            * self.expo
            * self.scale
            * u.powf(self.expo - 1.0)
            * (1.0 + rho).powf(-self.shape_pow - 1.0)
    }

    fn curvature(&self, r: f64) -> Option<f64> {
        let u = self.scale * r;
        let rho = u.powf(self.expo);
        let bracket = (self.expo - 1.0) * (1.0 + rho) - (self.shape_pow + 1.0) * self.expo * rho;
        Some(
            -self.amp
                * self.shape_pow
                * self.expo
                * self.scale
                * self.scale
                * u.powf(self.expo - 2.0)
                * (1.0 + rho).powf(-self.shape_pow - 2.0)
                * bracket,
        )
    }
}

/// Scale derivative of the normalized extremal at scale `tau`:
/// `C tau^{nu-1} (1 - rho)(1 + rho)^{-a}` with `rho = (tau r)^{2-s}`.
struct BubbleScaleDeriv {
    coeff: f64, // k0 (N-2)/2 * tau^{(N-2)/2 - 1}
    tau: f64,
    expo: f64, // 2 - s
    a: f64,    // (N - s)/(2 - s)
}

impl BubbleScaleDeriv {
    fn rho(&self, r: f64) -> f64 {
        (self.tau * r).powf(self.expo)
    }
}

impl RadialFn for BubbleScaleDeriv {
    fn value(&self, r: f64) -> f64 {
        let rho = self.rho(r);
        self.coeff * (1.0 - rho) * (1.0 + rho).powf(-self.a)
    }

    fn slope(&self, r: f64) -> f64 {
        let u = self.tau * r;
        let rho = self.rho(r);
        -self.coeff
            * self.expo
            * self.tau
            * u.powf(self.expo - 1.0)
            * (1.0 + rho).powf(-self.a - 1.0)
            * ((1.0 + self.a) + (1.0 - self.a) * rho)
    }

    fn curvature(&self, r: f64) -> Option<f64> {
        let u = self.tau * r;
        let rho = self.rho(r);
        let e = self.expo;
        let a = self.a;
        let bracket = (e - 1.0) * (1.0 + rho) * ((1.0 + a) + (1.0 - a) * rho)
            - (a + 1.0) * e * rho * ((1.0 + a) + (1.0 - a) * rho)
            + (1.0 - a) * e * rho * (1.0 + rho);
        Some(
            -self.coeff
                * e
                * self.tau
                * self.tau
                * u.powf(e - 2.0)
                * (1.0 + rho).powf(-a - 2.0)
                * bracket,
        )
    }
}

/// C1 polynomial spline supported on [1/2, 2], peak value 1/2 at r = 5/4.
struct Bump;

const BUMP_NORM: f64 = 128.0 / 81.0; // (3/4)^{-4} / 2

impl RadialFn for Bump {
    fn value(&self, r: f64) -> f64 {
        if !(0.5..=2.0).contains(&r) {
            return 0.0;
        }
        BUMP_NORM * (r - 0.5).powi(2) * (2.0 - r).powi(2)
    }

    fn slope(&self, r: f64) -> f64 {
        if !(0.5..=2.0).contains(&r) {
            return 0.0;
        }
        BUMP_NORM * 2.0 * (r - 0.5) * (2.0 - r) * (2.5 - 2.0 * r)
    }

    fn curvature(&self, r: f64) -> Option<f64> {
        if !(0.5..=2.0).contains(&r) {
            return Some(0.0);
        }
        // d2/dr2 of (r-1/2)^2 (2-r)^2
        Some(BUMP_NORM * (2.0 * (2.0 - r).powi(2) - 8.0 * (r - 0.5) * (2.0 - r) + 2.0 * (r - 0.5).powi(2)))
    }
}

/// Image of `inner` under `u(r) -> q^{1/2} u(r^{1/q})`.
pub(crate) struct StretchImage {
    pub q: f64,
    pub inner: Arc<dyn RadialFn>,
}

impl RadialFn for StretchImage {
    fn value(&self, r: f64) -> f64 {
        self.q.sqrt() * self.inner.value(r.powf(1.0 / self.q))
    }

    fn slope(&self, r: f64) -> f64 {
        let inv = 1.0 / self.q;
        self.q.sqrt() * inv * r.powf(inv - 1.0) * self.inner.slope(r.powf(inv))
    }
}

/// The normalized extremal `U(k, tau)`; decays like `r^{-(N-2)}` and takes the
/// value `k k0 tau^{(N-2)/2}` at the origin.
pub fn bubble(params: &HSParams, k: f64, tau: f64) -> Result<RadialProfile> {
    if !(tau > 0.0) {
        return Err(Error::domain("tau", format!("must be > 0, got {tau}")));
    }
    if k == 0.0 || !k.is_finite() {
        return Err(Error::domain("k", format!("must be finite and nonzero, got {k}")));
    }
    let nf = params.dimension();
    let k0 = bubble_norm_k0(params.n, params.s)?;
    let shape = PowerBubble {
        amp: k * k0 * tau.powf((nf - 2.0) / 2.0),
        scale: tau,
        expo: 2.0 - params.s,
        shape_pow: (nf - 2.0) / (2.0 - params.s),
    };
    Ok(RadialProfile::from_parts(Arc::new(shape), nf - 2.0, true))
}

/// Analytic tau-derivative of the normalized family `tau -> U(1, tau)`.
pub fn bubble_dtau(params: &HSParams, tau: f64) -> Result<RadialProfile> {
    if !(tau > 0.0) {
        return Err(Error::domain("tau", format!("must be > 0, got {tau}")));
    }
    let nf = params.dimension();
    let k0 = bubble_norm_k0(params.n, params.s)?;
    let shape = BubbleScaleDeriv {
        coeff: k0 * (nf - 2.0) / 2.0 * tau.powf((nf - 2.0) / 2.0 - 1.0),
        tau,
        expo: 2.0 - params.s,
        a: (nf - params.s) / (2.0 - params.s),
    };
    // (1 - rho)(1 + rho)^{-a} ~ -rho^{1-a} = -(tau r)^{-(N-2)} at infinity
    Ok(RadialProfile::from_parts(Arc::new(shape), nf - 2.0, true))
}

/// The canonical C1 perturbation: polynomial spline supported on [1/2, 2]
/// with peak value 1/2.
pub fn perturbation_bump() -> RadialProfile {
    RadialProfile::from_parts(Arc::new(Bump), f64::INFINITY, true).with_breakpoints(vec![0.5, 2.0])
}

//! Derivative-free 1-D solvers: bracketing root refinement and golden-section
//! line search. Both are deterministic and allocation-free.

/// Refine a root of `f` inside the bracket `[a, b]` (with `f(a)`, `f(b)` of
/// opposite sign or zero) until `|f| <= f_tol` or the bracket collapses to
/// floating-point resolution. Bisection with a secant acceleration step;
/// the bracket is never abandoned.
pub fn refine_root<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, f_tol: f64) -> f64 {
    let (mut lo, mut hi) = (a, b);
    let (mut flo, mut fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return lo;
    }
    if fhi == 0.0 {
        return hi;
    }
    debug_assert!(flo * fhi < 0.0, "refine_root needs a sign change");

    let mut best = if flo.abs() < fhi.abs() { lo } else { hi };
    let mut best_f = flo.abs().min(fhi.abs());

    for iter in 0..200 {
        // secant candidate, clamped into the open bracket; plain midpoint otherwise
        let mid = 0.5 * (lo + hi);
        let mut x = if (fhi - flo).abs() > 0.0 {
            lo - flo * (hi - lo) / (fhi - flo)
        } else {
            mid
        };
        if !(x > lo && x < hi) || iter % 2 == 1 {
            x = mid;
        }
        if x <= lo || x >= hi {
            break; // bracket at floating-point resolution
        }
        let fx = f(x);
        if fx.abs() < best_f {
            best_f = fx.abs();
            best = x;
        }
        if fx.abs() <= f_tol {
            return x;
        }
        if flo * fx < 0.0 {
            hi = x;
            fhi = fx;
        } else {
            lo = x;
            flo = fx;
        }
    }
    best
}

/// Golden-section minimization of `f` on `[a, b]`; returns `(x_min, f_min)`.
pub fn golden_section_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, x_tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > x_tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refines_simple_root() {
        let r = refine_root(|x| x * x - 2.0, 1.0, 2.0, 1e-13);
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn refines_odd_triple_root() {
        // zero slope at the root; the bisection half of the scheme carries it
        let r = refine_root(|x| (x - 1.0).powi(3), 0.0, 3.0, 1e-15);
        assert!((r - 1.0).abs() < 1e-4, "r={r}");
        assert!((r - 1.0).powi(3).abs() <= 1e-11);
    }

    #[test]
    fn golden_section_finds_quadratic_min() {
        let (x, fx) = golden_section_min(|x| (x - 0.3).powi(2) + 1.0, -4.0, 5.0, 1e-10);
        // location is noise-limited to ~sqrt(eps) on a quadratic; the value
        // is what callers consume and is far tighter
        assert!((x - 0.3).abs() < 1e-6);
        assert!((fx - 1.0).abs() < 1e-14);
    }
}

//! One-dimensional adaptive Simpson quadrature.
//!
//! Used for the few quantities that have no closed form: the total-variation
//! divergence between Gaussians, Fisher information of generators without an
//! analytic reduction, and moments of restricted Gaussian oracle targets.
//! The integrand is assumed smooth except possibly at finitely many kinks
//! (the `tv` integrand has one); adaptive bisection resolves those.

/// Integrates `f` over `[lo, hi]` to absolute tolerance `tol`.
///
/// Classic adaptive Simpson with Richardson correction. Depth is capped so a
/// pathological integrand terminates; the cap is far beyond what any integrand
/// in this crate needs.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    let mid = 0.5 * (lo + hi);
    let flo = f(lo);
    let fmid = f(mid);
    let fhi = f(hi);
    let whole = simpson(lo, hi, flo, fmid, fhi);
    adapt(f, lo, hi, flo, fmid, fhi, whole, tol, 52)
}

fn simpson(lo: f64, hi: f64, flo: f64, fmid: f64, fhi: f64) -> f64 {
    (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    flo: f64,
    fmid: f64,
    fhi: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let mid = 0.5 * (lo + hi);
    let lmid = 0.5 * (lo + mid);
    let rmid = 0.5 * (mid + hi);
    let flmid = f(lmid);
    let frmid = f(rmid);
    let left = simpson(lo, mid, flo, flmid, fmid);
    let right = simpson(mid, hi, fmid, frmid, fhi);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adapt(f, lo, mid, flo, flmid, fmid, left, 0.5 * tol, depth - 1)
            + adapt(f, mid, hi, fmid, frmid, fhi, right, 0.5 * tol, depth - 1)
    }
}

/// Gaussian density of `N(0, variance)` at `x`.
pub fn normal_pdf(x: f64, variance: f64) -> f64 {
    (-x * x / (2.0 * variance)).exp() / (2.0 * std::f64::consts::PI * variance).sqrt()
}

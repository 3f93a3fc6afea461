//! Target potentials `f` with certified convexity and smoothness moduli.
//!
//! A target density is `exp(-f)` up to normalization. Samplers only touch
//! `f` through its gradient, the strong-convexity modulus `alpha` and the
//! smoothness modulus `L` (so `alpha I <= hess f <= L I`). Adding a constant
//! to `f` changes no sampler output, since only gradients enter the updates.
//!
//! [`check_potential`] validates a potential numerically: gradients against
//! central finite differences, and the moduli against the secant inequality
//! `alpha |x - y|^2 <= <grad f(x) - grad f(y), x - y> <= L |x - y|^2`
//! at random point pairs.

use crate::error::{Error, Result};
use crate::gaussian::GaussianSpec;
use crate::rng::RngStream;

/// A strongly convex, smooth potential on `R^dim`.
pub trait Potential: Sync {
    fn dim(&self) -> usize;

    /// `f(x)`.
    fn value(&self, x: &[f64]) -> f64;

    /// Writes `grad f(x)` into `out`.
    fn grad(&self, x: &[f64], out: &mut [f64]);

    /// Strong-convexity modulus `alpha > 0`.
    fn strong_convexity(&self) -> f64;

    /// Smoothness modulus `L >= alpha`.
    fn smoothness(&self) -> f64;

    /// The target distribution when it is an isotropic Gaussian, which
    /// unlocks exact sampling shortcuts.
    fn as_gaussian(&self) -> Option<GaussianSpec> {
        None
    }
}

/// `f(x) = |x|^2 / (2 v)`: the potential of `N(0, v I)`, with
/// `alpha = L = 1/v`.
#[derive(Clone, Copy, Debug)]
pub struct GaussianPotential {
    dim: usize,
    variance: f64,
}

impl GaussianPotential {
    pub fn new(dim: usize, variance: f64) -> Result<Self> {
        GaussianSpec { dim, variance }.validate()?;
        Ok(Self { dim, variance })
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }
}

impl Potential for GaussianPotential {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        let sq: f64 = x.iter().map(|v| v * v).sum();
        sq / (2.0 * self.variance)
    }

    fn grad(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        for (o, v) in out.iter_mut().zip(x) {
            *o = v / self.variance;
        }
    }

    fn strong_convexity(&self) -> f64 {
        1.0 / self.variance
    }

    fn smoothness(&self) -> f64 {
        1.0 / self.variance
    }

    fn as_gaussian(&self) -> Option<GaussianSpec> {
        Some(GaussianSpec { dim: self.dim, variance: self.variance })
    }
}

/// `f(x) = |x|^2 / 2 + epsilon * sum_i cos(x_i)` for `0 <= epsilon < 1`:
/// a non-Gaussian target that stays strongly convex with
/// `alpha = 1 - epsilon` and `L = 1 + epsilon`.
#[derive(Clone, Copy, Debug)]
pub struct CosinePerturbedPotential {
    dim: usize,
    epsilon: f64,
}

impl CosinePerturbedPotential {
    pub fn new(dim: usize, epsilon: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("potential dimension must be >= 1".into()));
        }
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::InvalidParameter(format!(
                "cosine perturbation must satisfy 0 <= epsilon < 1, got {epsilon}"
            )));
        }
        Ok(Self { dim, epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

impl Potential for CosinePerturbedPotential {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        x.iter().map(|v| 0.5 * v * v + self.epsilon * v.cos()).sum()
    }

    fn grad(&self, x: &[f64], out: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim);
        debug_assert_eq!(out.len(), self.dim);
        for (o, v) in out.iter_mut().zip(x) {
            *o = v - self.epsilon * v.sin();
        }
    }

    fn strong_convexity(&self) -> f64 {
        1.0 - self.epsilon
    }

    fn smoothness(&self) -> f64 {
        1.0 + self.epsilon
    }
}

/// Numerical validation report for a [`Potential`].
#[derive(Clone, Debug)]
pub struct PotentialReport {
    /// Largest `|grad f - finite difference|` over the checked points.
    pub max_grad_error: f64,
    /// Number of points where the gradient check exceeded its tolerance
    /// `1e-3 * (1 + |grad f|)`.
    pub grad_violations: usize,
    /// Extremes of `<grad f(x) - grad f(y), x - y> / |x - y|^2`; must land in
    /// `[alpha, L]` up to slack.
    pub min_secant_ratio: f64,
    pub max_secant_ratio: f64,
    /// Number of pairs whose secant ratio left `[alpha, L]`.
    pub secant_violations: usize,
    pub points_checked: usize,
    pub passed: bool,
}

const FD_STEP: f64 = 1e-5;
const SECANT_SLACK: f64 = 1e-9;

/// Checks gradients against central finite differences and the moduli
/// against the secant inequality, at `n_points` standard normal points.
pub fn check_potential<P: Potential + ?Sized>(
    pot: &P,
    n_points: usize,
    rng: &RngStream,
) -> Result<PotentialReport> {
    if n_points < 2 {
        return Err(Error::InvalidParameter("potential check needs at least 2 points".into()));
    }
    let d = pot.dim();
    let alpha = pot.strong_convexity();
    let l = pot.smoothness();
    if !(alpha > 0.0) || !(l >= alpha) {
        return Err(Error::InvalidParameter(format!(
            "moduli must satisfy 0 < alpha <= L, got alpha = {alpha}, L = {l}"
        )));
    }

    let points: Vec<Vec<f64>> = (0..n_points)
        .map(|i| (0..d).map(|j| rng.normal(i as u64, 0, j as u64)).collect())
        .collect();

    let mut max_grad_error: f64 = 0.0;
    let mut grad_violations = 0;
    let mut grad = vec![0.0; d];
    let mut probe = vec![0.0; d];
    for x in &points {
        pot.grad(x, &mut grad);
        let gnorm = grad.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut err_sq = 0.0;
        for j in 0..d {
            probe.copy_from_slice(x);
            probe[j] = x[j] + FD_STEP;
            let up = pot.value(&probe);
            probe[j] = x[j] - FD_STEP;
            let down = pot.value(&probe);
            let fd = (up - down) / (2.0 * FD_STEP);
            err_sq += (grad[j] - fd) * (grad[j] - fd);
        }
        let err = err_sq.sqrt();
        max_grad_error = max_grad_error.max(err);
        if err > 1e-3 * (1.0 + gnorm) {
            grad_violations += 1;
        }
    }

    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = f64::NEG_INFINITY;
    let mut secant_violations = 0;
    let mut gx = vec![0.0; d];
    let mut gy = vec![0.0; d];
    for pair in points.chunks_exact(2) {
        let (x, y) = (&pair[0], &pair[1]);
        let dist_sq: f64 = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum();
        if dist_sq < 1e-24 {
            continue;
        }
        pot.grad(x, &mut gx);
        pot.grad(y, &mut gy);
        let inner: f64 =
            gx.iter().zip(&gy).zip(x.iter().zip(y)).map(|((a, b), (u, v))| (a - b) * (u - v)).sum();
        let ratio = inner / dist_sq;
        min_ratio = min_ratio.min(ratio);
        max_ratio = max_ratio.max(ratio);
        if ratio < alpha - SECANT_SLACK * (1.0 + alpha) || ratio > l + SECANT_SLACK * (1.0 + l) {
            secant_violations += 1;
        }
    }

    Ok(PotentialReport {
        max_grad_error,
        grad_violations,
        min_secant_ratio: min_ratio,
        max_secant_ratio: max_ratio,
        secant_violations,
        points_checked: n_points,
        passed: grad_violations == 0 && secant_violations == 0,
    })
}

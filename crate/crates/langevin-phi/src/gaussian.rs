//! Closed-form divergences and Fisher information between centered isotropic
//! Gaussians.
//!
//! For `mu = N(0, a I_d)` and `nu = N(0, b I_d)` with variance ratio
//! `rho = a / b`:
//!
//! * KL: `(d/2) (rho - 1 - ln rho)`
//! * chi-squared: `(b / sqrt(a (2b - a)))^d - 1`, finite only when `2b > a`
//! * squared Hellinger: `2 (1 - (2 sqrt(ab) / (a + b))^(d/2))`
//! * reversed forms: the same formulas with `a` and `b` swapped
//! * total variation: no elementary form; computed by quadrature in
//!   dimension 1
//!
//! When the chi-squared existence condition fails the divergence is reported
//! as `+infinity`, a first-class value for every consumer in this crate.

use crate::error::{Error, Result};
use crate::estimate::DivergenceEstimate;
use crate::phi::{PhiFunction, PhiKind};
use crate::quad;

/// A centered isotropic Gaussian `N(0, variance * I_dim)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GaussianSpec {
    pub dim: usize,
    pub variance: f64,
}

impl GaussianSpec {
    pub fn new(dim: usize, variance: f64) -> Result<Self> {
        let spec = Self { dim, variance };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidParameter("Gaussian dimension must be >= 1".into()));
        }
        if !(self.variance > 0.0) || !self.variance.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Gaussian variance must be positive and finite, got {}",
                self.variance
            )));
        }
        Ok(())
    }
}

/// `D_Phi(mu || nu)` for centered isotropic Gaussians.
///
/// Closed form for every smooth generator; `tv` falls back to quadrature and
/// is only supported in dimension 1. Divergences that do not exist (the
/// chi-squared integrability condition) come back as `+infinity` with kind
/// `closed_form`.
pub fn gaussian_phi_divergence(
    phi: PhiFunction,
    mu: &GaussianSpec,
    nu: &GaussianSpec,
) -> Result<DivergenceEstimate> {
    mu.validate()?;
    nu.validate()?;
    if mu.dim != nu.dim {
        return Err(Error::DimensionMismatch { expected: nu.dim, got: mu.dim });
    }
    let (a, b, d) = (mu.variance, nu.variance, mu.dim);
    if a == b {
        // Identity of indiscernibles, exact for every generator.
        return Ok(DivergenceEstimate::closed_form(0.0));
    }
    let value = match phi.kind() {
        PhiKind::Kl => kl_closed(a, b, d),
        PhiKind::ReverseKl => kl_closed(b, a, d),
        PhiKind::Chi2 => chi2_closed(a, b, d),
        PhiKind::ReverseChi2 => chi2_closed(b, a, d),
        PhiKind::Hellinger2 => {
            let bc = 2.0 * (a * b).sqrt() / (a + b);
            2.0 * (1.0 - bc.powf(d as f64 / 2.0))
        }
        PhiKind::Tv => {
            if d != 1 {
                return Err(Error::Unsupported(format!(
                    "total variation between Gaussians is quadrature-only and limited to \
                     dimension 1, got dimension {d}"
                )));
            }
            let lim = 14.0 * a.max(b).sqrt();
            let v = quad::integrate(
                &|x| (quad::normal_pdf(x, a) - quad::normal_pdf(x, b)).abs(),
                -lim,
                lim,
                1e-13,
            );
            return Ok(DivergenceEstimate::quadrature(0.5 * v));
        }
    };
    Ok(DivergenceEstimate::closed_form(value))
}

fn kl_closed(a: f64, b: f64, d: usize) -> f64 {
    let rho = a / b;
    0.5 * d as f64 * (rho - 1.0 - rho.ln())
}

fn chi2_closed(a: f64, b: f64, d: usize) -> f64 {
    if 2.0 * b <= a {
        return f64::INFINITY;
    }
    (b / (a * (2.0 * b - a)).sqrt()).powi(d as i32) - 1.0
}

/// Phi-Fisher information `FI_Phi(mu || nu) = E_nu[|grad r|^2 Phi''(r)]`
/// between centered isotropic Gaussians.
///
/// Closed form for `kl` and `chi2` in any dimension; other smooth generators
/// are integrated numerically in dimension 1. Infinite when the defining
/// integral diverges (`chi2` with `2/a <= 1/b`).
pub fn gaussian_fisher_info(
    phi: PhiFunction,
    mu: &GaussianSpec,
    nu: &GaussianSpec,
) -> Result<f64> {
    mu.validate()?;
    nu.validate()?;
    if mu.dim != nu.dim {
        return Err(Error::DimensionMismatch { expected: nu.dim, got: mu.dim });
    }
    if !phi.smooth() {
        return Err(Error::NonSmoothPhi { op: "gaussian_fisher_info", name: phi.name() });
    }
    let (a, b, d) = (mu.variance, nu.variance, mu.dim);
    match phi.kind() {
        // E_mu[|grad log r|^2] with grad log r = -x (1/a - 1/b).
        PhiKind::Kl => Ok(d as f64 * a * (1.0 / a - 1.0 / b).powi(2)),
        PhiKind::Chi2 => {
            // E_nu[2 |grad r|^2] reduces to a Gaussian moment with precision
            // s = 2/a - 1/b; the integral diverges when s <= 0.
            let s = 2.0 / a - 1.0 / b;
            if s <= 0.0 {
                return Ok(f64::INFINITY);
            }
            Ok(2.0 * (b / a).powi(d as i32)
                * (1.0 / a - 1.0 / b).powi(2)
                * (b * s).powf(-(d as f64) / 2.0)
                * d as f64
                / s)
        }
        _ => {
            if d != 1 {
                return Err(Error::Unsupported(format!(
                    "Fisher information for `{}` has no closed form here; quadrature is \
                     limited to dimension 1, got dimension {d}",
                    phi.name()
                )));
            }
            let dlog = 1.0 / b - 1.0 / a;
            let lim = 14.0 * a.max(b).sqrt();
            let v = quad::integrate(
                &|x| {
                    let r = quad::normal_pdf(x, a) / quad::normal_pdf(x, b);
                    let grad = r * x * dlog;
                    quad::normal_pdf(x, b) * grad * grad * phi.d2(r)
                },
                -lim,
                lim,
                1e-13,
            );
            Ok(v)
        }
    }
}

/// The Phi-Sobolev constant of a centered Gaussian reference: a Gaussian
/// `N(0, v I)` satisfies the Phi-Sobolev inequality with constant `1 / v` for
/// every generator in the registry, and the constant is exact.
pub fn gaussian_phi_si_constant(nu: &GaussianSpec) -> Result<f64> {
    nu.validate()?;
    Ok(1.0 / nu.variance)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(dim: usize, variance: f64) -> GaussianSpec {
        GaussianSpec { dim, variance }
    }

    fn div(phi: PhiFunction, a: f64, b: f64, d: usize) -> f64 {
        gaussian_phi_divergence(phi, &spec(d, a), &spec(d, b)).unwrap().value
    }

    // Values frozen from quadrature of the defining integrals.
    #[test]
    fn kl_pair_one_two() {
        assert!((div(PhiFunction::kl(), 1.0, 2.0, 1) - 0.09657359027997264).abs() < 1e-14);
        assert!((div(PhiFunction::kl(), 2.0, 1.0, 1) - 0.15342640972002736).abs() < 1e-14);
        assert!((div(PhiFunction::kl(), 1.0, 2.0, 5) - 0.48286795139986320).abs() < 1e-14);
    }

    #[test]
    fn chi2_pair_one_two() {
        // 2 / sqrt(3) - 1
        assert!((div(PhiFunction::chi2(), 1.0, 2.0, 1) - 0.15470053837925152).abs() < 1e-13);
        assert!((div(PhiFunction::chi2(), 1.0, 2.0, 5) - 1.05280095711867100).abs() < 1e-12);
    }

    #[test]
    fn chi2_existence_boundary() {
        assert!(div(PhiFunction::chi2(), 2.0, 1.0, 1).is_infinite());
        assert!(div(PhiFunction::chi2(), 2.5, 1.0, 3).is_infinite());
        assert!(div(PhiFunction::reverse_chi2(), 1.0, 2.0, 1).is_infinite());
        // reversed direction exists on the same pair
        assert!(
            (div(PhiFunction::reverse_chi2(), 2.0, 1.0, 1) - 0.15470053837925152).abs() < 1e-13
        );
    }

    #[test]
    fn hellinger_pair_one_two() {
        assert!((div(PhiFunction::hellinger2(), 1.0, 2.0, 1) - 0.05803291317070574).abs() < 1e-13);
        assert!((div(PhiFunction::hellinger2(), 1.0, 2.0, 5) - 0.27380703392951600).abs() < 1e-12);
        // symmetric in its arguments
        assert_eq!(
            div(PhiFunction::hellinger2(), 1.0, 2.0, 1),
            div(PhiFunction::hellinger2(), 2.0, 1.0, 1)
        );
    }

    #[test]
    fn reverse_kl_swaps_arguments() {
        assert!((div(PhiFunction::reverse_kl(), 1.0, 2.0, 1) - 0.15342640972002736).abs() < 1e-14);
        assert_eq!(
            div(PhiFunction::reverse_kl(), 1.0, 1.5, 2),
            div(PhiFunction::kl(), 1.5, 1.0, 2)
        );
    }

    #[test]
    fn tv_quadrature_matches_frozen_values() {
        let est = gaussian_phi_divergence(PhiFunction::tv(), &spec(1, 1.0), &spec(1, 2.0)).unwrap();
        assert_eq!(est.kind, crate::estimate::EstimateKind::Quadrature);
        assert!((est.value - 0.16606407498351290).abs() < 1e-10, "{}", est.value);
        let est =
            gaussian_phi_divergence(PhiFunction::tv(), &spec(1, 1.0), &spec(1, 1.5)).unwrap();
        assert!((est.value - 0.09777614200849770).abs() < 1e-10, "{}", est.value);
        // symmetric
        let ab = div(PhiFunction::tv(), 2.0, 1.0, 1);
        let ba = div(PhiFunction::tv(), 1.0, 2.0, 1);
        assert!((ab - ba).abs() < 1e-11);
    }

    #[test]
    fn tv_rejects_higher_dimensions() {
        let err = gaussian_phi_divergence(PhiFunction::tv(), &spec(2, 1.0), &spec(2, 2.0));
        assert!(matches!(err, Err(Error::Unsupported(_))));
    }

    #[test]
    fn identity_of_indiscernibles() {
        for phi in crate::phi::phi_registry() {
            let d = if phi.kind() == PhiKind::Tv { 1 } else { 3 };
            assert_eq!(div(phi, 1.7, 1.7, d), 0.0, "{}", phi.name());
        }
    }

    #[test]
    fn nonnegative_on_grid() {
        let grid = [0.25, 0.5, 1.0, 1.5, 2.0, 4.0];
        for phi in crate::phi::phi_registry() {
            let d = if phi.kind() == PhiKind::Tv { 1 } else { 2 };
            for &a in &grid {
                for &b in &grid {
                    let v = div(phi, a, b, d);
                    assert!(v >= 0.0, "{}({a}, {b}) = {v}", phi.name());
                }
            }
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let err = gaussian_phi_divergence(PhiFunction::kl(), &spec(1, 1.0), &spec(2, 1.0));
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    // Frozen from quadrature of E_nu[|grad r|^2 Phi''(r)].
    #[test]
    fn fisher_info_closed_forms() {
        let f = gaussian_fisher_info(PhiFunction::kl(), &spec(1, 1.0), &spec(1, 2.0)).unwrap();
        assert!((f - 0.25).abs() < 1e-14, "{f}");
        let f = gaussian_fisher_info(PhiFunction::chi2(), &spec(1, 1.0), &spec(1, 2.0)).unwrap();
        assert!((f - 0.38490017945975050).abs() < 1e-13, "{f}");
        let f = gaussian_fisher_info(PhiFunction::kl(), &spec(1, 1.0), &spec(1, 4.0 / 3.0))
            .unwrap();
        assert!((f - 0.0625).abs() < 1e-14, "{f}");
        // infinite branch
        let f = gaussian_fisher_info(PhiFunction::chi2(), &spec(1, 2.0), &spec(1, 1.0)).unwrap();
        assert!(f.is_infinite());
    }

    #[test]
    fn fisher_info_quadrature_generators() {
        let f =
            gaussian_fisher_info(PhiFunction::hellinger2(), &spec(1, 1.0), &spec(1, 2.0)).unwrap();
        assert!((f - 0.16183059056910800).abs() < 1e-10, "{f}");
        let f =
            gaussian_fisher_info(PhiFunction::reverse_kl(), &spec(1, 1.0), &spec(1, 2.0)).unwrap();
        assert!((f - 0.5).abs() < 1e-10, "{f}");
    }

    #[test]
    fn fisher_info_rejects_tv() {
        let err = gaussian_fisher_info(PhiFunction::tv(), &spec(1, 1.0), &spec(1, 2.0));
        assert!(matches!(err, Err(Error::NonSmoothPhi { .. })));
    }

    #[test]
    fn phi_si_constant_is_inverse_variance() {
        let c = gaussian_phi_si_constant(&spec(3, 4.0 / 3.0)).unwrap();
        assert_eq!(c, 0.75);
        assert!(gaussian_phi_si_constant(&spec(1, 0.0)).is_err());
    }
}

//! Calculus of Phi-Sobolev inequality constants.
//!
//! A measure `nu` satisfies the Phi-Sobolev inequality with constant
//! `alpha > 0` when `2 alpha D_Phi(mu || nu) <= FI_Phi(mu || nu)` for all
//! `mu`, where `FI_Phi` is the Phi-Fisher information. The constant behaves
//! predictably under the operations a sampling step is built from, and this
//! module composes those rules while recording a machine-readable trace:
//!
//! * strong log-concavity `alpha` implies the inequality with the same
//!   constant for every registry generator;
//! * pushforward under an `L`-Lipschitz map divides the constant by `L^2`;
//! * convolution of two measures combines constants harmonically,
//!   `1 / (1/a + 1/b)`;
//! * the ULA biased limit of an `alpha`-strongly-log-concave, `L`-smooth
//!   target keeps at least `alpha (2 - alpha eta) / 2 >= alpha / 2`;
//! * a Gaussian `N(0, v I)` has exact constant `1 / v`.
//!
//! `alpha_lower = +infinity` is legal (a point mass direction never arises
//! here, but compositions may produce it) and `0` propagates as the trivial
//! bound with a warning note in the trace.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::EstimateKind;
use crate::gaussian::{
    gaussian_fisher_info, gaussian_phi_divergence, gaussian_phi_si_constant, GaussianSpec,
};
use crate::phi::PhiFunction;

/// Derivation rule recorded in a bound's trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Slc,
    Pushforward,
    Convolution,
    BiasedLimit,
    Gaussian,
}

/// Whether a constant is the exact Phi-Sobolev constant or only a lower
/// bound. Exact constants originate from Gaussian references; every other
/// rule is conservative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

/// One step in the derivation of a bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule: Rule,
    /// Numeric inputs of the rule, in signature order.
    pub inputs: Vec<f64>,
    /// Constant produced by this step.
    pub output: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// A certified lower bound on a Phi-Sobolev constant, with its derivation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiSobolevBound {
    /// Lower bound on the constant; `>= 0`, `+infinity` allowed.
    pub alpha_lower: f64,
    pub exactness: Exactness,
    pub trace: Vec<TraceEntry>,
}

impl PhiSobolevBound {
    /// Exact constant `1 / v` of a Gaussian reference `N(0, v I)`.
    pub fn gaussian(nu: &GaussianSpec) -> Result<Self> {
        let alpha = gaussian_phi_si_constant(nu)?;
        Ok(Self {
            alpha_lower: alpha,
            exactness: Exactness::Exact,
            trace: vec![TraceEntry {
                rule: Rule::Gaussian,
                inputs: vec![nu.variance],
                output: alpha,
                note: None,
            }],
        })
    }
}

fn check_constant(alpha: f64, what: &str) -> Result<()> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "{what} must be a nonnegative constant, got {alpha}"
        )));
    }
    Ok(())
}

/// A strongly-log-concave measure with modulus `alpha` satisfies the
/// Phi-Sobolev inequality with the same constant, for every generator in the
/// registry.
pub fn bound_slc(alpha: f64) -> Result<PhiSobolevBound> {
    check_constant(alpha, "log-concavity modulus")?;
    if alpha == 0.0 {
        return Err(Error::InvalidParameter(
            "log-concavity modulus must be strictly positive".into(),
        ));
    }
    Ok(PhiSobolevBound {
        alpha_lower: alpha,
        exactness: Exactness::LowerBound,
        trace: vec![TraceEntry { rule: Rule::Slc, inputs: vec![alpha], output: alpha, note: None }],
    })
}

/// Pushforward under an `l`-Lipschitz map divides the constant by `l^2`.
pub fn bound_pushforward(bound: &PhiSobolevBound, lipschitz: f64) -> Result<PhiSobolevBound> {
    if !(lipschitz > 0.0) || !lipschitz.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Lipschitz constant must be positive and finite, got {lipschitz}"
        )));
    }
    check_constant(bound.alpha_lower, "input bound")?;
    let alpha = bound.alpha_lower / (lipschitz * lipschitz);
    let mut trace = bound.trace.clone();
    trace.push(TraceEntry {
        rule: Rule::Pushforward,
        inputs: vec![bound.alpha_lower, lipschitz],
        output: alpha,
        note: (bound.alpha_lower == 0.0).then(|| "zero bound propagates as zero".to_string()),
    });
    Ok(PhiSobolevBound { alpha_lower: alpha, exactness: Exactness::LowerBound, trace })
}

/// Convolution combines constants harmonically: `1 / (1/a + 1/b)`.
///
/// `+infinity` inputs behave as the identity; a zero input yields the trivial
/// zero bound and a warning note in the trace. Exactness survives only when
/// both inputs are exact (in this crate that means both are Gaussian, where
/// the harmonic rule is an equality of variances).
pub fn bound_convolution(a: &PhiSobolevBound, b: &PhiSobolevBound) -> Result<PhiSobolevBound> {
    check_constant(a.alpha_lower, "first convolution input")?;
    check_constant(b.alpha_lower, "second convolution input")?;
    let alpha = if a.alpha_lower.is_infinite() && b.alpha_lower.is_infinite() {
        f64::INFINITY
    } else {
        1.0 / (1.0 / a.alpha_lower + 1.0 / b.alpha_lower)
    };
    let zero = a.alpha_lower == 0.0 || b.alpha_lower == 0.0;
    let exactness = match (a.exactness, b.exactness) {
        (Exactness::Exact, Exactness::Exact) => Exactness::Exact,
        _ => Exactness::LowerBound,
    };
    let mut trace = a.trace.clone();
    trace.extend(b.trace.iter().cloned());
    trace.push(TraceEntry {
        rule: Rule::Convolution,
        inputs: vec![a.alpha_lower, b.alpha_lower],
        output: alpha,
        note: zero.then(|| "zero input annihilates the harmonic mean".to_string()),
    });
    Ok(PhiSobolevBound { alpha_lower: alpha, exactness, trace })
}

/// Phi-Sobolev constant retained by the ULA biased limit of an
/// `alpha`-strongly-log-concave target with `alpha <= L`-smooth potential and
/// step size `0 < eta <= 1/L`: at least `alpha (2 - alpha eta) / 2`, which
/// never drops below `alpha / 2`.
pub fn bound_ula_biased_limit(alpha: f64, l: f64, eta: f64) -> Result<PhiSobolevBound> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "log-concavity modulus must be positive and finite, got {alpha}"
        )));
    }
    if !(l >= alpha) {
        return Err(Error::InvalidParameter(format!(
            "smoothness L = {l} must dominate the log-concavity modulus alpha = {alpha}"
        )));
    }
    if !(eta > 0.0) || eta > 1.0 / l {
        return Err(Error::StepSizeExceedsStability { eta, limit: 1.0 / l });
    }
    let out = alpha * (2.0 - alpha * eta) / 2.0;
    Ok(PhiSobolevBound {
        alpha_lower: out,
        exactness: Exactness::LowerBound,
        trace: vec![TraceEntry {
            rule: Rule::BiasedLimit,
            inputs: vec![alpha, l, eta],
            output: out,
            note: None,
        }],
    })
}

/// Outcome of checking the inequality `2 alpha D_Phi <= FI_Phi` on a
/// concrete Gaussian pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiSiReport {
    pub divergence: f64,
    pub fisher_info: f64,
    /// Constant taken from the bound under test.
    pub alpha: f64,
    /// Observed ratio `FI / (2 D)`; at least `alpha` when the inequality
    /// holds, `+infinity` when the divergence vanishes.
    pub ratio: f64,
    pub satisfied: bool,
    /// True when the check carries no information: zero divergence or a
    /// divergence that does not exist.
    pub vacuous: bool,
    /// How the two sides were computed.
    pub divergence_kind: EstimateKind,
}

/// Relative slack applied when comparing the two sides; covers the
/// quadrature-computed Fisher information paths.
const PHI_SI_REL_TOL: f64 = 1e-9;

/// Checks `2 alpha D_Phi(mu || nu) <= FI_Phi(mu || nu)` for centered
/// isotropic Gaussians, by closed form where available and quadrature
/// otherwise.
pub fn verify_phi_si(
    phi: PhiFunction,
    mu: &GaussianSpec,
    nu: &GaussianSpec,
    bound: &PhiSobolevBound,
) -> Result<PhiSiReport> {
    check_constant(bound.alpha_lower, "bound under test")?;
    let est = gaussian_phi_divergence(phi, mu, nu)?;
    let fisher = gaussian_fisher_info(phi, mu, nu)?;
    let d = est.value;
    let alpha = bound.alpha_lower;
    let lhs = 2.0 * alpha * d;
    let vacuous = d == 0.0 || !d.is_finite();
    let satisfied = if vacuous { true } else { lhs <= fisher * (1.0 + PHI_SI_REL_TOL) };
    let ratio = if d == 0.0 { f64::INFINITY } else { fisher / (2.0 * d) };
    Ok(PhiSiReport {
        divergence: d,
        fisher_info: fisher,
        alpha,
        ratio,
        satisfied,
        vacuous,
        divergence_kind: est.kind,
    })
}

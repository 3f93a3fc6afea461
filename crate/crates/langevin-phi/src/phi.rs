//! Registry of convex generators for Phi-divergences.
//!
//! Each generator `Phi: (0, infinity) -> R` is convex with `Phi(1) = 0`, so
//! `D_Phi(mu || nu) = E_nu[Phi(d mu / d nu)]` is a nonnegative divergence.
//! The registry covers six standard choices:
//!
//! | name           | Phi(x)             | divergence                  |
//! |----------------|--------------------|-----------------------------|
//! | `kl`           | `x ln x`           | Kullback-Leibler            |
//! | `chi2`         | `(x - 1)^2`        | chi-squared                 |
//! | `hellinger2`   | `(sqrt(x) - 1)^2`  | squared Hellinger           |
//! | `tv`           | `|x - 1| / 2`      | total variation             |
//! | `reverse_kl`   | `-ln x`            | KL with arguments swapped   |
//! | `reverse_chi2` | `1/x - x`          | chi-squared, swapped        |
//!
//! `tv` is the only non-smooth member (kink at `x = 1`); estimators that need
//! second derivatives must check [`PhiFunction::smooth`] and reject it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier for one generator in the registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiKind {
    Kl,
    Chi2,
    Hellinger2,
    Tv,
    ReverseKl,
    ReverseChi2,
}

/// A convex divergence generator together with its derivatives and the
/// conventions needed at the boundary of its domain.
///
/// `value`, `d1` and `d2` expect `r >= 0`; the behavior at `r = 0` follows
/// the limit convention reported by [`PhiFunction::zero_limit`], which is
/// `+infinity` for the reversed generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiFunction {
    kind: PhiKind,
}

/// All six generators, in registry order.
pub fn phi_registry() -> [PhiFunction; 6] {
    [
        PhiFunction::kl(),
        PhiFunction::chi2(),
        PhiFunction::hellinger2(),
        PhiFunction::tv(),
        PhiFunction::reverse_kl(),
        PhiFunction::reverse_chi2(),
    ]
}

impl PhiFunction {
    pub fn kl() -> Self {
        Self { kind: PhiKind::Kl }
    }
    pub fn chi2() -> Self {
        Self { kind: PhiKind::Chi2 }
    }
    pub fn hellinger2() -> Self {
        Self { kind: PhiKind::Hellinger2 }
    }
    pub fn tv() -> Self {
        Self { kind: PhiKind::Tv }
    }
    pub fn reverse_kl() -> Self {
        Self { kind: PhiKind::ReverseKl }
    }
    pub fn reverse_chi2() -> Self {
        Self { kind: PhiKind::ReverseChi2 }
    }

    pub fn new(kind: PhiKind) -> Self {
        Self { kind }
    }

    /// Looks a generator up by its registry name.
    pub fn from_name(name: &str) -> Result<Self> {
        let kind = match name {
            "kl" => PhiKind::Kl,
            "chi2" => PhiKind::Chi2,
            "hellinger2" => PhiKind::Hellinger2,
            "tv" => PhiKind::Tv,
            "reverse_kl" => PhiKind::ReverseKl,
            "reverse_chi2" => PhiKind::ReverseChi2,
            other => return Err(Error::UnknownPhi(other.to_string())),
        };
        Ok(Self { kind })
    }

    pub fn kind(&self) -> PhiKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            PhiKind::Kl => "kl",
            PhiKind::Chi2 => "chi2",
            PhiKind::Hellinger2 => "hellinger2",
            PhiKind::Tv => "tv",
            PhiKind::ReverseKl => "reverse_kl",
            PhiKind::ReverseChi2 => "reverse_chi2",
        }
    }

    /// Whether the generator is twice differentiable on `(0, infinity)`.
    pub fn smooth(&self) -> bool {
        self.kind != PhiKind::Tv
    }

    /// Value of `Phi` as `r` tends to zero from above; `+infinity` marks
    /// generators that blow up there.
    pub fn zero_limit(&self) -> f64 {
        self.value(0.0)
    }

    /// `Phi(r)` for `r >= 0`, using the limit convention at `r = 0`.
    pub fn value(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0, "likelihood ratio must be nonnegative, got {r}");
        match self.kind {
            PhiKind::Kl => {
                if r == 0.0 {
                    0.0
                } else {
                    r * r.ln()
                }
            }
            PhiKind::Chi2 => {
                let t = r - 1.0;
                t * t
            }
            PhiKind::Hellinger2 => {
                let t = r.sqrt() - 1.0;
                t * t
            }
            PhiKind::Tv => 0.5 * (r - 1.0).abs(),
            PhiKind::ReverseKl => {
                if r == 0.0 {
                    f64::INFINITY
                } else {
                    -r.ln()
                }
            }
            PhiKind::ReverseChi2 => {
                if r == 0.0 {
                    f64::INFINITY
                } else {
                    1.0 / r - r
                }
            }
        }
    }

    /// First derivative `Phi'(r)`. For `tv` the subgradient value 0 is
    /// reported at the kink `r = 1`.
    pub fn d1(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0, "likelihood ratio must be nonnegative, got {r}");
        match self.kind {
            PhiKind::Kl => r.ln() + 1.0,
            PhiKind::Chi2 => 2.0 * (r - 1.0),
            PhiKind::Hellinger2 => 1.0 - 1.0 / r.sqrt(),
            PhiKind::Tv => {
                if r > 1.0 {
                    0.5
                } else if r < 1.0 {
                    -0.5
                } else {
                    0.0
                }
            }
            PhiKind::ReverseKl => -1.0 / r,
            PhiKind::ReverseChi2 => -1.0 / (r * r) - 1.0,
        }
    }

    /// Second derivative `Phi''(r)`, the curvature weight in Fisher
    /// information functionals. For `tv` this returns the almost-everywhere
    /// value 0; callers that need genuine curvature must gate on
    /// [`PhiFunction::smooth`].
    pub fn d2(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0, "likelihood ratio must be nonnegative, got {r}");
        match self.kind {
            PhiKind::Kl => 1.0 / r,
            PhiKind::Chi2 => 2.0,
            PhiKind::Hellinger2 => 0.5 * r.powf(-1.5),
            PhiKind::Tv => 0.0,
            PhiKind::ReverseKl => 1.0 / (r * r),
            PhiKind::ReverseChi2 => 2.0 / (r * r * r),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRID: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 10.0];

    #[test]
    fn generator_values_at_two() {
        let expect = [
            ("kl", 2.0 * std::f64::consts::LN_2),
            ("chi2", 1.0),
            ("hellinger2", (std::f64::consts::SQRT_2 - 1.0).powi(2)),
            ("tv", 0.5),
            ("reverse_kl", -std::f64::consts::LN_2),
            ("reverse_chi2", -1.5),
        ];
        for (phi, (name, want)) in phi_registry().iter().zip(expect) {
            assert_eq!(phi.name(), name);
            assert!(
                (phi.value(2.0) - want).abs() < 1e-15,
                "{name}(2) = {}, want {want}",
                phi.value(2.0)
            );
        }
    }

    #[test]
    fn vanishes_at_one() {
        for phi in phi_registry() {
            assert_eq!(phi.value(1.0), 0.0, "{}(1) must be 0", phi.name());
        }
    }

    #[test]
    fn zero_limit_conventions() {
        assert_eq!(PhiFunction::kl().zero_limit(), 0.0);
        assert_eq!(PhiFunction::chi2().zero_limit(), 1.0);
        assert_eq!(PhiFunction::hellinger2().zero_limit(), 1.0);
        assert_eq!(PhiFunction::tv().zero_limit(), 0.5);
        assert_eq!(PhiFunction::reverse_kl().zero_limit(), f64::INFINITY);
        assert_eq!(PhiFunction::reverse_chi2().zero_limit(), f64::INFINITY);
    }

    #[test]
    fn smooth_flags() {
        for phi in phi_registry() {
            assert_eq!(phi.smooth(), phi.name() != "tv");
        }
    }

    #[test]
    fn curvature_positive_on_grid() {
        for phi in phi_registry().iter().filter(|p| p.smooth()) {
            for r in GRID {
                assert!(phi.d2(r) > 0.0, "{}''({r}) = {}", phi.name(), phi.d2(r));
            }
        }
    }

    #[test]
    fn tangent_line_at_one_lies_below() {
        // Convexity: Phi(r) >= Phi(1) + Phi'(1) (r - 1) = Phi'(1) (r - 1).
        for phi in phi_registry() {
            let slope = phi.d1(1.0);
            for r in GRID {
                let lhs = phi.value(r);
                let rhs = slope * (r - 1.0);
                assert!(
                    lhs >= rhs - 1e-12,
                    "{}: Phi({r}) = {lhs} under tangent {rhs}",
                    phi.name()
                );
            }
        }
    }

    #[test]
    fn first_derivative_matches_finite_differences() {
        let h = 1e-6;
        for phi in phi_registry().iter().filter(|p| p.smooth()) {
            for r in GRID {
                let fd = (phi.value(r + h) - phi.value(r - h)) / (2.0 * h);
                assert!(
                    (phi.d1(r) - fd).abs() < 1e-5 * (1.0 + phi.d1(r).abs()),
                    "{}'({r}) = {} vs fd {fd}",
                    phi.name(),
                    phi.d1(r)
                );
            }
        }
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        let h = 1e-4;
        for phi in phi_registry().iter().filter(|p| p.smooth()) {
            for r in GRID {
                let fd = (phi.value(r + h) - 2.0 * phi.value(r) + phi.value(r - h)) / (h * h);
                assert!(
                    (phi.d2(r) - fd).abs() < 1e-4 * (1.0 + phi.d2(r).abs()),
                    "{}''({r}) = {} vs fd {fd}",
                    phi.name(),
                    phi.d2(r)
                );
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for phi in phi_registry() {
            let back = PhiFunction::from_name(phi.name()).unwrap();
            assert_eq!(back, phi);
        }
        assert!(PhiFunction::from_name("hellinger").is_err());
    }

    #[test]
    fn midpoint_convexity() {
        for phi in phi_registry() {
            for &x in &GRID {
                for &y in &GRID {
                    let mid = phi.value(0.5 * (x + y));
                    let chord = 0.5 * (phi.value(x) + phi.value(y));
                    assert!(
                        mid <= chord + 1e-12,
                        "{} not convex between {x} and {y}",
                        phi.name()
                    );
                }
            }
        }
    }
}

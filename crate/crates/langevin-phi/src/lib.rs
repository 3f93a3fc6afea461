//! Phi-divergence mixing diagnostics for two discrete-time sampling chains:
//! the unadjusted Langevin algorithm (ULA) and the Gaussian proximal sampler.
//!
//! A Phi-divergence is `D_Phi(mu || nu) = E_nu[Phi(d mu / d nu)]` for a convex
//! generator `Phi` with `Phi(1) = 0`. The crate ships the standard generator
//! registry (KL, chi-squared, squared Hellinger, total variation, and the two
//! reversed forms), closed-form divergences between centered isotropic
//! Gaussians, Monte Carlo estimators, and the Phi-Sobolev inequality calculus
//! that turns a divergence bound at step `k` into a bound at step `k + 1`.
//!
//! Everything is exercised against the Ornstein-Uhlenbeck special case, where
//! both chains act on centered Gaussians by explicit variance recursions, so
//! every simulated quantity has a closed-form twin:
//!
//! * ULA with step size `eta` maps variance `c` to `(1 - alpha eta)^2 c + 2 eta`
//!   and converges to the biased limit `2 / (alpha (2 - alpha eta))`.
//! * The proximal sampler maps `c` to `(c + eta) / (1 + alpha eta)^2
//!   + eta / (1 + alpha eta)` and converges to the exact target `1 / alpha`.
//!
//! The `experiments` module drives both chains from a JSON configuration and
//! writes CSV series; the `langevin-phi` binary wraps it. All randomness flows
//! through a counter-based generator, so runs are bit-reproducible regardless
//! of thread count.
//!
//! ```
//! use langevin_phi::{gaussian_phi_divergence, GaussianSpec, PhiFunction};
//!
//! let mu = GaussianSpec { dim: 1, variance: 1.0 };
//! let nu = GaussianSpec { dim: 1, variance: 2.0 };
//! let kl = gaussian_phi_divergence(PhiFunction::kl(), &mu, &nu).unwrap();
//! assert!((kl.value - 0.09657359027997264).abs() < 1e-12);
//! ```

mod bounds;
mod config;
mod ensemble;
mod error;
mod estimate;
pub mod experiments;
mod gaussian;
mod ou;
mod phi;
mod potential;
mod quad;
mod rate;
mod rgo;
mod rng;
mod sampler;
mod sobolev;

pub use bounds::{
    contraction_bound_proximal, contraction_bound_ula, theorem_bound, TheoremKind,
};
pub use config::{
    write_csv, write_sidecar, CsvColumns, ExperimentConfig, ExperimentKind, KernelKind,
    Quantity, ResultRow, RunArtifacts, Sidecar, TargetSpec,
};
pub use ensemble::{Ensemble, MarginalMoments};
pub use error::{Error, Result};
pub use estimate::{
    kahan_sum, mc_phi_divergence, mc_phi_fisher_info, phi_entropy, DivergenceEstimate,
    EstimateKind,
};
pub use gaussian::{
    gaussian_fisher_info, gaussian_phi_divergence, gaussian_phi_si_constant, GaussianSpec,
};
pub use ou::{
    ou_langevin, ou_proximal_kl, ou_proximal_variance, ou_ula_biased_variance, ou_ula_kl,
    ou_ula_variance, LangevinPoint, OuConfig,
};
pub use phi::{phi_registry, PhiFunction, PhiKind};
pub use potential::{
    check_potential, CosinePerturbedPotential, GaussianPotential, Potential, PotentialReport,
};
pub use rate::{fit_rate, RateReport};
pub use rgo::{rgo_exact_gaussian, rgo_rejection, RgoSettings, RgoStats};
pub use rng::RngStream;
pub use sampler::{
    proximal_forward_step, proximal_run, ula_run, ula_step, ProximalOptions, RgoChoice,
    UlaOptions,
};
pub use sobolev::{
    bound_convolution, bound_pushforward, bound_slc, bound_ula_biased_limit, verify_phi_si,
    Exactness, PhiSiReport, PhiSobolevBound, Rule, TraceEntry,
};

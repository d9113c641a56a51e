//! Simulation and estimation laboratory for regular variation on structured
//! spaces.
//!
//! The crate is organised around a small set of geometric primitives and the
//! statistical machinery built on top of them:
//!
//! - [`element`]: the value types experiments operate on — vectors, finite
//!   truncations of eventually-zero sequences, piecewise-linear functions on
//!   an interval, finite point configurations with multiplicities, and planar
//!   convex polytopes.
//! - [`scaling`]: one-parameter multiplicative group actions `T_t` on those
//!   values (linear, power-weighted, affine-inverse, log-shift, uplifted to
//!   point configurations, and so on), with `apply`/`invert` operations that
//!   satisfy the group law `T_t ∘ T_s = T_{ts}`.
//! - [`modulus`]: 1-homogeneous "radius" functionals paired with their
//!   scaling action, used to carve out the families of sets on which tail
//!   behaviour is measured, plus ideal descriptions built from them.
//! - [`tailmeasure`]: discrete-spectral tail measures `σ ⊗ θ_α` together
//!   with the algebra on them — sector masses, pushforwards along
//!   homogeneous maps, change of modulus, and assembly from per-coordinate
//!   marginal measures.
//! - [`samplers`]: deterministic, seed-addressable generators for the
//!   heavy-tailed laws exercised by the experiments (Pareto vectors, random
//!   broken lines and polynomials, stationary sequences, point processes,
//!   shot noise, random convex sets).
//! - [`estimators`]: polar decomposition of samples, the Hill estimator,
//!   empirical spectral and tail-mass estimates, hidden-regular-variation
//!   ladders, conditional-limit and tail-process estimation, and a
//!   function-space diagnostic combining finite-dimensional estimates with
//!   an oscillation check.
//! - [`limits`]: end-to-end verifiers for classical limit theorems — maxima
//!   domains of attraction, void probabilities and Poisson count limits for
//!   scaled point processes, products with independent factors, single-point
//!   (Janossy) regular variation of point processes, and a pipeline of
//!   convex-set functionals.
//! - [`config`] / [`experiments`] / [`report`]: a TOML experiment format, a
//!   catalogue of bundled experiments, and deterministic JSON/CSV reporting.
//!
//! Determinism is a contract throughout: every random quantity is derived
//! from a `(seed, stream, index)` triple by a counter-based generator
//! ([`rng::Rng`]), so results are bit-identical across runs and across
//! worker-thread counts.

pub mod config;
pub mod element;
pub mod error;
pub mod estimators;
pub mod experiments;
pub mod geometry;
pub mod ideal;
pub mod limits;
pub mod modulus;
pub mod report;
pub mod rng;
pub mod samplers;
pub mod scaling;
pub mod tailmeasure;

pub use config::{Analysis, ExperimentConfig, IntervalConfig};
pub use element::Element;
pub use error::{Result, RvError};
pub use experiments::{bundled_toml, run, run_toml_str, BundledExperiment, BUNDLED};
pub use limits::{MdaFamily, MdaSpec, NormingRule, SetFunctional};
pub use modulus::{Modulus, ModulusKind};
pub use report::{RunReport, TableRow, Verdict};
pub use samplers::{CovariateFamily, GeneratorSpec, KernelSpec};
pub use scaling::ScalingSpec;
pub use tailmeasure::{SpectralAtom, SpectralMeasure, TailMeasure};


/// Library version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

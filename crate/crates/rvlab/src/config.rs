//! TOML experiment configuration.
//!
//! One [`ExperimentConfig`] fully determines a run: generator, analysis,
//! ladders, probes, and — mandatorily — the seed. There is no wall-clock
//! fallback: identical configuration bytes produce identical reports.
//! Unknown keys are rejected and every validation error names the offending
//! key, so a typo fails loudly instead of silently running defaults.

use crate::error::{Result, RvError};
use crate::estimators::Probe;
use crate::limits::{MdaSpec, NormingRule, SetFunctional};
use crate::modulus::Modulus;
use crate::samplers::{CovariateFamily, GeneratorSpec};
use serde::{Deserialize, Serialize};

/// Which analysis a configuration runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Analysis {
    TailIndex,
    Spectral,
    HiddenLadder,
    ConditionalLimit,
    TailProcess,
    FunctionDiag,
    Mda,
    VoidProb,
    PoissonCounts,
    Breiman,
    Janossy,
    SetPipeline,
}

impl Analysis {
    pub fn label(&self) -> &'static str {
        match self {
            Analysis::TailIndex => "tail_index",
            Analysis::Spectral => "spectral",
            Analysis::HiddenLadder => "hidden_ladder",
            Analysis::ConditionalLimit => "conditional_limit",
            Analysis::TailProcess => "tail_process",
            Analysis::FunctionDiag => "function_diag",
            Analysis::Mda => "mda",
            Analysis::VoidProb => "void_prob",
            Analysis::PoissonCounts => "poisson_counts",
            Analysis::Breiman => "breiman",
            Analysis::Janossy => "janossy",
            Analysis::SetPipeline => "set_pipeline",
        }
    }
}

/// Radial interval `(lo, hi]`; omit `hi` for the ray `(lo, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalConfig {
    pub lo: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<f64>,
}

impl IntervalConfig {
    pub fn bounds(&self) -> (f64, f64) {
        (self.lo, self.hi.unwrap_or(f64::INFINITY))
    }
}

/// A parsed experiment file. Only `name`, `analysis`, and `seed` are
/// universal; the remaining keys are required or ignored depending on the
/// analysis (see [`ExperimentConfig::validate`]).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub analysis: Analysis,
    /// Master seed. Mandatory: reproducibility is part of the contract, so
    /// there is no wall-clock default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorSpec>,
    /// Sample count for batch analyses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    /// Replication count for block/maxima analyses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reps: Option<u64>,
    /// Hill order override (defaults to `⌊n^0.7⌋`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Modulus>,
    /// Modulus ladder for hidden-variation scans (first entry is the
    /// reference).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<Modulus>>,
    /// Radius quantile that sets the spectral threshold (default 0.99).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold_quantile: Option<f64>,
    /// Levels `t` for conditional, product, single-point, tail-process and
    /// function analyses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_ladder: Option<Vec<f64>>,
    /// Block sizes for maxima and void analyses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_ladder: Option<Vec<u64>>,
    /// Scalar radial probes (void sets `(s, ∞)`, tail-process multipliers,
    /// single-point probe functions).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_probes: Option<Vec<f64>>,
    /// Membership probes for conditional-limit analyses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<Probe>>,
    /// Lags for tail-process estimation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lags: Option<Vec<i64>>,
    /// Disjoint radial intervals for count laws.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sets: Option<Vec<IntervalConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mda: Option<MdaSpec>,
    /// Norming rule for void/count analyses (default: closed-form Pareto).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norming: Option<NormingRule>,
    /// Declared tail index: the heavy factor's index for product analyses,
    /// and an optional target for index estimates elsewhere.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covariate: Option<CovariateFamily>,
    /// Power of the heavy factor in product analyses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_exponent: Option<f64>,
    /// Moment margin (products) or fixed oscillation level (function
    /// diagnostics).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    /// Base-set lower edge `b` for single-point analyses.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_set: Option<f64>,
    /// Evaluation grids (points in [0, 1]) for finite-dimensional function
    /// estimates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma_grids: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_ladder: Option<Vec<f64>>,
    /// Exponent of the normalizing function `g(t) = t^{g_exponent}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functionals: Option<Vec<SetFunctional>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadrature_dirs: Option<usize>,
}

fn missing(analysis: &str, key: &str) -> RvError {
    RvError::Config(format!("analysis '{analysis}' requires key '{key}'"))
}

impl ExperimentConfig {
    /// The mandatory seed, or an error naming the key.
    pub fn seed(&self) -> Result<u64> {
        self.seed.ok_or_else(|| {
            RvError::Config(
                "missing key 'seed': every run must be reproducible, so there is no wall-clock default"
                    .into(),
            )
        })
    }

    /// Check that every key the analysis needs is present and structurally
    /// sound. Errors name the offending key.
    pub fn validate(&self) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(RvError::Config("key 'name' must be a nonempty string".into()));
        }
        self.seed()?;
        let a = self.analysis.label();
        let need = |present: bool, key: &str| -> Result<()> {
            if present {
                Ok(())
            } else {
                Err(missing(a, key))
            }
        };
        match self.analysis {
            Analysis::TailIndex | Analysis::Spectral => {
                need(self.generator.is_some(), "generator")?;
                need(self.modulus.is_some(), "modulus")?;
                need(self.n.is_some(), "n")?;
            }
            Analysis::HiddenLadder => {
                need(self.generator.is_some(), "generator")?;
                need(self.moduli.as_ref().is_some_and(|m| !m.is_empty()), "moduli")?;
                need(self.n.is_some(), "n")?;
            }
            Analysis::ConditionalLimit => {
                need(self.generator.is_some(), "generator")?;
                need(self.modulus.is_some(), "modulus")?;
                need(self.t_ladder.is_some(), "t_ladder")?;
                need(self.probes.as_ref().is_some_and(|p| !p.is_empty()), "probes")?;
                need(self.n.is_some(), "n")?;
            }
            Analysis::TailProcess => {
                need(self.generator.is_some(), "generator")?;
                need(self.t_ladder.is_some(), "t_ladder")?;
                need(self.lags.is_some(), "lags")?;
                need(self.s_probes.is_some(), "s_probes")?;
                need(self.n.is_some(), "n")?;
            }
            Analysis::FunctionDiag => {
                need(self.generator.is_some(), "generator")?;
                need(self.gamma_grids.is_some(), "gamma_grids")?;
                need(self.eps_ladder.is_some(), "eps_ladder")?;
                need(self.t_ladder.is_some(), "t_ladder")?;
                need(self.delta.is_some(), "delta")?;
                need(self.g_exponent.is_some(), "g_exponent")?;
                need(self.n.is_some(), "n")?;
            }
            Analysis::Mda => {
                need(self.generator.is_some(), "generator")?;
                need(self.mda.is_some(), "mda")?;
                need(self.n_ladder.as_ref().is_some_and(|l| !l.is_empty()), "n_ladder")?;
                need(self.reps.is_some(), "reps")?;
                if let Some(spec) = &self.mda {
                    spec.validate()?;
                }
            }
            Analysis::VoidProb => {
                need(self.generator.is_some(), "generator")?;
                need(self.s_probes.is_some(), "s_probes")?;
                need(self.n_ladder.as_ref().is_some_and(|l| !l.is_empty()), "n_ladder")?;
                need(self.reps.is_some(), "reps")?;
            }
            Analysis::PoissonCounts => {
                need(self.generator.is_some(), "generator")?;
                need(self.sets.as_ref().is_some_and(|s| !s.is_empty()), "sets")?;
                need(self.n.is_some(), "n")?;
                need(self.reps.is_some(), "reps")?;
            }
            Analysis::Breiman => {
                need(self.alpha.is_some(), "alpha")?;
                need(self.covariate.is_some(), "covariate")?;
                need(self.p_exponent.is_some(), "p_exponent")?;
                need(self.t_ladder.is_some(), "t_ladder")?;
                need(self.n.is_some(), "n")?;
            }
            Analysis::Janossy => {
                need(self.generator.is_some(), "generator")?;
                need(self.base_set.is_some(), "base_set")?;
                need(self.s_probes.is_some(), "s_probes")?;
                need(self.t_ladder.is_some(), "t_ladder")?;
                need(self.reps.is_some(), "reps")?;
            }
            Analysis::SetPipeline => {
                need(self.generator.is_some(), "generator")?;
                need(self.functionals.as_ref().is_some_and(|f| !f.is_empty()), "functionals")?;
                need(self.n.is_some(), "n")?;
            }
        }
        if let Some(gen) = &self.generator {
            gen.validate()
                .map_err(|e| RvError::Config(format!("key 'generator' is invalid: {e}")))?;
        }
        if self.n == Some(0) {
            return Err(RvError::Config("key 'n' must be at least 1".into()));
        }
        if self.reps == Some(0) {
            return Err(RvError::Config("key 'reps' must be at least 1".into()));
        }
        if let Some(q) = self.threshold_quantile {
            if !(q > 0.0 && q < 1.0) {
                return Err(RvError::Config(format!(
                    "key 'threshold_quantile' must lie in (0, 1), got {q}"
                )));
            }
        }
        Ok(())
    }

    /// Parse and validate a TOML experiment file.
    pub fn from_toml_str(text: &str) -> Result<ExperimentConfig> {
        let cfg: ExperimentConfig =
            toml::from_str(text).map_err(|e| RvError::Config(format!("parse error: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAIL_INDEX_TOML: &str = r#"
        name = "pareto-demo"
        analysis = "tail_index"
        seed = 7
        n = 10000
        alpha = 1.5

        [generator]
        kind = "pareto"
        alpha = 1.5

        [modulus]
        kind = { kind = "norm", p = 2.0 }
        scaling = { kind = "linear" }
    "#;

    #[test]
    fn parses_a_full_experiment_file() {
        let cfg = ExperimentConfig::from_toml_str(TAIL_INDEX_TOML).unwrap();
        assert_eq!(cfg.name, "pareto-demo");
        assert_eq!(cfg.analysis, Analysis::TailIndex);
        assert_eq!(cfg.seed, Some(7));
        assert!(matches!(cfg.generator, Some(GeneratorSpec::Pareto { alpha }) if alpha == 1.5));
    }

    #[test]
    fn missing_seed_is_an_error_naming_the_key() {
        let text = TAIL_INDEX_TOML.replace("seed = 7", "");
        let err = ExperimentConfig::from_toml_str(&text).unwrap_err();
        assert!(err.to_string().contains("'seed'"), "{err}");
        assert!(!err.is_statistical());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = TAIL_INDEX_TOML.replace("alpha = 1.5\n", "alhpa = 1.5\n");
        let err = ExperimentConfig::from_toml_str(&text).unwrap_err();
        assert!(err.to_string().contains("alhpa"), "{err}");
    }

    #[test]
    fn per_analysis_requirements_name_their_keys() {
        let missing_modulus = TAIL_INDEX_TOML.replace("[modulus]", "[modulus_gone]");
        // The replaced table now trips the unknown-key check; drop it fully.
        let stripped: String = TAIL_INDEX_TOML
            .lines()
            .take_while(|l| !l.contains("[modulus]"))
            .collect::<Vec<_>>()
            .join("\n");
        let err = ExperimentConfig::from_toml_str(&stripped).unwrap_err();
        assert!(err.to_string().contains("'modulus'"), "{err}");
        assert!(ExperimentConfig::from_toml_str(&missing_modulus).is_err());

        let breiman = r#"
            name = "b"
            analysis = "breiman"
            seed = 1
            alpha = 1.0
            p_exponent = 1.0
            t_ladder = [20.0]
            n = 100
        "#;
        let err = ExperimentConfig::from_toml_str(breiman).unwrap_err();
        assert!(err.to_string().contains("'covariate'"), "{err}");
    }

    #[test]
    fn zero_counts_are_rejected() {
        let text = TAIL_INDEX_TOML.replace("n = 10000", "n = 0");
        let err = ExperimentConfig::from_toml_str(&text).unwrap_err();
        assert!(err.to_string().contains("'n'"), "{err}");
    }

    #[test]
    fn configs_round_trip_through_toml() {
        let cfg = ExperimentConfig::from_toml_str(TAIL_INDEX_TOML).unwrap();
        let text = toml::to_string(&cfg).unwrap();
        let back = ExperimentConfig::from_toml_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn interval_bounds_default_to_rays() {
        let i = IntervalConfig { lo: 0.5, hi: None };
        assert_eq!(i.bounds(), (0.5, f64::INFINITY));
        let j = IntervalConfig { lo: 0.5, hi: Some(2.0) };
        assert_eq!(j.bounds(), (0.5, 2.0));
    }
}

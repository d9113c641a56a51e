//! Seeded generators of regularly varying random elements.
//!
//! Every generator is a pure function of `(spec, seed, index)`: sample `i`
//! of a batch is drawn from its own counter-keyed stream, so batches are
//! bit-identical across runs and worker counts, and `sample(gen, seed, n)`
//! is always a prefix of `sample(gen, seed, n + 1)`.

use crate::element::{Element, SupportPoint};
use crate::error::{Result, RvError};
use crate::rng::{self, Rng, STREAM_PAIRS, STREAM_SAMPLES};
use crate::scaling::apply_scaling;
use crate::tailmeasure::TailMeasure;
use serde::{Deserialize, Serialize};

/// Default grid resolution for function-valued samples.
pub const DEFAULT_GRID: usize = 257;

/// Partial sums with more terms than this are drawn from their Gaussian
/// surrogate with the exact mean and variance instead of term by term;
/// heavy-tailed counts would otherwise demand unbounded work per sample.
pub const SUM_HYBRID_THRESHOLD: u64 = 1 << 15;

/// Largest admissible mean point count for Poisson configurations (the
/// count sampler inverts the CDF term by term).
pub const MAX_POISSON_MEAN: f64 = 500.0;

/// Dependence structure for stationary-sequence generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArKind {
    /// Independent Pareto-1 entries.
    Iid,
    /// Every entry equals one Pareto-1 draw (full dependence).
    Constant,
    /// `x_i = max(z_i, w·z_{i+1})`: two-dependent moving maximum.
    MovingMax { weight: f64 },
    /// `x_i = max(φ·x_{i−1}, z_i)`: max-autoregression, `φ ∈ (0, 1)`.
    Armax { phi: f64 },
}

/// A seeded law of random elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// Scalar with survival `P{X > t} = t^{−α}`, `t ≥ 1`.
    Pareto { alpha: f64 },
    /// Planar vector of two independent Pareto-1 coordinates.
    ParetoPairIid,
    /// Coin-flip mixture `(η, 1)` / `(√η, 0)` with `η` Pareto-1: the whole
    /// vector is heavy along the first axis, but the functional
    /// `|x_1|·1{x_2 = 0}` sees only the `√η` branch (index 2).
    SqrtMixturePair,
    /// `T_ξ η` under the min-shift action: a direction on `{min = 1}`
    /// (gap coin-flipped onto either coordinate) pushed out by a
    /// Pareto(α) radial factor, `x = direction + (ξ−1)·(1,1)`.
    ScalingMinPair { alpha: f64 },
    /// Exact polar synthesis of a tail measure: direction drawn from the
    /// spectral atoms (probability ∝ weight), radius Pareto(α), sample
    /// `T_R u`.
    SpectralRv { tail: TailMeasure },
    /// Random affine function `V_1·u + V_2·(1−u)` on `[0,1]`, `V_i`
    /// independent Pareto-1 (sup index 1, inf index 2).
    BrokenLine { grid_points: usize },
    /// `η_0 + η_1 u + … + η_d u^d` on `[0,1]` with independent Pareto-1
    /// coefficients (tail measure supported by monomials).
    RandomPolynomial { degree: usize, grid_points: usize },
    /// Triangular spike of Pareto-1 height and fixed base `width` at a
    /// uniform location: finite-dimensional margins are heavy only when a
    /// grid node hits the spike, while the oscillation over any window
    /// wider than `width` is the full height — a tightness violation.
    SpikeFunction { grid_points: usize, width: f64 },
    /// Truncated sequence of independent Pareto-1 entries (exchangeable).
    ExchangeableParetoSeq { len: usize },
    /// Stationary-like sequence for tail-process demonstrations. `len`
    /// should be odd so the sequence has a central time point.
    StationaryArLike { len: usize, ar: ArKind },
    /// Exactly `m` independent points drawn from `point`.
    BinomialPp { m: usize, point: Box<GeneratorSpec> },
    /// Poisson number of independent points (mean `mean_points ≤ 500`).
    PoissonPp { mean_points: f64, point: Box<GeneratorSpec> },
    /// `m` ground locations uniform on [0,1], each carrying an independent
    /// Pareto(mark_alpha) mark: points `(location, mark)`.
    MarkedPp { m: usize, mark_alpha: f64 },
    /// Shot noise `ζ(u) = Σ mark_i · f(u − y_i)` on a grid over [0,1],
    /// driven by a `MarkedPp(m, mark_alpha)` and a triangle kernel of the
    /// given half-width.
    ShotNoise { m: usize, mark_alpha: f64, half_width: f64, grid_points: usize },
    /// Convex hull of `m` iid planar points `R·(cos Θ, sin Θ)` with `R`
    /// Pareto(α) and `Θ` uniform.
    ConvexHullOfPoints { m: usize, alpha: f64 },
    /// Ball of Pareto(radius_alpha) radius centred at a Pareto(center_alpha)
    /// distance in a uniform direction, as a regular `ngon` polygon.
    RandomBall { center_alpha: f64, radius_alpha: f64, ngon: usize },
    /// Axis-aligned ellipse with independent Pareto(α) semiaxes, as an
    /// inscribed `ngon` polygon (`ngon` divisible by 4 keeps the semiaxis
    /// vertices exact).
    EllipsoidHull { alpha: f64, ngon: usize },
}

/// Conditional laws `x ↦ law(η_x)` for covariate pairs `(ξ, η_ξ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CovariateFamily {
    /// `η_x ≡ U[lo, hi]`, independent of `x`.
    IndependentUniform { lo: f64, hi: f64 },
    /// `η_x = x^{−1} Σ_{i ≤ ⌊x⌋} ζ_i` with `ζ` uniform on
    /// `[mean − ½, mean + ½]`; concentrates at `mean` as `x → ∞`.
    LlnAverage { mean: f64 },
    /// `η_x = x^{−1/2} Σ_{i ≤ ⌊x⌋} ζ_i` with `ζ` Rademacher; tends to a
    /// standard normal as `x → ∞`.
    CltSum,
}

/// Compactly supported kernels for shot-noise paths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KernelSpec {
    /// `f(u) = max(0, 1 − |u|/half_width)`.
    Triangle { half_width: f64 },
}

impl KernelSpec {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            KernelSpec::Triangle { half_width } => (1.0 - u.abs() / half_width).max(0.0),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(RvError::BadParameters(format!(
            "tail index must be positive and finite, got {alpha}"
        )))
    }
}

fn check_grid(grid_points: usize) -> Result<()> {
    if grid_points >= 2 {
        Ok(())
    } else {
        Err(RvError::BadParameters(format!("grid needs ≥ 2 points, got {grid_points}")))
    }
}

impl GeneratorSpec {
    /// Validate all parameters (recursively for nested point laws).
    pub fn validate(&self) -> Result<()> {
        match self {
            GeneratorSpec::Pareto { alpha } => check_alpha(*alpha),
            GeneratorSpec::ParetoPairIid | GeneratorSpec::SqrtMixturePair => Ok(()),
            GeneratorSpec::ScalingMinPair { alpha } => check_alpha(*alpha),
            GeneratorSpec::SpectralRv { tail } => {
                if tail.spectral.atoms.is_empty() {
                    return Err(RvError::BadParameters(
                        "spectral sampler needs at least one atom".into(),
                    ));
                }
                Ok(())
            }
            GeneratorSpec::BrokenLine { grid_points } => check_grid(*grid_points),
            GeneratorSpec::RandomPolynomial { degree, grid_points } => {
                check_grid(*grid_points)?;
                if *degree > 64 {
                    return Err(RvError::BadParameters(format!(
                        "polynomial degree {degree} exceeds 64"
                    )));
                }
                Ok(())
            }
            GeneratorSpec::SpikeFunction { grid_points, width } => {
                check_grid(*grid_points)?;
                if !(*width > 0.0 && *width < 1.0) {
                    return Err(RvError::BadParameters(format!(
                        "spike width must lie in (0, 1), got {width}"
                    )));
                }
                Ok(())
            }
            GeneratorSpec::ExchangeableParetoSeq { len } => {
                if *len == 0 {
                    return Err(RvError::BadParameters("sequence length must be ≥ 1".into()));
                }
                Ok(())
            }
            GeneratorSpec::StationaryArLike { len, ar } => {
                if *len == 0 {
                    return Err(RvError::BadParameters("sequence length must be ≥ 1".into()));
                }
                match ar {
                    ArKind::MovingMax { weight } if !(*weight > 0.0 && weight.is_finite()) => {
                        Err(RvError::BadParameters(format!(
                            "moving-max weight must be positive, got {weight}"
                        )))
                    }
                    ArKind::Armax { phi } if !(*phi > 0.0 && *phi < 1.0) => {
                        Err(RvError::BadParameters(format!(
                            "max-autoregression needs φ ∈ (0,1), got {phi}"
                        )))
                    }
                    _ => Ok(()),
                }
            }
            GeneratorSpec::BinomialPp { m, point } => {
                if *m == 0 {
                    return Err(RvError::BadParameters("point count must be ≥ 1".into()));
                }
                check_point_law(point)
            }
            GeneratorSpec::PoissonPp { mean_points, point } => {
                if !(*mean_points > 0.0 && *mean_points <= MAX_POISSON_MEAN) {
                    return Err(RvError::BadParameters(format!(
                        "mean point count must lie in (0, {MAX_POISSON_MEAN}], got {mean_points}"
                    )));
                }
                check_point_law(point)
            }
            GeneratorSpec::MarkedPp { m, mark_alpha } => {
                if *m == 0 {
                    return Err(RvError::BadParameters("point count must be ≥ 1".into()));
                }
                check_alpha(*mark_alpha)
            }
            GeneratorSpec::ShotNoise { m, mark_alpha, half_width, grid_points } => {
                if *m == 0 {
                    return Err(RvError::BadParameters("point count must be ≥ 1".into()));
                }
                check_alpha(*mark_alpha)?;
                if !(*half_width > 0.0 && half_width.is_finite()) {
                    return Err(RvError::BadParameters(format!(
                        "kernel half-width must be positive, got {half_width}"
                    )));
                }
                check_grid(*grid_points)
            }
            GeneratorSpec::ConvexHullOfPoints { m, alpha } => {
                if *m == 0 {
                    return Err(RvError::BadParameters("hull needs ≥ 1 point".into()));
                }
                check_alpha(*alpha)
            }
            GeneratorSpec::RandomBall { center_alpha, radius_alpha, ngon } => {
                check_alpha(*center_alpha)?;
                check_alpha(*radius_alpha)?;
                check_ngon(*ngon)
            }
            GeneratorSpec::EllipsoidHull { alpha, ngon } => {
                check_alpha(*alpha)?;
                check_ngon(*ngon)
            }
        }
    }

    /// Element kind this generator produces (one generator, one kind).
    pub fn element_kind(&self) -> &'static str {
        match self {
            GeneratorSpec::Pareto { .. }
            | GeneratorSpec::ParetoPairIid
            | GeneratorSpec::SqrtMixturePair
            | GeneratorSpec::ScalingMinPair { .. } => "vector",
            GeneratorSpec::SpectralRv { tail } => tail
                .spectral
                .atoms
                .first()
                .map(|a| a.location.kind_name())
                .unwrap_or("vector"),
            GeneratorSpec::BrokenLine { .. }
            | GeneratorSpec::RandomPolynomial { .. }
            | GeneratorSpec::SpikeFunction { .. }
            | GeneratorSpec::ShotNoise { .. } => "grid_function",
            GeneratorSpec::ExchangeableParetoSeq { .. }
            | GeneratorSpec::StationaryArLike { .. } => "sequence",
            GeneratorSpec::BinomialPp { .. }
            | GeneratorSpec::PoissonPp { .. }
            | GeneratorSpec::MarkedPp { .. } => "point_config",
            GeneratorSpec::ConvexHullOfPoints { .. }
            | GeneratorSpec::RandomBall { .. }
            | GeneratorSpec::EllipsoidHull { .. } => "polytope",
        }
    }
}

fn check_point_law(point: &GeneratorSpec) -> Result<()> {
    point.validate()?;
    if point.element_kind() != "vector" {
        return Err(RvError::BadParameters(format!(
            "point law must produce vectors, {} produces {}s",
            "the nested generator",
            point.element_kind()
        )));
    }
    Ok(())
}

fn check_ngon(ngon: usize) -> Result<()> {
    if ngon >= 4 {
        Ok(())
    } else {
        Err(RvError::BadParameters(format!("polygon needs ≥ 4 vertices, got {ngon}")))
    }
}

/// Draw the `index`-th sample of the stream `(gen, seed)`.
pub fn element_at(gen: &GeneratorSpec, seed: u64, index: u64) -> Result<Element> {
    let mut rng = Rng::at(seed, STREAM_SAMPLES, index);
    draw(gen, &mut rng)
}

/// Draw `n` samples. Chunks are filled in parallel but each sample depends
/// only on its index, so output is identical for any worker count and
/// `sample(gen, seed, n)` is a prefix of any longer batch.
pub fn sample(gen: &GeneratorSpec, seed: u64, n: usize) -> Result<Vec<Element>> {
    gen.validate()?;
    let out = rng::chunked_map(n as u64, |i| element_at(gen, seed, i))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(out)
}

pub(crate) fn draw(gen: &GeneratorSpec, rng: &mut Rng) -> Result<Element> {
    Ok(match gen {
        GeneratorSpec::Pareto { alpha } => Element::scalar(rng.pareto(*alpha)),
        GeneratorSpec::ParetoPairIid => {
            Element::vector(vec![rng.pareto1(), rng.pareto1()])
        }
        GeneratorSpec::SqrtMixturePair => {
            let eta = rng.pareto1();
            let heavy_branch = rng.bernoulli(0.5);
            if heavy_branch {
                Element::vector(vec![eta, 1.0])
            } else {
                Element::vector(vec![eta.sqrt(), 0.0])
            }
        }
        GeneratorSpec::ScalingMinPair { alpha } => {
            let xi = rng.pareto(*alpha);
            let gap = rng.u01_right_open();
            let first_low = rng.bernoulli(0.5);
            let (a, b) = if first_low { (1.0, 1.0 + gap) } else { (1.0 + gap, 1.0) };
            Element::vector(vec![a + (xi - 1.0), b + (xi - 1.0)])
        }
        GeneratorSpec::SpectralRv { tail } => {
            let weights: Vec<f64> = tail.spectral.atoms.iter().map(|a| a.weight).collect();
            let j = rng.weighted_index(&weights);
            let r = rng.pareto(tail.alpha);
            apply_scaling(&tail.scaling, r, &tail.spectral.atoms[j].location)?
        }
        GeneratorSpec::BrokenLine { grid_points } => {
            let (v1, v2) = (rng.pareto1(), rng.pareto1());
            let g = *grid_points;
            let values = (0..g)
                .map(|j| {
                    let u = j as f64 / (g - 1) as f64;
                    v1 * u + v2 * (1.0 - u)
                })
                .collect();
            Element::grid_function(0.0, 1.0, values)?
        }
        GeneratorSpec::RandomPolynomial { degree, grid_points } => {
            let coeffs: Vec<f64> = (0..=*degree).map(|_| rng.pareto1()).collect();
            let g = *grid_points;
            let values = (0..g)
                .map(|j| {
                    let u = j as f64 / (g - 1) as f64;
                    // Horner evaluation, highest coefficient first.
                    coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
                })
                .collect();
            Element::grid_function(0.0, 1.0, values)?
        }
        GeneratorSpec::SpikeFunction { grid_points, width } => {
            let height = rng.pareto1();
            let location = rng.u01_right_open();
            let g = *grid_points;
            let values = (0..g)
                .map(|j| {
                    let u = j as f64 / (g - 1) as f64;
                    height * (1.0 - (u - location).abs() / width).max(0.0)
                })
                .collect();
            Element::grid_function(0.0, 1.0, values)?
        }
        GeneratorSpec::ExchangeableParetoSeq { len } => {
            Element::sequence((0..*len).map(|_| rng.pareto1()).collect())
        }
        GeneratorSpec::StationaryArLike { len, ar } => {
            Element::sequence(stationary_values(*len, ar, rng))
        }
        GeneratorSpec::BinomialPp { m, point } => {
            let points = (0..*m)
                .map(|_| {
                    draw(point, rng).and_then(|e| {
                        Ok(SupportPoint { coords: e.as_vector()?.to_vec(), multiplicity: 1 })
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Element::point_config(points)?
        }
        GeneratorSpec::PoissonPp { mean_points, point } => {
            let count = rng.poisson(*mean_points);
            let points = (0..count)
                .map(|_| {
                    draw(point, rng).and_then(|e| {
                        Ok(SupportPoint { coords: e.as_vector()?.to_vec(), multiplicity: 1 })
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Element::point_config(points)?
        }
        GeneratorSpec::MarkedPp { m, mark_alpha } => {
            Element::point_config(marked_points(*m, *mark_alpha, rng))?
        }
        GeneratorSpec::ShotNoise { m, mark_alpha, half_width, grid_points } => {
            let pp = Element::point_config(marked_points(*m, *mark_alpha, rng))?;
            shot_noise_path(
                &pp,
                &KernelSpec::Triangle { half_width: *half_width },
                0.0,
                1.0,
                *grid_points,
            )?
        }
        GeneratorSpec::ConvexHullOfPoints { m, alpha } => {
            let pts = (0..*m)
                .map(|_| {
                    let r = rng.pareto(*alpha);
                    let th = rng.uniform(0.0, std::f64::consts::TAU);
                    [r * th.cos(), r * th.sin()]
                })
                .collect();
            Element::polytope(pts)?
        }
        GeneratorSpec::RandomBall { center_alpha, radius_alpha, ngon } => {
            let rc = rng.pareto(*center_alpha);
            let th = rng.uniform(0.0, std::f64::consts::TAU);
            let center = [rc * th.cos(), rc * th.sin()];
            let r = rng.pareto(*radius_alpha);
            let pts = (0..*ngon)
                .map(|j| {
                    let a = std::f64::consts::TAU * j as f64 / *ngon as f64;
                    [center[0] + r * a.cos(), center[1] + r * a.sin()]
                })
                .collect();
            Element::polytope(pts)?
        }
        GeneratorSpec::EllipsoidHull { alpha, ngon } => {
            let (a1, a2) = (rng.pareto(*alpha), rng.pareto(*alpha));
            let pts = (0..*ngon)
                .map(|j| {
                    let a = std::f64::consts::TAU * j as f64 / *ngon as f64;
                    [a1 * a.cos(), a2 * a.sin()]
                })
                .collect();
            Element::polytope(pts)?
        }
    })
}

fn stationary_values(len: usize, ar: &ArKind, rng: &mut Rng) -> Vec<f64> {
    match ar {
        ArKind::Iid => (0..len).map(|_| rng.pareto1()).collect(),
        ArKind::Constant => {
            let z = rng.pareto1();
            vec![z; len]
        }
        ArKind::MovingMax { weight } => {
            let z: Vec<f64> = (0..=len).map(|_| rng.pareto1()).collect();
            (0..len).map(|i| z[i].max(weight * z[i + 1])).collect()
        }
        ArKind::Armax { phi } => {
            // Burn in from an innovation start so the marginal is close to
            // stationary before the recorded window begins.
            let mut x = rng.pareto1();
            for _ in 0..64 {
                x = (phi * x).max(rng.pareto1());
            }
            (0..len)
                .map(|_| {
                    x = (phi * x).max(rng.pareto1());
                    x
                })
                .collect()
        }
    }
}

fn marked_points(m: usize, mark_alpha: f64, rng: &mut Rng) -> Vec<SupportPoint> {
    (0..m)
        .map(|_| SupportPoint {
            coords: vec![rng.u01_right_open(), rng.pareto(mark_alpha)],
            multiplicity: 1,
        })
        .collect()
}

/// Scalar fast path: the `index`-th draw of a scalar Pareto stream, equal to
/// the single coordinate of `element_at(Pareto{alpha}, seed, index)`.
pub fn pareto_at(alpha: f64, seed: u64, index: u64) -> f64 {
    Rng::at(seed, STREAM_SAMPLES, index).pareto(alpha)
}

/// Sum of `m` iid uniforms on `[lo, hi]`; beyond [`SUM_HYBRID_THRESHOLD`]
/// terms the Gaussian surrogate with exact mean `m(lo+hi)/2` and variance
/// `m(hi−lo)²/12` is drawn instead.
pub fn partial_sum_uniform(m: u64, lo: f64, hi: f64, rng: &mut Rng) -> f64 {
    if m <= SUM_HYBRID_THRESHOLD {
        (0..m).map(|_| rng.uniform(lo, hi)).sum()
    } else {
        let mean = m as f64 * 0.5 * (lo + hi);
        let sd = ((m as f64) * (hi - lo) * (hi - lo) / 12.0).sqrt();
        mean + sd * rng.normal()
    }
}

/// Sum of `m` iid Rademacher signs; beyond [`SUM_HYBRID_THRESHOLD`] terms
/// the Gaussian surrogate with variance `m` is drawn instead.
pub fn partial_sum_rademacher(m: u64, rng: &mut Rng) -> f64 {
    if m <= SUM_HYBRID_THRESHOLD {
        (0..m).map(|_| rng.rademacher()).sum()
    } else {
        (m as f64).sqrt() * rng.normal()
    }
}

/// Draw `η_x` from the covariate family, consuming `rng`.
pub fn covariate_value(family: &CovariateFamily, x: f64, rng: &mut Rng) -> f64 {
    match family {
        CovariateFamily::IndependentUniform { lo, hi } => rng.uniform(*lo, *hi),
        CovariateFamily::LlnAverage { mean } => {
            let m = x.floor().max(0.0) as u64;
            if m == 0 {
                return 0.0;
            }
            partial_sum_uniform(m, mean - 0.5, mean + 0.5, rng) / x
        }
        CovariateFamily::CltSum => {
            let m = x.floor().max(0.0) as u64;
            if m == 0 {
                return 0.0;
            }
            partial_sum_rademacher(m, rng) / x.sqrt()
        }
    }
}

/// Scalar fast path for covariates: keyed by `(seed, index)` on the pair
/// stream, equal to the covariate in `sample_pair_with_covariate`.
pub fn covariate_at(family: &CovariateFamily, x: f64, seed: u64, index: u64) -> f64 {
    let mut rng = Rng::at(seed, STREAM_PAIRS, index);
    covariate_value(family, x, &mut rng)
}

/// Draw pairs `(ξ_i, η_{ξ_i})`: the covariate is sampled conditionally on
/// the realized `ξ_i` from an independent stream.
pub fn sample_pair_with_covariate(
    gen_xi: &GeneratorSpec,
    family: &CovariateFamily,
    seed: u64,
    n: usize,
) -> Result<Vec<(Element, Element)>> {
    gen_xi.validate()?;
    if let CovariateFamily::IndependentUniform { lo, hi } = family {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(RvError::BadParameters(format!("bad uniform range [{lo}, {hi}]")));
        }
    }
    rng::chunked_map(n as u64, |i| {
        let xi = element_at(gen_xi, seed, i)?;
        let x = xi.as_vector()?.first().copied().ok_or_else(|| {
            RvError::BadParameters("covariate pairing needs scalar-like samples".into())
        })?;
        let eta = covariate_at(family, x, seed, i);
        Ok((xi, Element::scalar(eta)))
    })
    .into_iter()
    .collect()
}

/// Evaluate the shot-noise path `ζ(u) = Σ_i mark_i · f(u − y_i)` on a
/// uniform grid over `[a, b]`. Point configurations store `(location,
/// mark)` rows; multiplicities repeat the summand. An empty configuration
/// yields the zero function.
pub fn shot_noise_path(
    marked_pp: &Element,
    kernel: &KernelSpec,
    a: f64,
    b: f64,
    grid_points: usize,
) -> Result<Element> {
    let points = match marked_pp {
        Element::PointConfig { points } => points,
        _ => {
            return Err(RvError::IncompatibleVariant(format!(
                "shot noise needs a point configuration, got {}",
                marked_pp.kind_name()
            )))
        }
    };
    check_grid(grid_points)?;
    let mut values = vec![0.0; grid_points];
    for p in points {
        if p.coords.len() != 2 {
            return Err(RvError::BadParameters(format!(
                "marked points are (location, mark) rows, got dimension {}",
                p.coords.len()
            )));
        }
        let (y, mark) = (p.coords[0], p.coords[1]);
        for (j, v) in values.iter_mut().enumerate() {
            let u = a + (b - a) * j as f64 / (grid_points - 1) as f64;
            *v += p.multiplicity as f64 * mark * kernel.eval(u - y);
        }
    }
    Element::grid_function(a, b, values)
}

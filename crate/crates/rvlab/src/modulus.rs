//! 1-homogeneous functionals ("moduli") paired with the scaling action under
//! which they are homogeneous: `τ(T_t x) = t·τ(x)`.
//!
//! A modulus carves out the family of sets `{τ > ε}` on which tail behaviour
//! is measured; different moduli on the same space see different (possibly
//! hidden) tails.

use crate::element::Element;
use crate::error::{Result, RvError};
use crate::geometry;
use crate::scaling::ScalingSpec;
use serde::{Deserialize, Serialize};

/// The functional part of a modulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModulusKind {
    /// `ℓ_p` norm on vectors/sequences, `p ∈ (0, ∞]` (`p = ∞` is the sup).
    Norm { p: f64 },
    /// `max_i |x_i|` on vectors/sequences.
    MaxAbsCoord,
    /// `min_i |x_i|` on vectors. On sequences this is identically 0: a
    /// sequence is a truncation of an eventually-zero sequence, so the
    /// infimum over all coordinates is always attained by the zero padding.
    MinAbsCoord,
    /// `|x_i|`; on sequences, indices beyond the truncation read 0.
    CoordAbs { index: usize },
    /// `max(|x_1|^β |x_2|^{1−β}, |x_1|^{1−β} |x_2|^β)` on planar vectors,
    /// `β ∈ [0, 1/2]`. At β = 0 this is exactly `MaxAbsCoord`.
    BetaStar { beta: f64 },
    /// `min(|x_1|^β |x_2|^{1−β}, |x_1|^{1−β} |x_2|^β)`, `β ∈ [0, 1/2]`.
    /// At β = 0 this is exactly `MinAbsCoord`.
    BetaMin { beta: f64 },
    /// `|x_value| · 1{x_gate = 0}`: a 1-homogeneous functional that vanishes
    /// off the subcone `{x_gate = 0}` (legitimately improper; used to probe
    /// conditional limits along discontinuous functionals).
    GatedCoordAbs { value: usize, gate: usize },
    /// Positive linear functional `Σ_j w_j |x_j|` on vectors (weights ≥ 0,
    /// not all zero).
    WeightedAbsSum { weights: Vec<f64> },
    /// `sup_u |x(u)|` on grid functions.
    SupAbs,
    /// `inf_u |x(u)|` on grid functions (0 whenever the function crosses 0).
    InfAbs,
    /// `|x(u0)|` on grid functions.
    ValueAt { u: f64 },
    /// Oscillation `sup_{|u−v| ≤ ε} |x(u) − x(v)|` on grid functions. ε is
    /// snapped *down* to a whole number of grid steps (an ε below one step
    /// yields 0); with aligned windows the sliding-window max−min over grid
    /// nodes is exact for piecewise-linear functions.
    Oscillation { eps: f64 },
    /// k-th largest value (with multiplicity) of `inner` over the support
    /// points of a configuration; 0 when fewer than k points are present.
    KthLargestPoint { k: usize, inner: Box<Modulus> },
    /// `sup_{x ∈ K} |x|` over a polytope or configuration (0 on empty).
    SetSup,
    /// `inf_{x ∈ K} |x|` (distance of the body from the origin); `+∞` on an
    /// empty configuration.
    SetInf,
    /// Radius of the largest origin-centred ball contained in the polytope.
    InscribedRadius,
    /// `V_i(K)^{1/i}` in the plane: `i = 1` is half the perimeter, `i = 2`
    /// the square root of the area.
    IntrinsicVolumeRoot { i: usize },
    /// Mean width (= perimeter/π in the plane).
    MeanWidth,
    /// `(sup x − inf x)/2` on grid functions: the norm of the class of `x`
    /// modulo additive constants (the optimal constant recentres the range).
    QuotientRange,
    /// Pointwise maximum of component moduli.
    MaxOf { parts: Vec<Modulus> },
    /// Pointwise minimum of component moduli.
    MinOf { parts: Vec<Modulus> },
    /// Positive multiple `factor·τ` of another modulus (comparable moduli
    /// generate the same family of sets).
    Scaled { factor: f64, inner: Box<Modulus> },
}

/// A modulus: functional plus the scaling action it is 1-homogeneous under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Modulus {
    pub kind: ModulusKind,
    pub scaling: ScalingSpec,
}

impl Modulus {
    pub fn new(kind: ModulusKind, scaling: ScalingSpec) -> Modulus {
        Modulus { kind, scaling }
    }

    pub fn norm(p: f64) -> Result<Modulus> {
        if !(p > 0.0) {
            return Err(RvError::BadParameters(format!("norm exponent must be positive, got {p}")));
        }
        Ok(Modulus::new(ModulusKind::Norm { p }, ScalingSpec::Linear))
    }

    pub fn max_abs() -> Modulus {
        Modulus::new(ModulusKind::MaxAbsCoord, ScalingSpec::Linear)
    }

    pub fn min_abs() -> Modulus {
        Modulus::new(ModulusKind::MinAbsCoord, ScalingSpec::Linear)
    }

    pub fn coord_abs(index: usize) -> Modulus {
        Modulus::new(ModulusKind::CoordAbs { index }, ScalingSpec::Linear)
    }

    pub fn beta_star(beta: f64) -> Result<Modulus> {
        check_beta(beta)?;
        Ok(Modulus::new(ModulusKind::BetaStar { beta }, ScalingSpec::Linear))
    }

    pub fn beta_min(beta: f64) -> Result<Modulus> {
        check_beta(beta)?;
        Ok(Modulus::new(ModulusKind::BetaMin { beta }, ScalingSpec::Linear))
    }

    pub fn gated_coord_abs(value: usize, gate: usize) -> Modulus {
        Modulus::new(ModulusKind::GatedCoordAbs { value, gate }, ScalingSpec::Linear)
    }

    pub fn weighted_abs_sum(weights: Vec<f64>) -> Result<Modulus> {
        if weights.is_empty() || weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
            return Err(RvError::BadParameters(
                "weighted sum needs finite nonnegative weights".into(),
            ));
        }
        if weights.iter().all(|w| *w == 0.0) {
            return Err(RvError::BadParameters(
                "weighted sum needs at least one positive weight".into(),
            ));
        }
        Ok(Modulus::new(ModulusKind::WeightedAbsSum { weights }, ScalingSpec::Linear))
    }

    pub fn sup_abs() -> Modulus {
        Modulus::new(ModulusKind::SupAbs, ScalingSpec::FunctionValues)
    }

    pub fn inf_abs() -> Modulus {
        Modulus::new(ModulusKind::InfAbs, ScalingSpec::FunctionValues)
    }

    pub fn value_at(u: f64) -> Modulus {
        Modulus::new(ModulusKind::ValueAt { u }, ScalingSpec::FunctionValues)
    }

    pub fn oscillation(eps: f64) -> Result<Modulus> {
        if !(eps > 0.0) {
            return Err(RvError::BadParameters(format!(
                "oscillation window must be positive, got {eps}"
            )));
        }
        Ok(Modulus::new(ModulusKind::Oscillation { eps }, ScalingSpec::FunctionValues))
    }

    pub fn kth_largest_point(k: usize, inner: Modulus) -> Result<Modulus> {
        if k == 0 {
            return Err(RvError::BadParameters("k must be at least 1".into()));
        }
        let base = inner.scaling.clone();
        Ok(Modulus::new(
            ModulusKind::KthLargestPoint { k, inner: Box::new(inner) },
            ScalingSpec::Uplifted { base: Box::new(base) },
        ))
    }

    pub fn set_sup() -> Modulus {
        Modulus::new(ModulusKind::SetSup, ScalingSpec::SetLinear)
    }

    pub fn set_inf() -> Modulus {
        Modulus::new(ModulusKind::SetInf, ScalingSpec::SetLinear)
    }

    pub fn inscribed_radius() -> Modulus {
        Modulus::new(ModulusKind::InscribedRadius, ScalingSpec::SetLinear)
    }

    pub fn intrinsic_volume_root(i: usize) -> Result<Modulus> {
        if !(i == 1 || i == 2) {
            return Err(RvError::BadParameters(format!(
                "planar intrinsic volumes have order 1 or 2, got {i}"
            )));
        }
        Ok(Modulus::new(ModulusKind::IntrinsicVolumeRoot { i }, ScalingSpec::SetLinear))
    }

    pub fn mean_width() -> Modulus {
        Modulus::new(ModulusKind::MeanWidth, ScalingSpec::SetLinear)
    }

    pub fn quotient_range() -> Modulus {
        Modulus::new(ModulusKind::QuotientRange, ScalingSpec::FunctionValues)
    }

    pub fn max_of(parts: Vec<Modulus>) -> Result<Modulus> {
        combo_scaling(&parts).map(|s| Modulus::new(ModulusKind::MaxOf { parts }, s))
    }

    pub fn min_of(parts: Vec<Modulus>) -> Result<Modulus> {
        combo_scaling(&parts).map(|s| Modulus::new(ModulusKind::MinOf { parts }, s))
    }

    pub fn scaled(factor: f64, inner: Modulus) -> Result<Modulus> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(RvError::BadParameters(format!(
                "modulus factor must be positive and finite, got {factor}"
            )));
        }
        let scaling = inner.scaling.clone();
        Ok(Modulus::new(ModulusKind::Scaled { factor, inner: Box::new(inner) }, scaling))
    }

    /// Evaluate the functional on an element.
    pub fn eval(&self, x: &Element) -> Result<f64> {
        eval_modulus(self, x)
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&beta) {
        return Err(RvError::BadParameters(format!("beta must lie in [0, 1/2], got {beta}")));
    }
    Ok(())
}

fn combo_scaling(parts: &[Modulus]) -> Result<ScalingSpec> {
    let first = parts
        .first()
        .ok_or_else(|| RvError::BadParameters("combination needs at least one part".into()))?;
    if parts.iter().any(|p| p.scaling != first.scaling) {
        return Err(RvError::BadParameters(
            "combined moduli must share one scaling action".into(),
        ));
    }
    Ok(first.scaling.clone())
}

fn unsupported(kind: &ModulusKind, x: &Element) -> RvError {
    RvError::UnsupportedKind(format!("{kind:?} is not defined on {}", x.kind_name()))
}

/// Evaluate a modulus on an element.
pub fn eval_modulus(m: &Modulus, x: &Element) -> Result<f64> {
    let kind = &m.kind;
    match kind {
        ModulusKind::Norm { p } => {
            let xs = numeric_slice(x).ok_or_else(|| unsupported(kind, x))?;
            if *p == f64::INFINITY {
                Ok(xs.iter().fold(0.0, |a: f64, v| a.max(v.abs())))
            } else {
                Ok(xs.iter().map(|v| v.abs().powf(*p)).sum::<f64>().powf(1.0 / *p))
            }
        }
        ModulusKind::MaxAbsCoord => {
            let xs = numeric_slice(x).ok_or_else(|| unsupported(kind, x))?;
            Ok(xs.iter().fold(0.0, |a: f64, v| a.max(v.abs())))
        }
        ModulusKind::MinAbsCoord => match x {
            Element::Vector { coords } => {
                Ok(coords.iter().fold(f64::INFINITY, |a, v| a.min(v.abs())))
            }
            // Truncations of eventually-zero sequences: padding attains 0.
            Element::Sequence { .. } => Ok(0.0),
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::CoordAbs { index } => match x {
            Element::Vector { coords } => coords
                .get(*index)
                .map(|v| v.abs())
                .ok_or_else(|| RvError::BadParameters(format!(
                    "coordinate {index} out of range for dimension {}",
                    coords.len()
                ))),
            Element::Sequence { values } => Ok(values.get(*index).copied().unwrap_or(0.0).abs()),
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::BetaStar { beta } | ModulusKind::BetaMin { beta } => {
            let xs = x.as_vector().map_err(|_| unsupported(kind, x))?;
            if xs.len() != 2 {
                return Err(RvError::BadParameters(format!(
                    "beta moduli are planar, element has dimension {}",
                    xs.len()
                )));
            }
            let (a, b) = (xs[0].abs(), xs[1].abs());
            let one = a.powf(*beta) * b.powf(1.0 - *beta);
            let two = a.powf(1.0 - *beta) * b.powf(*beta);
            Ok(match kind {
                ModulusKind::BetaStar { .. } => one.max(two),
                _ => one.min(two),
            })
        }
        ModulusKind::GatedCoordAbs { value, gate } => {
            let xs = x.as_vector().map_err(|_| unsupported(kind, x))?;
            let v = xs.get(*value).ok_or_else(|| {
                RvError::BadParameters(format!("coordinate {value} out of range"))
            })?;
            let g = xs.get(*gate).ok_or_else(|| {
                RvError::BadParameters(format!("coordinate {gate} out of range"))
            })?;
            Ok(if *g == 0.0 { v.abs() } else { 0.0 })
        }
        ModulusKind::WeightedAbsSum { weights } => {
            let xs = x.as_vector().map_err(|_| unsupported(kind, x))?;
            if xs.len() != weights.len() {
                return Err(RvError::BadParameters(format!(
                    "weighted sum over {} weights applied to dimension {}",
                    weights.len(),
                    xs.len()
                )));
            }
            Ok(xs.iter().zip(weights).map(|(v, w)| w * v.abs()).sum())
        }
        ModulusKind::SupAbs => match x {
            Element::GridFunction { values, .. } => {
                Ok(values.iter().fold(0.0, |a: f64, v| a.max(v.abs())))
            }
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::InfAbs => match x {
            Element::GridFunction { values, .. } => {
                let mut best = f64::INFINITY;
                for w in values.windows(2) {
                    best = best.min(segment_min_abs(w[0], w[1]));
                }
                Ok(best)
            }
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::ValueAt { u } => x
            .grid_value_at(*u)
            .map(f64::abs)
            .map_err(|_| unsupported(kind, x)),
        ModulusKind::Oscillation { eps } => match x {
            Element::GridFunction { a, b, values } => {
                let n = values.len();
                let h = (b - a) / (n - 1) as f64;
                // Snap the window down to a whole number of grid steps.
                let m = ((eps / h) * (1.0 + 1e-12)).floor() as usize;
                if m == 0 {
                    return Ok(0.0);
                }
                let m = m.min(n - 1);
                let mut best = 0.0f64;
                for j in 0..(n - m) {
                    let w = &values[j..=j + m];
                    let hi = w.iter().fold(f64::NEG_INFINITY, |p, v| p.max(*v));
                    let lo = w.iter().fold(f64::INFINITY, |p, v| p.min(*v));
                    best = best.max(hi - lo);
                }
                Ok(best)
            }
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::KthLargestPoint { k, inner } => match x {
            Element::PointConfig { points } => {
                let mut vals: Vec<f64> = Vec::new();
                for p in points {
                    let v = inner.eval(&Element::Vector { coords: p.coords.clone() })?;
                    for _ in 0..p.multiplicity {
                        vals.push(v);
                    }
                }
                if vals.len() < *k {
                    return Ok(0.0);
                }
                vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
                Ok(vals[*k - 1])
            }
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::SetSup => match x {
            Element::Polytope { vertices } => Ok(vertices
                .iter()
                .fold(0.0, |a: f64, v| a.max((v[0] * v[0] + v[1] * v[1]).sqrt()))),
            Element::PointConfig { points } => Ok(points.iter().fold(0.0, |a: f64, p| {
                a.max(p.coords.iter().map(|c| c * c).sum::<f64>().sqrt())
            })),
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::SetInf => match x {
            Element::Polytope { vertices } => Ok(geometry::distance_origin(vertices)),
            Element::PointConfig { points } => Ok(points
                .iter()
                .map(|p| p.coords.iter().map(|c| c * c).sum::<f64>().sqrt())
                .fold(f64::INFINITY, f64::min)),
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::InscribedRadius => match x {
            Element::Polytope { vertices } => Ok(geometry::inscribed_radius(vertices)),
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::IntrinsicVolumeRoot { i } => match x {
            Element::Polytope { vertices } => Ok(match i {
                1 => geometry::perimeter(vertices) / 2.0,
                2 => geometry::area(vertices).max(0.0).sqrt(),
                _ => return Err(RvError::BadParameters(format!("intrinsic order {i}"))),
            }),
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::MeanWidth => match x {
            Element::Polytope { vertices } => Ok(geometry::mean_width(vertices)),
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::QuotientRange => match x {
            Element::GridFunction { values, .. } => {
                let hi = values.iter().fold(f64::NEG_INFINITY, |a, v| a.max(*v));
                let lo = values.iter().fold(f64::INFINITY, |a, v| a.min(*v));
                Ok((hi - lo) / 2.0)
            }
            _ => Err(unsupported(kind, x)),
        },
        ModulusKind::MaxOf { parts } => {
            let mut best = f64::NEG_INFINITY;
            for p in parts {
                best = best.max(p.eval(x)?);
            }
            Ok(best)
        }
        ModulusKind::MinOf { parts } => {
            let mut best = f64::INFINITY;
            for p in parts {
                best = best.min(p.eval(x)?);
            }
            Ok(best)
        }
        ModulusKind::Scaled { factor, inner } => Ok(factor * inner.eval(x)?),
    }
}

fn numeric_slice(x: &Element) -> Option<&[f64]> {
    match x {
        Element::Vector { coords } => Some(coords),
        Element::Sequence { values } => Some(values),
        _ => None,
    }
}

/// Minimum of |segment| for the linear segment from v0 to v1.
fn segment_min_abs(v0: f64, v1: f64) -> f64 {
    if (v0 <= 0.0 && v1 >= 0.0) || (v0 >= 0.0 && v1 <= 0.0) {
        0.0
    } else {
        v0.abs().min(v1.abs())
    }
}

//! One-parameter scaling group actions `T_t` (t > 0) on elements.
//!
//! Every variant satisfies the group law `T_t ∘ T_s = T_{ts}` and `T_1 = id`
//! (the identity is returned bitwise), so inversion is `T_{1/t}`.

use crate::element::Element;
use crate::error::{Result, RvError};
use serde::{Deserialize, Serialize};

/// Descriptor of a scaling action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalingSpec {
    /// `x ↦ t·x` on vectors and sequences.
    Linear,
    /// `x_i ↦ t^{p_i}·x_i` on vectors (one exponent per coordinate).
    PowerWeights { exponents: Vec<f64> },
    /// `x ↦ x/t` on vectors and sequences (the inverse orientation of
    /// `Linear`, useful when small values are the extremes).
    InverseLinear,
    /// `x_i ↦ t·x_i` on the listed coordinates only.
    ComponentSubset { indices: Vec<usize> },
    /// `y ↦ y + log t` componentwise on vectors and grid functions
    /// (Gumbel-type shifts).
    LogShift,
    /// `y ↦ anchor + (y − anchor)/t` componentwise on vectors (Weibull-type
    /// contractions toward a finite endpoint).
    AffineInverse { anchor: f64 },
    /// `x(u) ↦ t·x(u)` on grid functions.
    FunctionValues,
    /// Base action applied to every support point of a point configuration.
    Uplifted { base: Box<ScalingSpec> },
    /// `K ↦ t·K` on polytopes.
    SetLinear,
    /// `x ↦ x + (t−1)·min_i(x_i)·(1,…,1)` on vectors: shifts along the
    /// diagonal by the smallest coordinate. A genuine group action whose
    /// natural 1-homogeneous functional is `min_i x_i`.
    MinShift,
}

impl ScalingSpec {
    pub fn uplifted(base: ScalingSpec) -> ScalingSpec {
        ScalingSpec::Uplifted { base: Box::new(base) }
    }

    fn incompatible(&self, x: &Element) -> RvError {
        RvError::IncompatibleVariant(format!("{self:?} does not act on {}", x.kind_name()))
    }
}

fn check_scale(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(RvError::NonpositiveScale(t));
    }
    Ok(())
}

/// Apply `T_t` to `x`.
pub fn apply_scaling(spec: &ScalingSpec, t: f64, x: &Element) -> Result<Element> {
    check_scale(t)?;
    if t == 1.0 {
        // T_1 is the identity, bitwise.
        return Ok(x.clone());
    }
    let map_all = |xs: &[f64], f: &dyn Fn(f64) -> f64| xs.iter().map(|&v| f(v)).collect::<Vec<_>>();
    match (spec, x) {
        (ScalingSpec::Linear, Element::Vector { coords }) => {
            Ok(Element::Vector { coords: map_all(coords, &|v| t * v) })
        }
        (ScalingSpec::Linear, Element::Sequence { values }) => {
            Ok(Element::Sequence { values: map_all(values, &|v| t * v) })
        }
        (ScalingSpec::PowerWeights { exponents }, Element::Vector { coords }) => {
            if exponents.len() != coords.len() {
                return Err(RvError::IncompatibleVariant(format!(
                    "power weights expect dimension {}, element has {}",
                    exponents.len(),
                    coords.len()
                )));
            }
            Ok(Element::Vector {
                coords: coords
                    .iter()
                    .zip(exponents)
                    .map(|(&v, &p)| t.powf(p) * v)
                    .collect(),
            })
        }
        (ScalingSpec::InverseLinear, Element::Vector { coords }) => {
            Ok(Element::Vector { coords: map_all(coords, &|v| v / t) })
        }
        (ScalingSpec::InverseLinear, Element::Sequence { values }) => {
            Ok(Element::Sequence { values: map_all(values, &|v| v / t) })
        }
        (ScalingSpec::ComponentSubset { indices }, Element::Vector { coords }) => {
            if let Some(&bad) = indices.iter().find(|&&i| i >= coords.len()) {
                return Err(RvError::BadParameters(format!(
                    "component index {bad} out of range for dimension {}",
                    coords.len()
                )));
            }
            let mut out = coords.clone();
            for &i in indices {
                out[i] *= t;
            }
            Ok(Element::Vector { coords: out })
        }
        (ScalingSpec::LogShift, Element::Vector { coords }) => {
            let s = t.ln();
            Ok(Element::Vector { coords: map_all(coords, &|v| v + s) })
        }
        (ScalingSpec::LogShift, Element::GridFunction { a, b, values }) => {
            let s = t.ln();
            Ok(Element::GridFunction { a: *a, b: *b, values: map_all(values, &|v| v + s) })
        }
        (ScalingSpec::AffineInverse { anchor }, Element::Vector { coords }) => {
            Ok(Element::Vector { coords: map_all(coords, &|v| anchor + (v - anchor) / t) })
        }
        (ScalingSpec::FunctionValues, Element::GridFunction { a, b, values }) => {
            Ok(Element::GridFunction { a: *a, b: *b, values: map_all(values, &|v| t * v) })
        }
        (ScalingSpec::Uplifted { base }, Element::PointConfig { points }) => {
            let mut out = Vec::with_capacity(points.len());
            for p in points {
                let scaled = apply_scaling(base, t, &Element::Vector { coords: p.coords.clone() })?;
                out.push(crate::element::SupportPoint {
                    coords: scaled.as_vector()?.to_vec(),
                    multiplicity: p.multiplicity,
                });
            }
            Ok(Element::PointConfig { points: out })
        }
        (ScalingSpec::SetLinear, Element::Polytope { vertices }) => Ok(Element::Polytope {
            vertices: vertices.iter().map(|v| [t * v[0], t * v[1]]).collect(),
        }),
        (ScalingSpec::MinShift, Element::Vector { coords }) => {
            if coords.is_empty() {
                return Err(spec.incompatible(x));
            }
            let m = coords.iter().copied().fold(f64::INFINITY, f64::min);
            Ok(Element::Vector { coords: map_all(coords, &|v| v + (t - 1.0) * m) })
        }
        _ => Err(spec.incompatible(x)),
    }
}

/// Apply `T_t^{-1} = T_{1/t}` to `x`.
pub fn invert_scaling(spec: &ScalingSpec, t: f64, x: &Element) -> Result<Element> {
    check_scale(t)?;
    apply_scaling(spec, 1.0 / t, x)
}

//! Value kinds experiments operate on.
//!
//! All kinds serialize as `{"kind": ..., "payload": ...}` so reports and
//! dumps are self-describing.

use crate::error::{Result, RvError};
use crate::geometry;
use serde::{Deserialize, Serialize};

/// A point of a configuration together with its multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportPoint {
    pub coords: Vec<f64>,
    pub multiplicity: u32,
}

/// One sample value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "snake_case")]
pub enum Element {
    /// Point of `R^d`.
    Vector { coords: Vec<f64> },
    /// Finite truncation of an eventually-zero sequence; coordinates past
    /// `values.len()` are implicitly zero, and every operation must be
    /// unchanged under padding with zeros.
    Sequence { values: Vec<f64> },
    /// Piecewise-linear function on `[a, b]` through `values` at a uniform
    /// grid (at least two points).
    GridFunction { a: f64, b: f64, values: Vec<f64> },
    /// Finite point configuration with multiplicities.
    PointConfig { points: Vec<SupportPoint> },
    /// Planar convex polytope; vertices are stored as the convex hull in
    /// counter-clockwise order (construction hulls its input).
    Polytope { vertices: Vec<[f64; 2]> },
}

impl Element {
    pub fn vector(coords: Vec<f64>) -> Element {
        Element::Vector { coords }
    }

    pub fn scalar(x: f64) -> Element {
        Element::Vector { coords: vec![x] }
    }

    pub fn sequence(values: Vec<f64>) -> Element {
        Element::Sequence { values }
    }

    /// Piecewise-linear function on `[a, b]`; requires `a < b` and at least
    /// two finite grid values.
    pub fn grid_function(a: f64, b: f64, values: Vec<f64>) -> Result<Element> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(RvError::BadParameters(format!(
                "grid interval must satisfy a < b, got [{a}, {b}]"
            )));
        }
        if values.len() < 2 {
            return Err(RvError::BadParameters(
                "grid function needs at least two grid values".into(),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(RvError::BadParameters(
                "grid function values must be finite".into(),
            ));
        }
        Ok(Element::GridFunction { a, b, values })
    }

    /// Point configuration; multiplicities must be positive and coordinate
    /// dimensions consistent.
    pub fn point_config(points: Vec<SupportPoint>) -> Result<Element> {
        if let Some(d) = points.first().map(|p| p.coords.len()) {
            if points.iter().any(|p| p.coords.len() != d) {
                return Err(RvError::DimensionMismatch(
                    "point configuration mixes coordinate dimensions".into(),
                ));
            }
        }
        if points.iter().any(|p| p.multiplicity == 0) {
            return Err(RvError::BadParameters(
                "point multiplicities must be at least 1".into(),
            ));
        }
        Ok(Element::PointConfig { points })
    }

    /// Convex polytope from an arbitrary planar point cloud (at least one
    /// point); the stored vertex list is the hull in CCW order.
    pub fn polytope(points: Vec<[f64; 2]>) -> Result<Element> {
        if points.is_empty() {
            return Err(RvError::BadParameters(
                "polytope needs at least one point".into(),
            ));
        }
        Ok(Element::Polytope {
            vertices: geometry::convex_hull(&points),
        })
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Element::Vector { .. } => "vector",
            Element::Sequence { .. } => "sequence",
            Element::GridFunction { .. } => "grid_function",
            Element::PointConfig { .. } => "point_config",
            Element::Polytope { .. } => "polytope",
        }
    }

    /// Re-establish construction invariants on values read from files.
    pub fn normalize(self) -> Result<Element> {
        match self {
            Element::GridFunction { a, b, values } => Element::grid_function(a, b, values),
            Element::PointConfig { points } => Element::point_config(points),
            Element::Polytope { vertices } => Element::polytope(vertices.clone()),
            other => Ok(other),
        }
    }

    /// Coordinates of a vector element.
    pub fn as_vector(&self) -> Result<&[f64]> {
        match self {
            Element::Vector { coords } => Ok(coords),
            _ => Err(RvError::UnsupportedKind(format!(
                "expected vector, got {}",
                self.kind_name()
            ))),
        }
    }

    /// Value of a grid function at `u` by piecewise-linear interpolation
    /// (clamped to the domain).
    pub fn grid_value_at(&self, u: f64) -> Result<f64> {
        match self {
            Element::GridFunction { a, b, values } => {
                let m = values.len();
                let h = (b - a) / (m - 1) as f64;
                let s = ((u - a) / h).clamp(0.0, (m - 1) as f64);
                let j = (s.floor() as usize).min(m - 2);
                let w = s - j as f64;
                Ok(values[j] * (1.0 - w) + values[j + 1] * w)
            }
            _ => Err(RvError::UnsupportedKind(format!(
                "expected grid function, got {}",
                self.kind_name()
            ))),
        }
    }

    /// Largest absolute numeric payload entry; used for relative tolerances.
    pub fn sup_norm(&self) -> f64 {
        let fold = |xs: &[f64]| xs.iter().fold(0.0, |m: f64, x| m.max(x.abs()));
        match self {
            Element::Vector { coords } => fold(coords),
            Element::Sequence { values } => fold(values),
            Element::GridFunction { values, .. } => fold(values),
            Element::PointConfig { points } => points
                .iter()
                .fold(0.0, |m: f64, p| m.max(fold(&p.coords))),
            Element::Polytope { vertices } => vertices
                .iter()
                .fold(0.0, |m: f64, v| m.max(v[0].abs()).max(v[1].abs())),
        }
    }

    /// Sup distance between same-kind, same-shape elements; `None` when the
    /// shapes are not comparable.
    pub fn sup_distance(&self, other: &Element) -> Option<f64> {
        let slices = |xs: &[f64], ys: &[f64]| -> Option<f64> {
            if xs.len() != ys.len() {
                return None;
            }
            Some(
                xs.iter()
                    .zip(ys)
                    .fold(0.0, |m: f64, (x, y)| m.max((x - y).abs())),
            )
        };
        match (self, other) {
            (Element::Vector { coords: x }, Element::Vector { coords: y }) => slices(x, y),
            (Element::Sequence { values: x }, Element::Sequence { values: y }) => {
                // Compare as infinite sequences: pad the shorter with zeros.
                let n = x.len().max(y.len());
                let get = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
                Some((0..n).fold(0.0, |m: f64, i| m.max((get(x, i) - get(y, i)).abs())))
            }
            (
                Element::GridFunction { a, b, values: x },
                Element::GridFunction { a: a2, b: b2, values: y },
            ) => {
                if a != a2 || b != b2 {
                    return None;
                }
                slices(x, y)
            }
            (Element::PointConfig { points: x }, Element::PointConfig { points: y }) => {
                if x.len() != y.len() {
                    return None;
                }
                let mut m = 0.0f64;
                for (p, q) in x.iter().zip(y) {
                    if p.multiplicity != q.multiplicity {
                        return None;
                    }
                    m = m.max(slices(&p.coords, &q.coords)?);
                }
                Some(m)
            }
            (Element::Polytope { vertices: x }, Element::Polytope { vertices: y }) => {
                if x.len() != y.len() {
                    return None;
                }
                let mut m = 0.0f64;
                for (p, q) in x.iter().zip(y) {
                    m = m.max((p[0] - q[0]).abs()).max((p[1] - q[1]).abs());
                }
                Some(m)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_tagged() {
        let e = Element::vector(vec![1.0, -2.5]);
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.contains("\"kind\":\"vector\""), "{s}");
        assert!(s.contains("\"payload\""), "{s}");
        let back: Element = serde_json::from_str(&s).unwrap();
        assert_eq!(e, back);
    }

    #[test]
    fn grid_function_validates_and_interpolates() {
        assert!(Element::grid_function(0.0, 1.0, vec![1.0]).is_err());
        assert!(Element::grid_function(1.0, 0.0, vec![1.0, 2.0]).is_err());
        let g = Element::grid_function(0.0, 1.0, vec![0.0, 1.0, 0.0]).unwrap();
        assert!((g.grid_value_at(0.25).unwrap() - 0.5).abs() < 1e-15);
        assert!((g.grid_value_at(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((g.grid_value_at(2.0).unwrap() - 0.0).abs() < 1e-15); // clamped
    }

    #[test]
    fn polytope_is_hulled_on_construction() {
        let p = Element::polytope(vec![
            [0.0, 0.0],
            [2.0, 0.0],
            [1.0, 0.5], // interior of the triangle below
            [2.0, 2.0],
            [0.0, 2.0],
        ])
        .unwrap();
        match &p {
            Element::Polytope { vertices } => assert_eq!(vertices.len(), 4),
            _ => unreachable!(),
        }
    }

    #[test]
    fn point_config_rejects_zero_multiplicity() {
        let bad = Element::point_config(vec![SupportPoint {
            coords: vec![1.0],
            multiplicity: 0,
        }]);
        assert!(bad.is_err());
    }

    #[test]
    fn sequence_distance_pads_with_zeros() {
        let a = Element::sequence(vec![1.0, 2.0]);
        let b = Element::sequence(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(a.sup_distance(&b), Some(0.0));
    }
}

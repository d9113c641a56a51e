//! Planar convex geometry used by the set-valued parts of the laboratory.
//!
//! Polytopes are stored as convex hulls in counter-clockwise order. The
//! support-function integrals behind the Steiner point and the mean width
//! are piecewise sinusoids for a polygon, so both functionals are evaluated
//! in closed form per arc of the normal fan; a direction-grid quadrature is
//! kept alongside as a cross-check.

/// Convex hull (Andrew's monotone chain), counter-clockwise, with collinear
/// points dropped. Degenerate inputs yield one point or a two-point segment.
pub fn convex_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts: Vec<[f64; 2]> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| {
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 2 {
        // All points collinear: monotone chain with strict turns collapses;
        // return the two extreme points.
        return vec![pts[0], pts[n - 1]];
    }
    lower
}

/// Support function `h_K(u) = max_{v in K} <v, u>` of a vertex-represented
/// convex set, evaluated at an arbitrary direction (not necessarily unit).
pub fn support(vertices: &[[f64; 2]], u: [f64; 2]) -> f64 {
    vertices
        .iter()
        .map(|v| v[0] * u[0] + v[1] * u[1])
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Signed area (positive for CCW hulls); 0 for degenerate hulls.
pub fn area(vertices: &[[f64; 2]]) -> f64 {
    let m = vertices.len();
    if m < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..m {
        let p = vertices[i];
        let q = vertices[(i + 1) % m];
        s += p[0] * q[1] - q[0] * p[1];
    }
    s / 2.0
}

/// Boundary length. A segment counts both sides (the closed walk
/// there-and-back), which is the convention under which mean width =
/// perimeter / π extends to degenerate bodies; a point has perimeter 0.
pub fn perimeter(vertices: &[[f64; 2]]) -> f64 {
    match vertices.len() {
        0 | 1 => 0.0,
        2 => 2.0 * dist(vertices[0], vertices[1]),
        m => {
            let mut s = 0.0;
            for i in 0..m {
                s += dist(vertices[i], vertices[(i + 1) % m]);
            }
            s
        }
    }
}

/// Mean width of a planar convex body: the average over directions of
/// `h(u) + h(-u)`, which by Cauchy's formula equals perimeter / π.
pub fn mean_width(vertices: &[[f64; 2]]) -> f64 {
    perimeter(vertices) / std::f64::consts::PI
}

fn dist(p: [f64; 2], q: [f64; 2]) -> f64 {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

/// Closed-form `∫_{t1}^{t2} <v, u(θ)> u(θ) dθ` with `u(θ) = (cos θ, sin θ)`.
fn arc_integral(v: [f64; 2], t1: f64, t2: f64) -> [f64; 2] {
    let fx = |t: f64| v[0] * (t / 2.0 + (2.0 * t).sin() / 4.0) - v[1] * (2.0 * t).cos() / 4.0;
    let fy = |t: f64| -v[0] * (2.0 * t).cos() / 4.0 + v[1] * (t / 2.0 - (2.0 * t).sin() / 4.0);
    [fx(t2) - fx(t1), fy(t2) - fy(t1)]
}

/// Steiner point `(1/π) ∫_{S^1} h_K(u) u dθ`, evaluated exactly: each vertex
/// is the support maximizer on one arc of the normal fan and contributes a
/// closed-form arc integral. Exactness (up to rounding) is what makes the
/// containment property `steiner ∈ K` hold with no quadrature slack.
pub fn steiner_point(vertices: &[[f64; 2]]) -> [f64; 2] {
    use std::f64::consts::{PI, TAU};
    let m = vertices.len();
    match m {
        0 => [0.0, 0.0],
        1 => vertices[0],
        2 => {
            let d = [
                vertices[1][0] - vertices[0][0],
                vertices[1][1] - vertices[0][1],
            ];
            let phi = d[1].atan2(d[0]);
            // v1 maximizes on the half-circle of directions with <d, u> > 0.
            let a = arc_integral(vertices[1], phi - PI / 2.0, phi + PI / 2.0);
            let b = arc_integral(vertices[0], phi + PI / 2.0, phi + 3.0 * PI / 2.0);
            [(a[0] + b[0]) / PI, (a[1] + b[1]) / PI]
        }
        _ => {
            // Outward normal angle of edge i (CCW orientation).
            let normal = |i: usize| {
                let p = vertices[i];
                let q = vertices[(i + 1) % m];
                (q[1] - p[1]).atan2(q[0] - p[0]) - PI / 2.0
            };
            let mut acc = [0.0, 0.0];
            for i in 0..m {
                // Vertex q = vertices[(i+1)%m] maximizes between the normals
                // of its two incident edges.
                let t1 = normal(i);
                let mut t2 = normal((i + 1) % m);
                while t2 < t1 {
                    t2 += TAU;
                }
                let part = arc_integral(vertices[(i + 1) % m], t1, t2);
                acc[0] += part[0];
                acc[1] += part[1];
            }
            [acc[0] / PI, acc[1] / PI]
        }
    }
}

/// Steiner point by direction-grid quadrature (uniform grid over the circle,
/// periodic trapezoid rule). Used as a cross-check of [`steiner_point`].
pub fn steiner_point_quadrature(vertices: &[[f64; 2]], n_dirs: usize) -> [f64; 2] {
    use std::f64::consts::{PI, TAU};
    let mut acc = [0.0, 0.0];
    for j in 0..n_dirs {
        let t = TAU * j as f64 / n_dirs as f64;
        let u = [t.cos(), t.sin()];
        let h = support(vertices, u);
        acc[0] += h * u[0];
        acc[1] += h * u[1];
    }
    let w = TAU / n_dirs as f64;
    [acc[0] * w / PI, acc[1] * w / PI]
}

/// Mean width by direction-grid quadrature: `(2/(d κ_d)) ∫ h dθ` with d = 2,
/// κ_2 = π. Cross-check of the exact perimeter / π form.
pub fn mean_width_quadrature(vertices: &[[f64; 2]], n_dirs: usize) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut acc = 0.0;
    for j in 0..n_dirs {
        let t = TAU * j as f64 / n_dirs as f64;
        acc += support(vertices, [t.cos(), t.sin()]);
    }
    2.0 * acc * (TAU / n_dirs as f64) / (2.0 * PI)
}

/// Radius of the largest origin-centred ball inside the polytope; 0 when the
/// origin is not interior, and 0 for degenerate hulls.
pub fn inscribed_radius(vertices: &[[f64; 2]]) -> f64 {
    let m = vertices.len();
    if m < 3 {
        return 0.0;
    }
    let mut r = f64::INFINITY;
    for i in 0..m {
        let p = vertices[i];
        let q = vertices[(i + 1) % m];
        let e = [q[0] - p[0], q[1] - p[1]];
        let len = (e[0] * e[0] + e[1] * e[1]).sqrt();
        if len == 0.0 {
            continue;
        }
        // Signed distance of the origin to the left of the directed edge.
        let signed = (e[0] * (-p[1]) - e[1] * (-p[0])) / len;
        r = r.min(signed);
    }
    r.max(0.0)
}

/// Membership test for a convex CCW polygon with absolute tolerance `tol`
/// (points within `tol` of the boundary count as inside). Degenerate hulls
/// test distance to the segment or point.
pub fn contains(vertices: &[[f64; 2]], pt: [f64; 2], tol: f64) -> bool {
    let m = vertices.len();
    match m {
        0 => false,
        1 => dist(vertices[0], pt) <= tol,
        2 => dist_to_segment(vertices[0], vertices[1], pt) <= tol,
        _ => {
            for i in 0..m {
                let p = vertices[i];
                let q = vertices[(i + 1) % m];
                let e = [q[0] - p[0], q[1] - p[1]];
                let len = (e[0] * e[0] + e[1] * e[1]).sqrt();
                let cross = e[0] * (pt[1] - p[1]) - e[1] * (pt[0] - p[0]);
                if cross < -tol * len.max(1.0) {
                    return false;
                }
            }
            true
        }
    }
}

fn dist_to_segment(p: [f64; 2], q: [f64; 2], x: [f64; 2]) -> f64 {
    let e = [q[0] - p[0], q[1] - p[1]];
    let len2 = e[0] * e[0] + e[1] * e[1];
    if len2 == 0.0 {
        return dist(p, x);
    }
    let t = (((x[0] - p[0]) * e[0] + (x[1] - p[1]) * e[1]) / len2).clamp(0.0, 1.0);
    dist([p[0] + t * e[0], p[1] + t * e[1]], x)
}

/// Distance from the origin to the convex body (0 when the origin belongs
/// to it); degenerate hulls are handled.
pub fn distance_origin(vertices: &[[f64; 2]]) -> f64 {
    let m = vertices.len();
    match m {
        0 => f64::INFINITY,
        1 => dist(vertices[0], [0.0, 0.0]),
        2 => dist_to_segment(vertices[0], vertices[1], [0.0, 0.0]),
        _ => {
            if contains(vertices, [0.0, 0.0], 0.0) {
                0.0
            } else {
                (0..m)
                    .map(|i| dist_to_segment(vertices[i], vertices[(i + 1) % m], [0.0, 0.0]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<[f64; 2]> {
        convex_hull(&[[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0], [0.0, 0.0]])
    }

    #[test]
    fn hull_drops_interior_and_orders_ccw() {
        let h = square();
        assert_eq!(h.len(), 4);
        assert!(area(&h) > 0.0, "hull must be CCW");
    }

    #[test]
    fn hull_of_collinear_points_is_a_segment() {
        let h = convex_hull(&[[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [0.5, 0.5]]);
        assert_eq!(h.len(), 2);
        assert_eq!(h[0], [0.0, 0.0]);
        assert_eq!(h[1], [2.0, 2.0]);
    }

    #[test]
    fn square_functionals() {
        let h = square();
        assert!((area(&h) - 4.0).abs() < 1e-12);
        assert!((perimeter(&h) - 8.0).abs() < 1e-12);
        assert!((inscribed_radius(&h) - 1.0).abs() < 1e-12);
        assert!((mean_width(&h) - 8.0 / std::f64::consts::PI).abs() < 1e-12);
        // Support function at the diagonal direction.
        let s = 2.0f64.sqrt() / 2.0;
        assert!((support(&h, [s, s]) - 2.0 * s).abs() < 1e-12);
    }

    #[test]
    fn regular_polygon_mean_width_approaches_disk_diameter() {
        // Unit-disk polygonal approximation: mean width → 2.
        let n = 720;
        let pts: Vec<[f64; 2]> = (0..n)
            .map(|j| {
                let t = std::f64::consts::TAU * j as f64 / n as f64;
                [t.cos(), t.sin()]
            })
            .collect();
        let h = convex_hull(&pts);
        assert!((mean_width(&h) - 2.0).abs() < 1e-4, "{}", mean_width(&h));
        assert!((inscribed_radius(&h) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn steiner_point_of_segment_from_origin_is_midpoint() {
        let s = steiner_point(&[[0.0, 0.0], [3.0, 4.0]]);
        assert!((s[0] - 1.5).abs() < 1e-12 && (s[1] - 2.0).abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn steiner_point_matches_quadrature_and_centroid_symmetry() {
        let h = square();
        let s = steiner_point(&h);
        assert!(s[0].abs() < 1e-12 && s[1].abs() < 1e-12, "{s:?}");
        let tri = convex_hull(&[[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]]);
        let exact = steiner_point(&tri);
        let quad = steiner_point_quadrature(&tri, 720);
        assert!(
            (exact[0] - quad[0]).abs() < 2e-3 && (exact[1] - quad[1]).abs() < 2e-3,
            "exact {exact:?} quad {quad:?}"
        );
        assert!(contains(&tri, exact, 1e-9));
    }

    #[test]
    fn distance_origin_to_segment_hull() {
        // Segment from (3,0) to (0,4): distance from origin is 12/5.
        let h = convex_hull(&[[3.0, 0.0], [0.0, 4.0]]);
        assert!((distance_origin(&h) - 2.4).abs() < 1e-12);
    }
}

//! Families of "far from the forbidden set" regions described by moduli.
//!
//! An ideal is generated by the sets `{τ_i > ε}` of one or more moduli. Two
//! structured families arrive with shortcuts: k-of-d product ideals (a set is
//! large when k coordinates are simultaneously large) and graph ideals (a
//! vertex together with its neighbours is large).

use crate::element::Element;
use crate::error::{Result, RvError};
use crate::modulus::Modulus;
use crate::scaling::{invert_scaling, ScalingSpec};
use serde::{Deserialize, Serialize};

/// k-of-d structure: generators are `min_{i ∈ I} |x_i|` over all k-subsets
/// `I` of `{0, …, dim−1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductStructure {
    pub dim: usize,
    pub k: usize,
}

/// Graph structure: one generator per vertex, `min_{j ∈ N[i]} |x_j|` over
/// the closed neighbourhood `N[i] = {i} ∪ adjacency[i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStructure {
    pub adjacency: Vec<Vec<usize>>,
}

/// An ideal description: explicit generators plus optional structured
/// families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct IdealSpec {
    #[serde(default)]
    pub generators: Vec<Modulus>,
    #[serde(default)]
    pub product: Option<ProductStructure>,
    #[serde(default)]
    pub graph: Option<GraphStructure>,
}

impl IdealSpec {
    pub fn from_generators(generators: Vec<Modulus>) -> IdealSpec {
        IdealSpec { generators, ..Default::default() }
    }

    pub fn product(dim: usize, k: usize) -> Result<IdealSpec> {
        if k == 0 || k > dim {
            return Err(RvError::BadParameters(format!(
                "product ideal order k = {k} must lie in 1..={dim}"
            )));
        }
        Ok(IdealSpec {
            product: Some(ProductStructure { dim, k }),
            ..Default::default()
        })
    }

    pub fn graph(adjacency: Vec<Vec<usize>>) -> Result<IdealSpec> {
        let n = adjacency.len();
        for (i, nbrs) in adjacency.iter().enumerate() {
            if nbrs.iter().any(|&j| j >= n) {
                return Err(RvError::BadParameters(format!(
                    "vertex {i} lists a neighbour outside 0..{n}"
                )));
            }
        }
        Ok(IdealSpec {
            graph: Some(GraphStructure { adjacency }),
            ..Default::default()
        })
    }

    /// The full generator family spelled out as moduli (explicit generators,
    /// plus one `min` modulus per k-subset / per vertex). Exponential in k
    /// for the product part — intended for validation on small dimensions.
    pub fn enumerate_generators(&self) -> Result<Vec<Modulus>> {
        let mut gens = self.generators.clone();
        if let Some(p) = &self.product {
            let mut subset = vec![0usize; p.k];
            enumerate_subsets(p.dim, p.k, 0, 0, &mut subset, &mut |idx: &[usize]| {
                let parts: Vec<Modulus> = idx.iter().map(|&i| Modulus::coord_abs(i)).collect();
                gens.push(Modulus::min_of(parts).expect("nonempty subset"));
            });
        }
        if let Some(g) = &self.graph {
            for (i, nbrs) in g.adjacency.iter().enumerate() {
                let mut idx = vec![i];
                idx.extend(nbrs.iter().copied());
                idx.sort_unstable();
                idx.dedup();
                let parts: Vec<Modulus> = idx.iter().map(|&j| Modulus::coord_abs(j)).collect();
                gens.push(Modulus::min_of(parts).expect("nonempty neighbourhood"));
            }
        }
        Ok(gens)
    }
}

fn enumerate_subsets(
    n: usize,
    k: usize,
    start: usize,
    depth: usize,
    buf: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    if depth == k {
        f(buf);
        return;
    }
    for i in start..n {
        buf[depth] = i;
        enumerate_subsets(n, k, i + 1, depth + 1, buf, f);
    }
}

/// Largest generator value at `x`: `x` belongs to an ideal set iff the
/// threshold is positive, and `{threshold > ε}` is the union of the
/// generators' `{τ_i > ε}`.
pub fn ideal_threshold(spec: &IdealSpec, x: &Element) -> Result<f64> {
    let mut best: f64 = 0.0;
    let mut any = false;
    for g in &spec.generators {
        best = best.max(g.eval(x)?);
        any = true;
    }
    if let Some(p) = &spec.product {
        let coords = x.as_vector()?;
        if coords.len() != p.dim {
            return Err(RvError::DimensionMismatch(format!(
                "product ideal over dimension {}, element has {}",
                p.dim,
                coords.len()
            )));
        }
        // max over k-subsets of the subset minimum = k-th largest |x_i|.
        let mut abs: Vec<f64> = coords.iter().map(|v| v.abs()).collect();
        abs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        best = best.max(abs[p.k - 1]);
        any = true;
    }
    if let Some(g) = &spec.graph {
        let coords = x.as_vector()?;
        if coords.len() != g.adjacency.len() {
            return Err(RvError::DimensionMismatch(format!(
                "graph ideal over {} vertices, element has {}",
                g.adjacency.len(),
                coords.len()
            )));
        }
        for (i, nbrs) in g.adjacency.iter().enumerate() {
            let mut m = coords[i].abs();
            for &j in nbrs {
                m = m.min(coords[j].abs());
            }
            best = best.max(m);
        }
        any = true;
    }
    if !any {
        return Err(RvError::BadParameters("ideal has no generators".into()));
    }
    Ok(best)
}

/// Recover the modulus of a semicone `V` from a membership oracle:
/// `τ_V(x) = sup{t > 0 : x ∈ T_t V}`, assuming membership is monotone along
/// orbits (`x ∈ T_t V` implies `x ∈ T_s V` for `s < t`).
///
/// The bracket is discovered by doubling/halving from `t = 1` (or validated
/// when supplied), then refined by geometric bisection to relative width
/// `1e-9` (at most 200 probes per phase). Returns 0 when no probed scale
/// places `x` inside, and `NonMonotoneOracle` when a supplied bracket
/// contradicts monotonicity.
pub fn modulus_from_semicone(
    member: &dyn Fn(&Element) -> bool,
    scaling: &ScalingSpec,
    x: &Element,
    bracket: Option<(f64, f64)>,
) -> Result<f64> {
    const MAX_STEPS: usize = 200;
    let inside = |t: f64| -> Result<bool> { Ok(member(&invert_scaling(scaling, t, x)?)) };

    let (mut lo, mut hi) = match bracket {
        Some((lo, hi)) => {
            if !(lo > 0.0 && hi > lo) {
                return Err(RvError::BadParameters(format!(
                    "bracket must satisfy 0 < lo < hi, got ({lo}, {hi})"
                )));
            }
            if !inside(lo)? {
                return Err(RvError::NonMonotoneOracle(format!(
                    "membership fails at bracket floor t = {lo}"
                )));
            }
            if inside(hi)? {
                return Err(RvError::NonMonotoneOracle(format!(
                    "membership persists at bracket ceiling t = {hi}"
                )));
            }
            (lo, hi)
        }
        None => {
            if inside(1.0)? {
                // Grow until membership fails.
                let mut hi = 2.0;
                let mut steps = 0;
                while inside(hi)? {
                    hi *= 2.0;
                    steps += 1;
                    if steps > MAX_STEPS {
                        return Err(RvError::NonMonotoneOracle(
                            "membership never fails along the orbit; modulus is not finite".into(),
                        ));
                    }
                }
                (hi / 2.0, hi)
            } else {
                // Shrink until membership holds (or give up at 0).
                let mut lo = 0.5;
                let mut steps = 0;
                while !inside(lo)? {
                    lo /= 2.0;
                    steps += 1;
                    if steps > MAX_STEPS {
                        return Ok(0.0);
                    }
                }
                (lo, lo * 2.0)
            }
        }
    };

    for _ in 0..MAX_STEPS {
        if hi - lo <= 1e-9 * hi {
            break;
        }
        let mid = (lo * hi).sqrt();
        if inside(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Monte Carlo comparison of two moduli along a sample stream.
#[derive(Debug, Clone, Serialize)]
pub struct DominationReport {
    /// Evidence that `τ_2 ≤ C·τ_1` held across the stream (bounded ratio,
    /// no growth trend). Statistical evidence only — not a proof.
    pub dominates: bool,
    /// Largest observed `τ_2/τ_1` (the candidate constant C).
    pub witness_ratio: f64,
    /// Largest observed `τ_1/τ_2` (the reverse direction, for context).
    pub reverse_ratio: f64,
    /// Largest `τ_2/τ_1` over the first half of the stream.
    pub first_half_max: f64,
    /// Largest `τ_2/τ_1` over the second half of the stream.
    pub second_half_max: f64,
    pub note: String,
}

/// Search `sup τ_2/τ_1` over `n` sampled elements. `dominates` is true when
/// the ratio stayed finite, below a sanity cap, and showed no growth trend
/// between the two halves of the stream.
pub fn check_domination(
    m1: &Modulus,
    m2: &Modulus,
    sampler: &(dyn Fn(u64) -> Element + Sync),
    n: u64,
) -> Result<DominationReport> {
    const CAP: f64 = 1e6;
    let mut witness: f64 = 0.0;
    let mut reverse: f64 = 0.0;
    let mut first_half: f64 = 0.0;
    let mut second_half: f64 = 0.0;
    for i in 0..n {
        let x = sampler(i);
        let t1 = m1.eval(&x)?;
        let t2 = m2.eval(&x)?;
        let ratio = if t1 > 0.0 {
            t2 / t1
        } else if t2 > 0.0 {
            f64::INFINITY
        } else {
            continue;
        };
        let rev = if t2 > 0.0 {
            t1 / t2
        } else if t1 > 0.0 {
            f64::INFINITY
        } else {
            continue;
        };
        witness = witness.max(ratio);
        reverse = reverse.max(rev);
        if i < n / 2 {
            first_half = first_half.max(ratio);
        } else {
            second_half = second_half.max(ratio);
        }
    }
    let trending = second_half > 2.0 * first_half.max(f64::MIN_POSITIVE);
    let dominates = witness.is_finite() && witness <= CAP && !trending;
    Ok(DominationReport {
        dominates,
        witness_ratio: witness,
        reverse_ratio: reverse,
        first_half_max: first_half,
        second_half_max: second_half,
        note: "Monte Carlo evidence over the sampled stream; not a proof".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{Rng, STREAM_AUX};

    #[test]
    fn product_threshold_is_kth_largest() {
        let spec = IdealSpec::product(3, 2).unwrap();
        let x = Element::vector(vec![5.0, 0.1, 4.0]);
        assert_eq!(ideal_threshold(&spec, &x).unwrap(), 4.0);
    }

    #[test]
    fn graph_threshold_uses_closed_neighbourhoods() {
        // Path edges a—b and c—d on coordinates [1, 2, 0, 0].
        let spec = IdealSpec::graph(vec![vec![1], vec![0], vec![3], vec![2]]).unwrap();
        let x = Element::vector(vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(ideal_threshold(&spec, &x).unwrap(), 1.0);
    }

    #[test]
    fn structured_threshold_equals_enumerated_generator_family() {
        let specs = [
            IdealSpec::product(4, 2).unwrap(),
            IdealSpec::product(4, 3).unwrap(),
            IdealSpec::graph(vec![vec![1, 2], vec![0], vec![0], vec![]]).unwrap(),
        ];
        for (si, spec) in specs.iter().enumerate() {
            let gens = spec.enumerate_generators().unwrap();
            for rep in 0..200u64 {
                let mut rng = Rng::at(50 + si as u64, STREAM_AUX, rep);
                let x = Element::vector((0..4).map(|_| rng.uniform(-3.0, 3.0)).collect());
                let fast = ideal_threshold(spec, &x).unwrap();
                let slow = gens
                    .iter()
                    .map(|g| g.eval(&x).unwrap())
                    .fold(0.0f64, f64::max);
                assert!((fast - slow).abs() < 1e-12, "{fast} vs {slow}");
            }
        }
    }

    #[test]
    fn semicone_recovers_standard_moduli() {
        let moduli = [
            Modulus::norm(2.0).unwrap(),
            Modulus::max_abs(),
            Modulus::min_abs(),
        ];
        for (mi, m) in moduli.iter().enumerate() {
            for rep in 0..50u64 {
                let mut rng = Rng::at(60 + mi as u64, STREAM_AUX, rep);
                let x = Element::vector(vec![rng.uniform(0.1, 20.0), rng.uniform(0.1, 20.0)]);
                let truth = m.eval(&x).unwrap();
                let member = |y: &Element| m.eval(y).map(|v| v > 1.0).unwrap_or(false);
                let est = modulus_from_semicone(&member, &m.scaling, &x, None).unwrap();
                assert!(
                    (est - truth).abs() <= 1e-8 * (1.0 + truth),
                    "{:?}: {est} vs {truth}",
                    m.kind
                );
            }
        }
    }

    #[test]
    fn semicone_returns_zero_outside_all_orbit_scales() {
        // min(x) with a zero coordinate never enters {min > 1}.
        let m = Modulus::min_abs();
        let member = |y: &Element| m.eval(y).map(|v| v > 1.0).unwrap_or(false);
        let x = Element::vector(vec![0.0, 5.0]);
        let est = modulus_from_semicone(&member, &m.scaling, &x, None).unwrap();
        assert_eq!(est, 0.0);
    }

    #[test]
    fn semicone_rejects_inconsistent_bracket() {
        let m = Modulus::norm(2.0).unwrap();
        let member = |y: &Element| m.eval(y).map(|v| v > 1.0).unwrap_or(false);
        let x = Element::vector(vec![3.0, 4.0]); // τ = 5
        // Claiming membership still holds at t = 100 contradicts monotonicity.
        let bad = modulus_from_semicone(&member, &m.scaling, &x, Some((0.5, 4.0)));
        assert!(matches!(bad, Err(RvError::NonMonotoneOracle(_))), "{bad:?}");
        let bad2 = modulus_from_semicone(&member, &m.scaling, &x, Some((6.0, 100.0)));
        assert!(matches!(bad2, Err(RvError::NonMonotoneOracle(_))), "{bad2:?}");
        let good = modulus_from_semicone(&member, &m.scaling, &x, Some((1.0, 100.0))).unwrap();
        assert!((good - 5.0).abs() < 1e-8 * 6.0);
    }

    #[test]
    fn domination_bounded_and_unbounded() {
        // τ2 = max(|x1|, 2|x2|) vs τ1 = max abs: ratio bounded by 2.
        let m1 = Modulus::max_abs();
        let m2 = Modulus::max_of(vec![
            Modulus::coord_abs(0),
            Modulus::scaled(2.0, Modulus::coord_abs(1)).unwrap(),
        ])
        .unwrap();
        let sampler = |i: u64| {
            let mut rng = Rng::at(70, STREAM_AUX, i);
            Element::vector(vec![rng.uniform(0.01, 10.0), rng.uniform(0.01, 10.0)])
        };
        let rep = check_domination(&m1, &m2, &sampler, 5000).unwrap();
        assert!(rep.dominates, "{rep:?}");
        assert!(rep.witness_ratio <= 2.0 + 1e-12 && rep.witness_ratio > 1.5, "{rep:?}");

        // max/min is unbounded along x2 → 0: min abs does not dominate max abs.
        let near_axis = |i: u64| {
            let mut rng = Rng::at(71, STREAM_AUX, i);
            Element::vector(vec![rng.uniform(1.0, 2.0), rng.u01().powi(4) * 2.0])
        };
        let rep3 = check_domination(&Modulus::min_abs(), &Modulus::max_abs(), &near_axis, 5000).unwrap();
        assert!(!rep3.dominates, "{rep3:?}");
        // The reverse direction min ≤ 1·max is bounded with constant 1.
        let rep4 = check_domination(&Modulus::max_abs(), &Modulus::min_abs(), &near_axis, 5000).unwrap();
        assert!(rep4.witness_ratio <= 1.0 + 1e-12);
        assert!(rep4.dominates, "{rep4:?}");
    }
}

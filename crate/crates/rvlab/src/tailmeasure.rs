//! Tail measures with discrete spectral part.
//!
//! A tail measure is the α-homogeneous measure `μ = (σ ⊗ θ_α) ∘ ρ^{-1}`
//! determined by a finite spectral measure `σ` on the transversal
//! `{τ = 1}` of a scaling action and the radial law
//! `θ_α((s, ∞)) = s^{-α}`: mass `σ(A)·(s^{-α} − t^{-α})` sits on the sector
//! of orbits through `A` with radial part in `(s, t]`.

use crate::element::Element;
use crate::error::{Result, RvError};
use crate::modulus::Modulus;
use crate::scaling::{apply_scaling, invert_scaling, ScalingSpec};
use serde::{Deserialize, Serialize};

/// Tolerance for "the atom lies on the transversal {τ = 1}".
pub const ATOM_TOL: f64 = 1e-9;

/// One spectral atom: a direction on the transversal and a positive weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralAtom {
    pub location: Element,
    pub weight: f64,
}

/// Finite discrete measure on the transversal of a modulus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralMeasure {
    pub atoms: Vec<SpectralAtom>,
    /// The modulus whose transversal carries the atoms.
    pub reference: Modulus,
}

/// α-homogeneous tail measure with discrete spectral part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TailMeasureRepr", into = "TailMeasureRepr")]
pub struct TailMeasure {
    pub alpha: f64,
    pub spectral: SpectralMeasure,
    pub scaling: ScalingSpec,
}

/// Wire shape: `{alpha, atoms, reference}` (the scaling action rides along
/// inside the reference modulus).
#[derive(Serialize, Deserialize)]
struct TailMeasureRepr {
    alpha: f64,
    atoms: Vec<SpectralAtom>,
    reference: Modulus,
}

impl From<TailMeasure> for TailMeasureRepr {
    fn from(m: TailMeasure) -> Self {
        TailMeasureRepr {
            alpha: m.alpha,
            atoms: m.spectral.atoms,
            reference: m.spectral.reference,
        }
    }
}

impl TryFrom<TailMeasureRepr> for TailMeasure {
    type Error = RvError;
    fn try_from(r: TailMeasureRepr) -> Result<TailMeasure> {
        TailMeasure::new(r.alpha, r.atoms, r.reference)
    }
}

impl TailMeasure {
    /// Build and validate: `alpha > 0`, weights positive, every atom on the
    /// reference transversal within [`ATOM_TOL`]. Atoms closer than
    /// [`ATOM_TOL`] in sup distance are merged with summed weights.
    pub fn new(alpha: f64, atoms: Vec<SpectralAtom>, reference: Modulus) -> Result<TailMeasure> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(RvError::BadParameters(format!(
                "tail index must be positive and finite, got {alpha}"
            )));
        }
        for atom in &atoms {
            if !(atom.weight > 0.0 && atom.weight.is_finite()) {
                return Err(RvError::BadParameters(format!(
                    "atom weights must be positive and finite, got {}",
                    atom.weight
                )));
            }
            let tau = reference.eval(&atom.location)?;
            if (tau - 1.0).abs() > ATOM_TOL {
                return Err(RvError::BadParameters(format!(
                    "atom lies off the transversal: τ = {tau}"
                )));
            }
        }
        let scaling = reference.scaling.clone();
        Ok(TailMeasure {
            alpha,
            spectral: SpectralMeasure { atoms: merge_atoms(atoms), reference },
            scaling,
        })
    }

    pub fn total_spectral_mass(&self) -> f64 {
        self.spectral.atoms.iter().map(|a| a.weight).sum()
    }
}

fn merge_atoms(atoms: Vec<SpectralAtom>) -> Vec<SpectralAtom> {
    let mut merged: Vec<SpectralAtom> = Vec::with_capacity(atoms.len());
    'outer: for atom in atoms {
        for m in merged.iter_mut() {
            if let Some(d) = m.location.sup_distance(&atom.location) {
                if d <= ATOM_TOL {
                    m.weight += atom.weight;
                    continue 'outer;
                }
            }
        }
        merged.push(atom);
    }
    merged
}

/// Radial tail function: `θ_α((s, ∞)) = s^{-α}`.
pub fn theta_tail(alpha: f64, s: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(RvError::BadParameters(format!("tail index {alpha}")));
    }
    if !(s > 0.0) {
        return Err(RvError::BadParameters(format!("radial level {s}")));
    }
    Ok(s.powf(-alpha))
}

/// Mass of the sector `{T_r u : pred(u), r ∈ (s, t]}`:
/// `σ(pred)·(s^{-α} − t^{-α})`. `t` may be `+∞`; requires `0 < s < t`.
pub fn sector_mass(
    mu: &TailMeasure,
    pred: &dyn Fn(&Element) -> bool,
    s: f64,
    t: f64,
) -> Result<f64> {
    if !(s > 0.0 && t > s) {
        return Err(RvError::InvalidInterval(s, t));
    }
    let radial = s.powf(-mu.alpha) - if t.is_finite() { t.powf(-mu.alpha) } else { 0.0 };
    let mut mass = 0.0;
    for atom in &mu.spectral.atoms {
        if pred(&atom.location) {
            mass += atom.weight * radial;
        }
    }
    Ok(mass)
}

/// Pushforward of a tail measure along an α-compatible homogeneous map
/// `f` (`f ∘ T_c = T'_c ∘ f`), re-expressed on the transversal of
/// `target`: each atom `u` maps to direction `T'_{1/c} f(u)` with weight
/// `w·c^α`, where `c = τ'(f(u))`; atoms with `c = 0` leave the measured
/// region and are dropped.
///
/// The intertwining property is spot-checked at scales ½ and 2 per atom
/// (`NonMorphism` on failure); if every atom drops, the pushforward is the
/// zero measure (`TrivialPushforward`).
pub fn pushforward(
    mu: &TailMeasure,
    f: &dyn Fn(&Element) -> Result<Element>,
    target: &Modulus,
) -> Result<TailMeasure> {
    let mut atoms = Vec::new();
    for atom in &mu.spectral.atoms {
        let image = f(&atom.location)?;
        for c in [0.5, 2.0] {
            let via_source = f(&apply_scaling(&mu.scaling, c, &atom.location)?)?;
            let via_target = apply_scaling(&target.scaling, c, &image)?;
            let tol = 1e-6 * (1.0 + via_target.sup_norm());
            match via_source.sup_distance(&via_target) {
                Some(d) if d <= tol => {}
                Some(d) => {
                    return Err(RvError::NonMorphism(format!(
                        "f(T_{c} u) differs from T'_{c} f(u) by {d}"
                    )))
                }
                None => {
                    return Err(RvError::NonMorphism(
                        "f(T_c u) and T'_c f(u) have incomparable shapes".into(),
                    ))
                }
            }
        }
        let c = target.eval(&image)?;
        if c == 0.0 {
            continue;
        }
        if !c.is_finite() {
            return Err(RvError::BadParameters(
                "target modulus is infinite on an atom image".into(),
            ));
        }
        atoms.push(SpectralAtom {
            location: invert_scaling(&target.scaling, c, &image)?,
            weight: atom.weight * c.powf(mu.alpha),
        });
    }
    if atoms.is_empty() {
        return Err(RvError::TrivialPushforward);
    }
    TailMeasure::new(mu.alpha, atoms, target.clone())
}

/// Re-express the same tail measure on the transversal of another modulus
/// `ℓ` homogeneous under the same action: atom `u` moves to `T_{1/ℓ(u)} u`
/// with weight `w·ℓ(u)^α`; atoms with `ℓ(u) = 0` carry no `ℓ`-tail mass and
/// are dropped (`TrivialResult` when all do).
pub fn change_modulus(mu: &TailMeasure, ell: &Modulus) -> Result<TailMeasure> {
    if ell.scaling != mu.scaling {
        return Err(RvError::BadParameters(
            "new modulus must be homogeneous under the same scaling action".into(),
        ));
    }
    let mut atoms = Vec::new();
    for atom in &mu.spectral.atoms {
        let c = ell.eval(&atom.location)?;
        if c == 0.0 {
            continue;
        }
        if !c.is_finite() {
            return Err(RvError::BadParameters(
                "new modulus is infinite on an atom".into(),
            ));
        }
        atoms.push(SpectralAtom {
            location: invert_scaling(&ell.scaling, c, &atom.location)?,
            weight: atom.weight * c.powf(mu.alpha),
        });
    }
    if atoms.is_empty() {
        return Err(RvError::TrivialResult);
    }
    TailMeasure::new(mu.alpha, atoms, ell.clone())
}

/// One ray piece of an assembled measure: direction `u`, radial range
/// `(r_lo, r_hi]`, weight `w` — carrying mass `w·(r_lo^{-α} − r_hi^{-α})`.
#[derive(Debug, Clone, Serialize)]
pub struct RaySegment {
    pub direction: Vec<f64>,
    pub weight: f64,
    pub r_lo: f64,
    pub r_hi: f64,
}

/// A measure written as finitely many weighted radial segments (the output
/// of assembling marginal tail measures above a cut level).
#[derive(Debug, Clone, Serialize)]
pub struct AssembledMeasure {
    pub alpha: f64,
    pub cut: f64,
    pub segments: Vec<RaySegment>,
}

impl AssembledMeasure {
    pub fn total_mass(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.weight * (radial_mass(self.alpha, s.r_lo, s.r_hi)))
            .sum()
    }

    /// Mass of the half-open coordinate box `∏_j [lo_j, hi_j)`. Exact: on a
    /// fixed ray the box constraint is an interval in the radial variable.
    pub fn mass_box(&self, lo: &[f64], hi: &[f64]) -> Result<f64> {
        let mut total = 0.0;
        for seg in &self.segments {
            if lo.len() != seg.direction.len() || hi.len() != seg.direction.len() {
                return Err(RvError::DimensionMismatch(format!(
                    "box dimension {} vs ray dimension {}",
                    lo.len(),
                    seg.direction.len()
                )));
            }
            let (mut rlo, mut rhi) = (seg.r_lo, seg.r_hi);
            let mut empty = false;
            for j in 0..lo.len() {
                let u = seg.direction[j];
                if u == 0.0 {
                    if !(lo[j] <= 0.0 && hi[j] > 0.0) {
                        empty = true;
                        break;
                    }
                } else if u > 0.0 {
                    rlo = rlo.max(lo[j] / u);
                    rhi = rhi.min(hi[j] / u);
                } else {
                    rlo = rlo.max(hi[j] / u);
                    rhi = rhi.min(lo[j] / u);
                }
            }
            if !empty && rhi > rlo {
                total += seg.weight * radial_mass(self.alpha, rlo, rhi);
            }
        }
        Ok(total)
    }
}

fn radial_mass(alpha: f64, r_lo: f64, r_hi: f64) -> f64 {
    let upper = if r_hi.is_finite() { r_hi.powf(-alpha) } else { 0.0 };
    (r_lo.powf(-alpha) - upper).max(0.0)
}

/// Assemble a measure on `{max_i |x_i| > a}` from per-coordinate marginal
/// tail measures: part `i` contributes its mass on
/// `{|x_i| > a} ∩ {max_{j<i} |x_j| ≤ a}`, so overlapping contributions are
/// counted exactly once. Parts must be vector-valued with linear scaling,
/// one per coordinate, all of one dimension and tail index.
pub fn assemble_from_marginals(parts: &[TailMeasure], a: f64) -> Result<AssembledMeasure> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(RvError::BadParameters(format!("cut level must be positive, got {a}")));
    }
    let first = parts
        .first()
        .ok_or_else(|| RvError::BadParameters("no marginal parts supplied".into()))?;
    let alpha = first.alpha;
    let dim = parts.len();
    let mut segments = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        if part.scaling != ScalingSpec::Linear {
            return Err(RvError::BadParameters(
                "marginal assembly requires linear scaling".into(),
            ));
        }
        if part.alpha != alpha {
            return Err(RvError::BadParameters(format!(
                "marginal parts mix tail indices {alpha} and {}",
                part.alpha
            )));
        }
        for atom in &part.spectral.atoms {
            let u = atom.location.as_vector().map_err(|_| {
                RvError::DimensionMismatch("marginal atoms must be vectors".into())
            })?;
            if u.len() != dim {
                return Err(RvError::DimensionMismatch(format!(
                    "part {i} atom has dimension {}, expected {dim}",
                    u.len()
                )));
            }
            let ui = u[i].abs();
            if ui == 0.0 {
                continue; // the ray never enters {|x_i| > a}
            }
            let prev = u[..i].iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let r_lo = a / ui;
            let r_hi = if prev > 0.0 { a / prev } else { f64::INFINITY };
            if r_hi > r_lo {
                segments.push(RaySegment {
                    direction: u.to_vec(),
                    weight: atom.weight,
                    r_lo,
                    r_hi,
                });
            }
        }
    }
    Ok(AssembledMeasure { alpha, cut: a, segments })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axis_measure(alpha: f64) -> TailMeasure {
        TailMeasure::new(
            alpha,
            vec![
                SpectralAtom { location: Element::vector(vec![1.0, 0.0]), weight: 1.0 },
                SpectralAtom { location: Element::vector(vec![0.0, 1.0]), weight: 1.0 },
            ],
            Modulus::max_abs(),
        )
        .unwrap()
    }

    #[test]
    fn constructor_validates_atoms() {
        let off = TailMeasure::new(
            1.0,
            vec![SpectralAtom { location: Element::vector(vec![2.0, 0.0]), weight: 1.0 }],
            Modulus::max_abs(),
        );
        assert!(off.is_err());
        let neg = TailMeasure::new(
            1.0,
            vec![SpectralAtom { location: Element::vector(vec![1.0, 0.0]), weight: -1.0 }],
            Modulus::max_abs(),
        );
        assert!(neg.is_err());
        assert!(TailMeasure::new(0.0, vec![], Modulus::max_abs()).is_err());
    }

    #[test]
    fn near_duplicate_atoms_merge() {
        let mu = TailMeasure::new(
            2.0,
            vec![
                SpectralAtom { location: Element::vector(vec![1.0, 0.0]), weight: 0.25 },
                SpectralAtom {
                    location: Element::vector(vec![1.0, 1e-12]),
                    weight: 0.5,
                },
            ],
            Modulus::max_abs(),
        )
        .unwrap();
        assert_eq!(mu.spectral.atoms.len(), 1);
        assert!((mu.total_spectral_mass() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn theta_and_sector_masses() {
        assert_eq!(theta_tail(1.0, 2.0).unwrap(), 0.5);
        assert_eq!(theta_tail(2.0, 10.0).unwrap(), 0.01);
        let mu = axis_measure(1.0);
        let all = |_: &Element| true;
        // σ(all) = 2, radial (1,2]: 1 − 1/2.
        assert!((sector_mass(&mu, &all, 1.0, 2.0).unwrap() - 1.0).abs() < 1e-15);
        // Unbounded radial part.
        assert!((sector_mass(&mu, &all, 2.0, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
        // Only the first axis.
        let first = |u: &Element| u.as_vector().map(|v| v[0] > 0.5).unwrap_or(false);
        assert!((sector_mass(&mu, &first, 1.0, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            sector_mass(&mu, &all, 2.0, 1.0),
            Err(RvError::InvalidInterval(_, _))
        ));
        assert!(matches!(
            sector_mass(&mu, &all, 0.0, 1.0),
            Err(RvError::InvalidInterval(_, _))
        ));
    }

    #[test]
    fn pushforward_embeds_half_line_on_first_axis() {
        // Scalar measure ½·θ_α pushed through z ↦ (z, 0).
        let mu = TailMeasure::new(
            1.0,
            vec![SpectralAtom { location: Element::vector(vec![1.0]), weight: 0.5 }],
            Modulus::max_abs(),
        )
        .unwrap();
        let f = |x: &Element| -> Result<Element> {
            Ok(Element::vector(vec![x.as_vector()?[0], 0.0]))
        };
        let out = pushforward(&mu, &f, &Modulus::max_abs()).unwrap();
        assert_eq!(out.spectral.atoms.len(), 1);
        let atom = &out.spectral.atoms[0];
        assert_eq!(atom.location.as_vector().unwrap(), &[1.0, 0.0]);
        assert!((atom.weight - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pushforward_rejects_non_homogeneous_maps() {
        let mu = axis_measure(1.0);
        let shift = |x: &Element| -> Result<Element> {
            Ok(Element::vector(x.as_vector()?.iter().map(|v| v + 1.0).collect()))
        };
        assert!(matches!(
            pushforward(&mu, &shift, &Modulus::max_abs()),
            Err(RvError::NonMorphism(_))
        ));
    }

    #[test]
    fn pushforward_to_nowhere_is_trivial() {
        let mu = axis_measure(1.0);
        let collapse = |_: &Element| -> Result<Element> { Ok(Element::vector(vec![0.0, 0.0])) };
        assert!(matches!(
            pushforward(&mu, &collapse, &Modulus::max_abs()),
            Err(RvError::TrivialPushforward)
        ));
    }

    #[test]
    fn change_modulus_moves_atoms_and_weights() {
        // Diagonal atom under max-modulus, re-expressed under the sum norm.
        let mu = TailMeasure::new(
            1.0,
            vec![SpectralAtom { location: Element::vector(vec![1.0, 1.0]), weight: 0.4 }],
            Modulus::max_abs(),
        )
        .unwrap();
        let out = change_modulus(&mu, &Modulus::norm(1.0).unwrap()).unwrap();
        let atom = &out.spectral.atoms[0];
        assert_eq!(atom.location.as_vector().unwrap(), &[0.5, 0.5]);
        assert!((atom.weight - 0.8).abs() < 1e-15); // 0.4 · 2^1
    }

    #[test]
    fn change_modulus_by_scalar_multiple_scales_weights_by_power() {
        let mu = axis_measure(2.0);
        let ell = Modulus::scaled(3.0, Modulus::max_abs()).unwrap();
        let out = change_modulus(&mu, &ell).unwrap();
        // Each weight multiplied by 3^α = 9; atoms shrink to τ_max = 1/3.
        for atom in &out.spectral.atoms {
            assert!((atom.weight - 9.0).abs() < 1e-12);
            assert!((ell.eval(&atom.location).unwrap() - 1.0).abs() < 1e-12);
        }
        // Total mass through the new transversal matches Σ w·ℓ(u)^α exactly.
        let total = sector_mass(&out, &|_| true, 1.0, f64::INFINITY).unwrap();
        let direct: f64 = mu
            .spectral
            .atoms
            .iter()
            .map(|a| a.weight * ell.eval(&a.location).unwrap().powf(mu.alpha))
            .sum();
        assert_eq!(total, direct);
    }

    #[test]
    fn change_modulus_dropping_every_atom_is_trivial() {
        let mu = TailMeasure::new(
            1.0,
            vec![SpectralAtom { location: Element::vector(vec![1.0, 0.5]), weight: 1.0 }],
            Modulus::max_abs(),
        )
        .unwrap();
        // Gated coordinate vanishes unless the second coordinate is 0.
        let ell = Modulus::gated_coord_abs(0, 1);
        assert!(matches!(change_modulus(&mu, &ell), Err(RvError::TrivialResult)));
    }

    fn marginal(dim: usize, axis: usize, alpha: f64) -> TailMeasure {
        let mut coords = vec![0.0; dim];
        coords[axis] = 1.0;
        TailMeasure::new(
            alpha,
            vec![SpectralAtom { location: Element::vector(coords), weight: 1.0 }],
            Modulus::coord_abs(axis),
        )
        .unwrap()
    }

    #[test]
    fn assembly_of_independent_pair_marginals_covers_both_axes() {
        let parts = vec![marginal(2, 0, 1.0), marginal(2, 1, 1.0)];
        let asm = assemble_from_marginals(&parts, 1.0).unwrap();
        // Each axis ray carries mass a^{-α} = 1 above the cut.
        assert!((asm.total_mass() - 2.0).abs() < 1e-12);
        // Box (2, 4) × [0, 1) meets only the first axis: θ radial (2,4).
        let m = asm.mass_box(&[2.0, 0.0], &[4.0, 1.0]).unwrap();
        assert!((m - 0.25).abs() < 1e-12, "{m}");
        // Off-axis box carries nothing.
        let z = asm.mass_box(&[1.0, 1.0], &[2.0, 2.0]).unwrap();
        assert_eq!(z, 0.0);
    }

    #[test]
    fn assembly_with_shared_full_measure_restricts_it_once() {
        // Exchangeable situation: both marginal parts equal the full two-axis
        // measure. Assembly keeps the first-axis mass from part 0 and the
        // second-axis mass from part 1 (first-axis atoms in part 1 are cut by
        // the {max_{j<1} |x_j| ≤ a} guard), recovering the measure once.
        let full = TailMeasure::new(
            1.0,
            vec![
                SpectralAtom { location: Element::vector(vec![1.0, 0.0]), weight: 1.0 },
                SpectralAtom { location: Element::vector(vec![0.0, 1.0]), weight: 1.0 },
            ],
            Modulus::max_abs(),
        )
        .unwrap();
        // Re-tag the same atoms relative to the coordinate moduli: on the
        // axes the coordinate modulus equals the max modulus, so the atoms
        // are already on both transversals.
        let part0 = TailMeasure::new(1.0, full.spectral.atoms.clone(), Modulus::max_abs()).unwrap();
        let asm = assemble_from_marginals(&[part0.clone(), part0], 2.0).unwrap();
        // Restriction of the two-axis measure to {max |x_i| > 2}: mass
        // 2 · θ_1((2, ∞)) = 1.
        assert!((asm.total_mass() - 1.0).abs() < 1e-12, "{}", asm.total_mass());
        let first_axis = asm.mass_box(&[2.0, -0.5], &[f64::INFINITY, 0.5]).unwrap();
        assert!((first_axis - 0.5).abs() < 1e-12);
        let second_axis = asm.mass_box(&[-0.5, 2.0], &[0.5, f64::INFINITY]).unwrap();
        assert!((second_axis - 0.5).abs() < 1e-12);
    }

    #[test]
    fn assembly_is_invariant_under_coordinate_permutation() {
        // Swap the two coordinates everywhere; box masses swap accordingly.
        let parts = vec![marginal(2, 0, 1.5), marginal(2, 1, 1.5)];
        let swapped = vec![marginal(2, 1, 1.5), marginal(2, 0, 1.5)];
        // note: swapped parts must also swap order to stay aligned with axes
        let asm = assemble_from_marginals(&parts, 1.0).unwrap();
        let asm_swapped = assemble_from_marginals(&[swapped[1].clone(), swapped[0].clone()], 1.0)
            .unwrap();
        let b1 = asm.mass_box(&[2.0, -1.0], &[8.0, 1.0]).unwrap();
        let b2 = asm_swapped.mass_box(&[-1.0, 2.0], &[1.0, 8.0]).unwrap();
        assert!((b1 - b2).abs() < 1e-12);
        assert!((asm.total_mass() - asm_swapped.total_mass()).abs() < 1e-12);
    }

    #[test]
    fn assembly_rejects_mixed_dimensions() {
        let bad = assemble_from_marginals(&[marginal(2, 0, 1.0), marginal(3, 1, 1.0)], 1.0);
        assert!(matches!(bad, Err(RvError::DimensionMismatch(_))));
    }

    #[test]
    fn json_shape_is_alpha_atoms_reference() {
        let mu = axis_measure(1.5);
        let s = serde_json::to_string(&mu).unwrap();
        assert!(s.contains("\"alpha\":1.5"), "{s}");
        assert!(s.contains("\"atoms\""), "{s}");
        assert!(s.contains("\"reference\""), "{s}");
        let back: TailMeasure = serde_json::from_str(&s).unwrap();
        assert_eq!(mu, back);
    }
}

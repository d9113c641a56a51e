//! End-to-end acceptance suite.
//!
//! Eleven statistical criteria, each reported as a single
//! `[criterion N] PASS/FAIL` line with its check count and wall time.
//! The suite runs as a plain binary (`harness = false` in the manifest) so
//! the lines always reach the terminal; the process exits nonzero when any
//! criterion fails, which `cargo test` reports as a failed target.
//!
//! Monte-Carlo tolerances are four standard errors of the quantity under
//! test (binomial for probabilities, `α̂/√k` for tail indices) unless a
//! wider stated band applies; algebraic identities use relative 1e−12 or
//! bitwise equality where the arithmetic is exact.

use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;
use rvlab::element::SupportPoint;
use rvlab::estimators::{
    default_k, empirical_spectral, empirical_tail_mass, estimate_tail_index, hidden_rv_ladder,
    polar_decompose,
};
use rvlab::geometry;
use rvlab::limits::{breiman_verify, mda_check, poisson_limit_counts, void_probability_check};
use rvlab::rng::{self, Rng};
use rvlab::samplers::{element_at, pareto_at, sample, ArKind};
use rvlab::scaling::{apply_scaling, invert_scaling};
use rvlab::tailmeasure::{assemble_from_marginals, change_modulus, sector_mass};
use rvlab::{
    CovariateFamily, Element, GeneratorSpec, MdaSpec, Modulus, NormingRule, Result, ScalingSpec,
    SpectralAtom, TailMeasure, Verdict,
};

struct Check {
    what: String,
    pass: bool,
}

fn flag(what: impl Into<String>, pass: bool) -> Check {
    Check { what: what.into(), pass }
}

fn close(what: impl Into<String>, estimate: f64, target: f64, tol: f64) -> Check {
    Check {
        pass: estimate.is_finite() && (estimate - target).abs() <= tol,
        what: format!("{}: got {estimate:.6}, want {target:.6} ± {tol:.6}", what.into()),
    }
}

/// Four binomial standard errors of a proportion `p` from `n` trials.
fn binom_tol(p: f64, n: f64) -> f64 {
    4.0 * (p * (1.0 - p) / n).sqrt()
}

fn verdict_checks(prefix: &str, verdicts: &[Verdict]) -> Vec<Check> {
    verdicts
        .iter()
        .map(|v| Check {
            what: format!(
                "{prefix}{}: got {:.6}, want {:.6} ± {:.6}",
                v.claim, v.estimate, v.target, v.tolerance
            ),
            pass: v.pass,
        })
        .collect()
}

/// Componentwise closeness up to a relative sup-norm tolerance.
fn close_elements(a: &Element, b: &Element, rel: f64) -> bool {
    match a.sup_distance(b) {
        Some(d) => d <= rel * (1.0 + a.sup_norm().max(b.sup_norm())),
        None => false,
    }
}

// ---------------------------------------------------------------------------
// Criterion 1: exact exceedance laws of the planar modulus family on a pair
// of independent standard Pareto coordinates, n = 10^7, t ∈ {5, 10, 20}.
// ---------------------------------------------------------------------------
fn criterion_1() -> Result<Vec<Check>> {
    const N: u64 = 10_000_000;
    let gen = GeneratorSpec::ParetoPairIid;
    let seed = 101;
    let moduli: Vec<(&str, Modulus, fn(f64) -> f64)> = vec![
        ("max coordinate", Modulus::max_abs(), |t| 2.0 / t - t.powi(-2)),
        ("geometric-max 1/4", Modulus::beta_star(0.25)?, |t| {
            3.0 * t.powf(-4.0 / 3.0) - 2.0 * t.powi(-2)
        }),
        ("geometric-min 1/4", Modulus::beta_min(0.25)?, |t| 2.0 * t.powi(-2) - t.powi(-4)),
        ("geometric-min 1/2", Modulus::beta_min(0.5)?, |t| {
            t.powi(-2) * (1.0 + 2.0 * t.ln())
        }),
        ("min coordinate", Modulus::min_abs(), |t| t.powi(-2)),
    ];
    let levels = [5.0, 10.0, 20.0];
    // Surface sampler/modulus errors once, then stream with expect.
    let x0 = element_at(&gen, seed, 0)?;
    for (_, m, _) in &moduli {
        m.eval(&x0)?;
    }
    // One parallel pass; u64 event counts are split-invariant.
    let counts = (0..N)
        .into_par_iter()
        .fold(
            || [0u64; 15],
            |mut acc, i| {
                let x = element_at(&gen, seed, i).expect("checked on first sample");
                for (j, (_, m, _)) in moduli.iter().enumerate() {
                    let v = m.eval(&x).expect("checked on first sample");
                    for (l, &t) in levels.iter().enumerate() {
                        if v > t {
                            acc[3 * j + l] += 1;
                        }
                    }
                }
                acc
            },
        )
        .reduce(
            || [0u64; 15],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let mut checks = Vec::new();
    for (j, (name, _, law)) in moduli.iter().enumerate() {
        for (l, &t) in levels.iter().enumerate() {
            let p_hat = counts[3 * j + l] as f64 / N as f64;
            let p = law(t);
            checks.push(close(
                format!("exceedance probability of {name} at t = {t}"),
                p_hat,
                p,
                binom_tol(p, N as f64),
            ));
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Criterion 2: the ladder of moduli on the same pair exposes the hidden
// indices {1, 4/3, 2, 2} within ±7% and flags the logarithmic correction of
// the geometric mean.
// ---------------------------------------------------------------------------
fn criterion_2() -> Result<Vec<Check>> {
    const N: u64 = 10_000_000;
    let k = (N as f64).powf(0.7).floor() as usize;
    let gen = GeneratorSpec::ParetoPairIid;
    let ladder = vec![
        Modulus::max_abs(),
        Modulus::beta_star(0.25)?,
        Modulus::beta_min(0.25)?,
        Modulus::min_abs(),
        Modulus::beta_min(0.5)?,
    ];
    let rungs = hidden_rv_ladder(
        N,
        &|i| element_at(&gen, 102, i).expect("pair sampler is total"),
        &ladder,
        Some(k),
    )?;
    let names = ["max coordinate", "geometric-max 1/4", "geometric-min 1/4", "min coordinate"];
    let targets = [1.0, 4.0 / 3.0, 2.0, 2.0];
    let mut checks = Vec::new();
    for ((rung, name), target) in rungs.iter().zip(names).zip(targets) {
        let ratio = rung.alpha_hat / target;
        checks.push(flag(
            format!(
                "{name}: index {:.4} vs target {:.4}, ratio {ratio:.4} in [0.93, 1.07]",
                rung.alpha_hat, target
            ),
            (0.93..=1.07).contains(&ratio),
        ));
    }
    checks.push(flag(
        format!(
            "geometric-min 1/2 carries a slowly varying correction (z = {:.1})",
            rungs[4].log_correction_z
        ),
        rungs[4].log_correction,
    ));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Criteria 3 and 4: block maxima of standard Pareto draws, transported by
// the family's scaling action, match the three classical limit laws at
// their default probe points within four binomial standard errors.
// ---------------------------------------------------------------------------
fn criterion_3() -> Result<Vec<Check>> {
    let gen = GeneratorSpec::Pareto { alpha: 1.0 };
    let report = mda_check(&gen, &MdaSpec::frechet(1.0), &[10_000], 100_000, 103)?;
    Ok(verdict_checks("", &report.verdicts))
}

fn criterion_4() -> Result<Vec<Check>> {
    let gen = GeneratorSpec::Pareto { alpha: 1.0 };
    let mut checks = Vec::new();
    let weibull = mda_check(&gen, &MdaSpec::weibull(1.0, 2.0), &[10_000], 100_000, 104)?;
    checks.extend(verdict_checks("reciprocal transport: ", &weibull.verdicts));
    let gumbel = mda_check(&gen, &MdaSpec::gumbel(1.0), &[10_000], 100_000, 1040)?;
    checks.extend(verdict_checks("logarithmic transport: ", &gumbel.verdicts));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Criterion 5: the scaled sample cloud looks Poisson — void probabilities
// match exp(−1/s) within four standard errors and the count law on (1, ∞)
// is within total-variation 0.01 of Poisson(1).
// ---------------------------------------------------------------------------
fn criterion_5() -> Result<Vec<Check>> {
    let gen = GeneratorSpec::Pareto { alpha: 1.0 };
    let mut checks = Vec::new();
    let void = void_probability_check(
        &gen,
        &[0.5, 1.0, 2.0],
        &[10_000],
        &NormingRule::ParetoClosedForm,
        100_000,
        105,
    )?;
    checks.extend(verdict_checks("", &void.verdicts));
    let counts = poisson_limit_counts(
        &gen,
        &[(1.0, f64::INFINITY)],
        10_000,
        &NormingRule::ParetoClosedForm,
        100_000,
        1050,
    )?;
    let row = &counts.rows[0];
    checks.push(close("limit intensity of the ray (1, ∞)", row.mu, 1.0, 1e-12));
    checks.push(close(
        "total-variation distance of the count law to Poisson(1) on {0..10}",
        row.tv_distance,
        0.0,
        0.01,
    ));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Criterion 6: products of a heavy factor with a light one keep the heavy
// index and gain the light factor's moment as a constant; a power of the
// heavy factor times a random-walk covariate has index α/(γ + ½) = 2/3.
// ---------------------------------------------------------------------------
fn criterion_6() -> Result<Vec<Check>> {
    const N: u64 = 10_000_000;
    let mut checks = Vec::new();
    let uniform = CovariateFamily::IndependentUniform { lo: 1.0, hi: 2.0 };
    let product = breiman_verify(1.0, &uniform, 1.0, &[20.0, 50.0], N, 0.5, 106)?;
    for row in &product.rows {
        // E[U] = 3/2 for U uniform on [1, 2]; t·P{ξU > t} is exact for t ≥ 2.
        checks.push(close(
            format!("normalized product tail t·P(ξ·U > t) at t = {}", row.t),
            row.estimate,
            1.5,
            4.0 * row.stderr,
        ));
    }
    let clt = breiman_verify(1.0, &CovariateFamily::CltSum, 1.5, &[20.0, 50.0], N, 0.5, 1060)?;
    let target = 2.0 / 3.0;
    checks.push(close(
        "tail index of powered-heavy × random-walk products",
        clt.index_estimate.alpha_hat,
        target,
        0.07 * target,
    ));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Criterion 7: polar estimation on a synthetic two-atom law recovers the
// spectral weights above the 0.999 empirical quantile and the radial index.
// ---------------------------------------------------------------------------
fn criterion_7() -> Result<Vec<Check>> {
    const N: usize = 1_000_000;
    let tau = Modulus::norm(2.0)?;
    let mu = TailMeasure::new(
        1.5,
        vec![
            SpectralAtom { location: Element::vector(vec![1.0, 0.0]), weight: 0.3 },
            SpectralAtom { location: Element::vector(vec![0.0, 1.0]), weight: 0.7 },
        ],
        tau.clone(),
    )?;
    let gen = GeneratorSpec::SpectralRv { tail: mu };
    let samples = sample(&gen, 107, N)?;
    let mut radii = Vec::with_capacity(N);
    for x in &samples {
        radii.push(tau.eval(x)?);
    }
    // The 0.999 empirical quantile as spectral threshold.
    let cut = N - N / 1000;
    let mut sorted = radii.clone();
    sorted.select_nth_unstable_by(cut, f64::total_cmp);
    let threshold = sorted[cut];
    let n_exc = radii.iter().filter(|&&r| r > threshold).count() as f64;

    let spectral = empirical_spectral(&samples, &tau, threshold)?;
    let mut checks = Vec::new();
    checks.push(flag(
        format!("exactly two empirical directions ({} found)", spectral.atoms.len()),
        spectral.atoms.len() == 2,
    ));
    let (mut w_first, mut w_second) = (0.0, 0.0);
    for atom in &spectral.atoms {
        let c = atom.location.as_vector()?;
        if c[0] > 0.5 {
            w_first += atom.weight;
        } else if c[1] > 0.5 {
            w_second += atom.weight;
        }
    }
    checks.push(close("spectral weight of the first axis", w_first, 0.3, binom_tol(0.3, n_exc)));
    checks.push(close("spectral weight of the second axis", w_second, 0.7, binom_tol(0.7, n_exc)));
    let est = estimate_tail_index(&radii, default_k(N))?;
    checks.push(close("tail index of the radii", est.alpha_hat, 1.5, 4.0 * est.stderr));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Criterion 8: re-expressing a tail measure on the transversal of a second
// homogeneous functional preserves sector masses — exactly in the algebra,
// and against a conditioned Monte-Carlo estimate.
// ---------------------------------------------------------------------------
fn criterion_8() -> Result<Vec<Check>> {
    let alpha = 1.5;
    let mut r = Rng::at(108, rng::STREAM_AUX, 0);
    let mut atoms = Vec::new();
    for _ in 0..3 {
        let theta = r.uniform(0.1, 1.47);
        atoms.push(SpectralAtom {
            location: Element::vector(vec![theta.cos(), theta.sin()]),
            weight: r.uniform(0.2, 2.0),
        });
    }
    let ell = Modulus::weighted_abs_sum(vec![r.uniform(0.3, 1.7), r.uniform(0.3, 1.7)])?;
    let mu = TailMeasure::new(alpha, atoms.clone(), Modulus::norm(2.0)?)?;

    // Direct evaluation of the mass of {ℓ > 1}: Σ w_i · ℓ(u_i)^α.
    let mut direct = 0.0;
    for atom in &atoms {
        direct += atom.weight * ell.eval(&atom.location)?.powf(alpha);
    }
    let changed = change_modulus(&mu, &ell)?;
    let mass = sector_mass(&changed, &|_| true, 1.0, f64::INFINITY)?;
    let mut checks = Vec::new();
    checks.push(close(
        "sector mass of {ℓ > 1} after change of modulus",
        mass,
        direct,
        1e-12 * (1.0 + direct.abs()),
    ));

    // Monte Carlo: the same mass from samples of the synthetic law. At
    // t = 50 ≥ max_i ℓ(u_i) the normalized exceedance probability is exact
    // in expectation, so four standard errors is a clean band.
    let w_total = mu.total_spectral_mass();
    let gen = GeneratorSpec::SpectralRv { tail: mu };
    let t = 50.0;
    let est = empirical_tail_mass(
        2_000_000,
        &|i| element_at(&gen, 1080, i).expect("synthetic sampler is total"),
        &ScalingSpec::Linear,
        &|y| ell.eval(y).map(|v| v > 1.0).unwrap_or(false),
        t,
        w_total * t.powf(alpha),
    )?;
    checks.push(close(
        "Monte-Carlo mass of {ℓ > 1} at level t = 50",
        est.value,
        direct,
        4.0 * est.stderr,
    ));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Criterion 9: the measure assembled from the two marginal tail measures of
// an independent pair prices rectangles like the empirical tail measure.
// ---------------------------------------------------------------------------
fn criterion_9() -> Result<Vec<Check>> {
    let part = |axis: usize| -> Result<TailMeasure> {
        let mut e = vec![0.0, 0.0];
        e[axis] = 1.0;
        TailMeasure::new(
            1.0,
            vec![SpectralAtom { location: Element::vector(e), weight: 1.0 }],
            Modulus::coord_abs(axis),
        )
    };
    let assembled = assemble_from_marginals(&[part(0)?, part(1)?], 1.0)?;
    let mut checks = Vec::new();
    checks.push(close("total mass above the unit cut", assembled.total_mass(), 2.0, 1e-12));

    const INF: f64 = f64::INFINITY;
    // Rectangles whose radial extent stays above the cut level 1, so the
    // assembled measure and the full tail measure agree on them.
    let boxes: [([f64; 2], [f64; 2]); 8] = [
        ([1.5, -1.2], [3.0, 1.2]),
        ([2.0, -1.2], [INF, 1.2]),
        ([-1.2, 1.25], [1.2, 2.5]),
        ([-1.2, 3.0], [1.2, INF]),
        ([1.0, -1.5], [2.0, 1.5]),
        ([-1.5, 1.0], [1.5, 4.0]),
        ([1.2, -2.0], [INF, 2.0]),
        ([-2.0, 2.5], [2.0, INF]),
    ];
    let gen = GeneratorSpec::ParetoPairIid;
    let t = 200.0;
    for (lo, hi) in boxes.iter() {
        let target = assembled.mass_box(lo, hi)?;
        let in_box = |y: &Element| {
            let c = y.as_vector().expect("pair samples are vectors");
            (0..2).all(|j| lo[j] <= c[j] && c[j] < hi[j])
        };
        let est = empirical_tail_mass(
            4_000_000,
            &|i| element_at(&gen, 109, i).expect("pair sampler is total"),
            &ScalingSpec::Linear,
            &in_box,
            t,
            t,
        )?;
        checks.push(close(
            format!(
                "rectangle [{}, {}) × [{}, {})",
                lo[0], hi[0], lo[1], hi[1]
            ),
            est.value,
            target,
            4.0 * est.stderr,
        ));
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Criterion 10: conditional exceedance ratios of the gated functional
// |x_1|·1{x_2 = 0} stabilize at a^{−2}, the law of its hidden index.
// ---------------------------------------------------------------------------
fn criterion_10() -> Result<Vec<Check>> {
    const N: u64 = 10_000_000;
    let gen = GeneratorSpec::SqrtMixturePair;
    let ell = Modulus::gated_coord_abs(0, 1);
    let t = 5.0;
    ell.eval(&element_at(&gen, 110, 0)?)?;
    let counts = (0..N)
        .into_par_iter()
        .fold(
            || [0u64; 3],
            |mut acc, i| {
                let x = element_at(&gen, 110, i).expect("checked on first sample");
                let v = ell.eval(&x).expect("checked on first sample");
                for (j, mult) in [1.0, 2.0, 4.0].iter().enumerate() {
                    if v > mult * t {
                        acc[j] += 1;
                    }
                }
                acc
            },
        )
        .reduce(
            || [0u64; 3],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let n_t = counts[0] as f64;
    let mut checks = Vec::new();
    checks.push(flag(
        format!("enough exceedances at t = {t} ({} seen)", counts[0]),
        counts[0] > 10_000,
    ));
    for (j, a) in [2.0f64, 4.0].iter().enumerate() {
        let ratio = counts[j + 1] as f64 / n_t;
        let target = a.powi(-2);
        let se = (target * (1.0 - target) / n_t).sqrt();
        checks.push(close(
            format!("conditional ratio P(ℓ > {a}t | ℓ > t)"),
            ratio,
            target,
            4.0 * se,
        ));
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Criterion 11: algebraic property suites — group laws, homogeneity, polar
// round-trips, scale-free estimation, geometric containment, exact support
// scaling, and worker-count determinism — with zero failures.
// ---------------------------------------------------------------------------
fn criterion_11() -> Result<Vec<Check>> {
    Ok(vec![
        suite_group_laws()?,
        suite_homogeneity()?,
        suite_polar_round_trip()?,
        suite_hill_scale_free()?,
        suite_steiner_containment()?,
        suite_support_scaling()?,
        suite_worker_determinism()?,
    ])
}

fn test_elements() -> Result<(Element, Element, Element, Element, Element)> {
    let vec2 = Element::vector(vec![1.5, -2.25]);
    let seq = Element::sequence(vec![1.0, -3.5, 0.75]);
    let gf = Element::grid_function(0.0, 1.0, vec![0.5, 2.0, -1.0, 0.25, 1.25])?;
    let pc = Element::point_config(vec![
        SupportPoint { coords: vec![1.5, 0.5], multiplicity: 1 },
        SupportPoint { coords: vec![2.5, -1.0], multiplicity: 2 },
        SupportPoint { coords: vec![0.25, 0.25], multiplicity: 1 },
    ])?;
    let poly = Element::polytope(vec![[1.0, 1.0], [3.0, 1.0], [2.0, 2.5]])?;
    Ok((vec2, seq, gf, pc, poly))
}

fn suite_group_laws() -> Result<Check> {
    let (vec2, seq, gf, pc, poly) = test_elements()?;
    let cases: Vec<(ScalingSpec, Element)> = vec![
        (ScalingSpec::Linear, vec2.clone()),
        (ScalingSpec::Linear, seq),
        (ScalingSpec::PowerWeights { exponents: vec![1.0, 2.0] }, vec2.clone()),
        (ScalingSpec::InverseLinear, vec2.clone()),
        (ScalingSpec::ComponentSubset { indices: vec![0] }, vec2.clone()),
        (ScalingSpec::LogShift, vec2.clone()),
        (ScalingSpec::LogShift, gf.clone()),
        (ScalingSpec::AffineInverse { anchor: 2.0 }, vec2.clone()),
        (ScalingSpec::FunctionValues, gf),
        (ScalingSpec::uplifted(ScalingSpec::Linear), pc),
        (ScalingSpec::SetLinear, poly),
        (ScalingSpec::MinShift, vec2),
    ];
    let mut total = 0usize;
    let mut violations = 0usize;
    for (s, x) in &cases {
        total += 1;
        if &apply_scaling(s, 1.0, x)? != x {
            violations += 1; // T_1 must be the identity, bitwise
        }
        for &(t, u) in &[(1.7, 0.4), (3.0, 8.0), (0.25, 0.5)] {
            total += 3;
            let composed = apply_scaling(s, t, &apply_scaling(s, u, x)?)?;
            let direct = apply_scaling(s, t * u, x)?;
            if !close_elements(&composed, &direct, 1e-12) {
                violations += 1;
            }
            let round_trip = invert_scaling(s, t, &apply_scaling(s, t, x)?)?;
            if !close_elements(&round_trip, x, 1e-12) {
                violations += 1;
            }
            if invert_scaling(s, t, x)? != apply_scaling(s, 1.0 / t, x)? {
                violations += 1; // inversion is exactly T_{1/t}
            }
        }
    }
    Ok(flag(
        format!("scaling group laws: {total} identities over {} actions, {violations} violations", cases.len()),
        violations == 0,
    ))
}

fn suite_homogeneity() -> Result<Check> {
    let (vec2, _, gf, pc, poly) = test_elements()?;
    let gated = Element::vector(vec![3.5, 0.0]);
    let cases: Vec<(Modulus, Element)> = vec![
        (Modulus::norm(2.0)?, vec2.clone()),
        (Modulus::norm(1.0)?, vec2.clone()),
        (Modulus::max_abs(), vec2.clone()),
        (Modulus::min_abs(), vec2.clone()),
        (Modulus::coord_abs(1), vec2.clone()),
        (Modulus::beta_star(0.25)?, vec2.clone()),
        (Modulus::beta_min(0.4)?, vec2.clone()),
        (Modulus::weighted_abs_sum(vec![0.5, 1.5])?, vec2.clone()),
        (Modulus::gated_coord_abs(0, 1), gated),
        (Modulus::sup_abs(), gf.clone()),
        (Modulus::inf_abs(), gf.clone()),
        (Modulus::value_at(0.5), gf.clone()),
        (Modulus::oscillation(0.25)?, gf.clone()),
        (Modulus::quotient_range(), gf),
        (Modulus::kth_largest_point(2, Modulus::norm(2.0)?)?, pc),
        (Modulus::set_sup(), poly.clone()),
        (Modulus::set_inf(), poly.clone()),
        (Modulus::inscribed_radius(), poly.clone()),
        (Modulus::intrinsic_volume_root(2)?, poly.clone()),
        (Modulus::mean_width(), poly),
        (
            Modulus::max_of(vec![Modulus::coord_abs(0), Modulus::scaled(2.0, Modulus::coord_abs(1))?])?,
            vec2.clone(),
        ),
        (Modulus::min_of(vec![Modulus::norm(2.0)?, Modulus::max_abs()])?, vec2),
    ];
    let mut total = 0usize;
    let mut violations = 0usize;
    for (m, x) in &cases {
        let base = m.eval(x)?;
        for &c in &[0.5, 3.0, 2048.0] {
            total += 1;
            let scaled = m.eval(&apply_scaling(&m.scaling, c, x)?)?;
            if (scaled - c * base).abs() > 1e-12 * (1.0 + c * base.abs()) {
                violations += 1;
            }
        }
    }
    Ok(flag(
        format!(
            "degree-one homogeneity: {total} evaluations over {} moduli, {violations} violations",
            cases.len()
        ),
        violations == 0,
    ))
}

fn suite_polar_round_trip() -> Result<Check> {
    let (_, _, gf, _, poly) = test_elements()?;
    let cases: Vec<(Modulus, Element)> = vec![
        (Modulus::norm(2.0)?, Element::vector(vec![3.0, -4.0])),
        (Modulus::max_abs(), Element::vector(vec![1.5, -2.25])),
        (Modulus::sup_abs(), gf),
        (Modulus::set_sup(), poly),
    ];
    let mut total = 0usize;
    let mut violations = 0usize;
    for (m, x) in &cases {
        total += 3;
        let polar = polar_decompose(m, x)?;
        if (polar.radius - m.eval(x)?).abs() > 1e-12 * (1.0 + polar.radius) {
            violations += 1;
        }
        if (m.eval(&polar.direction)? - 1.0).abs() > 1e-12 {
            violations += 1;
        }
        let back = apply_scaling(&m.scaling, polar.radius, &polar.direction)?;
        if !close_elements(&back, x, 1e-12) {
            violations += 1;
        }
    }
    Ok(flag(
        format!("polar decomposition round-trips: {total} identities, {violations} violations"),
        violations == 0,
    ))
}

fn suite_hill_scale_free() -> Result<Check> {
    let n = 50_000;
    let radii: Vec<f64> = (0..n).map(|i| pareto_at(1.3, 7, i)).collect();
    let rescaled: Vec<f64> = radii.iter().map(|r| r * 1024.0).collect();
    let a = estimate_tail_index(&radii, default_k(n as usize))?;
    let b = estimate_tail_index(&rescaled, default_k(n as usize))?;
    Ok(flag(
        format!(
            "tail-index estimate is scale-free bitwise: {} vs {} after ×1024",
            a.alpha_hat, b.alpha_hat
        ),
        a.alpha_hat == b.alpha_hat && a.stderr == b.stderr && a.k == b.k,
    ))
}

fn suite_steiner_containment() -> Result<Check> {
    const N: u64 = 10_000;
    let gen = GeneratorSpec::ConvexHullOfPoints { m: 6, alpha: 1.0 };
    let mut violations = 0usize;
    for i in 0..N {
        let x = element_at(&gen, 111, i)?;
        let Element::Polytope { vertices } = &x else {
            violations += 1;
            continue;
        };
        let sp = geometry::steiner_point(vertices);
        let scale =
            vertices.iter().flat_map(|v| v.iter()).fold(0.0f64, |a, &c| a.max(c.abs()));
        if !geometry::contains(vertices, sp, 1e-9 * (1.0 + scale)) {
            violations += 1;
        }
    }
    Ok(flag(
        format!("exact Steiner point lies inside each of {N} random hulls, {violations} violations"),
        violations == 0,
    ))
}

fn suite_support_scaling() -> Result<Check> {
    let poly = Element::polytope(vec![[1.0, 0.5], [3.0, 1.0], [2.0, 2.5], [0.5, 2.0]])?;
    let Element::Polytope { vertices } = &poly else { unreachable!() };
    let dirs: Vec<[f64; 2]> = (0..16)
        .map(|k| {
            let phi = std::f64::consts::PI * k as f64 / 8.0;
            [phi.cos(), phi.sin()]
        })
        .collect();
    let mut total = 0usize;
    let mut violations = 0usize;
    // Powers of two scale every intermediate product and sum exactly, so
    // support values must match bitwise.
    for &t in &[0.5, 2.0, 8.0] {
        let scaled = apply_scaling(&ScalingSpec::SetLinear, t, &poly)?;
        let Element::Polytope { vertices: sv } = &scaled else { unreachable!() };
        for d in &dirs {
            total += 1;
            if geometry::support(sv, *d) != t * geometry::support(vertices, *d) {
                violations += 1;
            }
        }
    }
    Ok(flag(
        format!("support function scales exactly: {total} direction×scale pairs, {violations} violations"),
        violations == 0,
    ))
}

fn suite_worker_determinism() -> Result<Check> {
    let gens = [
        GeneratorSpec::ParetoPairIid,
        GeneratorSpec::StationaryArLike { len: 33, ar: ArKind::Armax { phi: 0.5 } },
    ];
    let n = 200_000;
    let sum_baseline = rng::chunked_sum(1_000_000, |i| pareto_at(2.0, 77, i).min(1e6));
    let mut violations = 0usize;
    let mut total = 0usize;
    for gen in &gens {
        let baseline = sample(gen, 31, n)?;
        for threads in [1usize, 2, 8] {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .expect("worker pool builds");
            let (v, s) = pool.install(|| -> Result<(Vec<Element>, f64)> {
                let v = sample(gen, 31, n)?;
                let s = rng::chunked_sum(1_000_000, |i| pareto_at(2.0, 77, i).min(1e6));
                Ok((v, s))
            })?;
            total += 2;
            if v != baseline {
                violations += 1;
            }
            if s != sum_baseline {
                violations += 1;
            }
        }
    }
    Ok(flag(
        format!(
            "samples and parallel reductions are bitwise stable across 1/2/8 workers: \
             {total} comparisons, {violations} violations"
        ),
        violations == 0,
    ))
}

// ---------------------------------------------------------------------------

fn main() -> ExitCode {
    type Criterion = fn() -> Result<Vec<Check>>;
    let criteria: Vec<(u32, &str, Criterion, Option<f64>)> = vec![
        (1, "closed-form exceedance laws of the planar modulus family", criterion_1, Some(60.0)),
        (2, "hidden-index ladder finds {1, 4/3, 2, 2} and flags the log factor", criterion_2, Some(90.0)),
        (3, "power-normed block maxima match the inverse-exponential limit", criterion_3, Some(60.0)),
        (4, "endpoint and logarithmic transports match their limit laws", criterion_4, None),
        (5, "void probabilities and the Poisson count law of the scaled cloud", criterion_5, None),
        (6, "product tails keep the predicted constant and index", criterion_6, None),
        (7, "spectral weights and radial index recovered from polar samples", criterion_7, None),
        (8, "change of modulus preserves sector mass, exactly and by sampling", criterion_8, None),
        (9, "measure assembled from marginals prices rectangles correctly", criterion_9, None),
        (10, "conditional exceedance ratios stabilize on the gated subcone", criterion_10, None),
        (11, "algebraic property suites run with zero failures", criterion_11, None),
    ];
    let started = Instant::now();
    let mut all_pass = true;
    for (num, what, criterion, budget) in criteria {
        let t0 = Instant::now();
        let mut checks = match criterion() {
            Ok(checks) => checks,
            Err(e) => vec![flag(format!("criterion aborted: {e}"), false)],
        };
        let secs = t0.elapsed().as_secs_f64();
        if let Some(limit) = budget {
            checks.push(flag(
                format!("completed in {secs:.1}s (budget {limit:.0}s)"),
                secs < limit,
            ));
        }
        let pass = checks.iter().all(|c| c.pass);
        all_pass &= pass;
        let label = if pass { "PASS" } else { "FAIL" };
        println!("[criterion {num:2}] {label} — {what} ({} checks, {secs:.1}s)", checks.len());
        for c in checks.iter().filter(|c| !c.pass) {
            println!("               failed: {}", c.what);
        }
    }
    println!("acceptance suite finished in {:.1}s", started.elapsed().as_secs_f64());
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

//! Conditional limits along a discontinuous functional.
//!
//! Conditioning on `ℓ(ξ) > t` and rescaling by `T_{1/t}` produces a limit
//! law that depends on ℓ — and ℓ need not be continuous. The gated
//! functional `ℓ(x) = |x_1|·1{x_2 = 0}` only sees the part of the sample
//! space where the second coordinate vanishes; on a mixture that places a
//! square-root-thinned branch there, the conditional law stabilizes to the
//! index-2 tail of that branch (ratios a^{-2}), not the index-1 tail of
//! the full vector.
//!
//! Run with: `cargo run --example conditional_limits`

use rvlab::estimators::{conditional_limit_test, Probe};
use rvlab::samplers::element_at;
use rvlab::{GeneratorSpec, Modulus, Result};

fn main() -> Result<()> {
    let gen = GeneratorSpec::SqrtMixturePair;
    let ell = Modulus::gated_coord_abs(0, 1);

    // Probes: after rescaling by 1/t, ask how often the first coordinate
    // still exceeds a = 2 and a = 4. The limit is a^{-2}.
    let probes = vec![
        Probe::above(Modulus::coord_abs(0), 2.0),
        Probe::above(Modulus::coord_abs(0), 4.0),
    ];
    let table = conditional_limit_test(
        4_000_000,
        &|i| element_at(&gen, 17, i).expect("mixture sampler is total"),
        &ell,
        &[5.0, 10.0, 20.0],
        &probes,
    )?;

    println!("conditional law of T_(1/t) xi given l(xi) > t:");
    println!("  probe labels: {:?}", table.probe_labels);
    for row in &table.rows {
        println!(
            "  t = {:>4}: {} exceedances, probabilities {:?}",
            row.t,
            row.n_exceedances,
            row.probs.iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>()
        );
    }
    println!("  limits: a = 2 -> {:.4}, a = 4 -> {:.4}", 0.25, 0.0625);
    println!(
        "  sup difference between consecutive levels: {:?}",
        table
            .sup_consecutive_diffs
            .iter()
            .map(|d| format!("{d:.4}"))
            .collect::<Vec<_>>()
    );
    Ok(())
}

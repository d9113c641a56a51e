//! The tail process of a stationary heavy-tailed sequence.
//!
//! Conditioning a stationary sequence on a large value at time 0 and
//! rescaling the whole window by that level yields the tail process: the
//! canonical description of how extremes cluster in time. For a max-moving
//! sequence `x_i = max(η_i, φ·η_{i-1})` the forward spectral tail process
//! is deterministic: the next value is exactly φ times the current one.
//!
//! Run with: `cargo run --example tail_process`

use rvlab::estimators::tail_process_estimate;
use rvlab::samplers::{sample, ArKind};
use rvlab::{GeneratorSpec, Result};

fn main() -> Result<()> {
    let phi = 0.5;
    let gen = GeneratorSpec::StationaryArLike { len: 33, ar: ArKind::Armax { phi } };
    let windows = sample(&gen, 23, 300_000)?;

    let lags = [-2i64, -1, 0, 1, 2];
    let probes = [0.4, 0.6];
    let table = tail_process_estimate(&windows, &[20.0, 50.0], &lags, &probes)?;

    println!("P(|x_h| > s t | |x_0| > t) for a max-moving sequence, phi = {phi}:");
    println!("(forward limit: 1 if s < phi^h, else 0; backward limit: phi^{{-h}} s^{{-1}} capped at 1)");
    for (li, (&t, &count)) in table.t_levels.iter().zip(&table.counts).enumerate() {
        println!("  level t = {t} ({count} exceedances):");
        for (hi, &h) in table.lags.iter().enumerate() {
            let row: Vec<String> = table.probes
                .iter()
                .enumerate()
                .map(|(si, &s)| format!("s={s}: {:.3}", table.values[li][hi][si]))
                .collect();
            println!("    lag {h:+}: {}", row.join("  "));
        }
    }
    Ok(())
}

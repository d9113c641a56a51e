//! Point-process limits of scaled sample clouds.
//!
//! Scaling n independent heavy-tailed draws by `a_n` turns the cloud into
//! (approximately) a Poisson process with intensity `α s^{-α-1} ds`: void
//! probabilities of rays converge to `exp(-s^{-α})`, counts on disjoint
//! radial sets become independent Poissons, and on the event that exactly
//! one point of a finite process lands in a distant set, that point
//! reproduces the single-point tail measure.
//!
//! Run with: `cargo run --example point_process_limits`

use rvlab::limits::{janossy_rv_check, poisson_limit_counts, void_probability_check};
use rvlab::{GeneratorSpec, NormingRule, Result};

fn main() -> Result<()> {
    let gen = GeneratorSpec::Pareto { alpha: 1.0 };
    let norming = NormingRule::ParetoClosedForm;

    // Void probabilities: P{no scaled point above s} -> exp(-1/s).
    let void = void_probability_check(&gen, &[0.5, 1.0, 2.0], &[4096], &norming, 30_000, 31)?;
    println!("void probabilities of (s, oo), block size 4096:");
    for row in &void.rows {
        println!(
            "  s = {:>3.1}: empirical {:.4}, limit {:.4}, se {:.4}",
            row.s, row.empirical, row.target, row.stderr
        );
    }

    // Count laws on disjoint radial sets, with their covariance.
    let counts = poisson_limit_counts(
        &gen,
        &[(1.0, f64::INFINITY), (0.5, 1.0)],
        4096,
        &norming,
        30_000,
        32,
    )?;
    println!("\ncount laws of the scaled cloud (limit: independent Poissons):");
    for row in &counts.rows {
        println!(
            "  set ({}, {}]: intensity {:.3}, mean count {:.3}, TV distance to Poisson {:.4}",
            row.lo, row.hi, row.mu, row.mean_count, row.tv_distance
        );
    }
    for (i, j, cov) in &counts.covariances {
        if i < j {
            println!("  covariance of counts on sets {i} and {j}: {cov:+.4} (want ~ 0)");
        }
    }

    // Single-point behaviour of a finite process: three independent
    // Pareto points, base set (1, oo) pushed out by t.
    let pp = GeneratorSpec::BinomialPp {
        m: 3,
        point: Box::new(GeneratorSpec::Pareto { alpha: 1.0 }),
    };
    let janossy = janossy_rv_check(&pp, 1.0, &[1.0, 2.0], &[10.0, 100.0], 40_000, 33)?;
    println!("\nsingle-point tail of a 3-point binomial process:");
    for row in &janossy.rows {
        println!(
            "  t = {:>5}: P(exactly one point > t) = {:.5}, t x P(two or more) = {:.4}",
            row.t, row.single_prob, row.two_point
        );
        for cell in &row.cells {
            println!(
                "    probe a = {}: normalized single-point mass {:.3} (want {:.3})",
                cell.a, cell.estimate, cell.target
            );
        }
    }
    println!(
        "  regular variation verdict: {}",
        if janossy.rv_verdict { "pass" } else { "fail" }
    );
    Ok(())
}

//! Product tails: a heavy factor times a light one.
//!
//! If `ξ` is Pareto(α) and `η` has a finite moment slightly beyond α, the
//! product `ξ·|η|` keeps index α and gains the constant `E|W|^α`, where `W`
//! is the large-`ξ` limit of the light factor:
//! `t^α · P{ξ^p |η_ξ| > t} -> E|W|^{α/p}`.
//!
//! Two light families: an independent uniform factor (so `W` is the
//! uniform itself), and a rescaled random walk evaluated at the heavy
//! time, whose limit is a standard normal — there the power `p` makes the
//! product index a non-obvious `α/p`.
//!
//! Run with: `cargo run --example product_tails`

use rvlab::limits::breiman_verify;
use rvlab::{CovariateFamily, Result};

fn main() -> Result<()> {
    let n = 2_000_000;

    // xi * U with U uniform on [1, 2]: index stays 1, constant E[U] = 1.5.
    let uniform = CovariateFamily::IndependentUniform { lo: 1.0, hi: 2.0 };
    let report = breiman_verify(1.0, &uniform, 1.0, &[20.0, 50.0], n, 0.5, 61)?;
    println!("xi * U, U ~ uniform[1, 2] (limit constant E[U] = 1.5):");
    for row in &report.rows {
        println!(
            "  t = {:>3}: t P(xi U > t) = {:.4} ± {:.4} (direct constant {:.4})",
            row.t, row.estimate, row.stderr, report.target_constant
        );
    }
    println!(
        "  index of the products: {:.4} ± {:.4} (want {:.4})",
        report.index_estimate.alpha_hat, report.index_estimate.stderr, report.product_index
    );

    // xi^{3/2} * |S_xi / sqrt(xi)| with S a Rademacher walk: the light
    // factor tends to N(0, 1), and the product has index 1/(3/2) = 2/3.
    let clt = breiman_verify(1.0, &CovariateFamily::CltSum, 1.5, &[20.0, 50.0], n, 0.5, 62)?;
    println!("\nxi^1.5 * |walk|, walk -> N(0,1) (product index 2/3 = {:.4}):", 2.0 / 3.0);
    for row in &clt.rows {
        println!(
            "  t = {:>3}: t^(2/3) P(Y > t) = {:.4} ± {:.4} (direct constant E|N|^(2/3) = {:.4})",
            row.t, row.estimate, row.stderr, clt.target_constant
        );
    }
    println!(
        "  index of the products: {:.4} ± {:.4}",
        clt.index_estimate.alpha_hat, clt.index_estimate.stderr
    );
    if let Some(warning) = &clt.moment_warning {
        println!("  moment guardrail: {warning}");
    }
    for (x, moment) in &clt.moment_probes {
        println!("  E|eta_x|^(alpha/p + delta) at x = {x}: {moment:.4}");
    }
    Ok(())
}

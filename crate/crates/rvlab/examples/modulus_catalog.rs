//! The modulus catalogue: 1-homogeneous functionals that measure how large
//! an element is, each paired with the scaling action it is homogeneous
//! under.
//!
//! A modulus `τ` satisfies `τ(T_c x) = c·τ(x)`; its unit level set is the
//! transversal that spectral measures live on. This example evaluates the
//! catalogue on representative elements, verifies homogeneity at a few
//! scales, and shows the combinators (max, min, rescaling) and the gated
//! functional that vanishes off a subcone.
//!
//! Run with: `cargo run --example modulus_catalog`

use rvlab::element::SupportPoint;
use rvlab::scaling::apply_scaling;
use rvlab::{Element, Modulus, Result};

fn main() -> Result<()> {
    let vector = Element::vector(vec![3.0, -4.0]);
    let grid = Element::grid_function(0.0, 1.0, vec![0.5, 2.0, -1.0, 0.25, 1.25])?;
    let cloud = Element::point_config(vec![
        SupportPoint { coords: vec![1.5, 0.5], multiplicity: 1 },
        SupportPoint { coords: vec![2.5, -1.0], multiplicity: 2 },
        SupportPoint { coords: vec![0.25, 0.25], multiplicity: 1 },
    ])?;
    let body = Element::polytope(vec![[1.0, 1.0], [3.0, 1.0], [2.0, 2.5]])?;

    let catalog: Vec<(&str, Modulus, &Element)> = vec![
        ("euclidean norm", Modulus::norm(2.0)?, &vector),
        ("sum norm", Modulus::norm(1.0)?, &vector),
        ("max coordinate", Modulus::max_abs(), &vector),
        ("min coordinate", Modulus::min_abs(), &vector),
        ("second coordinate", Modulus::coord_abs(1), &vector),
        ("geometric max 1/4", Modulus::beta_star(0.25)?, &vector),
        ("geometric min 1/4", Modulus::beta_min(0.25)?, &vector),
        ("weighted sum (0.5, 1.5)", Modulus::weighted_abs_sum(vec![0.5, 1.5])?, &vector),
        ("sup of the path", Modulus::sup_abs(), &grid),
        ("inf of the path", Modulus::inf_abs(), &grid),
        ("value at u = 0.5", Modulus::value_at(0.5), &grid),
        ("oscillation in windows 0.25", Modulus::oscillation(0.25)?, &grid),
        ("half range (mod constants)", Modulus::quotient_range(), &grid),
        ("2nd largest point norm", Modulus::kth_largest_point(2, Modulus::norm(2.0)?)?, &cloud),
        ("sup distance of the body", Modulus::set_sup(), &body),
        ("inf distance of the body", Modulus::set_inf(), &body),
        ("inscribed radius", Modulus::inscribed_radius(), &body),
        ("area square root", Modulus::intrinsic_volume_root(2)?, &body),
        ("mean width", Modulus::mean_width(), &body),
    ];

    println!("{:<28} {:>10}   homogeneity gap at c = 0.5, 3, 2048", "modulus", "value");
    for (name, tau, x) in &catalog {
        let v = tau.eval(x)?;
        let mut worst: f64 = 0.0;
        for c in [0.5, 3.0, 2048.0] {
            let scaled = tau.eval(&apply_scaling(&tau.scaling, c, x)?)?;
            worst = worst.max((scaled - c * v).abs() / (1.0 + c * v));
        }
        println!("  {name:<26} {v:>10.4}   {worst:.1e}");
    }

    // Combinators build new moduli from old ones.
    let combined = Modulus::max_of(vec![
        Modulus::coord_abs(0),
        Modulus::scaled(2.0, Modulus::coord_abs(1))?,
    ])?;
    println!("\nmax(|x_1|, 2|x_2|) on (3, -4): {}", combined.eval(&vector)?);

    // The gated functional |x_1|·1{x_2 = 0} is 1-homogeneous but vanishes
    // off the subcone {x_2 = 0}: legitimate, and the reason conditional
    // limits can differ from what the full-space tail suggests.
    let gated = Modulus::gated_coord_abs(0, 1);
    println!(
        "gated |x_1| 1(x_2 = 0): on (3.5, 0) -> {}, on (3.5, 1) -> {}",
        gated.eval(&Element::vector(vec![3.5, 0.0]))?,
        gated.eval(&Element::vector(vec![3.5, 1.0]))?,
    );
    Ok(())
}

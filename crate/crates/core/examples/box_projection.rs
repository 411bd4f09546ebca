//! Projections onto boxes in 𝕊ⁿ: the sum and Euclidean product metrics
//! factor coordinatewise, the max metric does not.
//!
//! Run with `cargo run --example box_projection`.

use smpa::{project_box, project_box_max, Base, BoxSet, Combine, MetricId, RaySet, SElem, SVector, Sign};

fn main() -> smpa::Result<()> {
    let tripod = RaySet::from_points(&[SElem::plus(0.0), SElem::minus(0.0), SElem::balanced(0.0)]);
    for n in 1..=3 {
        let p = project_box(&SVector::zero(n), &BoxSet::power(&tripod, n)?, MetricId::D2)?;
        println!("origin onto the tripod points to the power {n}: {} nearest points", p.len());
    }

    // Both coordinates range over ⊕[0,1] ∪ ⊖[0,1] in magnitude.
    let arm = RaySet::interval(Sign::Plus, 0.0, 1.0)?.union(&RaySet::interval(Sign::Minus, 0.0, 1.0)?);
    let a = BoxSet::power(&arm, 2)?;
    let x = SVector::new(vec![SElem::ZERO, SElem::plus(2f64.ln())])?;
    for combine in [Combine::Euclid, Combine::Sum] {
        let id = MetricId::new(combine, Base::D2);
        let p = project_box(&x, &a, id)?;
        println!("{id}: distance {:.4} at {}", p.distance, p.points[0]);
    }
    match project_box(&x, &a, MetricId::new(Combine::Max, Base::D2)) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rho02 through project_box: {e}"),
    }
    let p = project_box_max(&x, &a, Base::D2, 0.01)?;
    let firsts: Vec<f64> = p.points.iter().map(|y| smpa::metrics::magnitude(y.get(0))).collect();
    println!(
        "rho02 sampled at resolution 0.01: distance {:.4}, {} nearest points, first coordinate magnitudes from {:.2} to {:.2} on two rays",
        p.distance,
        p.len(),
        firsts.iter().cloned().fold(f64::INFINITY, f64::min),
        firsts.iter().cloned().fold(0.0, f64::max),
    );
    Ok(())
}

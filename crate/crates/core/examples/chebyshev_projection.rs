//! Nearest points in closed subsets of 𝕊: connected sets have exactly one,
//! disconnected ones have points with several.
//!
//! Run with `cargo run --example chebyshev_projection`.

use smpa::{is_chebyshev, project_ray, project_union, Base, RaySet, SElem, Sign};

fn main() -> smpa::Result<()> {
    let tripod = RaySet::from_points(&[SElem::plus(0.0), SElem::minus(0.0), SElem::balanced(0.0)]);
    let star = RaySet::interval(Sign::Plus, 0.0, 1.0)?.union(&RaySet::interval(Sign::Minus, 0.0, 3.0)?);

    for (name, c) in [("three unit points", &tripod), ("star", &star)] {
        println!("{name}: Chebyshev {}", is_chebyshev(c)?);
        for x in [SElem::ZERO, SElem::balanced(0.5), SElem::plus(2.0), SElem::minus(-1.0)] {
            for base in [Base::D1, Base::D2] {
                let p = project_ray(x, c, base)?;
                let points: Vec<String> = p.points.iter().map(ToString::to_string).collect();
                println!("  {base:?} from {x:>6}: distance {:.4} at {{{}}}", p.distance, points.join(", "));
            }
        }
    }

    let low = RaySet::interval(Sign::Plus, 0.0, 1.0)?;
    let high = RaySet::interval(Sign::Plus, 1.0, 2.0)?;
    let x = SElem::plus(3f64.ln());
    println!("\nnearest point of the union to {x}: {}", project_union(x, &low, &high, Base::D2)?);
    Ok(())
}

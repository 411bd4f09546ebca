//! Connectedness and the three convexity notions for closed subsets of 𝕊.
//!
//! Run with `cargo run --example convexity`.

use smpa::{
    is_box_semimodule_convex, is_connected, is_geometrically_convex, is_semimodule_convex,
    is_traditionally_convex, BoxSet, RaySet, SElem, Sign,
};

fn report(name: &str, c: &RaySet) -> smpa::Result<()> {
    println!(
        "{name:<28} connected {:<5} traditional {:<5} geometric {:<5} semimodule {:<5}  {c}",
        is_connected(c)?,
        is_traditionally_convex(c)?,
        is_geometrically_convex(c)?,
        is_semimodule_convex(c)?,
    );
    Ok(())
}

fn main() -> smpa::Result<()> {
    let tripod = RaySet::from_points(&[SElem::plus(0.0), SElem::minus(0.0), SElem::balanced(0.0)]);
    let star = RaySet::interval(Sign::Plus, 0.0, 1.0)?.union(&RaySet::interval(Sign::Minus, 0.0, 3.0)?);
    report("interval on the ⊕ ray", &RaySet::interval(Sign::Plus, 1.0, 2.0)?)?;
    report("star through the origin", &star)?;
    report("three unit points", &tripod)?;
    report("two unit points", &RaySet::from_points(&[SElem::plus(0.0), SElem::minus(0.0)]))?;
    report("origin only", &RaySet::origin())?;

    let full_star = star.union(&RaySet::interval(Sign::Balanced, 0.0, 3.0)?);
    report("star with balanced arm", &full_star)?;

    for n in 1..=3 {
        println!("three unit points to the power {n}: box semimodule convex {}", is_box_semimodule_convex(&BoxSet::power(&tripod, n)?)?);
    }
    Ok(())
}

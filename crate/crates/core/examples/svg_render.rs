//! Draws a set, a segment and a projection as SVG files.
//!
//! Run with `cargo run --example svg_render -- <output directory>`.

use std::path::PathBuf;

use smpa::svg::Scene;
use smpa::{geometric_segment, project_ray, semimodule_segment, Base, RaySet, SElem, SVector, Sign};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&dir)?;

    let set = RaySet::interval(Sign::Plus, 0.5, 2.0)?.union(&RaySet::from_points(&[SElem::minus(0.0), SElem::balanced(0.3)]));
    let x = SElem::ZERO;
    let p = project_ray(x, &set, Base::D2)?;
    let mut scene = Scene::new(1)?;
    scene.add_rayset(0, &set)?;
    scene.add_projection(&SVector::from(x), &smpa::ProjectionResult {
        points: p.points.iter().map(|&q| SVector::from(q)).collect(),
        distance: p.distance,
        singleton: p.singleton,
    })?;
    std::fs::write(dir.join("projection.svg"), scene.render())?;

    let a = SVector::new(vec![SElem::plus(0.0), SElem::minus(1.0)])?;
    let b = SVector::new(vec![SElem::balanced(0.5), SElem::plus(0.0)])?;
    let mut scene = Scene::new(2)?;
    scene.add_broken_line(&geometric_segment(&a, &b)?)?;
    std::fs::write(dir.join("geometric_segment.svg"), scene.render())?;

    let mut scene = Scene::new(1)?;
    scene.add_segment_set(&semimodule_segment(&SVector::from(SElem::plus(1.0)), &SVector::from(SElem::minus(0.0)))?)?;
    std::fs::write(dir.join("semimodule_segment.svg"), scene.render())?;

    println!("wrote projection.svg, geometric_segment.svg and semimodule_segment.svg to {}", dir.display());
    Ok(())
}

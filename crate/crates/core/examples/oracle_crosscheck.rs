//! Compares the exact routines with the brute-force grid oracle on random
//! instances.
//!
//! Run with `cargo run --release --example oracle_crosscheck`.

use smpa::oracle::{grid_connected, grid_project, grid_segment_sm, random, GridSpec};
use smpa::{is_connected, project_ray, rho, semimodule_segment, Base, BoxSet, Combine, MetricId, SVector};

fn main() -> smpa::Result<()> {
    let g = GridSpec::default();
    let mut rng = random::rng(g.seed);

    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let c = random::rayset(&mut rng);
        let x = random::selem(&mut rng);
        for base in [Base::D1, Base::D2] {
            let exact = project_ray(x, &c, base)?;
            let grid = grid_project(&SVector::from(x), &BoxSet::new(vec![c.clone()])?, MetricId::new(Combine::Sum, base), &g)?;
            worst = worst.max((exact.distance - grid.distance).abs());
        }
    }
    println!("projections in 𝕊: largest distance gap {worst:.2e} over 100 sets");

    let mut agree = 0;
    for _ in 0..100 {
        let c = random::rayset(&mut rng);
        agree += usize::from(is_connected(&c)? == grid_connected(&c, &g)?);
    }
    println!("connectedness: {agree} of 100 sets agree with the grid graph");

    let coarse = GridSpec::new(1e-2, g.max_magnitude, g.seed)?;
    let id = MetricId::new(Combine::Max, Base::D2);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let (a, b) = (random::svector(&mut rng, 2), random::svector(&mut rng, 2));
        let exact = semimodule_segment(&a, &b)?.sample(coarse.resolution / 4.0);
        let cloud = grid_segment_sm(&a, &b, &coarse)?;
        // Largest distance from a grid point to the sampled exact segment.
        for p in &cloud {
            let near = exact.iter().map(|q| rho(id, p, q)).collect::<smpa::Result<Vec<_>>>()?;
            worst = worst.max(near.into_iter().fold(f64::INFINITY, f64::min));
        }
    }
    println!("semimodule segments in 𝕊²: grid points lie within {worst:.2e} of the exact segments");
    Ok(())
}

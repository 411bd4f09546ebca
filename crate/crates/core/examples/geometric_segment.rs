//! A geometric segment in 𝕊³: a straight line in chart coordinates that
//! breaks wherever a coordinate passes through the origin.
//!
//! Run with `cargo run --example geometric_segment`.

use smpa::{geometric_segment, rho, MetricId, SElem, SVector};

fn main() -> smpa::Result<()> {
    let a = SVector::new(vec![SElem::plus(0.0), SElem::minus(3f64.ln()), SElem::balanced(2f64.ln())])?;
    let b = SVector::new(vec![SElem::minus(0.0), SElem::balanced(0.0), SElem::plus(0.0)])?;
    let seg = geometric_segment(&a, &b)?;

    println!("chart: {:?}", seg.chart.pairs);
    println!("breakpoints at t = {:?}", seg.t);
    for (v, p) in seg.vertices.iter().zip(seg.vertex_points()) {
        println!("  Ψ = {v:>10.4?}  ↦ {p}");
    }
    println!("length {:.9}, D₂(a, b) {:.9}", seg.length, rho(MetricId::D2, &a, &b)?);

    println!("\nevery point is on a shortest path:");
    for k in 0..=4 {
        let t = k as f64 / 4.0;
        let z = seg.point_at(t);
        let via = rho(MetricId::D2, &a, &z)? + rho(MetricId::D2, &z, &b)?;
        println!("  t = {t:.2}: D₂(a,z) + D₂(z,b) = {via:.9}");
    }
    Ok(())
}

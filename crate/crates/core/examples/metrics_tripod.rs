//! The tripod picture of 𝕊 and the distances it induces.
//!
//! Run with `cargo run --example metrics_tripod`.

use smpa::{d1, d2, phi, rho, Base, Combine, MetricId, SElem, SVector};

fn main() -> smpa::Result<()> {
    let points = [SElem::ZERO, SElem::plus(0.0), SElem::minus(0.0), SElem::balanced(0.0), SElem::plus(1.0)];
    println!("embedding in the plane:");
    for p in points {
        let z = phi(p);
        println!("  {p:>6} ↦ ({:+.4}, {:+.4})", z.re, z.im);
    }

    println!("\npairwise distances (chord d₁ / path d₂):");
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            println!("  {a:>6} – {b:<6} d₁ = {:.4}  d₂ = {:.4}", d1(a, b), d2(a, b));
        }
    }

    let a = SVector::new(vec![SElem::plus(0.0), SElem::minus(3f64.ln()), SElem::balanced(2f64.ln())])?;
    let b = SVector::new(vec![SElem::minus(0.0), SElem::balanced(0.0), SElem::plus(0.0)])?;
    println!("\nproduct metrics between {a} and {b}:");
    for combine in [Combine::Max, Combine::Euclid, Combine::Sum] {
        for base in [Base::D1, Base::D2] {
            let id = MetricId::new(combine, base);
            println!("  {id}: {:.6}", rho(id, &a, &b)?);
        }
    }
    Ok(())
}

//! Semimodule segments in 𝕊: isolated points, arcs and missing ends.
//!
//! Run with `cargo run --example semimodule_segment`.

use smpa::{component_count, semimodule_segment, Piece, SElem, SVector};

fn show(a: SElem, b: SElem) -> smpa::Result<()> {
    let seg = semimodule_segment(&SVector::from(a), &SVector::from(b))?;
    println!("[{a}, {b}]_sm: {} components, closed: {}", component_count(&seg), seg.is_closed());
    for piece in &seg.pieces {
        match piece {
            Piece::Point(p) => println!("  point {p}"),
            Piece::Arc(arc) => println!(
                "  arc {}{}, {}{}",
                if arc.closed_lo { "[" } else { "(" },
                arc.from,
                arc.to,
                if arc.closed_hi { "]" } else { ")" },
            ),
        }
    }
    Ok(())
}

fn main() -> smpa::Result<()> {
    show(SElem::plus(1.0), SElem::plus(2.0))?;
    show(SElem::plus(1.0), SElem::minus(1.0))?;
    show(SElem::plus(1.0), SElem::minus(0.0))?;
    show(SElem::minus(2.0), SElem::balanced(0.5))?;
    show(SElem::ZERO, SElem::balanced(1.0))?;
    Ok(())
}

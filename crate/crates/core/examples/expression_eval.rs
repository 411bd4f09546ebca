//! Evaluates expressions in max-plus and in symmetrized max-plus notation.
//!
//! Run with `cargo run --example expression_eval`.

use smpa::{eval_expr, Mode, SElem};

fn main() -> smpa::Result<()> {
    let classic = "2 + (3^5 + 2^-1) * 1 + eps^2";
    println!("mpa   {classic:<32} = {}", eval_expr(classic, Mode::Mpa)?);

    for text in ["p:1 + m:1", "p:2 + m:1", "m:1 * m:2", "b:1 * p:2", "(p:3 + m:3) * m:-1", "p:1^-2"] {
        println!("smpa  {text:<32} = {}", eval_expr(text, Mode::Smpa)?);
    }

    // The same operations are available directly on elements.
    let a = SElem::plus(1.0);
    let b = SElem::minus(1.0);
    println!("\na = {a}, b = {b}");
    println!("a ⊕ b = {}", a.oplus(b));
    println!("a ⊗ b = {}", a.otimes(b));
    println!("⊖a    = {}", a.negate());
    println!("|b|   = {}", b.abs());
    let (pos, neg) = b.parts();
    println!("parts of b: positive {pos}, negative {neg}");

    match eval_expr("m:2", Mode::Mpa) {
        Ok(v) => println!("unexpected value {v}"),
        Err(e) => println!("\nsigned literals are rejected in mpa mode: {e}"),
    }
    Ok(())
}

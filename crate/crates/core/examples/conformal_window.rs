//! Finite window of the conformal example and its mixed half-associativity.

use hlanti::corpus::K1Window;
use hlanti::exactq::Scalar;

fn main() -> hlanti::error::Result<()> {
    let w = K1Window::new(
        &Scalar::frac(9, 4),
        -1,
        1,
        &Scalar::frac(-1, 2),
        &Scalar::frac(1, 2),
    )?;
    let t = w.table();
    println!("{} table entries", t.entries.len());
    for e in t.entries.iter().take(4) {
        println!(
            "  {:?} {} * {} = {} {}",
            e.product, e.left, e.right, e.coef, e.out
        );
    }
    let r = t.even_odd_half_assoc(0)?;
    println!("with middle index 0: {} failing instances", r.len());
    Ok(())
}

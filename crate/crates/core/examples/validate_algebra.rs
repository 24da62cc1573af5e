//! Validates the three-dimensional family and a broken variant.

use hlanti::corpus::k3;
use hlanti::exactq::Scalar;
use hlanti::hla::validate_hla;

fn main() -> hlanti::error::Result<()> {
    let a = k3(&Scalar::int(2))?;
    println!("k3(2): {} failing instances", validate_hla(&a)?.len());

    let mut bad = a.clone();
    bad.set_even_odd(0, 0, 0, Scalar::int(3));
    for r in validate_hla(&bad)?.iter().take(5) {
        println!("  {r}");
    }
    Ok(())
}

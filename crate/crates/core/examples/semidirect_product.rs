//! Builds the semidirect product of the quotient acting on the four-dimensional algebra.

use hlanti::action::semidirect;
use hlanti::corpus::m4_bundle;
use hlanti::exactq::Scalar;
use hlanti::hla::validate_hla;

fn main() -> hlanti::error::Result<()> {
    let b = m4_bundle(&Scalar::int(2))?;
    let sd = semidirect(&b.action)?;
    let a = &sd.algebra;
    println!("semidirect dims ({}, {})", a.dim_even, a.dim_odd);
    println!("failing instances: {}", validate_hla(a)?.len());
    Ok(())
}

//! Adjoint representations and the direct-sum criterion.

use hlanti::corpus::{k3, m4};
use hlanti::exactq::Scalar;
use hlanti::representation::{direct_sum_criterion, validate_rep, HomModule};

fn main() -> hlanti::error::Result<()> {
    for a in [k3(&Scalar::int(2))?, m4(&Scalar::int(3))?] {
        let ad = HomModule::adjoint(&a);
        let ds = direct_sum_criterion(&a, &ad)?;
        println!(
            "{}: adjoint failures {}, rep {} / direct sum {}",
            a.name,
            validate_rep(&a, &ad)?.len(),
            ds.rep_valid,
            ds.algebra_valid
        );
    }
    Ok(())
}

//! Validates corpus crossed modules and prints their kernel and cokernel sizes.

use hlanti::corpus::{derived_extension_xmod, k3, m4_bundle, split_extension_xmod};
use hlanti::exactq::Scalar;
use hlanti::xmod::{identity_xmod, kernel_cokernel, validate_xmod, zero_xmod};

fn main() -> hlanti::error::Result<()> {
    let k = k3(&Scalar::int(2))?;
    let cases = [
        ("identity on k3", identity_xmod(&k)),
        ("zero into k3", zero_xmod(&k)),
        ("m4 over quotient", m4_bundle(&Scalar::int(2))?.xmod),
        ("split extension", split_extension_xmod()?),
        ("derived extension", derived_extension_xmod()?),
    ];
    for (name, x) in cases {
        let kc = kernel_cokernel(&x)?;
        println!(
            "{name}: failures {}, kernel ({}, {}), cokernel ({}, {})",
            validate_xmod(&x)?.len(),
            kc.m0.cols(),
            kc.m1.cols(),
            kc.g.dim_even,
            kc.g.dim_odd
        );
    }
    Ok(())
}

//! Crossed module to cat1 and back, checking both round trips are isomorphisms.

use hlanti::cat1::{cat1_round_trip, cat1_to_xmod, validate_cat1, xmod_round_trip, xmod_to_cat1};
use hlanti::corpus::m4_bundle;
use hlanti::exactq::Scalar;

fn main() -> hlanti::error::Result<()> {
    let x = m4_bundle(&Scalar::int(2))?.xmod;
    let c = xmod_to_cat1(&x)?;
    println!("cat1 failures: {}", validate_cat1(&c)?.len());
    let back = cat1_to_xmod(&c)?;
    println!(
        "recovered top dims ({}, {})",
        back.top().dim_even,
        back.top().dim_odd
    );
    let f = xmod_round_trip(&x)?;
    let g = cat1_round_trip(&c)?;
    println!(
        "xmod round trip iso: {}",
        f.check()?.is_empty() && f.is_invertible()
    );
    println!(
        "cat1 round trip iso: {}",
        g.check()?.is_empty() && g.is_invertible()
    );
    Ok(())
}

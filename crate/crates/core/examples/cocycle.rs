//! Computes the degree-3 cocycle of an extension and checks section independence.

use hlanti::cohomology::{build_extension, choose_sections, cocycle_h, section_independence_check};
use hlanti::corpus::{derived_extension_xmod, split_extension_xmod};

fn main() -> hlanti::error::Result<()> {
    for (name, x) in [
        ("split", split_extension_xmod()?),
        ("derived", derived_extension_xmod()?),
    ] {
        let e = build_extension(&x)?;
        let h = cocycle_h(&e, &choose_sections(&e, 0)?)?;
        let nonzero: Vec<bool> = h.components().iter().map(|t| !t.is_zero()).collect();
        println!("{name}: h components nonzero {nonzero:?}");
        let out = section_independence_check(&e, 0, 1)?;
        println!("{name}: h(s) - h(s') is a coboundary: {}", out.holds);
    }
    Ok(())
}

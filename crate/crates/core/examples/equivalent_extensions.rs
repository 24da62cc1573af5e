//! Two isomorphic extensions give cohomologous cocycles.

use hlanti::cohomology::{
    build_extension, choose_sections, equivalence_theta_check, transported_sections,
};
use hlanti::corpus::{derived_extension_xmod, equivalent_pair};

fn main() -> hlanti::error::Result<()> {
    let pair = equivalent_pair(&derived_extension_xmod()?)?;
    let e = build_extension(&pair.source)?;
    let et = build_extension(&pair.target)?;
    for seed in 0..3 {
        let sp = choose_sections(&e, seed)?;
        let spt = transported_sections(&et, &pair.morphism, &sp);
        let out = equivalence_theta_check(&e, &et, &pair.morphism, &sp, &spt)?;
        println!(
            "seed {seed}: transported cocycle differs by a coboundary: {}",
            out.holds
        );
    }
    Ok(())
}

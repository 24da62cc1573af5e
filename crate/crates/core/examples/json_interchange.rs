//! Emits a crossed module as JSON and loads it back.

use hlanti::corpus::m4_bundle;
use hlanti::exactq::Scalar;
use hlanti::io::{emit, load, Bundle};

fn main() -> hlanti::error::Result<()> {
    let b = Bundle::Xmod(m4_bundle(&Scalar::int(2))?.xmod);
    let text = emit(&b);
    println!("{}", text.lines().take(12).collect::<Vec<_>>().join("\n"));
    println!("...");
    let back = load(&text)?;
    println!("kind {} round trips: {}", back.kind(), back == b);
    Ok(())
}

//! Tour of the zoo: every analytically solved distance, its spec string,
//! and a few hand-checkable evaluations.
//!
//! Run with: `cargo run --example zoo_tour`

use amn::field::FieldTag;
use amn::space::{parse_space_spec, zoo_catalog, Vector};

fn main() -> amn::Result<()> {
    println!("catalog:");
    for entry in zoo_catalog() {
        println!("  {}  [{}]", entry.name, entry.parameters);
        println!("      e.g. {}", entry.example_spec);
        println!("      {}", entry.summary);
    }

    println!("\nspot checks:");
    let l2 = parse_space_spec("zoo:lp?field=R&dim=2&p=2")?;
    let x = Vector::from_reals(FieldTag::Real, &[3.0, 4.0])?;
    println!("  l2 distance (3,4) -> 0          = {}", l2.evaluate(&x, &l2.zero_vector()));

    let bounded = parse_space_spec("zoo:bounded-dir?dim=2&cap=1")?;
    let far = Vector::from_reals(FieldTag::Real, &[3.0, 100.0])?;
    println!(
        "  bounded-dir distance (3,100) -> 0 = {} (the second coordinate saturates)",
        bounded.evaluate(&far, &bounded.zero_vector())
    );

    let warp = parse_space_spec("zoo:warp?base=lp&field=R&dim=2&p=2&c=10")?;
    let unit = Vector::from_reals(FieldTag::Real, &[1.0, 0.0])?;
    println!(
        "  warped l2 at a unit vector        = {} (= 1 + 10(1 - e^-1))",
        warp.evaluate(&unit, &warp.zero_vector())
    );

    let quasi = parse_space_spec("zoo:quasi-lp?dim=1&p=0.5")?;
    let n = 1u64 << 20;
    let e1 = Vector::from_reals(FieldTag::Real, &[1.0])?;
    println!(
        "  quasi-lp d(n e1, 0)/n at n = 2^20 = {:e} (vanishes like n^(p-1))",
        quasi.evaluate(&e1.scale_int(n), &quasi.zero_vector()) / n as f64
    );
    Ok(())
}

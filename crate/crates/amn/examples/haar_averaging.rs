//! Quadrature rules on the unit groups and the averaged distance d₀.
//!
//! The circle average of |Re u| + |Im u| has the closed form 4/π; watch the
//! roots-of-unity rule converge to it, then average the complex-l1 distance
//! the same way.
//!
//! Run with: `cargo run --example haar_averaging`

use amn::asymptote::averaged_distance;
use amn::field::{unit_quadrature, FieldTag};
use amn::space::{zoo_c_l1, Vector};

fn main() -> amn::Result<()> {
    let target = 4.0 / std::f64::consts::PI;
    println!("circle average of |Re u| + |Im u| (target 4/pi = {target:.9}):");
    for resolution in [4, 16, 64, 256, 1024] {
        let quad = unit_quadrature(FieldTag::Complex, resolution, 0)?;
        let avg = quad.average(|u| u.coords()[0].abs() + u.coords()[1].abs());
        println!("  {resolution:>5} nodes: {avg:.9}  (error {:+.3e})", avg - target);
    }

    println!("\nunit groups:");
    for field in [FieldTag::Real, FieldTag::Complex, FieldTag::Quaternion] {
        let quad = unit_quadrature(field, 64, 7)?;
        println!("  {field}: {} nodes, weights sum to 1", quad.nodes().len());
    }

    // The same constant appears as the Haar average of the c-l1 distance.
    let space = zoo_c_l1(1)?;
    let quad = unit_quadrature(FieldTag::Complex, 256, 0)?;
    let one = Vector::from_reals(FieldTag::Complex, &[1.0, 0.0])?;
    let d0 = averaged_distance(&space, &quad, &one, &space.zero_vector());
    println!("\nd0((1), 0) for the complex-l1 space: {d0:.9} (raw distance is 1)");
    Ok(())
}

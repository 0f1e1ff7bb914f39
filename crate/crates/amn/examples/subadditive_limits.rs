//! Subadditive limit estimation: geometric schedules, monotone envelopes,
//! and affine extrapolation.
//!
//! The warped l2 distance satisfies d(nx, 0)/n → ‖x‖ with an O(1/n) gap;
//! the envelope closes on the limit while the extrapolated slope removes
//! the bounded additive term outright.
//!
//! Run with: `cargo run --example subadditive_limits`

use amn::asymptote::{delta, geometric_schedule, subadditive_limit};
use amn::field::FieldTag;
use amn::report::convergence_csv;
use amn::space::{zoo_lp, zoo_warp, Vector};

fn main() -> amn::Result<()> {
    // A synthetic sequence first: aₙ = n + 10(1 − e^{−n}) has slope 1.
    let schedule = geometric_schedule(1 << 20);
    let est = subadditive_limit(
        |n| n as f64 + 10.0 * (1.0 - (-(n as f64)).exp()),
        0.0,
        &schedule,
    )?;
    println!("synthetic a_n = n + 10(1 - e^-n):");
    println!("  envelope     {:.9}", est.upper_envelope);
    println!("  extrapolated {:.9}", est.extrapolated);
    println!("  value        {:.9}  (true limit 1)", est.value);

    // The same structure arises from the warped norm.
    let warp = zoo_warp(zoo_lp(FieldTag::Real, 2, 2.0)?, 10.0)?;
    let x = Vector::from_reals(FieldTag::Real, &[1.0, 0.0])?;
    let est = delta(&warp, 0.0, &x, &warp.zero_vector(), &geometric_schedule(1 << 12))?;
    println!("\nconvergence of d(nx, 0)/n for the warped l2 at a unit vector:");
    print!("{}", convergence_csv(&est));
    println!("value {:.9} (limit is the l2 norm, 1)", est.value);
    Ok(())
}

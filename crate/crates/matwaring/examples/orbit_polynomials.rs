//! Orbit polynomials and prescribed-trace searches: expanding
//! (X - a)(X - phi(a))...(X - phi^{n-1}(a)) down to the base field, testing
//! irreducibility and primitivity, and finding (k-power) irreducible
//! polynomials with a prescribed trace.
//!
//! Run with: cargo run --example orbit_polynomials

use matwaring::fields::{FieldTower, Level};
use matwaring::polyring::{
    find_irreducible_with_trace, find_kpower_irreducible_with_trace, orbit_period, orbit_poly,
};

fn main() -> matwaring::Result<()> {
    let f3 = FieldTower::prime_field(3)?;
    let tower = f3.extend_top(2, Some(vec![1, 0, 1]))?; // F_9 over F_3

    // every element's orbit polynomial lands in F_3[X]
    println!("orbit polynomials over F_9 / F_3:");
    for idx in 0..9 {
        let a = tower.element(Level::Top, idx)?;
        let phi = orbit_poly(&tower, a)?;
        println!(
            "  a = index {idx}: period {} -> {}  ({})",
            orbit_period(&tower, a),
            phi,
            if phi.is_irreducible(&tower)? { "irreducible" } else { "a product" }
        );
    }

    // irreducible quadratics over F_3 with each prescribed trace
    println!("\nleast irreducible quadratic over F_3 with trace t:");
    for t_idx in 0..3 {
        let t = f3.element(Level::Mid, t_idx)?;
        let p = find_irreducible_with_trace(&f3, 2, t, false)?;
        println!("  t = {t_idx}: {p}");
    }

    // primitive polynomials: the trace-0 quadratic fails over every field
    let zero = f3.element(Level::Mid, 0)?;
    match find_irreducible_with_trace(&f3, 2, zero, true) {
        Err(e) => println!("\nprimitive quadratic with trace 0 over F_3: {e}"),
        Ok(p) => println!("\nunexpected: {p}"),
    }

    // a k-power irreducible polynomial with prescribed trace: the companion
    // matrix of the returned polynomial is an explicit k-th power
    println!("\nk-power irreducible polynomials of degree 7 over F_5, k = 3:");
    let f5 = FieldTower::prime_field(5)?;
    for t_idx in 0..5 {
        let t = f5.element(Level::Mid, t_idx)?;
        let w = find_kpower_irreducible_with_trace(&f5, 7, 3, t)?;
        w.validate()?;
        println!("  t = {t_idx}: witness a = index {:>5}, P = {}", w.a.index, w.poly);
    }
    Ok(())
}

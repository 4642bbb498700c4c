//! Tour of the field tower: building F_p <= F_{p^m} <= F_{q^n}, exact
//! arithmetic on canonical indices, Frobenius maps, element orders, discrete
//! logarithms, k-th roots, and sums of two k-th powers of field elements.
//!
//! Run with: cargo run --example field_tower

use matwaring::fields::{FieldTower, FrobeniusMap, Level};

fn main() -> matwaring::Result<()> {
    // F_9 = F_3[x]/(x^2 + 1); element indices encode base-3 digit vectors,
    // so index 3 is x and index 4 is x + 1.
    let f9 = FieldTower::new(3, 2, Some(vec![1, 0, 1]))?;
    let x = f9.element(Level::Mid, 3)?;
    let x1 = f9.element(Level::Mid, 4)?;
    println!("in F_9 with modulus x^2 + 1:");
    println!("  x * x         = index {} (x^2 = -1 = 2)", f9.mul(x, x).index);
    println!("  (x+1)^2       = index {} (2x)", f9.mul(x1, x1).index);
    println!("  ord(x)        = {}", f9.element_order(x)?);
    println!("  ord(x+1)      = {}", f9.element_order(x1)?);
    println!("  least primitive element: index {}", f9.find_primitive(Level::Mid)?.index);

    // discrete logarithms against the least primitive element
    let g = f9.find_primitive(Level::Mid)?;
    let two = f9.element(Level::Mid, 2)?;
    println!("  log_(x+1)(2)  = {} (since (x+1)^4 = 2)", f9.discrete_log(g, two)?);

    // k-th roots in F_7: cubes are {0, 1, 6}
    let f7 = FieldTower::prime_field(7)?;
    let six = f7.element(Level::Mid, 6)?;
    let two7 = f7.element(Level::Mid, 2)?;
    println!("\nin F_7:");
    println!("  cbrt(6) = {:?} (least of 3, 5, 6)", f7.kth_root(six, 3)?.map(|r| r.index));
    println!("  cbrt(2) = {:?} (2 is not a cube)", f7.kth_root(two7, 3)?.map(|r| r.index));

    // every alpha in a field with q > (k-1)^4 splits into two k-th powers
    let five = f7.element(Level::Mid, 5)?;
    let (u, v) = f7.two_kth_powers(five, 3)?;
    println!("  5 = {}^3 + {}^3", u.index, v.index);

    // a two-level tower: F_3 <= F_9 <= F_81, with the Frobenius y -> y^9
    let tower = f9.extend_top(2, None)?;
    println!("\ntower F_3 <= F_9 <= F_81:");
    println!("  top modulus: {:?} (little-endian mid indices)", tower.top_modulus().unwrap());
    let frob = FrobeniusMap::new(&tower)?;
    let y = tower.element(Level::Top, 9)?; // the class of the top generator
    let orbit = frob.orbit_sequence(y);
    println!(
        "  Frobenius orbit of the generator: {:?}",
        orbit.iter().map(|e| e.index).collect::<Vec<_>>()
    );
    println!("  trace to F_9: index {}", tower.trace_to_mid(y)?.index);
    Ok(())
}

//! Writing a matrix as a sum of three k-th powers with a replayable
//! certificate: the nilpotent 2x2 over F_3 routes through the exhaustive
//! corner, a 3x3 takes the structured split, and the certificate JSON is
//! printed in full for one small case.
//!
//! Run with: cargo run --example three_powers

use matwaring::fields::{FieldTower, Level};
use matwaring::matlin::FFMatrix;
use matwaring::waring::{three_powers, verify};

fn main() -> matwaring::Result<()> {
    let f3 = FieldTower::prime_field(3)?;

    // the nilpotent 2x2: q^n = 9 > (k-1)^4 = 1 for k = 2
    let a = FFMatrix::from_rows(Level::Mid, &[vec![0, 1], vec![0, 0]]);
    let cert = three_powers(&f3, &a, 2)?;
    println!("A =\n{a}");
    for (i, term) in cert.terms.iter().enumerate() {
        println!("E_{} =\n{term}", i + 1);
    }
    println!("verified: {}", verify(&cert).ok);

    // a 3x3 goes through the block split: one k-power block plus a part with
    // irreducible characteristic polynomial that splits inside F_27
    let b = FFMatrix::from_rows(
        Level::Mid,
        &[vec![1, 0, 2], vec![0, 1, 1], vec![1, 0, 0]],
    );
    let cert3 = three_powers(&f3, &b, 2)?;
    println!("\n3x3 target decomposed into {} squares; provenance steps:", cert3.terms.len());
    for step in &cert3.provenance {
        let label = serde_json::to_value(step).unwrap();
        println!("  - {}", label["step"].as_str().unwrap_or("?"));
    }
    println!("verified: {}", verify(&cert3).ok);

    // full certificate JSON for the 2x2
    println!("\ncertificate JSON for the 2x2 case:");
    println!("{}", serde_json::to_string_pretty(&cert.to_json(&f3)).unwrap());
    Ok(())
}

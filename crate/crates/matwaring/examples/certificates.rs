//! Certificates end to end: emit, serialize, re-load, re-verify, and watch
//! verification catch tampering, including a replayed similarity witness.
//!
//! Run with: cargo run --example certificates

use matwaring::fields::{FieldTower, Level};
use matwaring::matlin::FFMatrix;
use matwaring::waring::{three_powers, verify, CertificateJson, WaringCertificate};

fn main() -> matwaring::Result<()> {
    let f5 = FieldTower::prime_field(5)?;
    let a = FFMatrix::from_rows(Level::Mid, &[vec![1, 3], vec![0, 1]]);
    let cert = three_powers(&f5, &a, 3)?;
    println!(
        "decomposed a 2x2 over F_5 into {} cubes, {} provenance steps",
        cert.terms.len(),
        cert.provenance.len()
    );

    // serialize and re-load
    let json = serde_json::to_string(&cert.to_json(&f5)).unwrap();
    println!("certificate is {} bytes of JSON", json.len());
    let parsed: CertificateJson = serde_json::from_str(&json).unwrap();
    let (_, reloaded) = WaringCertificate::from_json(&parsed)?;
    let outcome = verify(&reloaded);
    println!("reloaded certificate verifies: {}", outcome.ok);

    // tamper with a term: the power sum no longer matches
    let mut bad = reloaded.clone();
    let old = bad.terms[0].at(0, 0);
    bad.terms[0].set(0, 0, (old + 1) % 5);
    let outcome = verify(&bad);
    println!("\ntampered term: ok = {}", outcome.ok);
    for r in &outcome.reasons {
        println!("  reason: {r}");
    }

    // tamper with a recorded witness: the replay catches it even though the
    // power sum still matches
    let mut bad2 = reloaded.clone();
    for step in bad2.provenance.iter_mut() {
        if let matwaring::waring::ProvenanceStep::Witness { u, .. } = step {
            u.rows[0][0] = (u.rows[0][0] + 1) % 5;
            break;
        }
    }
    let outcome = verify(&bad2);
    println!("\ntampered witness: ok = {}", outcome.ok);
    for r in &outcome.reasons {
        println!("  reason: {r}");
    }
    Ok(())
}

//! Writing 7x7 matrices as sums of TWO k-th powers: the F_3 case with k = 2,
//! and the F_4 case with k = 2 = p, which routes through the p-part order
//! inversion (k = p^a k' with the root of the coprime part re-powered).
//!
//! Run with: cargo run --example two_powers

use matwaring::arith::SplitMix64;
use matwaring::fields::{FieldTower, Level};
use matwaring::matlin::FFMatrix;
use matwaring::waring::{two_powers, verify, ProvenanceStep};

fn random_matrix(rng: &mut SplitMix64, n: usize, card: u64) -> FFMatrix {
    FFMatrix::new(Level::Mid, n, (0..n * n).map(|_| rng.below(card)).collect())
}

fn main() -> matwaring::Result<()> {
    let mut rng = SplitMix64::new(42);

    let f3 = FieldTower::prime_field(3)?;
    let a = random_matrix(&mut rng, 7, 3);
    let cert = two_powers(&f3, &a, 2)?;
    println!("7x7 over F_3, k = 2: {} terms, verified = {}", cert.terms.len(), verify(&cert).ok);
    println!("E_1 =\n{}", cert.terms[0]);
    println!("E_2 =\n{}", cert.terms[1]);

    // F_4 with k = 2: the exponent is pure characteristic, so the companion
    // part's root comes from inverting 2 against the odd order of the
    // generator
    let f4 = FieldTower::new(2, 2, None)?;
    let b = random_matrix(&mut rng, 7, 4);
    let cert4 = two_powers(&f4, &b, 2)?;
    println!("\n7x7 over F_4, k = 2: verified = {}", verify(&cert4).ok);
    for step in &cert4.provenance {
        if let ProvenanceStep::PPartOrder {
            p_exponent,
            coprime_part,
            element_order,
            root_exponent,
        } = step
        {
            println!(
                "p-part branch: k = 2^{p_exponent} * {coprime_part}, generator order {element_order}, root exponent {root_exponent}"
            );
        }
    }
    Ok(())
}

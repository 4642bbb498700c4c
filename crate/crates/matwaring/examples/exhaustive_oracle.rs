//! The desk-scale oracle: enumerate every k-th power in a small matrix ring,
//! check sumset closure exhaustively, and decompose by meet-in-the-middle
//! when no structural theorem applies.
//!
//! Run with: cargo run --example exhaustive_oracle

use matwaring::census::{closure_check, enumerate_powers, pack_matrix, unpack_matrix};
use matwaring::fields::{FieldTower, Level};
use matwaring::matlin::FFMatrix;
use matwaring::waring::{exhaustive_fallback, verify};

fn main() -> matwaring::Result<()> {
    let f3 = FieldTower::prime_field(3)?;

    // all squares of M_2(F_3)
    let set = enumerate_powers(&f3, 2, 2)?;
    println!(
        "M_2(F_3) has {} distinct squares among {} matrices",
        set.len(),
        set.space
    );
    let eye = pack_matrix(&f3, &FFMatrix::identity(Level::Mid, 2));
    println!("contains 0: {}, contains I: {}", set.contains(0), set.contains(eye));

    // three squares cover the whole ring; the oracle confirms it by
    // exhaustion rather than by theorem
    let rep = closure_check(&f3, &set, 3)?;
    println!("every matrix is a sum of three squares: {}", rep.holds);
    let rep2 = closure_check(&f3, &set, 2)?;
    println!("every matrix is a sum of two squares: {}", rep2.holds);

    // fourth powers in F_5 are only {0, 1}: the two-fold sumset misses 3
    let f5 = FieldTower::prime_field(5)?;
    let fourth = enumerate_powers(&f5, 1, 4)?;
    let rep = closure_check(&f5, &fourth, 2)?;
    println!(
        "\nfourth powers in F_5 2-cover the field: {} (first miss: {:?})",
        rep.holds,
        rep.first_counterexample.map(|c| unpack_matrix(&f5, 1, c).at(0, 0))
    );

    // meet-in-the-middle decomposition with a certificate
    let a = FFMatrix::from_rows(Level::Mid, &[vec![2, 1], vec![1, 1]]);
    let cert = exhaustive_fallback(&f3, &a, 2, 3)?;
    println!("\nfallback certificate for a 2x2 target, verified = {}", verify(&cert).ok);
    for (i, term) in cert.terms.iter().enumerate() {
        println!("E_{} =\n{term}", i + 1);
    }
    Ok(())
}

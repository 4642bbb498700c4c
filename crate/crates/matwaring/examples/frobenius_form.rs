//! Exact matrix canonical forms: companion matrices, invariant factors with
//! a re-verified similarity witness, cyclic similarity between
//! non-derogatory matrices, and completing prescribed columns to a similar
//! matrix.
//!
//! Run with: cargo run --example frobenius_form

use matwaring::fields::{FieldTower, Level};
use matwaring::matlin::{
    char_min_poly, companion, complete_prescribed_columns, cyclic_similarity, frobenius_form,
    ColumnPrescription, FFMatrix,
};
use matwaring::polyring::Poly;

fn main() -> matwaring::Result<()> {
    let f3 = FieldTower::prime_field(3)?;

    // the companion matrix of X^2 + 1 over F_3
    let p = Poly::new(Level::Mid, vec![1, 0, 1]);
    let c = companion(&f3, &p)?;
    println!("companion of {p}:\n{c}");

    // invariant factors of a derogatory matrix
    let a = FFMatrix::from_rows(
        Level::Mid,
        &[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]],
    );
    let form = frobenius_form(&f3, &a);
    println!("invariant factors of a Jordan-ish matrix:");
    for f in form.invariant_factors() {
        println!("  {f}");
    }
    println!("witness verifies: {}", form.witness().verify(&f3, &form.form_matrix(&f3), &a));

    // characteristic and minimal polynomials come from the same decomposition
    let (char_poly, min_poly) = char_min_poly(&f3, &a);
    println!("char = {char_poly}, min = {min_poly}");

    // two non-derogatory matrices with one characteristic polynomial are
    // similar, and the witness is explicit
    let b = FFMatrix::from_rows(Level::Mid, &[vec![1, 2], vec![2, 2]]);
    let w = cyclic_similarity(&f3, &c, &b)?;
    println!("\nU with U^-1 B U = C_P:\n{}", w.u());

    // prescribe the first column of a 2x2 matrix similar to C_P
    let prescription = ColumnPrescription::new(2, vec![vec![1, 2]])?;
    let (completed, witness) = complete_prescribed_columns(&f3, &c, &prescription)?;
    println!("completion with first column (1, 2):\n{completed}");
    println!("witness verifies: {}", witness.verify(&f3, &completed, &c));
    Ok(())
}

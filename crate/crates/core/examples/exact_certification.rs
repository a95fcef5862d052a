//! Certify O_n O_nᵀ = I with integer arithmetic, then break one coefficient
//! and watch the certificate fail.
//!
//! cargo run --example exact_certification

use helmert_student::helmert::{
    certify, exact_gram_entry, verify_orthogonality_exact, Certification,
};
use helmert_student::HelmertOrder;

fn main() -> helmert_student::Result<()> {
    let mut pairs = 0;
    for n in 2..=256 {
        match verify_orthogonality_exact(HelmertOrder::new(n)?)? {
            Certification::Pass { pairs_checked, .. } => pairs += pairs_checked,
            fail => panic!("unexpected {fail:?}"),
        }
    }
    println!("orders 2..=256 certified, {pairs} row pairs checked exactly");

    let o6 = HelmertOrder::new(6)?;
    let e = exact_gram_entry(o6, 3, 3)?;
    println!(
        "p_33 of O_6 O_6ᵀ = {}/√{}",
        e.integer_sum, e.shared_radicand
    );

    let mut broken = o6.symbolic();
    broken.rows[2].coefficients[0] = 2;
    println!("after setting c_31 = 2: {:?}", certify(&broken)?);
    Ok(())
}

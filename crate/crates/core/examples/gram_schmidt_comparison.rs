//! Orthonormalise the averaging-row seed with Gram–Schmidt and compare the
//! result with O_n.
//!
//! cargo run --example gram_schmidt_comparison

use helmert_student::gram_schmidt::{
    entry_complexity, gram_schmidt_orthogonalize, transform_equivalence_check,
};
use helmert_student::HelmertOrder;

fn main() -> helmert_student::Result<()> {
    let g = gram_schmidt_orthogonalize(5)?;
    println!("Gram–Schmidt result for n = 5:");
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>9.5}")).collect();
        println!("  {}", cells.join(" "));
    }
    println!("orthogonality defect {:e}", g.orthogonality_defect());

    let v = transform_equivalence_check(5, &[0.3, -1.2, 2.5, 0.0, 1.1])?;
    println!(
        "y'_1 = {:.12}, sqrt(n) mean = {:.12}",
        v.first_coordinate, v.scaled_mean
    );
    println!("tail energy = {:.12}, W = {:.12}", v.tail_energy, v.w);

    println!("\n n  distinct |entries|: GS  Helmert");
    for n in 4..=16 {
        let gs = entry_complexity(&gram_schmidt_orthogonalize(n)?);
        let h = entry_complexity(&HelmertOrder::new(n)?.build_dense());
        println!("{n:>2}  {gs:>22}  {h:>7}");
    }
    Ok(())
}

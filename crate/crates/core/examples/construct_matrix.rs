//! Build O_n three ways: symbolic entries, dense floats, and matrix-free.
//!
//! cargo run --example construct_matrix -- 5

use helmert_student::report::matrix_symbolic_text;
use helmert_student::HelmertOrder;

fn main() -> helmert_student::Result<()> {
    let n = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(5);
    let order = HelmertOrder::new(n)?;

    println!("O_{n} symbolically:");
    print!("{}", matrix_symbolic_text(order));

    let dense = order.build_dense();
    println!("\nrow 2 as floats: {:?}", dense.row(1));
    println!("max |O Oᵀ - I| = {:e}", dense.orthogonality_defect());

    // the matrix-free apply needs no storage at all
    let e1: Vec<f64> = (0..n).map(|k| if k == 0 { 1.0 } else { 0.0 }).collect();
    println!("O_{n} e_1 = {:?}", order.apply(&e1)?);
    Ok(())
}

//! y = O_n z splits z into its scaled mean and its deviations.
//!
//! cargo run --example transform -- 3.1 4.7 2.2 5.0 3.9

use helmert_student::sampling::sample_stats;
use helmert_student::HelmertOrder;

fn main() -> helmert_student::Result<()> {
    let mut z: Vec<f64> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    if z.len() < 2 {
        z = vec![3.1, 4.7, 2.2, 5.0, 3.9];
    }
    let n = z.len();
    let order = HelmertOrder::new(n)?;
    let y = order.apply(&z)?;
    let stats = sample_stats(&z)?;

    println!("z = {z:?}");
    println!("y = {y:?}");
    println!(
        "y_n = {:.15}   sqrt(n) * mean = {:.15}",
        y[n - 1],
        (n as f64).sqrt() * stats.mean
    );
    let tail: f64 = y[..n - 1].iter().map(|v| v * v).sum();
    println!("sum y_i^2 (i < n) = {tail:.15}   W = {:.15}", stats.w);
    println!("back to z: {:?}", order.apply_transpose(&y)?);
    Ok(())
}

//! The distribution functions behind the goodness-of-fit tests.
//!
//! cargo run --example special_functions

use helmert_student::dist::{
    chi2_cdf, chi2_sf, kolmogorov_survival, ln_gamma, normal_cdf, DegreesOfFreedom,
};

fn main() -> helmert_student::Result<()> {
    for x in [-3.0, -1.0, 0.0, 1.0, 1.959963984540054, 3.0] {
        println!("Phi({x:>6.3}) = {:.15}", normal_cdf(x)?);
    }
    let k4 = DegreesOfFreedom::new(4)?;
    for x in [0.5, 2.0, 4.0, 9.487729036781154] {
        println!(
            "chi2(4) cdf({x:.4}) = {:.12}  sf = {:.12}",
            chi2_cdf(k4, x)?,
            chi2_sf(k4, x)?
        );
    }
    for lambda in [0.5, 1.0, 1.36, 2.0] {
        println!("P(K > {lambda:.2}) = {:.10}", kolmogorov_survival(lambda)?);
    }
    println!(
        "ln Gamma(0.5) = {:.15}  (ln sqrt(pi) = {:.15})",
        ln_gamma(0.5),
        std::f64::consts::PI.sqrt().ln()
    );
    Ok(())
}

//! KS, correlation and contingency tests on simulated data.
//!
//! cargo run --example statistical_tests

use helmert_student::dist::{chi2_cdf, normal_cdf, DegreesOfFreedom};
use helmert_student::sampling::{generate_batch, sample_stats, DrawLaw, DEFAULT_MAX_VALUES};
use helmert_student::stat_tests::{independence, ks_test};
use helmert_student::Seed;

fn summaries(law: DrawLaw) -> helmert_student::Result<(Vec<f64>, Vec<f64>)> {
    let batch = generate_batch(Seed(2024), 20_000, 6, law, DEFAULT_MAX_VALUES)?;
    let mut means = Vec::new();
    let mut ws = Vec::new();
    for row in batch.rows() {
        let s = sample_stats(row)?;
        means.push(s.mean);
        ws.push(s.w);
    }
    Ok((means, ws))
}

fn main() -> helmert_student::Result<()> {
    let dof = DegreesOfFreedom::new(5)?;
    for (label, law) in [
        ("normal", DrawLaw::StandardNormal),
        ("centered exponential", DrawLaw::CenteredExponential),
    ] {
        let (means, ws) = summaries(law)?;
        let scaled: Vec<f64> = means.iter().map(|m| m * 6.0_f64.sqrt()).collect();
        let ks_mean = ks_test(&scaled, normal_cdf)?;
        let ks_w = ks_test(&ws, |x| chi2_cdf(dof, x))?;
        let ind = independence(&means, &ws, 4)?;
        println!("{label} inputs, n = 6:");
        println!(
            "  KS sqrt(n) mean vs N(0,1): D = {:.5}, p = {:.4}",
            ks_mean.d_statistic, ks_mean.p_value
        );
        println!(
            "  KS W vs chi2(5):           D = {:.5}, p = {:.4}",
            ks_w.d_statistic, ks_w.p_value
        );
        println!(
            "  corr(mean, W) = {:.4}, corr(mean^2, W) = {:.4}",
            ind.pearson_ab, ind.pearson_a2b
        );
        println!(
            "  contingency chi2 = {:.2} on {} dof, p = {:.4}",
            ind.contingency_stat, ind.contingency_dof, ind.contingency_p
        );
    }
    Ok(())
}

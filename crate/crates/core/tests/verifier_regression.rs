//! Frozen statistics for the default configurations. A change to the sampler,
//! the draw order or the special functions shows up here first.

use helmert_student::sampling::NormalParams;
use helmert_student::verifier::{
    run_negative_controls, verify_claim1, verify_claim2, verify_claim3, verify_general,
    verify_transformed_coords, ClaimResult, VerificationConfig,
};

const PIN_TOL: f64 = 1e-9;

fn pinned(r: &ClaimResult, key: &str, want: f64) {
    let got = r
        .statistics
        .get(key)
        .or_else(|| r.p_values.get(key))
        .copied()
        .unwrap_or(f64::NAN);
    assert!(
        (got - want).abs() <= PIN_TOL,
        "{} {key}: {got} vs {want}",
        r.claim_id.as_str()
    );
}

fn cfg(n: usize, trials: usize, seed: u64) -> VerificationConfig {
    VerificationConfig::new(n, trials, seed)
}

#[test]
fn claim1_default_run() {
    let r = verify_claim1(&cfg(5, 50_000, 42)).unwrap();
    pinned(&r, "ks_normal.d", 0.002185386304182413);
    pinned(&r, "ks_normal", 0.9705866702034126);
    assert!(r.passed);
}

#[test]
fn claim2_default_run() {
    let r = verify_claim2(&cfg(5, 100_000, 42)).unwrap();
    pinned(&r, "contingency_stat", 4.5376);
    pinned(&r, "contingency", 0.8726132422264297);
    pinned(&r, "corr_mean_w", 0.0004507091977356698);
    pinned(&r, "corr_mean2_w", 9.846634075534034e-5);
    assert_eq!(r.statistics["contingency_dof"], 9.0);
    assert!(r.passed);
}

#[test]
fn claim3_default_run() {
    let r = verify_claim3(&cfg(5, 50_000, 42)).unwrap();
    pinned(&r, "ks_chi2.d", 0.005665834797743519);
    pinned(&r, "ks_chi2", 0.08041562317384558);
    assert!(r.passed);
}

#[test]
fn claim3_smallest_order() {
    let r = verify_claim3(&cfg(2, 50_000, 42)).unwrap();
    assert_eq!(r.statistics["dof"], 1.0);
    pinned(&r, "ks_chi2.d", 0.002552818949250635);
    pinned(&r, "ks_chi2", 0.9000436604870252);
    assert!(r.passed);
}

#[test]
fn general_normal_run() {
    let c = cfg(5, 50_000, 7).with_params(NormalParams::new(3.0, 2.0).unwrap());
    let (mean, var) = verify_general(&c).unwrap();
    pinned(&mean, "ks_normal.d", 0.002779574494856274);
    pinned(&mean, "ks_normal", 0.8340737692254053);
    pinned(&var, "ks_chi2.d", 0.002552697603223797);
    pinned(&var, "ks_chi2", 0.9000748467015893);
    assert!(var.statistics["variance_identity_max_rel_err"] <= 1e-10);
    assert!(mean.passed && var.passed);
}

#[test]
fn transformed_coordinates_run() {
    let r = verify_transformed_coords(&cfg(4, 50_000, 42)).unwrap();
    pinned(&r, "ks_y1", 0.20917452477993073);
    pinned(&r, "ks_y4", 0.8543814947617332);
    pinned(&r, "max_abs_pairwise_corr", 0.0058414728476342695);
    assert!(r.statistics["energy_identity_max_err"] <= 1e-10);
    assert!(r.statistics["mean_coordinate_max_err"] <= 1e-12);
    assert!(r.passed);
}

#[test]
fn standard_parameters_reduce_to_standard_claims() {
    let c = cfg(5, 20_000, 11);
    let (mean, var) = verify_general(&c.clone().with_params(NormalParams::standard())).unwrap();
    let c1 = verify_claim1(&c).unwrap();
    let c3 = verify_claim3(&c).unwrap();
    assert_eq!(
        mean.statistics["ks_normal.d"].to_bits(),
        c1.statistics["ks_normal.d"].to_bits()
    );
    assert_eq!(
        var.statistics["ks_chi2.d"].to_bits(),
        c3.statistics["ks_chi2.d"].to_bits()
    );
}

#[test]
fn negative_controls_detected_without_collateral() {
    let outcomes = run_negative_controls(&cfg(5, 100_000, 42)).unwrap();
    assert_eq!(outcomes.len(), 3);
    for o in &outcomes {
        assert!(o.detected, "{o:?}");
        assert!(o.collateral_failures.is_empty(), "{o:?}");
    }
}

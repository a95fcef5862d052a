//! Monte Carlo verification of Student's theorem, claim by claim.
//!
//! Each claim is turned into one or more hypothesis tests over `trials`
//! independent samples of size `n`. A claim passes when every p-value is at
//! least `alpha` and every bounded statistic stays within its bound. A pass
//! means the simulation is *consistent with* the claim; it never proves it.
//!
//! Negative controls deliberately falsify one claim's hypothesis (wrong
//! scaling, wrong degrees of freedom, non-normal inputs) and must make that
//! claim, and only that claim, fail.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::dist::{chi2_cdf, normal_cdf, DegreesOfFreedom};
use crate::error::{Error, Result};
use crate::helmert::{verify_orthogonality_exact, Certification, HelmertOrder};
use crate::sampling::{
    generate_batch, sample_stats, DrawLaw, NormalParams, SampleBatch, Seed, DEFAULT_MAX_VALUES,
};
use crate::stat_tests::{independence, ks_test, pearson_r, KsResult};

pub const DEFAULT_N: usize = 5;
pub const DEFAULT_TRIALS: usize = 50_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_ALPHA: f64 = 0.001;
pub const DEFAULT_BINS: usize = 4;
pub const MIN_TRIALS: usize = 1_000;

/// Tolerance for identities accumulated over a sample, relative to `max(1, Σ z²)`.
pub const IDENTITY_REL_TOL: f64 = 1e-10;
/// Tolerance for `Y_n = √n Z̄`, relative to `max(1, |√n Z̄|)`.
pub const MEAN_COORD_TOL: f64 = 1e-12;

/// Standard errors allowed for a null correlation: the bound is `4/√trials`.
pub const CORRELATION_SE: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationConfig {
    pub n: usize,
    pub trials: usize,
    pub seed: Seed,
    pub alpha: f64,
    pub bins: usize,
    /// `Some` switches on the general-normal (`N(μ, σ²)`) checks.
    pub params: Option<NormalParams>,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        Self {
            n: DEFAULT_N,
            trials: DEFAULT_TRIALS,
            seed: Seed(DEFAULT_SEED),
            alpha: DEFAULT_ALPHA,
            bins: DEFAULT_BINS,
            params: None,
        }
    }
}

impl VerificationConfig {
    pub fn new(n: usize, trials: usize, seed: u64) -> Self {
        Self {
            n,
            trials,
            seed: Seed(seed),
            ..Self::default()
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_bins(mut self, bins: usize) -> Self {
        self.bins = bins;
        self
    }

    pub fn with_params(mut self, params: NormalParams) -> Self {
        self.params = Some(params);
        self
    }

    pub fn validate(&self) -> Result<()> {
        HelmertOrder::new(self.n).map_err(|e| Error::Config(e.to_string()))?;
        if self.bins < 2 {
            return Err(Error::Config(format!(
                "bins must be at least 2, got {}",
                self.bins
            )));
        }
        let needed = MIN_TRIALS.max(25 * self.bins * self.bins);
        if self.trials < needed {
            return Err(Error::Config(format!(
                "trials must be at least {needed} for {} bins, got {}",
                self.bins, self.trials
            )));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!(
                "alpha must lie in (0, 1), got {}",
                self.alpha
            )));
        }
        if self
            .trials
            .checked_mul(self.n)
            .is_none_or(|v| v > DEFAULT_MAX_VALUES)
        {
            return Err(Error::Config(format!(
                "trials x n exceeds the sampling budget of {DEFAULT_MAX_VALUES} values"
            )));
        }
        Ok(())
    }

    fn order(&self) -> HelmertOrder {
        HelmertOrder::new(self.n).expect("validated")
    }

    fn correlation_bound(&self) -> f64 {
        CORRELATION_SE / (self.trials as f64).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    /// `√n Z̄ ~ N(0, 1)`.
    T2_1,
    /// `Z̄` and `W` are independent.
    T2_2,
    /// `W ~ χ²(n-1)`.
    T2_3,
    /// `X̄ ~ N(μ, σ²/n)`.
    T1_1,
    /// `(n-1) S²/σ² ~ χ²(n-1)`.
    T1_3,
    /// `Y = O_n Z` has i.i.d. `N(0, 1)` coordinates.
    Coords,
    /// Integer certification of `O_n O_nᵀ = I`.
    Exact,
}

impl ClaimId {
    pub const ALL: [ClaimId; 7] = [
        ClaimId::Exact,
        ClaimId::T2_1,
        ClaimId::T2_2,
        ClaimId::T2_3,
        ClaimId::Coords,
        ClaimId::T1_1,
        ClaimId::T1_3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::T2_1 => "T2.1",
            ClaimId::T2_2 => "T2.2",
            ClaimId::T2_3 => "T2.3",
            ClaimId::T1_1 => "T1.1",
            ClaimId::T1_3 => "T1.3",
            ClaimId::Coords => "coords",
            ClaimId::Exact => "exact",
        }
    }

    fn statement(self) -> &'static str {
        match self {
            ClaimId::T2_1 => "sqrt(n) * mean(Z) ~ N(0,1)",
            ClaimId::T2_2 => "mean(Z) and W are independent",
            ClaimId::T2_3 => "W ~ chi2(n-1)",
            ClaimId::T1_1 => "mean(X) ~ N(mu, sigma^2/n)",
            ClaimId::T1_3 => "(n-1) S^2 / sigma^2 ~ chi2(n-1)",
            ClaimId::Coords => "coordinates of Y = O_n Z are iid N(0,1)",
            ClaimId::Exact => "O_n O_n^T = I (integer certificate)",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClaimId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Usage(format!("unknown claim '{s}'")))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A deliberately wrong hypothesis used to show the harness can reject.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NegativeControl {
    /// Tests `√(n+1) Z̄` against `N(0, 1)`.
    WrongScaling,
    /// Tests `W` against `χ²(n)`.
    WrongDof,
    /// Feeds the independence check centred unit-variance exponential draws.
    NonNormalInputs,
}

impl NegativeControl {
    pub const ALL: [NegativeControl; 3] = [
        NegativeControl::WrongScaling,
        NegativeControl::WrongDof,
        NegativeControl::NonNormalInputs,
    ];

    pub fn target(self) -> ClaimId {
        match self {
            NegativeControl::WrongScaling => ClaimId::T2_1,
            NegativeControl::WrongDof => ClaimId::T2_3,
            NegativeControl::NonNormalInputs => ClaimId::T2_2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClaimResult {
    pub claim_id: ClaimId,
    pub statement: String,
    pub statistics: BTreeMap<String, f64>,
    /// Upper bounds on `|statistics[name]|`.
    pub bounds: BTreeMap<String, f64>,
    pub p_values: BTreeMap<String, f64>,
    /// Names of p-values that fell below resolution and were reported as 0.
    pub flags: Vec<String>,
    pub passed: bool,
    /// "consistent with ..." or "not consistent with ...".
    pub verdict: String,
}

impl ClaimResult {
    fn new(claim_id: ClaimId) -> Self {
        Self {
            claim_id,
            statement: claim_id.statement().to_string(),
            statistics: BTreeMap::new(),
            bounds: BTreeMap::new(),
            p_values: BTreeMap::new(),
            flags: Vec::new(),
            passed: false,
            verdict: String::new(),
        }
    }

    fn stat(&mut self, name: &str, value: f64) -> &mut Self {
        self.statistics.insert(name.to_string(), value);
        self
    }

    fn bounded(&mut self, name: &str, value: f64, bound: f64) -> &mut Self {
        self.statistics.insert(name.to_string(), value);
        self.bounds.insert(name.to_string(), bound);
        self
    }

    fn ks(&mut self, name: &str, r: &KsResult) -> &mut Self {
        self.statistics.insert(format!("{name}.d"), r.d_statistic);
        self.p_values.insert(name.to_string(), r.p_value);
        if r.p_below_resolution {
            self.flags.push(name.to_string());
        }
        self
    }

    /// Applies the pass rule: all p-values `>= alpha`, all bounded
    /// statistics within their (closed) bounds.
    fn finish(mut self, alpha: f64) -> Self {
        let p_ok = self.p_values.values().all(|&p| p >= alpha);
        let bounds_ok = self
            .bounds
            .iter()
            .all(|(k, &b)| self.statistics[k].abs() <= b);
        self.passed = p_ok && bounds_ok;
        self.verdict = if self.passed {
            format!("consistent with {}", self.statement)
        } else {
            format!("not consistent with {}", self.statement)
        };
        self
    }
}

/// Per-trial summaries shared by several claims.
struct TrialSummaries {
    means: Vec<f64>,
    ws: Vec<f64>,
}

impl TrialSummaries {
    fn of(batch: &SampleBatch) -> Self {
        let stats: Vec<(f64, f64)> = batch
            .values()
            .par_chunks_exact(batch.n())
            .map(|row| {
                let s = sample_stats(row).expect("n >= 2");
                (s.mean, s.w)
            })
            .collect();
        let (means, ws) = stats.into_iter().unzip();
        Self { means, ws }
    }
}

fn draw(cfg: &VerificationConfig, law: DrawLaw) -> Result<SampleBatch> {
    generate_batch(cfg.seed, cfg.trials, cfg.n, law, DEFAULT_MAX_VALUES)
}

fn claim1(
    cfg: &VerificationConfig,
    s: &TrialSummaries,
    control: Option<NegativeControl>,
) -> Result<ClaimResult> {
    let scale = if control == Some(NegativeControl::WrongScaling) {
        cfg.n + 1
    } else {
        cfg.n
    };
    let root = (scale as f64).sqrt();
    let scaled: Vec<f64> = s.means.iter().map(|m| root * m).collect();
    let ks = ks_test(&scaled, normal_cdf)?;
    let mut r = ClaimResult::new(ClaimId::T2_1);
    r.ks("ks_normal", &ks).stat("scale_n", scale as f64);
    Ok(r.finish(cfg.alpha))
}

fn claim2(cfg: &VerificationConfig, s: &TrialSummaries) -> Result<ClaimResult> {
    let ind = independence(&s.means, &s.ws, cfg.bins)?;
    let bound = cfg.correlation_bound();
    let mut r = ClaimResult::new(ClaimId::T2_2);
    r.bounded("corr_mean_w", ind.pearson_ab, bound)
        .bounded("corr_mean2_w", ind.pearson_a2b, bound)
        .stat("contingency_stat", ind.contingency_stat)
        .stat("contingency_dof", f64::from(ind.contingency_dof));
    r.p_values.insert("contingency".into(), ind.contingency_p);
    if ind.contingency_p_below_resolution {
        r.flags.push("contingency".into());
    }
    Ok(r.finish(cfg.alpha))
}

fn claim3(
    cfg: &VerificationConfig,
    s: &TrialSummaries,
    control: Option<NegativeControl>,
) -> Result<ClaimResult> {
    let k = if control == Some(NegativeControl::WrongDof) {
        cfg.n
    } else {
        cfg.n - 1
    };
    let dof = DegreesOfFreedom::new(k as u32)?;
    let ks = ks_test(&s.ws, |x| chi2_cdf(dof, x))?;
    let mut r = ClaimResult::new(ClaimId::T2_3);
    r.ks("ks_chi2", &ks).stat("dof", k as f64);
    Ok(r.finish(cfg.alpha))
}

fn coords(
    cfg: &VerificationConfig,
    batch: &SampleBatch,
    s: &TrialSummaries,
) -> Result<ClaimResult> {
    let n = cfg.n;
    let order = cfg.order();
    let root_n = (n as f64).sqrt();
    let mut ys = vec![0.0; batch.values().len()];
    ys.par_chunks_exact_mut(n)
        .zip(batch.values().par_chunks_exact(n))
        .for_each(|(y, z)| order.apply_into(z, y).expect("lengths match"));

    let mut mean_coord_err = 0.0_f64;
    let mut energy_err = 0.0_f64;
    for ((y, z), (m, w)) in ys
        .chunks_exact(n)
        .zip(batch.rows())
        .zip(s.means.iter().zip(&s.ws))
    {
        let target = root_n * m;
        mean_coord_err = mean_coord_err.max((y[n - 1] - target).abs() / target.abs().max(1.0));
        let tail: f64 = y[..n - 1].iter().map(|v| v * v).sum();
        let energy: f64 = z.iter().map(|v| v * v).sum();
        energy_err = energy_err.max((tail - w).abs() / energy.max(1.0));
    }

    let columns: Vec<Vec<f64>> = (0..n)
        .map(|c| ys.iter().skip(c).step_by(n).copied().collect())
        .collect();
    let mut r = ClaimResult::new(ClaimId::Coords);
    let ks: Vec<KsResult> = columns
        .par_iter()
        .map(|col| ks_test(col, normal_cdf))
        .collect::<Result<_>>()?;
    for (c, res) in ks.iter().enumerate() {
        r.ks(&format!("ks_y{}", c + 1), res);
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let corrs: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| pearson_r(&columns[i], &columns[j]))
        .collect::<Result<_>>()?;
    let max_corr = corrs.iter().fold(0.0_f64, |acc, c| acc.max(c.abs()));
    r.bounded("max_abs_pairwise_corr", max_corr, cfg.correlation_bound())
        .bounded("mean_coordinate_max_err", mean_coord_err, MEAN_COORD_TOL)
        .bounded("energy_identity_max_err", energy_err, IDENTITY_REL_TOL);
    Ok(r.finish(cfg.alpha))
}

/// Theorem 1 checks on `X = μ + σ Z`, reusing the standard draws `Z`.
fn general(
    cfg: &VerificationConfig,
    batch: &SampleBatch,
    s: &TrialSummaries,
) -> Result<(ClaimResult, ClaimResult)> {
    let p = cfg
        .params
        .ok_or_else(|| Error::Config("general-normal checks need mu and sigma".into()))?;
    let n = cfg.n;
    let root_n = (n as f64).sqrt();
    let x = batch.destandardize(p);
    let xs = TrialSummaries::of(&x);
    let sigma2 = p.sigma() * p.sigma();

    let standardized_means: Vec<f64> = xs
        .means
        .iter()
        .map(|m| root_n * (m - p.mu()) / p.sigma())
        .collect();
    let scaled_vars: Vec<f64> = xs.ws.iter().map(|w| w / sigma2).collect();

    // (n-1) S²/σ² evaluated literally against W of the standard draws
    let mut identity_err = 0.0_f64;
    for (row, w) in x.rows().zip(&s.ws) {
        let st = sample_stats(row)?;
        let lhs = (n - 1) as f64 * st.sample_variance / sigma2;
        identity_err = identity_err.max((lhs - w).abs() / w.abs().max(1.0));
    }

    let mut t11 = ClaimResult::new(ClaimId::T1_1);
    t11.ks("ks_normal", &ks_test(&standardized_means, normal_cdf)?)
        .stat("mu", p.mu())
        .stat("sigma", p.sigma());
    let dof = DegreesOfFreedom::new((n - 1) as u32)?;
    let mut t13 = ClaimResult::new(ClaimId::T1_3);
    t13.ks("ks_chi2", &ks_test(&scaled_vars, |v| chi2_cdf(dof, v))?)
        .stat("dof", (n - 1) as f64)
        .bounded(
            "variance_identity_max_rel_err",
            identity_err,
            IDENTITY_REL_TOL,
        );
    Ok((t11.finish(cfg.alpha), t13.finish(cfg.alpha)))
}

fn exact(cfg: &VerificationConfig) -> Result<ClaimResult> {
    let mut r = ClaimResult::new(ClaimId::Exact);
    match verify_orthogonality_exact(cfg.order())? {
        Certification::Pass { pairs_checked, .. } => {
            r.stat("pairs_checked", pairs_checked as f64);
        }
        Certification::Fail {
            entry,
            expected_sum,
            ..
        } => {
            let excess = (entry.integer_sum - expected_sum) as f64;
            r.stat("failing_i", entry.i as f64)
                .stat("failing_j", entry.j as f64)
                .bounded("integer_sum_excess", excess, 0.0);
        }
    }
    Ok(r.finish(cfg.alpha))
}

pub fn verify_claim1(cfg: &VerificationConfig) -> Result<ClaimResult> {
    verify_claim1_with(cfg, None)
}

pub fn verify_claim1_with(
    cfg: &VerificationConfig,
    control: Option<NegativeControl>,
) -> Result<ClaimResult> {
    cfg.validate()?;
    claim1(
        cfg,
        &TrialSummaries::of(&draw(cfg, DrawLaw::StandardNormal)?),
        control,
    )
}

pub fn verify_claim2(cfg: &VerificationConfig) -> Result<ClaimResult> {
    verify_claim2_with(cfg, None)
}

pub fn verify_claim2_with(
    cfg: &VerificationConfig,
    control: Option<NegativeControl>,
) -> Result<ClaimResult> {
    cfg.validate()?;
    let law = if control == Some(NegativeControl::NonNormalInputs) {
        DrawLaw::CenteredExponential
    } else {
        DrawLaw::StandardNormal
    };
    claim2(cfg, &TrialSummaries::of(&draw(cfg, law)?))
}

pub fn verify_claim3(cfg: &VerificationConfig) -> Result<ClaimResult> {
    verify_claim3_with(cfg, None)
}

pub fn verify_claim3_with(
    cfg: &VerificationConfig,
    control: Option<NegativeControl>,
) -> Result<ClaimResult> {
    cfg.validate()?;
    claim3(
        cfg,
        &TrialSummaries::of(&draw(cfg, DrawLaw::StandardNormal)?),
        control,
    )
}

/// Theorem 1 checks; returns the `T1.1` and `T1.3` results.
pub fn verify_general(cfg: &VerificationConfig) -> Result<(ClaimResult, ClaimResult)> {
    cfg.validate()?;
    let batch = draw(cfg, DrawLaw::StandardNormal)?;
    let s = TrialSummaries::of(&batch);
    general(cfg, &batch, &s)
}

pub fn verify_transformed_coords(cfg: &VerificationConfig) -> Result<ClaimResult> {
    cfg.validate()?;
    let batch = draw(cfg, DrawLaw::StandardNormal)?;
    let s = TrialSummaries::of(&batch);
    coords(cfg, &batch, &s)
}

/// Which claims to run and whether to falsify one of them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunOptions {
    /// `None` runs the exact certificate, `T2.*`, `coords`, and `T1.*` when
    /// parameters are configured.
    pub claims: Option<Vec<ClaimId>>,
    pub control: Option<NegativeControl>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub config: VerificationConfig,
    pub claims: Vec<ClaimId>,
    pub negative_control: Option<NegativeControl>,
    pub results: Vec<ClaimResult>,
    pub overall_pass: bool,
    /// Wall-clock time; excluded from the determinism guarantee.
    pub duration_ms: u64,
}

impl TheoremReport {
    pub fn result(&self, id: ClaimId) -> Option<&ClaimResult> {
        self.results.iter().find(|r| r.claim_id == id)
    }
}

fn selected_claims(cfg: &VerificationConfig, opts: &RunOptions) -> Result<Vec<ClaimId>> {
    let claims = match &opts.claims {
        Some(list) => {
            let mut list = list.clone();
            list.sort();
            list.dedup();
            list
        }
        None => {
            let mut list = vec![ClaimId::T2_1, ClaimId::T2_2, ClaimId::T2_3, ClaimId::Coords];
            if cfg.params.is_some() {
                list.extend([ClaimId::T1_1, ClaimId::T1_3]);
            }
            list.push(ClaimId::Exact);
            list
        }
    };
    if claims.is_empty() {
        return Err(Error::Config("no claims selected".into()));
    }
    if cfg.params.is_none()
        && claims
            .iter()
            .any(|c| matches!(c, ClaimId::T1_1 | ClaimId::T1_3))
    {
        return Err(Error::Config("T1 claims need mu and sigma".into()));
    }
    Ok(claims)
}

/// Runs the selected claims on one shared batch of standard normal draws.
pub fn run_all(cfg: &VerificationConfig) -> Result<TheoremReport> {
    run_with(cfg, &RunOptions::default())
}

pub fn run_with(cfg: &VerificationConfig, opts: &RunOptions) -> Result<TheoremReport> {
    let start = Instant::now();
    cfg.validate()?;
    let claims = selected_claims(cfg, opts)?;
    let control = opts.control;
    let batch = draw(cfg, DrawLaw::StandardNormal)?;
    let s = TrialSummaries::of(&batch);

    let mut results = Vec::with_capacity(claims.len());
    let mut general_pair = None;
    for &claim in &claims {
        let r = match claim {
            ClaimId::T2_1 => claim1(cfg, &s, control)?,
            ClaimId::T2_2 if control == Some(NegativeControl::NonNormalInputs) => claim2(
                cfg,
                &TrialSummaries::of(&draw(cfg, DrawLaw::CenteredExponential)?),
            )?,
            ClaimId::T2_2 => claim2(cfg, &s)?,
            ClaimId::T2_3 => claim3(cfg, &s, control)?,
            ClaimId::Coords => coords(cfg, &batch, &s)?,
            ClaimId::T1_1 | ClaimId::T1_3 => {
                if general_pair.is_none() {
                    general_pair = Some(general(cfg, &batch, &s)?);
                }
                let (t11, t13) = general_pair.as_ref().expect("just set");
                if claim == ClaimId::T1_1 {
                    t11.clone()
                } else {
                    t13.clone()
                }
            }
            ClaimId::Exact => exact(cfg)?,
        };
        results.push(r);
    }
    let overall_pass = results.iter().all(|r| r.passed);
    Ok(TheoremReport {
        config: cfg.clone(),
        claims,
        negative_control: control,
        results,
        overall_pass,
        duration_ms: start.elapsed().as_millis() as u64,
    })
}

/// Outcome of one negative control.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ControlOutcome {
    pub control: NegativeControl,
    pub target: ClaimId,
    pub target_failed: bool,
    /// Claims other than the target that failed; should be empty.
    pub collateral_failures: Vec<ClaimId>,
    /// The target failed and nothing else did.
    pub detected: bool,
    pub report: TheoremReport,
}

/// Runs every negative control over the default claim set.
pub fn run_negative_controls(cfg: &VerificationConfig) -> Result<Vec<ControlOutcome>> {
    NegativeControl::ALL
        .into_iter()
        .map(|control| {
            let report = run_with(
                cfg,
                &RunOptions {
                    claims: None,
                    control: Some(control),
                },
            )?;
            let target = control.target();
            let target_failed = report.result(target).is_some_and(|r| !r.passed);
            let collateral_failures: Vec<ClaimId> = report
                .results
                .iter()
                .filter(|r| r.claim_id != target && !r.passed)
                .map(|r| r.claim_id)
                .collect();
            Ok(ControlOutcome {
                control,
                target,
                target_failed,
                detected: target_failed && collateral_failures.is_empty(),
                collateral_failures,
                report,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerificationConfig {
        VerificationConfig::new(4, 2_000, 3)
    }

    #[test]
    fn config_validation() {
        assert!(VerificationConfig::default().validate().is_ok());
        assert!(matches!(
            VerificationConfig::new(5, 10, 1).validate(),
            Err(Error::Config(_))
        ));
        assert!(VerificationConfig::new(1, 5_000, 1).validate().is_err());
        assert!(VerificationConfig::default()
            .with_alpha(0.0)
            .validate()
            .is_err());
        assert!(VerificationConfig::default()
            .with_alpha(1.0)
            .validate()
            .is_err());
        assert!(VerificationConfig::default()
            .with_bins(1)
            .validate()
            .is_err());
        // 25 bins² trials are needed for the contingency table
        assert!(VerificationConfig::new(5, 2_000, 1)
            .with_bins(9)
            .validate()
            .is_err());
        assert!(VerificationConfig::new(5, 2_025, 1)
            .with_bins(9)
            .validate()
            .is_ok());
    }

    #[test]
    fn claim_ids_parse() {
        for c in ClaimId::ALL {
            assert_eq!(c.as_str().parse::<ClaimId>().unwrap(), c);
        }
        assert_eq!("t2.3".parse::<ClaimId>().unwrap(), ClaimId::T2_3);
        assert!("T3.1".parse::<ClaimId>().is_err());
    }

    #[test]
    fn smoke_populates_finite_statistics() {
        let cfg = VerificationConfig::new(5, 1_000, 99);
        let r = verify_claim1(&cfg).unwrap();
        assert!(r.statistics.values().all(|v| v.is_finite()));
        assert!(r.p_values.values().all(|p| (0.0..=1.0).contains(p)));
        assert!(r.verdict.contains("consistent with"));
    }

    #[test]
    fn pass_rule_closed_bounds() {
        let mut r = ClaimResult::new(ClaimId::T2_2);
        r.bounded("corr", 0.25, 0.25);
        r.p_values.insert("p".into(), 0.001);
        assert!(r.clone().finish(0.001).passed);
        r.bounded("corr", -0.2500001, 0.25);
        assert!(!r.finish(0.001).passed);
    }

    #[test]
    fn run_all_has_every_default_claim() {
        let report = run_all(&small()).unwrap();
        let ids: Vec<ClaimId> = report.results.iter().map(|r| r.claim_id).collect();
        assert_eq!(
            ids,
            vec![
                ClaimId::T2_1,
                ClaimId::T2_2,
                ClaimId::T2_3,
                ClaimId::Coords,
                ClaimId::Exact
            ]
        );
        assert_eq!(report.overall_pass, report.results.iter().all(|r| r.passed));
    }

    #[test]
    fn t1_claims_need_params() {
        let opts = RunOptions {
            claims: Some(vec![ClaimId::T1_1]),
            control: None,
        };
        assert!(matches!(run_with(&small(), &opts), Err(Error::Config(_))));
        assert!(verify_general(&small()).is_err());
    }

    #[test]
    fn subset_runs_only_requested() {
        let opts = RunOptions {
            claims: Some(vec![ClaimId::T2_3, ClaimId::T2_3]),
            control: None,
        };
        let report = run_with(&small(), &opts).unwrap();
        assert_eq!(report.results.len(), 1);
        assert_eq!(report.results[0].claim_id, ClaimId::T2_3);
    }

    #[test]
    fn standalone_claims_match_run_all() {
        let cfg = small();
        let report = run_all(&cfg).unwrap();
        assert_eq!(
            &verify_claim1(&cfg).unwrap(),
            report.result(ClaimId::T2_1).unwrap()
        );
        assert_eq!(
            &verify_claim2(&cfg).unwrap(),
            report.result(ClaimId::T2_2).unwrap()
        );
        assert_eq!(
            &verify_claim3(&cfg).unwrap(),
            report.result(ClaimId::T2_3).unwrap()
        );
        assert_eq!(
            &verify_transformed_coords(&cfg).unwrap(),
            report.result(ClaimId::Coords).unwrap()
        );
    }
}

//! Feed the verifier deliberately wrong hypotheses and confirm it rejects
//! each one, and only the claim it targets.
//!
//! cargo run --release --example negative_controls

use helmert_student::verifier::run_negative_controls;
use helmert_student::VerificationConfig;

fn main() -> helmert_student::Result<()> {
    let cfg = VerificationConfig::new(5, 100_000, 42);
    for o in run_negative_controls(&cfg)? {
        let target = o.report.result(o.target).expect("target claim present");
        println!("{:?} (targets {}):", o.control, o.target);
        println!("  verdict: {}", target.verdict);
        println!("  p-values: {:?}", target.p_values);
        println!("  other claims failing: {:?}", o.collateral_failures);
        println!("  detected: {}", o.detected);
    }
    Ok(())
}

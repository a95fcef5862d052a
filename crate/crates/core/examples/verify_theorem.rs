//! Full Monte Carlo check of Student's theorem, standard and general normal.
//!
//! cargo run --release --example verify_theorem

use helmert_student::report::theorem_text;
use helmert_student::verifier::run_all;
use helmert_student::{NormalParams, VerificationConfig};

fn main() -> helmert_student::Result<()> {
    let cfg = VerificationConfig::new(5, 50_000, 42);
    print!("{}", theorem_text(&run_all(&cfg)?));

    println!();
    let general = cfg.with_params(NormalParams::new(3.0, 2.0)?);
    let report = run_all(&general)?;
    print!("{}", theorem_text(&report));
    std::process::exit(if report.overall_pass { 0 } else { 1 });
}

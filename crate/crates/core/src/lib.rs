//! Explicit Helmert orthogonal matrices and an end-to-end Monte Carlo check
//! of Student's theorem.
//!
//! The crate is organised bottom-up:
//!
//! - [`helmert`]: the order-`n` Helmert matrix `O_n`, in symbolic, dense and
//!   matrix-free form, with an integer-only certificate that `O_n O_nᵀ = I`.
//! - [`gram_schmidt`]: the Gram–Schmidt alternative built from the
//!   identity-with-averaging-row seed, and an entry complexity metric.
//! - [`sampling`]: seeded, partition-independent normal draws and the sample
//!   statistics (mean, `S²`, `W`).
//! - [`dist`]: normal, chi-square and Kolmogorov distribution functions.
//! - [`stat_tests`]: one-sample Kolmogorov–Smirnov, Pearson correlation and a
//!   quantile-binned contingency independence test.
//! - [`verifier`]: the claim-by-claim Monte Carlo harness, negative controls
//!   included.
//! - [`report`] and [`cli`]: the JSON/CSV/text renderings and the `helmert`
//!   command line.
//!
//! Every capability has a runnable program under `examples/`.

pub mod cli;
pub mod dist;
pub mod error;
pub mod gram_schmidt;
pub mod helmert;
pub mod report;
pub mod sampling;
pub mod verifier;

pub use error::{Error, Result};
pub use helmert::{DenseMatrix, HelmertOrder, SymbolicEntry, SymbolicMatrix};
pub use sampling::{NormalParams, SampleBatch, SampleStats, Seed};
pub use verifier::{ClaimId, ClaimResult, TheoremReport, VerificationConfig};

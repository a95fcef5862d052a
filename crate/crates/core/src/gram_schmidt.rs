//! Gram–Schmidt alternative to the Helmert construction.
//!
//! The seed is the identity matrix with its first row replaced by the
//! averaging row `(1/√n, …, 1/√n)`. Rows are orthonormalised top to bottom
//! with modified Gram–Schmidt. The averaging row ends up FIRST here, whereas
//! it is the LAST row of `O_n`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::helmert::DenseMatrix;
use crate::sampling::sample_stats;

/// Rows whose norm drops below this during orthogonalisation are degenerate.
pub const DEGENERACY_NORM: f64 = 1e-12;

/// Entries smaller than this in magnitude count as zero in [`entry_complexity`].
pub const COMPLEXITY_ZERO: f64 = 1e-12;

/// Identity of order `n` with row 1 replaced by `(1/√n, …, 1/√n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GsSeedMatrix(DenseMatrix);

impl GsSeedMatrix {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall(n));
        }
        let avg = 1.0 / (n as f64).sqrt();
        let rows = (0..n)
            .map(|i| {
                if i == 0 {
                    vec![avg; n]
                } else {
                    let mut r = vec![0.0; n];
                    r[i] = 1.0;
                    r
                }
            })
            .collect();
        Ok(Self(DenseMatrix::from_rows(rows)?))
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.0
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Orthonormalises the rows of `seed` in order with modified Gram–Schmidt.
///
/// Row 1 is kept verbatim (the seed's first row is already unit length).
/// Every later row is flipped so that its last nonzero entry is negative,
/// mirroring the sign pattern of the Helmert contrast rows.
pub fn orthonormalize_rows(seed: &DenseMatrix) -> Result<DenseMatrix> {
    let n = seed.order();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(n);
    basis.push(seed.row(0).to_vec());
    for k in 1..n {
        let mut v = seed.row(k).to_vec();
        for q in &basis {
            let proj = dot(q, &v);
            for (vi, qi) in v.iter_mut().zip(q) {
                *vi -= proj * qi;
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm < DEGENERACY_NORM {
            return Err(Error::Degenerate(format!(
                "row {} vanished during orthogonalization (norm {norm:e})",
                k + 1
            )));
        }
        let last = v
            .iter()
            .rev()
            .find(|x| x.abs() >= DEGENERACY_NORM)
            .copied()
            .unwrap_or(-1.0);
        let scale = if last > 0.0 { -1.0 / norm } else { 1.0 / norm };
        v.iter_mut().for_each(|x| *x *= scale);
        basis.push(v);
    }
    DenseMatrix::from_rows(basis)
}

/// Gram–Schmidt output for the averaging-row seed of order `n`.
pub fn gram_schmidt_orthogonalize(n: usize) -> Result<DenseMatrix> {
    orthonormalize_rows(GsSeedMatrix::new(n)?.matrix())
}

/// Number of distinct `|entry|` values after rounding to 12 significant
/// digits. Entries below [`COMPLEXITY_ZERO`] are counted as zero.
pub fn entry_complexity(m: &DenseMatrix) -> usize {
    m.entries()
        .iter()
        .map(|x| {
            let a = x.abs();
            if a < COMPLEXITY_ZERO {
                "0".to_string()
            } else {
                format!("{a:.11e}")
            }
        })
        .collect::<BTreeSet<_>>()
        .len()
}

/// Result of transforming `z` by the Gram–Schmidt matrix and comparing with
/// the sample mean and sum of squared deviations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceVerdict {
    /// `y'_1`.
    pub first_coordinate: f64,
    /// `√n · z̄`.
    pub scaled_mean: f64,
    /// `Σ_{i>=2} y'_i²`.
    pub tail_energy: f64,
    /// `Σ (z_i - z̄)²`.
    pub w: f64,
    pub passed: bool,
}

/// Checks `y'_1 = √n z̄` and `Σ_{i>=2} y'_i² = W` for `y' = G z`, to `1e-10`
/// relative to the scale of `z`.
pub fn transform_equivalence_check(n: usize, z: &[f64]) -> Result<EquivalenceVerdict> {
    if z.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: z.len(),
        });
    }
    let g = gram_schmidt_orthogonalize(n)?;
    equivalence_with(&g, z)
}

/// Same as [`transform_equivalence_check`] with a precomputed Gram–Schmidt matrix.
pub fn equivalence_with(g: &DenseMatrix, z: &[f64]) -> Result<EquivalenceVerdict> {
    let n = g.order();
    let y = g.mul_vec(z)?;
    let stats = sample_stats(z)?;
    let first_coordinate = y[0];
    let scaled_mean = (n as f64).sqrt() * stats.mean;
    let tail_energy: f64 = y[1..].iter().map(|v| v * v).sum();
    let energy: f64 = z.iter().map(|v| v * v).sum();
    let norm = energy.sqrt();
    let passed = (first_coordinate - scaled_mean).abs() <= 1e-10 * norm.max(1.0)
        && (tail_energy - stats.w).abs() <= 1e-10 * energy.max(1.0);
    Ok(EquivalenceVerdict {
        first_coordinate,
        scaled_mean,
        tail_energy,
        w: stats.w,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::helmert::HelmertOrder;

    #[test]
    fn seed_layout() {
        let s = GsSeedMatrix::new(3).unwrap();
        let m = s.matrix();
        assert!(m.row(0).iter().all(|&x| x == 1.0 / 3.0_f64.sqrt()));
        assert_eq!(m.row(1), &[0.0, 1.0, 0.0]);
        assert_eq!(m.row(2), &[0.0, 0.0, 1.0]);
        assert!(GsSeedMatrix::new(1).is_err());
    }

    #[test]
    fn order_two_by_hand() {
        // e2 - (1/2)(1, 1) = (-1/2, 1/2), normalised then flipped
        let g = gram_schmidt_orthogonalize(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = [[h, h], [h, -h]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((g.entry(i, j) - expected[i][j]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn first_row_is_seed_row() {
        for n in [2, 3, 7, 20] {
            let g = gram_schmidt_orthogonalize(n).unwrap();
            let seed = GsSeedMatrix::new(n).unwrap();
            assert_eq!(g.row(0), seed.matrix().row(0));
        }
    }

    #[test]
    fn orthogonal_order_five() {
        assert!(
            gram_schmidt_orthogonalize(5)
                .unwrap()
                .orthogonality_defect()
                < 1e-10
        );
    }

    #[test]
    fn last_nonzero_entries_negative() {
        let g = gram_schmidt_orthogonalize(6).unwrap();
        for r in g.rows().skip(1) {
            let last = r.iter().rev().find(|x| x.abs() > 1e-12).unwrap();
            assert!(*last < 0.0);
        }
    }

    #[test]
    fn degenerate_seed_is_reported() {
        let m = DenseMatrix::from_rows(vec![vec![1.0, 0.0], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(orthonormalize_rows(&m), Err(Error::Degenerate(_))));
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(entry_complexity(&DenseMatrix::identity(1)), 1);
        assert_eq!(entry_complexity(&DenseMatrix::identity(6)), 2);
        let helmert5 = HelmertOrder::new(5).unwrap().build_dense();
        assert_eq!(entry_complexity(&helmert5), 9);
    }

    #[test]
    fn gs_rows_are_reversed_helmert_contrasts() {
        // row k has support {1} ∪ {k..n}: m = n-k+2 entries, a Helmert contrast of size m
        let n = 7;
        let g = gram_schmidt_orthogonalize(n).unwrap();
        for k in 2..=n {
            let m = (n - k + 2) as f64;
            let small = 1.0 / (m * (m - 1.0)).sqrt();
            let row = g.row(k - 1);
            assert!((row[0].abs() - small).abs() < 1e-12);
            assert!((row[k - 1].abs() - (m - 1.0) * small).abs() < 1e-12);
            for (c, v) in row.iter().enumerate().skip(1) {
                if c + 1 > k {
                    assert!((v.abs() - small).abs() < 1e-12);
                } else if c + 1 < k {
                    assert!(v.abs() < 1e-12);
                }
            }
        }
        // same magnitudes as O_n, hence the same complexity
        let helmert = HelmertOrder::new(n).unwrap().build_dense();
        assert_eq!(entry_complexity(&g), entry_complexity(&helmert));
    }

    #[test]
    fn equivalence_constant_vector() {
        let v = transform_equivalence_check(4, &[1.5; 4]).unwrap();
        assert!((v.first_coordinate - 3.0).abs() < 1e-12);
        assert!(v.tail_energy < 1e-24);
        assert!(v.passed);
    }

    #[test]
    fn equivalence_zero_mean_pair() {
        let v = transform_equivalence_check(2, &[1.0, -1.0]).unwrap();
        assert!(v.first_coordinate.abs() < 1e-15);
        assert!((v.tail_energy - 2.0).abs() < 1e-12);
        assert!(v.passed);
    }

    #[test]
    fn equivalence_length_mismatch() {
        assert!(matches!(
            transform_equivalence_check(3, &[1.0, 2.0]),
            Err(Error::LengthMismatch {
                expected: 3,
                actual: 2
            })
        ));
    }
}

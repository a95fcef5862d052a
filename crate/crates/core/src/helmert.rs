//! The Helmert matrix `O_n`.
//!
//! Rows `1..n-1` have the shape `(1, …, 1, -i, 0, …, 0) / √(i(i+1))` and the
//! last row is the averaging row `(1, …, 1) / √n`. Every entry is an integer
//! over the square root of an integer, so the whole matrix can be held
//! exactly as a [`SymbolicMatrix`] and `O_n O_nᵀ = I` can be certified with
//! integer sums alone.
//!
//! Indices passed to [`HelmertOrder::symbolic_entry`] and reported in
//! [`Certification`] are 1-based. Dense storage is 0-based.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported order. Keeps every product and sum in the exact
/// checker inside `i64`.
pub const MAX_ORDER: usize = 1_000_000;

/// A validated matrix order `2 <= n <= 10^6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HelmertOrder(usize);

/// An exact entry `coefficient / √radicand`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SymbolicEntry {
    pub coefficient: i64,
    pub radicand: u64,
}

impl SymbolicEntry {
    pub fn value(&self) -> f64 {
        self.coefficient as f64 / (self.radicand as f64).sqrt()
    }
}

impl std::fmt::Display for SymbolicEntry {
    /// Renders `c/√r`, using a true minus sign, or `0` for a zero entry.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.coefficient {
            0 => write!(f, "0"),
            c if c < 0 => write!(f, "\u{2212}{}/\u{221a}{}", c.unsigned_abs(), self.radicand),
            c => write!(f, "{}/\u{221a}{}", c, self.radicand),
        }
    }
}

impl HelmertOrder {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::OrderTooSmall(n));
        }
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { n, max: MAX_ORDER });
        }
        Ok(Self(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Entry `o_ij` of `O_n`, with `1 <= i, j <= n`.
    ///
    /// Zero entries come back as `0/√1`.
    pub fn symbolic_entry(self, i: usize, j: usize) -> Result<SymbolicEntry> {
        let n = self.0;
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange { i, j, n });
        }
        Ok(if i == n {
            SymbolicEntry {
                coefficient: 1,
                radicand: n as u64,
            }
        } else {
            let radicand = (i as u64) * (i as u64 + 1);
            if j <= i {
                SymbolicEntry {
                    coefficient: 1,
                    radicand,
                }
            } else if j == i + 1 {
                SymbolicEntry {
                    coefficient: -(i as i64),
                    radicand,
                }
            } else {
                SymbolicEntry {
                    coefficient: 0,
                    radicand: 1,
                }
            }
        })
    }

    /// The whole matrix in exact form.
    pub fn symbolic(self) -> SymbolicMatrix {
        let n = self.0;
        let rows = (1..=n)
            .map(|i| {
                let radicand = if i == n {
                    n as u64
                } else {
                    (i as u64) * (i as u64 + 1)
                };
                let coefficients = (1..=n)
                    .map(|j| {
                        self.symbolic_entry(i, j)
                            .expect("indices in range")
                            .coefficient
                    })
                    .collect();
                SymbolicRow {
                    radicand,
                    coefficients,
                }
            })
            .collect();
        SymbolicMatrix { rows }
    }

    /// `O_n` evaluated in double precision, one `c/√r` per entry.
    pub fn build_dense(self) -> DenseMatrix {
        let n = self.0;
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(self.symbolic_entry(i, j).expect("indices in range").value());
            }
        }
        DenseMatrix { order: n, entries }
    }

    /// `y = O_n z` in `O(n)` using running prefix sums `P_i`:
    /// `y_i = (P_i - i z_{i+1}) / √(i(i+1))` for `i < n` and `y_n = √n · P_n / n`.
    pub fn apply(self, z: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.0];
        self.apply_into(z, &mut y)?;
        Ok(y)
    }

    /// Writes `O_n z` into `out`. Both slices must have length `n`.
    pub fn apply_into(self, z: &[f64], out: &mut [f64]) -> Result<()> {
        let n = self.0;
        check_len(n, z.len())?;
        check_len(n, out.len())?;
        let mut prefix = 0.0;
        for i in 1..n {
            prefix += z[i - 1];
            let fi = i as f64;
            out[i - 1] = (prefix - fi * z[i]) / (fi * (fi + 1.0)).sqrt();
        }
        prefix += z[n - 1];
        let nf = n as f64;
        out[n - 1] = nf.sqrt() * (prefix / nf);
        Ok(())
    }

    /// `z = O_nᵀ y` in `O(n)` using running suffix sums.
    pub fn apply_transpose(self, y: &[f64]) -> Result<Vec<f64>> {
        let n = self.0;
        check_len(n, y.len())?;
        let tail = y[n - 1] / (n as f64).sqrt();
        let mut z = vec![0.0; n];
        // suffix = Σ_{i=k}^{n-1} y_i / √(i(i+1)) for the current column k
        let mut suffix = 0.0;
        for k in (1..=n).rev() {
            if k < n {
                let fk = k as f64;
                suffix += y[k - 1] / (fk * (fk + 1.0)).sqrt();
            }
            let mut x = suffix + tail;
            if k >= 2 {
                let fm = (k - 1) as f64;
                x -= fm * y[k - 2] / (fm * (fm + 1.0)).sqrt();
            }
            z[k - 1] = x;
        }
        Ok(z)
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}

/// Square matrix of doubles, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DenseMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl DenseMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Usage("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            check_len(order, row.len())?;
            entries.extend(row);
        }
        Ok(Self { order, entries })
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![0.0; order * order];
        for i in 0..order {
            entries[i * order + i] = 1.0;
        }
        Self { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Entry at 0-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.entries[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks_exact(self.order)
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn mul_vec(&self, v: &[f64]) -> Result<Vec<f64>> {
        check_len(self.order, v.len())?;
        Ok(self
            .rows()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `M Mᵀ`.
    pub fn gram(&self) -> DenseMatrix {
        let n = self.order;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in i..n {
                let dot: f64 = self
                    .row(i)
                    .iter()
                    .zip(self.row(j))
                    .map(|(a, b)| a * b)
                    .sum();
                entries[i * n + j] = dot;
                entries[j * n + i] = dot;
            }
        }
        DenseMatrix { order: n, entries }
    }

    pub fn transpose(&self) -> DenseMatrix {
        let n = self.order;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        DenseMatrix { order: n, entries }
    }

    /// Largest componentwise deviation of `M Mᵀ` from the identity.
    pub fn orthogonality_defect(&self) -> f64 {
        let gram = self.gram();
        let n = self.order;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram.entry(i, j) - target).abs());
            }
        }
        worst
    }
}

/// One row of a [`SymbolicMatrix`]: integer coefficients over a shared `√radicand`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicRow {
    pub radicand: u64,
    pub coefficients: Vec<i64>,
}

/// A square matrix whose row `i` is `coefficients_i / √radicand_i`.
///
/// Because each row has one radicand, every product in a row-pair dot
/// product shares the radicand `r_i · r_j`, and `p_ij` equals
/// `integer_sum / √(r_i r_j)` exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolicMatrix {
    pub rows: Vec<SymbolicRow>,
}

impl SymbolicMatrix {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> SymbolicEntry {
        let r = &self.rows[row];
        let coefficient = r.coefficients[col];
        if coefficient == 0 {
            SymbolicEntry {
                coefficient: 0,
                radicand: 1,
            }
        } else {
            SymbolicEntry {
                coefficient,
                radicand: r.radicand,
            }
        }
    }
}

/// `p_ij` of `P = O Oᵀ` held exactly: `integer_sum / √shared_radicand`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactGramEntry {
    pub i: usize,
    pub j: usize,
    pub integer_sum: i64,
    pub shared_radicand: u64,
}

/// Which of the four row-pair cases an entry of `O_n O_nᵀ` falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GramCase {
    /// `i = j < n`: squared norm of a contrast row.
    ContrastNorm,
    /// `i = j = n`: squared norm of the averaging row.
    AveragingNorm,
    /// `i < n = j`: a contrast row against the averaging row.
    ContrastVsAveraging,
    /// `i != j`, both `< n`: two contrast rows.
    ContrastVsContrast,
}

impl GramCase {
    fn classify(i: usize, j: usize, n: usize) -> Self {
        match (i == j, i == n || j == n) {
            (true, false) => GramCase::ContrastNorm,
            (true, true) => GramCase::AveragingNorm,
            (false, true) => GramCase::ContrastVsAveraging,
            (false, false) => GramCase::ContrastVsContrast,
        }
    }
}

/// Outcome of the exact certification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certification {
    Pass {
        order: usize,
        pairs_checked: u64,
    },
    Fail {
        order: usize,
        case: GramCase,
        entry: ExactGramEntry,
        expected_sum: i64,
    },
}

impl Certification {
    pub fn passed(&self) -> bool {
        matches!(self, Certification::Pass { .. })
    }
}

/// Per-row summary used to evaluate row-pair dot products exactly.
struct RowShape {
    /// 1-based index of the last nonzero coefficient, 0 for an empty row.
    support: usize,
    /// Length of the leading run of equal coefficients.
    flat_prefix: usize,
    sum: i64,
}

impl RowShape {
    fn of(coefficients: &[i64]) -> Result<Self> {
        let support = coefficients
            .iter()
            .rposition(|&c| c != 0)
            .map_or(0, |p| p + 1);
        let first = coefficients.first().copied().unwrap_or(0);
        let flat_prefix = coefficients.iter().take_while(|&&c| c == first).count();
        let sum = coefficients
            .iter()
            .try_fold(0_i64, |acc, &c| acc.checked_add(c))
            .ok_or_else(overflow)?;
        Ok(Self {
            support,
            flat_prefix,
            sum,
        })
    }
}

fn overflow() -> Error {
    Error::Capacity("integer overflow in exact Gram sum".into())
}

/// Σ_k a_k b_k over the first `len` columns, with overflow checks.
fn exact_dot(a: &[i64], b: &[i64], len: usize) -> Result<i64> {
    a[..len]
        .iter()
        .zip(&b[..len])
        .try_fold(0_i64, |acc, (&x, &y)| {
            x.checked_mul(y)
                .and_then(|p| acc.checked_add(p))
                .ok_or_else(overflow)
        })
}

/// Certifies `M Mᵀ = I` for a symbolic matrix using integer arithmetic only.
///
/// For each pair `i <= j` the integer sum `Σ_k c_ik c_jk` must equal `r_i`
/// on the diagonal and `0` elsewhere. When row `j` is constant over the
/// support of row `i` the sum collapses to `c_j1 · Σ_k c_ik`; otherwise the
/// sparse dot product is taken over the common support. Both routes are
/// exact. The first failing pair in row-major order is reported.
pub fn certify(matrix: &SymbolicMatrix) -> Result<Certification> {
    let n = matrix.order();
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    for row in &matrix.rows {
        check_len(n, row.coefficients.len())?;
        if row.radicand == 0 {
            return Err(Error::Domain("radicand must be positive".into()));
        }
    }
    let shapes = matrix
        .rows
        .iter()
        .map(|r| RowShape::of(&r.coefficients))
        .collect::<Result<Vec<_>>>()?;

    let mut pairs_checked = 0_u64;
    for i in 0..n {
        let row_i = &matrix.rows[i];
        for j in i..n {
            let row_j = &matrix.rows[j];
            let (si, sj) = (&shapes[i], &shapes[j]);
            let integer_sum = if i == j {
                exact_dot(&row_i.coefficients, &row_i.coefficients, si.support)?
            } else if si.support <= sj.flat_prefix {
                row_j.coefficients[0]
                    .checked_mul(si.sum)
                    .ok_or_else(overflow)?
            } else if sj.support <= si.flat_prefix {
                row_i.coefficients[0]
                    .checked_mul(sj.sum)
                    .ok_or_else(overflow)?
            } else {
                exact_dot(
                    &row_i.coefficients,
                    &row_j.coefficients,
                    si.support.min(sj.support),
                )?
            };
            pairs_checked += 1;
            let expected_sum = if i == j {
                i64::try_from(row_i.radicand).map_err(|_| overflow())?
            } else {
                0
            };
            if integer_sum != expected_sum {
                let shared_radicand = row_i
                    .radicand
                    .checked_mul(row_j.radicand)
                    .ok_or_else(overflow)?;
                return Ok(Certification::Fail {
                    order: n,
                    case: GramCase::classify(i + 1, j + 1, n),
                    entry: ExactGramEntry {
                        i: i + 1,
                        j: j + 1,
                        integer_sum,
                        shared_radicand,
                    },
                    expected_sum,
                });
            }
        }
    }
    Ok(Certification::Pass {
        order: n,
        pairs_checked,
    })
}

/// Exact certification of `O_n O_nᵀ = I`.
pub fn verify_orthogonality_exact(order: HelmertOrder) -> Result<Certification> {
    certify(&order.symbolic())
}

/// The exact Gram entry `p_ij` of `O_n O_nᵀ` (1-based), computed by a plain
/// sparse dot product over the symbolic entries.
pub fn exact_gram_entry(order: HelmertOrder, i: usize, j: usize) -> Result<ExactGramEntry> {
    let n = order.get();
    let a = order.symbolic_entry(i, 1)?;
    let b = order.symbolic_entry(j, 1)?;
    let mut integer_sum = 0_i64;
    for k in 1..=n {
        let (x, y) = (order.symbolic_entry(i, k)?, order.symbolic_entry(j, k)?);
        integer_sum = x
            .coefficient
            .checked_mul(y.coefficient)
            .and_then(|p| integer_sum.checked_add(p))
            .ok_or_else(overflow)?;
    }
    Ok(ExactGramEntry {
        i,
        j,
        integer_sum,
        shared_radicand: a.radicand * b.radicand,
    })
}

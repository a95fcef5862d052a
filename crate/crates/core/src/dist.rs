//! Distribution functions: standard normal, chi-square and the asymptotic
//! Kolmogorov distribution.

use serde::Serialize;

use crate::error::{Error, Result};

const EPS: f64 = 1e-16;
const TINY: f64 = 1e-300;
const MAX_ITER: usize = 100_000;

/// Chi-square degrees of freedom, `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreesOfFreedom(u32);

impl DegreesOfFreedom {
    pub fn new(k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain(
                "chi-square needs at least 1 degree of freedom".into(),
            ));
        }
        Ok(Self(k))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        return (std::f64::consts::PI / (std::f64::consts::PI * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + LANCZOS_G + 0.5;
    let a = LANCZOS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS[0], |acc, (i, c)| acc + c / (x + (i + 1) as f64));
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// `exp(-x + a ln x - ln Γ(a))`, the common prefactor of both expansions.
fn gamma_prefactor(a: f64, x: f64) -> f64 {
    (-x + a * x.ln() - ln_gamma(a)).exp()
}

/// Power series for `P(a, x)`; converges quickly for `x < a + 1`.
fn lower_gamma_series(a: f64, x: f64) -> f64 {
    let mut ap = a;
    let mut term = 1.0 / a;
    let mut sum = term;
    for _ in 0..MAX_ITER {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if term.abs() < sum.abs() * EPS {
            break;
        }
    }
    sum * gamma_prefactor(a, x)
}

/// Continued fraction for `Q(a, x)` by the modified Lentz scheme; used for `x >= a + 1`.
fn upper_gamma_fraction(a: f64, x: f64) -> f64 {
    let mut b = x + 1.0 - a;
    let mut c = 1.0 / TINY;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.abs() < TINY {
            d = TINY;
        }
        c = b + an / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    gamma_prefactor(a, x) * h
}

/// Regularised incomplete gamma `(P(a, x), Q(a, x))`, `a > 0`, `x >= 0`.
pub fn regularized_gamma(a: f64, x: f64) -> Result<(f64, f64)> {
    if a.is_nan() || a <= 0.0 || !a.is_finite() {
        return Err(Error::Domain(format!(
            "gamma shape must be positive and finite, got {a}"
        )));
    }
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!(
            "gamma argument must be >= 0, got {x}"
        )));
    }
    if x == 0.0 {
        return Ok((0.0, 1.0));
    }
    if x.is_infinite() {
        return Ok((1.0, 0.0));
    }
    Ok(if x < a + 1.0 {
        let p = lower_gamma_series(a, x).clamp(0.0, 1.0);
        (p, 1.0 - p)
    } else {
        let q = upper_gamma_fraction(a, x).clamp(0.0, 1.0);
        (1.0 - q, q)
    })
}

/// `P(X <= x)` for `X ~ χ²(k)`, i.e. `P(k/2, x/2)`.
pub fn chi2_cdf(k: DegreesOfFreedom, x: f64) -> Result<f64> {
    Ok(regularized_gamma(f64::from(k.0) / 2.0, x / 2.0)
        .map_err(|_| chi2_domain(x))?
        .0)
}

/// `P(X > x)` for `X ~ χ²(k)`, evaluated directly to keep accuracy in the tail.
pub fn chi2_sf(k: DegreesOfFreedom, x: f64) -> Result<f64> {
    Ok(regularized_gamma(f64::from(k.0) / 2.0, x / 2.0)
        .map_err(|_| chi2_domain(x))?
        .1)
}

fn chi2_domain(x: f64) -> Error {
    Error::Domain(format!("chi-square argument must be >= 0, got {x}"))
}

/// `erfc(x)` for `x >= 0`.
///
/// Below 2.5 the positive-term series
/// `erf(x) = 2/√π · e^{-x²} Σ 2ⁿ x^{2n+1} / (2n+1)!!` is used; above it, the
/// Laplace continued fraction `erfc(x) = e^{-x²}/√π · 1/(x + ½/(x + 1/(x + …)))`.
fn erfc_nonnegative(x: f64) -> f64 {
    let frac_2_sqrt_pi = std::f64::consts::FRAC_2_SQRT_PI;
    if x < 2.5 {
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        let mut k = 0.0;
        while term > sum * EPS {
            k += 1.0;
            term *= 2.0 * x2 / (2.0 * k + 1.0);
            sum += term;
        }
        1.0 - frac_2_sqrt_pi * (-x2).exp() * sum
    } else {
        let mut f = x;
        let mut c = x;
        let mut d = 0.0;
        for k in 1..MAX_ITER {
            let a = k as f64 / 2.0;
            d = x + a * d;
            if d.abs() < TINY {
                d = TINY;
            }
            c = x + a / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let delta = c * d;
            f *= delta;
            if (delta - 1.0).abs() < EPS {
                break;
            }
        }
        0.5 * frac_2_sqrt_pi * (-x * x).exp() / f
    }
}

/// Standard normal CDF `Φ(x)`. Exactly 0 below -40 and 1 above 40.
pub fn normal_cdf(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Usage(format!(
            "normal_cdf needs a finite argument, got {x}"
        )));
    }
    Ok(if x < -40.0 {
        0.0
    } else if x > 40.0 {
        1.0
    } else if x <= 0.0 {
        0.5 * erfc_nonnegative(-x / std::f64::consts::SQRT_2)
    } else {
        1.0 - 0.5 * erfc_nonnegative(x / std::f64::consts::SQRT_2)
    })
}

/// Series terms below this stop the Kolmogorov sum.
pub const KOLMOGOROV_TERM_CUTOFF: f64 = 1e-12;

/// Asymptotic Kolmogorov survival `Q(λ) = 2 Σ_{k>=1} (-1)^{k-1} e^{-2k²λ²}`.
///
/// The alternating series is cut when a term drops below
/// [`KOLMOGOROV_TERM_CUTOFF`]. Below `λ = 0.3` it is slow and badly
/// cancelling, so the equivalent theta-function form
/// `1 - √(2π)/λ Σ e^{-(2k-1)²π²/(8λ²)}` is used there instead.
pub fn kolmogorov_survival(lambda: f64) -> Result<f64> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::Domain(format!(
            "Kolmogorov argument must be >= 0, got {lambda}"
        )));
    }
    if lambda == 0.0 {
        return Ok(1.0);
    }
    let q = if lambda < 0.3 {
        let pi2 = std::f64::consts::PI * std::f64::consts::PI;
        let mut cdf = 0.0;
        for k in 1.. {
            let odd = (2 * k - 1) as f64;
            let term = (-odd * odd * pi2 / (8.0 * lambda * lambda)).exp();
            cdf += term;
            if term < KOLMOGOROV_TERM_CUTOFF * cdf.max(TINY) || term == 0.0 {
                break;
            }
        }
        1.0 - (2.0 * std::f64::consts::PI).sqrt() / lambda * cdf
    } else {
        let mut sum = 0.0;
        let mut sign = 1.0;
        for k in 1.. {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            sum += sign * term;
            sign = -sign;
            if term < KOLMOGOROV_TERM_CUTOFF {
                break;
            }
        }
        2.0 * sum
    };
    Ok(q.clamp(0.0, 1.0))
}

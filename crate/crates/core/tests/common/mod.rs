//! Independent reference computations for the tests. Nothing here calls
//! into the library's distribution or matrix code.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Adaptive Simpson quadrature of `f` over `[a, b]`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 50)
}

/// Φ(x) = 1/2 + ∫₀ˣ φ(t) dt.
pub fn normal_cdf_quadrature(x: f64) -> f64 {
    let density = |t: f64| (-0.5 * t * t).exp() / (2.0 * PI).sqrt();
    let half = adaptive_simpson(&density, 0.0, x.abs(), 1e-15);
    if x >= 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

/// Γ(k/2) by the recurrence Γ(s+1) = sΓ(s) from Γ(1) = 1 and Γ(1/2) = √π.
pub fn gamma_half_integer(k: u32) -> f64 {
    let (mut s, mut g) = if k.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (0.5, PI.sqrt())
    };
    while s < k as f64 / 2.0 {
        g *= s;
        s += 1.0;
    }
    g
}

/// χ²(k) CDF by quadrature after `t = u²`, which removes the `k = 1`
/// singularity: the integrand becomes `2 u^{k-1} e^{-u²/2} / (2^{k/2} Γ(k/2))`.
pub fn chi2_cdf_quadrature(k: u32, x: f64) -> f64 {
    let norm = 2.0_f64.powf(k as f64 / 2.0) * gamma_half_integer(k);
    let integrand = |u: f64| 2.0 * u.powi(k as i32 - 1) * (-0.5 * u * u).exp() / norm;
    adaptive_simpson(&integrand, 0.0, x.sqrt(), 1e-14)
}

/// Kolmogorov survival from a fixed number of series terms.
pub fn kolmogorov_series(lambda: f64, terms: u32) -> f64 {
    2.0 * (1..=terms)
        .map(|k| {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            sign * (-2.0 * (k * k) as f64 * lambda * lambda).exp()
        })
        .sum::<f64>()
}

/// Dense mat-vec straight from the defining formulas for the Helmert entries.
pub fn helmert_dense_oracle(n: usize) -> Vec<Vec<f64>> {
    (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| {
                    if i == n {
                        1.0 / (n as f64).sqrt()
                    } else {
                        let r = ((i * (i + 1)) as f64).sqrt();
                        if j <= i {
                            1.0 / r
                        } else if j == i + 1 {
                            -(i as f64) / r
                        } else {
                            0.0
                        }
                    }
                })
                .collect()
        })
        .collect()
}

pub fn matvec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Exact count of distinct |entries| of O_n, comparing squared values
/// c²/r as reduced rationals.
pub fn helmert_distinct_magnitudes(n: usize) -> usize {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let mut set = std::collections::BTreeSet::new();
    let mut push = |c2: u64, r: u64| {
        let g = gcd(c2, r).max(1);
        set.insert((c2 / g, r / g));
    };
    for i in 1..n {
        let r = (i * (i + 1)) as u64;
        push(1, r);
        push((i * i) as u64, r);
        if i + 1 < n {
            push(0, 1);
        }
    }
    push(1, n as u64);
    set.len()
}

/// Two-pass sum of squared deviations.
pub fn w_oracle(v: &[f64]) -> f64 {
    let m = v.iter().sum::<f64>() / v.len() as f64;
    v.iter().map(|x| (x - m) * (x - m)).sum()
}

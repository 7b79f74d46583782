//! Reference distribution functions computed by direct numerical
//! integration of the densities. Nothing here touches the library's special
//! functions, so agreement is an independent check.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Γ(k/2) by the half-integer recursion from Γ(1/2) = √π and Γ(1) = 1.
pub fn gamma_half(k: u32) -> f64 {
    assert!(k >= 1);
    let (mut z, mut g) = if k.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (0.5, PI.sqrt())
    };
    while z < f64::from(k) / 2.0 {
        g *= z;
        z += 1.0;
    }
    g
}

/// Composite Simpson rule with `panels` (even) subintervals.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let panels = panels + panels % 2;
    let h = (b - a) / panels as f64;
    let mut sum = f(a) + f(b);
    for i in 1..panels {
        let x = a + h * i as f64;
        sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    sum * h / 3.0
}

const PANELS: usize = 20_000;

/// χ²_k CDF via the substitution x = u², which removes the singularity
/// of the density at zero for k = 1.
pub fn chi2_cdf(x: f64, k: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let half = f64::from(k) / 2.0;
    let norm = 2.0f64.powf(half) * gamma_half(k);
    let g = |u: f64| 2.0 * u.powi(k as i32 - 1) * (-u * u / 2.0).exp() / norm;
    simpson(g, 0.0, x.sqrt(), PANELS)
}

/// Student t CDF with `nu` degrees of freedom.
pub fn t_cdf(x: f64, nu: u32) -> f64 {
    let v = f64::from(nu);
    let norm = gamma_half(nu + 1) / ((v * PI).sqrt() * gamma_half(nu));
    let dens = |s: f64| norm * (1.0 + s * s / v).powf(-(v + 1.0) / 2.0);
    let half = simpson(dens, 0.0, x.abs(), PANELS);
    if x >= 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

/// F(d1, d2) CDF, again integrating in u = √x.
pub fn f_cdf(x: f64, d1: u32, d2: u32) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let (a, b) = (f64::from(d1), f64::from(d2));
    let beta = gamma_half(d1) * gamma_half(d2) / gamma_half(d1 + d2);
    let norm = (a / b).powf(a / 2.0) / beta;
    let g = |u: f64| {
        let t = u * u;
        2.0 * norm * u.powi(d1 as i32 - 1) * (1.0 + a * t / b).powf(-(a + b) / 2.0)
    };
    simpson(g, 0.0, x.sqrt(), PANELS)
}

/// Inverts an increasing function by bisection on `[lo, hi]`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, target: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

pub fn chi2_quantile(p: f64, k: u32) -> f64 {
    bisect(|x| chi2_cdf(x, k), p, 0.0, 200.0)
}

pub fn t_quantile(p: f64, nu: u32) -> f64 {
    bisect(|x| t_cdf(x, nu), p, -100.0, 100.0)
}

//! Independent oracles shared by the integration suites.
#![allow(dead_code)]

use std::f64::consts::TAU;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unidisk::{NormalizedSeries, TruncatedSeries};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    c(rng.random_range(-scale..scale), rng.random_range(-scale..scale))
}

pub fn random_coeffs(rng: &mut ChaCha8Rng, order: usize) -> Vec<Complex64> {
    (0..=order).map(|_| random_complex(rng, 1.0)).collect()
}

pub fn random_normalized(rng: &mut ChaCha8Rng, order: usize) -> NormalizedSeries {
    let tail = random_coeffs(rng, order);
    NormalizedSeries::from_tail(order, |k| tail[k])
}

/// Full polynomial product, no truncation.
pub fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![c(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `Σ a_k g^k` expanded in full, with `g^k` built by repeated products.
pub fn poly_compose(a: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![c(0.0, 0.0)];
    let mut power = vec![c(1.0, 0.0)];
    for (k, ak) in a.iter().enumerate() {
        if k > 0 {
            power = poly_mul(&power, g);
        }
        if out.len() < power.len() {
            out.resize(power.len(), c(0.0, 0.0));
        }
        for (j, p) in power.iter().enumerate() {
            out[j] += ak * p;
        }
    }
    out
}

pub fn truncate(mut v: Vec<Complex64>, order: usize) -> Vec<Complex64> {
    v.resize(order + 1, c(0.0, 0.0));
    v
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Gauss–Legendre rule mapped to `[0, 1]`.
pub struct UnitQuadrature {
    pairs: Vec<(f64, f64)>,
}

impl UnitQuadrature {
    pub fn new(degree: usize) -> Self {
        let rule = GaussLegendre::new(degree.try_into().expect("positive degree"));
        let pairs = rule
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| (0.5 * (x + 1.0), 0.5 * w))
            .collect();
        Self { pairs }
    }

    pub fn integrate(&self, f: impl Fn(f64) -> Complex64) -> Complex64 {
        self.pairs.iter().map(|&(s, w)| f(s) * w).sum()
    }

    /// `(1+γ) ∫_0^1 s^{γ-1} f(sz) ds`, integrated in `u = sqrt(s)` so that
    /// fractional `γ` leaves a smooth integrand.
    pub fn bernardi(&self, f: &dyn Fn(Complex64) -> Complex64, gamma: f64, z: Complex64) -> Complex64 {
        self.integrate(|u| 2.0 * (1.0 + gamma) * u.powf(2.0 * gamma - 1.0) * f(z * (u * u)))
    }

    /// Applies `p -> e ∫_0^1 s^{e-1} p(sz) ds` for each exponent, last one
    /// outermost, by nested quadrature.
    pub fn stages(&self, p: &dyn Fn(Complex64) -> Complex64, exponents: &[f64], z: Complex64) -> Complex64 {
        match exponents.split_last() {
            None => p(z),
            Some((&e, rest)) => self.integrate(|s| e * s.powf(e - 1.0) * self.stages(p, rest, z * s)),
        }
    }
}

/// Taylor coefficients `0..=order` of `f` from `n` samples on `|z| = rho`.
pub fn dft_coefficients(f: impl Fn(Complex64) -> Complex64, rho: f64, n: usize, order: usize) -> Vec<Complex64> {
    let samples: Vec<Complex64> = (0..n).map(|j| f(Complex64::from_polar(rho, TAU * j as f64 / n as f64))).collect();
    (0..=order)
        .map(|k| {
            let sum: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, v)| v * Complex64::from_polar(1.0, -TAU * (j * k) as f64 / n as f64))
                .sum();
            sum / (n as f64 * rho.powi(k as i32))
        })
        .collect()
}

pub fn koebe_closed(z: Complex64) -> Complex64 {
    z / ((1.0 - z) * (1.0 - z))
}

pub fn moebius_closed(z: Complex64) -> Complex64 {
    (1.0 + z) / (1.0 - z)
}

pub fn coeffs(s: &TruncatedSeries) -> Vec<Complex64> {
    s.coeffs().to_vec()
}

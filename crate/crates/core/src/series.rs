//! Truncated complex power series about the origin.
//!
//! A [`TruncatedSeries`] of order `N` carries exactly `N + 1` coefficients
//! `c_0..c_N`. Every operation states the order of its output; binary
//! operations default to the minimum of the input orders.

use std::fmt;
use std::ops::{Add, Deref, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Truncation order used when callers do not pick one.
pub const DEFAULT_ORDER: usize = 64;

/// Threshold below which a constant term counts as zero.
pub const ZERO_CONSTANT_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Complex Taylor coefficients `c_0..c_N` of a function analytic near 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

/// Wire form: `{"order": N, "coeffs": [[re, im], ...]}`.
#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<SeriesRepr> for TruncatedSeries {
    type Error = Error;

    fn try_from(repr: SeriesRepr) -> Result<Self> {
        if repr.coeffs.len() != repr.order + 1 {
            return Err(Error::Malformed(format!(
                "order {} requires {} coefficients, found {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        if repr.coeffs.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Malformed("non-finite coefficient".into()));
        }
        Ok(Self {
            coeffs: repr
                .coeffs
                .into_iter()
                .map(|[re, im]| Complex64::new(re, im))
                .collect(),
        })
    }
}

impl From<TruncatedSeries> for SeriesRepr {
    fn from(s: TruncatedSeries) -> Self {
        SeriesRepr {
            order: s.order(),
            coeffs: s.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl TruncatedSeries {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Malformed("a series needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    /// Real coefficients, convenient for literals in tests and fixtures.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub(crate) fn from_vec(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub(crate) fn from_fn(order: usize, f: impl FnMut(usize) -> Complex64) -> Self {
        Self::from_vec((0..=order).map(f).collect())
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_vec(vec![ZERO; order + 1])
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = value;
        s
    }

    /// The unit constant series `1`.
    pub fn one(order: usize) -> Self {
        Self::constant(ONE, order)
    }

    /// The series `z`. At order 0 this is the zero series.
    pub fn z(order: usize) -> Self {
        let mut s = Self::zeros(order);
        if order >= 1 {
            s.coeffs[1] = ONE;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient `k`, or zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    /// Drops (or zero-pads) coefficients so that the result has the given order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_fn(order, |k| self.coeff(k))
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(usize, Complex64) -> Complex64) -> Self {
        Self::from_vec(self.coeffs.iter().enumerate().map(|(k, &c)| f(k, c)).collect())
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        self.map_coeffs(|_, c| c * factor)
    }

    /// Multiplication by `z`; order grows by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(ZERO);
        coeffs.extend_from_slice(&self.coeffs);
        Self::from_vec(coeffs)
    }

    /// Division by `z` for a series with `c_0 = 0`; order drops by one.
    pub fn shift_down(&self) -> Result<Self> {
        if self.coeffs[0] != ZERO {
            return Err(Error::InvalidParameter(
                "shift_down needs a vanishing constant term".into(),
            ));
        }
        if self.order() == 0 {
            return Ok(Self::zeros(0));
        }
        Ok(Self::from_vec(self.coeffs[1..].to_vec()))
    }

    /// Cauchy product, order `min(order a, order b)`.
    pub fn multiply(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self::from_fn(n, |k| {
            (0..=k).map(|j| self.coeffs[j] * other.coeffs[k - j]).sum()
        })
    }

    /// Quotient `self / other`, order `min` of the inputs.
    pub fn divide(&self, other: &Self) -> Result<Self> {
        let b0 = other.coeffs[0];
        if b0.norm() <= ZERO_CONSTANT_TOL {
            return Err(Error::DivisionBySingularSeries(b0.norm()));
        }
        let n = self.order().min(other.order());
        let mut q: Vec<Complex64> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let acc: Complex64 = (1..=k).map(|j| other.coeffs[j] * q[k - j]).sum();
            q.push((self.coeffs[k] - acc) / b0);
        }
        Ok(Self::from_vec(q))
    }

    /// `self ∘ inner` by Horner nesting, order `min` of the inputs.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.coeffs[0] != ZERO {
            return Err(Error::CompositionRequiresVanishingConstant);
        }
        let n = self.order().min(inner.order());
        let inner = inner.with_order(n);
        let mut acc = Self::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.multiply(&inner);
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Term-by-term derivative, order `N - 1` (order 0 maps to the zero series of order 0).
    pub fn differentiate(&self) -> Self {
        if self.order() == 0 {
            return Self::zeros(0);
        }
        Self::from_fn(self.order() - 1, |k| self.coeffs[k + 1] * (k + 1) as f64)
    }

    /// Antiderivative vanishing at 0, order `N + 1`.
    pub fn integrate_from_zero(&self) -> Self {
        Self::from_fn(self.order() + 1, |k| {
            if k == 0 {
                ZERO
            } else {
                self.coeffs[k - 1] / k as f64
            }
        })
    }

    fn check_principal_branch(&self) -> Result<Complex64> {
        let a0 = self.coeffs[0];
        if a0.norm() <= ZERO_CONSTANT_TOL || (a0.re < 0.0 && a0.im.abs() <= ZERO_CONSTANT_TOL) {
            return Err(Error::BranchPointAtOrigin(format!("{a0}")));
        }
        Ok(a0)
    }

    /// Principal logarithm, branch fixed by `c_0`; same order.
    pub fn principal_log(&self) -> Result<Self> {
        let a0 = self.check_principal_branch()?;
        let a = &self.coeffs;
        let mut l: Vec<Complex64> = Vec::with_capacity(a.len());
        l.push(a0.ln());
        for k in 1..a.len() {
            let acc: Complex64 = (1..k).map(|j| l[j] * a[k - j] * j as f64).sum();
            l.push((a[k] - acc / k as f64) / a0);
        }
        Ok(Self::from_vec(l))
    }

    /// Series exponential; same order.
    pub fn exp(&self) -> Self {
        let b = &self.coeffs;
        let mut e: Vec<Complex64> = Vec::with_capacity(b.len());
        e.push(b[0].exp());
        for k in 1..b.len() {
            let acc: Complex64 = (1..=k).map(|j| b[j] * e[k - j] * j as f64).sum();
            e.push(acc / k as f64);
        }
        Self::from_vec(e)
    }

    /// Principal power `exp(t log a)`, from the recurrence implied by `a g' = t a' g`.
    pub fn principal_power(&self, t: f64) -> Result<Self> {
        let a0 = self.check_principal_branch()?;
        let a = &self.coeffs;
        let mut g: Vec<Complex64> = Vec::with_capacity(a.len());
        g.push((a0.ln() * t).exp());
        for k in 1..a.len() {
            let acc: Complex64 = (1..=k)
                .map(|j| a[j] * g[k - j] * (t * j as f64 - (k - j) as f64))
                .sum();
            g.push(acc / (a0 * k as f64));
        }
        Ok(Self::from_vec(g))
    }

    /// Coefficients of `p(center + w)` as a polynomial in `w`, same order.
    ///
    /// Exact for the truncation polynomial (repeated synthetic division).
    pub fn recenter(&self, center: Complex64) -> Self {
        let mut d = self.coeffs.clone();
        let n = self.order();
        for i in 0..n {
            for k in (i..n).rev() {
                let next = d[k + 1];
                d[k] += center * next;
            }
        }
        Self::from_vec(d)
    }

    /// Horner evaluation of the truncation polynomial.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    /// Value, first and second derivative of the truncation polynomial at `z`.
    pub fn evaluate_jet(&self, z: Complex64) -> [Complex64; 3] {
        let mut p = ZERO;
        let mut dp = ZERO;
        let mut ddp = ZERO;
        for &c in self.coeffs.iter().rev() {
            ddp = ddp * z + dp * 2.0;
            dp = dp * z + p;
            p = p * z + c;
        }
        [p, dp, ddp]
    }

    /// Largest coefficientwise modulus difference over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})z^{k}")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::from_fn(n, |k| self.coeffs[k] + rhs.coeffs[k])
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let n = self.order().min(rhs.order());
        TruncatedSeries::from_fn(n, |k| self.coeffs[k] - rhs.coeffs[k])
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.map_coeffs(|_, c| -c)
    }
}

/// A series with `c_0 = 0` and `c_1 = 1` exactly (the class-S normalization).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TruncatedSeries", into = "TruncatedSeries")]
pub struct NormalizedSeries(TruncatedSeries);

impl TryFrom<TruncatedSeries> for NormalizedSeries {
    type Error = Error;

    fn try_from(series: TruncatedSeries) -> Result<Self> {
        Self::new(series)
    }
}

impl From<NormalizedSeries> for TruncatedSeries {
    fn from(f: NormalizedSeries) -> Self {
        f.0
    }
}

impl NormalizedSeries {
    pub fn new(series: TruncatedSeries) -> Result<Self> {
        if series.order() < 1 || series.coeffs[0] != ZERO || series.coeffs[1] != ONE {
            return Err(Error::NotNormalized);
        }
        Ok(Self(series))
    }

    /// Accepts `c_0 ≈ 0`, `c_1 ≈ 1` within `tol` and snaps them to exact values.
    pub fn snap(series: TruncatedSeries, tol: f64) -> Result<Self> {
        if series.order() < 1
            || series.coeffs[0].norm() > tol
            || (series.coeffs[1] - ONE).norm() > tol
        {
            return Err(Error::NotNormalized);
        }
        let mut coeffs = series.into_coeffs();
        coeffs[0] = ZERO;
        coeffs[1] = ONE;
        Ok(Self(TruncatedSeries::from_vec(coeffs)))
    }

    /// Builds `z + a_2 z^2 + ... + a_N z^N` from `a_k = f(k)` for `k >= 2`.
    pub fn from_tail(order: usize, mut f: impl FnMut(usize) -> Complex64) -> Self {
        assert!(order >= 1, "normalized series need order >= 1");
        Self(TruncatedSeries::from_fn(order, |k| match k {
            0 => ZERO,
            1 => ONE,
            _ => f(k),
        }))
    }

    /// The identity function `z`.
    pub fn identity(order: usize) -> Self {
        Self::from_tail(order, |_| ZERO)
    }

    pub fn as_series(&self) -> &TruncatedSeries {
        &self.0
    }

    pub fn into_series(self) -> TruncatedSeries {
        self.0
    }

    pub fn with_order(&self, order: usize) -> Self {
        assert!(order >= 1, "normalized series need order >= 1");
        Self(self.0.with_order(order))
    }

    /// `f(z)/z`, a series with constant term 1 and order `N - 1`.
    pub fn ratio(&self) -> TruncatedSeries {
        self.0.shift_down().expect("normalized series vanish at 0")
    }

    /// `g(z) = sqrt(f(z^2))`, the odd square-root transform.
    ///
    /// The output has order `2N - 1`, the highest order determined by `f`.
    /// Every even coefficient is exactly zero and `g_1 = 1`.
    pub fn sqrt_even_transform(&self) -> NormalizedSeries {
        let root = self
            .ratio()
            .principal_power(0.5)
            .expect("ratio of a normalized series has constant term 1");
        let order = 2 * self.order() - 1;
        let mut coeffs = vec![ZERO; order + 1];
        for (m, &c) in root.coeffs().iter().enumerate() {
            coeffs[2 * m + 1] = c;
        }
        coeffs[1] = ONE;
        Self(TruncatedSeries::from_vec(coeffs))
    }
}

impl Deref for NormalizedSeries {
    type Target = TruncatedSeries;

    fn deref(&self) -> &TruncatedSeries {
        &self.0
    }
}

impl AsRef<TruncatedSeries> for NormalizedSeries {
    fn as_ref(&self) -> &TruncatedSeries {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn koebe(order: usize) -> NormalizedSeries {
        NormalizedSeries::from_tail(order, |k| c(k as f64, 0.0))
    }

    fn moebius(order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |k| if k == 0 { ONE } else { c(2.0, 0.0) })
    }

    #[test]
    fn difference_of_squares() {
        let a = TruncatedSeries::from_real(&[1.0, 1.0, 0.0]).unwrap();
        let b = TruncatedSeries::from_real(&[1.0, -1.0, 0.0]).unwrap();
        let p = a.multiply(&b);
        assert_eq!(p.order(), 2);
        assert_eq!(p.coeffs(), &[c(1.0, 0.0), ZERO, c(-1.0, 0.0)]);
    }

    #[test]
    fn multiply_by_one_is_identity() {
        let a = TruncatedSeries::from_real(&[0.5, -2.0, 3.0, 7.5]).unwrap();
        assert_eq!(a.multiply(&TruncatedSeries::one(3)), a);
    }

    #[test]
    fn multiply_order_is_minimum() {
        let a = TruncatedSeries::one(5);
        let b = TruncatedSeries::one(3);
        assert_eq!(a.multiply(&b).order(), 3);
        assert_eq!(b.multiply(&a).order(), 3);
    }

    #[test]
    fn z_over_one_minus_z_squared_is_koebe() {
        let one_minus_z = TruncatedSeries::from_real(&[1.0, -1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
            .unwrap();
        let denom = one_minus_z.multiply(&one_minus_z);
        let inv = TruncatedSeries::one(8).divide(&denom).unwrap();
        let k = TruncatedSeries::z(8).multiply(&inv);
        for (n, a) in k.coeffs().iter().enumerate() {
            assert_eq!(*a, c(n as f64, 0.0));
        }
    }

    #[test]
    fn divide_self_is_one() {
        let a = TruncatedSeries::new(vec![c(2.0, 1.0), c(-1.0, 0.5), c(0.25, 3.0)]).unwrap();
        let q = a.divide(&a).unwrap();
        assert!(q.max_abs_diff(&TruncatedSeries::one(2)) < 1e-14);
    }

    #[test]
    fn divide_rejects_vanishing_constant() {
        let err = koebe(8).divide(&TruncatedSeries::z(8)).unwrap_err();
        assert!(matches!(err, Error::DivisionBySingularSeries(_)));
    }

    #[test]
    fn starlike_quotient_of_koebe_is_moebius() {
        let k = koebe(16);
        let zk = k.differentiate().shift_up();
        // z k'/k = (z k')/z / (k/z)
        let q = zk.shift_down().unwrap().divide(&k.ratio()).unwrap();
        assert!(q.max_abs_diff(&moebius(15)) < 1e-12);
        let back = q.multiply(&k.ratio());
        assert!(back.max_abs_diff(&zk.shift_down().unwrap()) < 1e-10);
    }

    #[test]
    fn compose_with_identity() {
        let f = koebe(10);
        let g = f.compose(&TruncatedSeries::z(10)).unwrap();
        assert_eq!(&g, f.as_series());
    }

    #[test]
    fn compose_moebius_with_negation() {
        let neg_z = TruncatedSeries::z(12).scale(c(-1.0, 0.0));
        let g = moebius(12).compose(&neg_z).unwrap();
        for (k, a) in g.coeffs().iter().enumerate() {
            let expected = if k == 0 { 1.0 } else if k % 2 == 1 { -2.0 } else { 2.0 };
            assert_eq!(*a, c(expected, 0.0));
        }
    }

    #[test]
    fn compose_koebe_with_half_z_matches_closed_form() {
        let half = TruncatedSeries::z(4).scale(c(0.5, 0.0));
        let g = koebe(4).compose(&half).unwrap();
        // k(z/2) = sum n 2^-n z^n
        for n in 0..=4 {
            assert!((g.coeff(n) - c(n as f64 / 2f64.powi(n as i32), 0.0)).norm() < 1e-15);
        }
        let big = koebe(64).compose(&TruncatedSeries::z(64).scale(c(0.5, 0.0))).unwrap();
        for j in 0..10 {
            let z = Complex64::from_polar(0.6, j as f64 * 0.7);
            let w = z * 0.5;
            let closed = w / ((ONE - w) * (ONE - w));
            assert!((big.evaluate(z) - closed).norm() < 1e-9);
        }
    }

    #[test]
    fn compose_rejects_nonzero_inner_constant() {
        let inner = TruncatedSeries::one(3);
        assert_eq!(
            koebe(3).compose(&inner).unwrap_err(),
            Error::CompositionRequiresVanishingConstant
        );
    }

    #[test]
    fn derivative_and_integral() {
        let f = TruncatedSeries::from_real(&[0.0, 1.0, 2.0]).unwrap();
        let d = f.differentiate();
        assert_eq!(d, TruncatedSeries::from_real(&[1.0, 4.0]).unwrap());
        assert_eq!(d.integrate_from_zero(), f);
        assert_eq!(f.integrate_from_zero().order(), 3);
        assert_eq!(TruncatedSeries::one(0).differentiate(), TruncatedSeries::zeros(0));
    }

    #[test]
    fn koebe_derivative_is_squares() {
        let d = koebe(10).differentiate();
        for (k, a) in d.coeffs().iter().enumerate() {
            assert_eq!(*a, c(((k + 1) * (k + 1)) as f64, 0.0));
        }
    }

    #[test]
    fn power_identities() {
        let a = TruncatedSeries::new(vec![c(1.5, 0.2), c(0.3, -1.0), c(2.0, 0.0)]).unwrap();
        assert!(a.principal_power(1.0).unwrap().max_abs_diff(&a) < 1e-14);
        let one = TruncatedSeries::one(6).principal_power(0.37).unwrap();
        assert_eq!(one, TruncatedSeries::one(6));
    }

    #[test]
    fn half_power_of_moebius_matches_closed_form() {
        let s = moebius(64).principal_power(0.5).unwrap();
        let head = [1.0, 1.0, 0.5, 0.5];
        for (k, &v) in head.iter().enumerate() {
            assert!((s.coeff(k) - c(v, 0.0)).norm() < 1e-14, "k={k}");
        }
        for j in 0..16 {
            let z = Complex64::from_polar(0.3, j as f64 * std::f64::consts::TAU / 16.0);
            let closed = ((ONE + z) / (ONE - z)).sqrt();
            assert!((s.evaluate(z) - closed).norm() < 1e-9);
        }
    }

    #[test]
    fn branch_point_rejected() {
        let neg = TruncatedSeries::from_real(&[-1.0, 1.0]).unwrap();
        assert!(matches!(neg.principal_power(0.5), Err(Error::BranchPointAtOrigin(_))));
        assert!(matches!(TruncatedSeries::z(3).principal_log(), Err(Error::BranchPointAtOrigin(_))));
    }

    #[test]
    fn log_exp_roundtrip() {
        let a = TruncatedSeries::new(vec![c(0.7, 0.4), c(0.3, -1.0), c(2.0, 0.5), c(-1.0, 0.0)]).unwrap();
        let back = a.principal_log().unwrap().exp();
        assert!(back.max_abs_diff(&a) < 1e-13);
    }

    #[test]
    fn sqrt_even_of_identity_and_koebe() {
        let g = NormalizedSeries::identity(4).sqrt_even_transform();
        assert_eq!(g.as_series(), &TruncatedSeries::z(7));

        let g = koebe(4).sqrt_even_transform();
        assert_eq!(g.order(), 7);
        for k in 0..=7 {
            let expected = if k % 2 == 1 { 1.0 } else { 0.0 };
            assert!((g.coeff(k) - c(expected, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn sqrt_even_c5_formula() {
        let f = NormalizedSeries::from_tail(3, |k| match k {
            2 => c(0.7, -0.3),
            _ => c(1.1, 0.4),
        });
        let g = f.sqrt_even_transform();
        let (a2, a3) = (f.coeff(2), f.coeff(3));
        let expected = (a3 - a2 * a2 / 4.0) / 2.0;
        assert!((g.coeff(5) - expected).norm() < 1e-15);
    }

    #[test]
    fn evaluate_examples() {
        assert!((moebius(64).evaluate(c(0.5, 0.0)) - c(3.0, 0.0)).norm() < 1e-9);
        let k = koebe(64).evaluate(c(-0.5, 0.0));
        assert!((k - c(-2.0 / 9.0, 0.0)).norm() < 1e-6);
        let a = TruncatedSeries::from_real(&[4.25, 1.0, 9.0]).unwrap();
        assert_eq!(a.evaluate(ZERO), c(4.25, 0.0));
    }

    #[test]
    fn jet_matches_series_derivatives() {
        let f = koebe(20);
        let z = c(0.3, -0.2);
        let [v, d, dd] = f.evaluate_jet(z);
        assert!((v - f.evaluate(z)).norm() < 1e-14);
        assert!((d - f.differentiate().evaluate(z)).norm() < 1e-13);
        assert!((dd - f.differentiate().differentiate().evaluate(z)).norm() < 1e-12);
    }

    #[test]
    fn recenter_reproduces_values() {
        let f = koebe(12);
        let center = c(0.2, 0.1);
        let shifted = f.recenter(center);
        for w in [c(0.1, 0.0), c(-0.05, 0.2), c(0.0, -0.3)] {
            assert!((shifted.evaluate(w) - f.evaluate(center + w)).norm() < 1e-12);
        }
        assert!((shifted.coeff(1) - f.differentiate().evaluate(center)).norm() < 1e-12);
    }

    #[test]
    fn json_wire_format() {
        let s = TruncatedSeries::new(vec![c(1.0, 0.0), c(0.5, -2.0)]).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"order":1,"coeffs":[[1.0,0.0],[0.5,-2.0]]}"#);
        let back: TruncatedSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        let bad = serde_json::from_str::<TruncatedSeries>(r#"{"order":2,"coeffs":[[1,0]]}"#);
        assert!(bad.is_err());
        let not_normalized = serde_json::from_str::<NormalizedSeries>(&text);
        assert!(not_normalized.is_err());
    }

    #[test]
    fn normalization_is_exact() {
        assert!(NormalizedSeries::new(TruncatedSeries::one(3)).is_err());
        let near = TruncatedSeries::new(vec![c(1e-13, 0.0), c(1.0 + 1e-13, 0.0), c(2.0, 0.0)]).unwrap();
        assert!(NormalizedSeries::new(near.clone()).is_err());
        let snapped = NormalizedSeries::snap(near, 1e-10).unwrap();
        assert_eq!(snapped.coeff(0), ZERO);
        assert_eq!(snapped.coeff(1), ONE);
    }
}

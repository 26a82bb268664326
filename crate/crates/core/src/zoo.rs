//! Canonical functions of the theory and constructors that turn a
//! Carathéodory series `h` (with `h(0) = 1`) into class members.
//!
//! Every constructor is a pure coefficient recurrence. When `h` has order
//! `N`, the constructed `f` has order `N + 1`: the data determines exactly
//! `a_1..a_{N+1}`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{NormalizedSeries, TruncatedSeries};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Stable identifiers of the named functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FunctionTag {
    /// `z/(1-z)^2`
    Koebe,
    /// `L_0(z) = (1+z)/(1-z)`
    Moebius,
    Identity,
    /// `z(1+z)/(1-z)`, extremal for `Re f/z > 0`.
    TheoremAExtremal,
    /// `-2 log(1-z) - z`, extremal for bounded turning.
    TheoremBExtremal,
    /// `z/(1-z)`, the normalized convex extremal.
    ConvexExtremal,
    /// Equality case of the Pommerenke inequality.
    PommerenkeExtremal { c1: Complex64, eps: Complex64 },
}

impl FunctionTag {
    pub fn name(&self) -> &'static str {
        match self {
            FunctionTag::Koebe => "koebe",
            FunctionTag::Moebius => "moebius",
            FunctionTag::Identity => "identity",
            FunctionTag::TheoremAExtremal => "thmA",
            FunctionTag::TheoremBExtremal => "thmB",
            FunctionTag::ConvexExtremal => "convex",
            FunctionTag::PommerenkeExtremal { .. } => "pommerenke",
        }
    }

    /// Closed-form value at `z`, used to cross-check truncations.
    pub fn closed_form(&self, z: Complex64) -> Complex64 {
        match *self {
            FunctionTag::Koebe => z / ((ONE - z) * (ONE - z)),
            FunctionTag::Moebius => (ONE + z) / (ONE - z),
            FunctionTag::Identity => z,
            FunctionTag::TheoremAExtremal => z * (ONE + z) / (ONE - z),
            FunctionTag::TheoremBExtremal => -2.0 * (ONE - z).ln() - z,
            FunctionTag::ConvexExtremal => z / (ONE - z),
            FunctionTag::PommerenkeExtremal { c1, eps } => {
                let num = ONE + (c1 + eps * c1.conj()) * z * 0.5 + eps * z * z;
                let den = ONE - (c1 - eps * c1.conj()) * z * 0.5 - eps * z * z;
                num / den
            }
        }
    }

    /// Closed-form derivative at `z`.
    pub fn closed_form_derivative(&self, z: Complex64) -> Complex64 {
        match *self {
            FunctionTag::Koebe => (ONE + z) / (ONE - z).powi(3),
            FunctionTag::Moebius => 2.0 / ((ONE - z) * (ONE - z)),
            FunctionTag::Identity => ONE,
            FunctionTag::TheoremAExtremal => (ONE + 2.0 * z - z * z) / ((ONE - z) * (ONE - z)),
            FunctionTag::TheoremBExtremal => (ONE + z) / (ONE - z),
            FunctionTag::ConvexExtremal => ONE / ((ONE - z) * (ONE - z)),
            FunctionTag::PommerenkeExtremal { c1, eps } => {
                let a = (c1 + eps * c1.conj()) * 0.5;
                let b = (c1 - eps * c1.conj()) * 0.5;
                let num = ONE + a * z + eps * z * z;
                let den = ONE - b * z - eps * z * z;
                let dnum = a + 2.0 * eps * z;
                let dden = -b - 2.0 * eps * z;
                (dnum * den - num * dden) / (den * den)
            }
        }
    }

    /// Truncated Taylor series of the tagged function.
    pub fn series(&self, order: usize) -> Result<TruncatedSeries> {
        Ok(match *self {
            FunctionTag::Koebe => koebe(order.max(1)).into_series(),
            FunctionTag::Moebius => moebius(order),
            FunctionTag::Identity => NormalizedSeries::identity(order.max(1)).into_series(),
            FunctionTag::TheoremAExtremal => theorem_a_extremal(order.max(1)).into_series(),
            FunctionTag::TheoremBExtremal => theorem_b_extremal(order.max(1)).into_series(),
            FunctionTag::ConvexExtremal => convex_extremal(order.max(1)).into_series(),
            FunctionTag::PommerenkeExtremal { c1, eps } => {
                crate::caratheodory::pommerenke_extremal(c1, eps, order)?
            }
        })
    }
}

impl fmt::Display for FunctionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "koebe" => FunctionTag::Koebe,
            "moebius" => FunctionTag::Moebius,
            "identity" => FunctionTag::Identity,
            "thmA" => FunctionTag::TheoremAExtremal,
            "thmB" => FunctionTag::TheoremBExtremal,
            "convex" => FunctionTag::ConvexExtremal,
            other => {
                return Err(Error::InvalidParameter(format!("unknown function tag `{other}`")))
            }
        })
    }
}

/// A tagged function with its truncated series.
#[derive(Clone, Debug)]
pub struct NamedFunction {
    pub tag: FunctionTag,
    pub series: TruncatedSeries,
}

impl NamedFunction {
    pub fn new(tag: FunctionTag, order: usize) -> Result<Self> {
        Ok(Self { tag, series: tag.series(order)? })
    }

    pub fn closed_form(&self, z: Complex64) -> Complex64 {
        self.tag.closed_form(z)
    }
}

/// Koebe function `z/(1-z)^2`: `a_n = n`.
pub fn koebe(order: usize) -> NormalizedSeries {
    NormalizedSeries::from_tail(order, |k| Complex64::new(k as f64, 0.0))
}

/// Möbius function `(1+z)/(1-z)`: `c_0 = 1`, `c_k = 2`.
pub fn moebius(order: usize) -> TruncatedSeries {
    TruncatedSeries::from_fn(order, |k| if k == 0 { ONE } else { Complex64::new(2.0, 0.0) })
}

/// `z/(1-z)`: `a_k = 1`, the identity of the Hadamard product on normalized series.
pub fn convex_extremal(order: usize) -> NormalizedSeries {
    NormalizedSeries::from_tail(order, |_| ONE)
}

/// `z(1+z)/(1-z)`.
pub fn theorem_a_extremal(order: usize) -> NormalizedSeries {
    from_ratio_positive(&moebius(order - 1)).expect("moebius has constant term 1")
}

/// `-2 log(1-z) - z`.
pub fn theorem_b_extremal(order: usize) -> NormalizedSeries {
    from_bounded_turning(&moebius(order - 1)).expect("moebius has constant term 1")
}

fn require_unit_constant(h: &TruncatedSeries) -> Result<()> {
    if h.coeff(0) != ONE {
        return Err(Error::NotCaratheodoryNormalized(format!("{}", h.coeff(0))));
    }
    Ok(())
}

/// `f` with `f(z)/z = h`: `a_k = c_{k-1}`.
pub fn from_ratio_positive(h: &TruncatedSeries) -> Result<NormalizedSeries> {
    require_unit_constant(h)?;
    NormalizedSeries::new(h.shift_up())
}

/// `f` with `f' = h`: `a_k = c_{k-1}/k`.
pub fn from_bounded_turning(h: &TruncatedSeries) -> Result<NormalizedSeries> {
    require_unit_constant(h)?;
    NormalizedSeries::new(h.integrate_from_zero())
}

/// Starlike `f` with `z f'/f = h`, via `(k-1) a_k = sum_{j=1}^{k-1} a_j c_{k-j}`.
pub fn from_starlike(h: &TruncatedSeries) -> Result<NormalizedSeries> {
    require_unit_constant(h)?;
    let c = h.coeffs();
    let order = h.order() + 1;
    let mut a = vec![Complex64::new(0.0, 0.0), ONE];
    for k in 2..=order {
        let s: Complex64 = (1..k).map(|j| a[j] * c[k - j]).sum();
        a.push(s / (k - 1) as f64);
    }
    NormalizedSeries::new(TruncatedSeries::new(a)?)
}

/// Close-to-convex `f` with `f'/g' = h`, via
/// `k a_k = k b_k + sum_{j=1}^{k-1} j b_j c_{k-j}`.
///
/// Convexity of `g` is the caller's obligation. Output order is
/// `min(order h + 1, order g)`.
pub fn from_close_to_convex(h: &TruncatedSeries, g: &NormalizedSeries) -> Result<NormalizedSeries> {
    require_unit_constant(h)?;
    let c = h.coeffs();
    let b = g.coeffs();
    let order = (h.order() + 1).min(g.order());
    let mut a = vec![Complex64::new(0.0, 0.0), ONE];
    for k in 2..=order {
        let s: Complex64 = (1..k).map(|j| b[j] * c[k - j] * j as f64).sum();
        a.push(b[k] + s / k as f64);
    }
    NormalizedSeries::new(TruncatedSeries::new(a)?)
}

/// `z f'`: `a_k -> k a_k`.
pub fn alexander_forward(f: &NormalizedSeries) -> NormalizedSeries {
    NormalizedSeries::from_tail(f.order(), |k| f.coeff(k) * k as f64)
}

/// Inverse of [`alexander_forward`]: `a_k -> a_k / k`.
pub fn alexander_inverse(f: &NormalizedSeries) -> NormalizedSeries {
    NormalizedSeries::from_tail(f.order(), |k| f.coeff(k) / k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn koebe_coefficients() {
        assert_eq!(koebe(3).coeffs(), &[c(0.0), c(1.0), c(2.0), c(3.0)]);
        assert_eq!(koebe(1), NormalizedSeries::identity(1));
        assert!((koebe(64).evaluate(c(0.25)) - c(0.25 / (9.0 / 16.0))).norm() < 1e-12);
    }

    #[test]
    fn moebius_coefficients() {
        assert_eq!(moebius(3).coeffs(), &[c(1.0), c(2.0), c(2.0), c(2.0)]);
        assert_eq!(moebius(0), TruncatedSeries::one(0));
        let v = moebius(64).evaluate(Complex64::new(0.0, 0.5));
        assert!((v - Complex64::new(0.6, 0.8)).norm() < 1e-8);
    }

    #[test]
    fn named_functions_match_closed_forms() {
        let tags = [
            FunctionTag::Koebe,
            FunctionTag::Moebius,
            FunctionTag::Identity,
            FunctionTag::TheoremAExtremal,
            FunctionTag::TheoremBExtremal,
            FunctionTag::ConvexExtremal,
            FunctionTag::PommerenkeExtremal { c1: Complex64::new(0.4, -1.1), eps: Complex64::from_polar(1.0, 2.0) },
        ];
        for tag in tags {
            let f = NamedFunction::new(tag, 64).unwrap();
            for j in 0..24 {
                let z = Complex64::from_polar(0.5 * (1 + j % 3) as f64 / 3.0, j as f64 * 0.41);
                let err = (f.series.evaluate(z) - f.closed_form(z)).norm();
                assert!(err < 1e-6, "{tag}: {err}");
                let d = f.series.differentiate().evaluate(z);
                assert!((d - tag.closed_form_derivative(z)).norm() < 1e-6, "{tag} derivative");
            }
        }
    }

    #[test]
    fn tags_roundtrip() {
        for name in ["koebe", "moebius", "identity", "thmA", "thmB", "convex"] {
            assert_eq!(name.parse::<FunctionTag>().unwrap().name(), name);
        }
        assert!("bazilevic".parse::<FunctionTag>().is_err());
    }

    #[test]
    fn ratio_positive_examples() {
        let f = from_ratio_positive(&moebius(5)).unwrap();
        assert_eq!(f.coeffs(), &[c(0.0), c(1.0), c(2.0), c(2.0), c(2.0), c(2.0), c(2.0)]);
        assert_eq!(from_ratio_positive(&TruncatedSeries::one(4)).unwrap(), NormalizedSeries::identity(5));
        assert!(matches!(
            from_ratio_positive(&TruncatedSeries::zeros(3)),
            Err(Error::NotCaratheodoryNormalized(_))
        ));
    }

    #[test]
    fn bounded_turning_examples() {
        let f = from_bounded_turning(&moebius(10)).unwrap();
        for k in 2..=11 {
            assert!((f.coeff(k) - c(2.0 / k as f64)).norm() < 1e-15);
        }
        assert_eq!(from_bounded_turning(&TruncatedSeries::one(4)).unwrap(), NormalizedSeries::identity(5));
    }

    #[test]
    fn starlike_examples() {
        let f = from_starlike(&moebius(63)).unwrap();
        assert!(f.max_abs_diff(&koebe(64)) < 1e-10);
        assert_eq!(from_starlike(&TruncatedSeries::one(6)).unwrap(), NormalizedSeries::identity(7));
    }

    #[test]
    fn close_to_convex_examples() {
        let f = from_close_to_convex(&moebius(63), &convex_extremal(64)).unwrap();
        assert_eq!(f.order(), 64);
        assert!(f.max_abs_diff(&koebe(64)) < 1e-10);
        let g = alexander_inverse(&koebe(12));
        let f = from_close_to_convex(&TruncatedSeries::one(20), &g).unwrap();
        assert!(f.max_abs_diff(&g) < 1e-15);
    }

    #[test]
    fn alexander_pair() {
        assert_eq!(alexander_inverse(&koebe(9)), convex_extremal(9));
        let id = NormalizedSeries::identity(5);
        assert_eq!(alexander_forward(&id), id);
        let f = theorem_b_extremal(12);
        assert!(alexander_forward(&alexander_inverse(&f)).max_abs_diff(&f) < 1e-15);
    }
}

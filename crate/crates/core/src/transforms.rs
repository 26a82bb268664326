//! Univalence-preserving maps of normalized series, the Libera/Bernardi
//! integrals, Hadamard convolution, linear sums and the iterated integral
//! transforms of Carathéodory series.
//!
//! Integral transforms are closed-form coefficient maps:
//!
//! | transform | coefficient action |
//! |---|---|
//! | Libera `(2/z)∫f` | `a_k -> 2 a_k/(k+1)` |
//! | Bernardi `((1+γ)/z^γ)∫t^{γ-1}f` | `a_k -> (1+γ) a_k/(k+γ)` |
//! | `p_n = (α/z^α)∫t^{α-1}p_{n-1}` | `c_k -> (α/(α+k))^n c_k` |
//! | `p_{σ,m}` stage | `c_k -> (σ-m+1)/(σ-m+1+k) c_k` |

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::probe::{winding_number, ProbeGrid};
use crate::series::{NormalizedSeries, TruncatedSeries, ZERO_CONSTANT_TOL};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Tolerance for re-normalizing after the disk automorphism.
const AUTOMORPHISM_NORMALIZATION_TOL: f64 = 1e-10;

/// A univalence-preserving transformation with validated parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum TransformSpec {
    /// `conj(f(conj z))`
    Conjugation,
    /// `e^{-iθ} f(e^{iθ} z)`
    Rotation { theta: f64 },
    /// `f(rz)/r`, `0 < r < 1`
    Dilation { r: f64 },
    /// `[f((z+σ)/(1+σ̄z)) - f(σ)] / [(1-|σ|²) f'(σ)]`, `|σ| < 1`
    DiskAutomorphism { sigma: Complex64 },
    /// `ξ f/(ξ - f)` for an omitted value `ξ ≠ 0`
    OmittedValue { xi: Complex64 },
    /// `sqrt(f(z²))`
    SquareRoot,
    /// `φ(f(z))` for a normalized `φ`
    RangeCompose { outer: NormalizedSeries },
    Libera,
    /// Bernardi integral, `γ > -1`
    Bernardi { gamma: f64 },
    /// `(1-t) f + t ψ`, `t ∈ [0, 1]`
    LinearSum { other: NormalizedSeries, t: f64 },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl TransformSpec {
    pub fn rotation(theta: f64) -> Result<Self> {
        let spec = TransformSpec::Rotation { theta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn dilation(r: f64) -> Result<Self> {
        let spec = TransformSpec::Dilation { r };
        spec.validate()?;
        Ok(spec)
    }

    pub fn disk_automorphism(sigma: Complex64) -> Result<Self> {
        let spec = TransformSpec::DiskAutomorphism { sigma };
        spec.validate()?;
        Ok(spec)
    }

    pub fn omitted_value(xi: Complex64) -> Result<Self> {
        let spec = TransformSpec::OmittedValue { xi };
        spec.validate()?;
        Ok(spec)
    }

    pub fn bernardi(gamma: f64) -> Result<Self> {
        let spec = TransformSpec::Bernardi { gamma };
        spec.validate()?;
        Ok(spec)
    }

    pub fn linear_sum(other: NormalizedSeries, t: f64) -> Result<Self> {
        let spec = TransformSpec::LinearSum { other, t };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the parameter domains.
    pub fn validate(&self) -> Result<()> {
        match self {
            TransformSpec::Rotation { theta } if !theta.is_finite() => Err(invalid("rotation angle must be finite")),
            TransformSpec::Dilation { r } if !(*r > 0.0 && *r < 1.0) => {
                Err(invalid(format!("dilation radius must lie in (0, 1), got {r}")))
            }
            TransformSpec::DiskAutomorphism { sigma } if !(sigma.norm() < 1.0) => {
                Err(invalid(format!("automorphism center must satisfy |σ| < 1, got {sigma}")))
            }
            TransformSpec::OmittedValue { xi } if !(xi.norm() > 0.0) || !xi.re.is_finite() || !xi.im.is_finite() => {
                Err(invalid("omitted value must be finite and nonzero"))
            }
            TransformSpec::Bernardi { gamma } if !(*gamma > -1.0) || !gamma.is_finite() => {
                Err(invalid(format!("Bernardi parameter must exceed -1, got {gamma}")))
            }
            TransformSpec::LinearSum { t, .. } if !(0.0..=1.0).contains(t) => {
                Err(invalid(format!("linear-sum weight must lie in [0, 1], got {t}")))
            }
            _ => Ok(()),
        }
    }
}

/// Applies a transformation; the output has the order of `f` (or the
/// minimum order of both operands for compositions and sums).
pub fn apply(spec: &TransformSpec, f: &NormalizedSeries) -> Result<NormalizedSeries> {
    apply_with_grid(spec, f, &omitted_value_grid())
}

/// Grid on which [`TransformSpec::OmittedValue`] checks attainment.
///
/// Radii stop at 0.8 so that the order-64 truncations of the extremal
/// functions are still accurate to about 1e-5 there.
pub fn omitted_value_grid() -> ProbeGrid {
    ProbeGrid::new(vec![0.2, 0.4, 0.6, 0.8], 512).expect("static grid is valid")
}

/// [`apply`] with an explicit grid for the omitted-value check.
pub fn apply_with_grid(spec: &TransformSpec, f: &NormalizedSeries, grid: &ProbeGrid) -> Result<NormalizedSeries> {
    spec.validate()?;
    let order = f.order();
    match spec {
        TransformSpec::Conjugation => Ok(NormalizedSeries::from_tail(order, |k| f.coeff(k).conj())),
        TransformSpec::Rotation { theta } => Ok(NormalizedSeries::from_tail(order, |k| {
            f.coeff(k) * Complex64::from_polar(1.0, (k - 1) as f64 * theta)
        })),
        TransformSpec::Dilation { r } => {
            Ok(NormalizedSeries::from_tail(order, |k| f.coeff(k) * r.powi(k as i32 - 1)))
        }
        TransformSpec::DiskAutomorphism { sigma } => disk_automorphism(f, *sigma),
        TransformSpec::OmittedValue { xi } => omitted_value(f, *xi, grid),
        TransformSpec::SquareRoot => Ok(f.sqrt_even_transform().with_order(order)),
        TransformSpec::RangeCompose { outer } => NormalizedSeries::new(outer.compose(f)?),
        TransformSpec::Libera => Ok(libera(f)),
        TransformSpec::Bernardi { gamma } => bernardi(f, *gamma),
        TransformSpec::LinearSum { other, t } => NormalizedSeries::new(linear_sum(f, other, *t)?),
    }
}

fn disk_automorphism(f: &NormalizedSeries, sigma: Complex64) -> Result<NormalizedSeries> {
    let order = f.order();
    // f(σ + w) as a polynomial in w; the automorphism is σ + w(z).
    let mut shifted = f.recenter(sigma).into_coeffs();
    let derivative_at_sigma = shifted[1];
    if derivative_at_sigma.norm() <= ZERO_CONSTANT_TOL {
        return Err(invalid(format!("f'(σ) vanishes at σ = {sigma}")));
    }
    shifted[0] = ZERO;
    let shrink = 1.0 - sigma.norm_sqr();
    let w = TruncatedSeries::from_fn(order, |k| match k {
        0 => ZERO,
        _ => (-sigma.conj()).powi(k as i32 - 1) * shrink,
    });
    let composed = TruncatedSeries::new(shifted)?.compose(&w)?;
    NormalizedSeries::snap(
        composed.scale(ONE / (derivative_at_sigma * shrink)),
        AUTOMORPHISM_NORMALIZATION_TOL,
    )
}

fn omitted_value(f: &NormalizedSeries, xi: Complex64, grid: &ProbeGrid) -> Result<NormalizedSeries> {
    for &r in grid.radii() {
        match winding_number(|z| f.evaluate(z) - xi, r, grid.angles_per_circle()) {
            Some(0) => {}
            _ => return Err(Error::OmittedValueAttained(format!("{xi}"))),
        }
    }
    // ξ f/(ξ - f) = f / (1 - f/ξ)
    let denominator = &TruncatedSeries::one(f.order()) - &f.scale(ONE / xi);
    NormalizedSeries::new(f.divide(&denominator)?)
}

/// `(2/z)∫_0^z f`: `a_k -> 2 a_k/(k+1)`.
pub fn libera(f: &NormalizedSeries) -> NormalizedSeries {
    NormalizedSeries::from_tail(f.order(), |k| f.coeff(k) * (2.0 / (k + 1) as f64))
}

/// Kernel `z + Σ 2/(k+1) z^k` whose convolution with `f` is the Libera transform.
pub fn libera_kernel(order: usize) -> NormalizedSeries {
    NormalizedSeries::from_tail(order, |k| Complex64::new(2.0 / (k + 1) as f64, 0.0))
}

/// Bernardi integral `((1+γ)/z^γ)∫_0^z t^{γ-1} f(t) dt`: `a_k -> (1+γ) a_k/(k+γ)`.
pub fn bernardi(f: &NormalizedSeries, gamma: f64) -> Result<NormalizedSeries> {
    TransformSpec::Bernardi { gamma }.validate()?;
    Ok(NormalizedSeries::from_tail(f.order(), |k| {
        f.coeff(k) * ((1.0 + gamma) / (k as f64 + gamma))
    }))
}

/// Hadamard product: coefficientwise `a_k b_k`, order `min`.
pub fn convolve(f: &TruncatedSeries, g: &TruncatedSeries) -> TruncatedSeries {
    let n = f.order().min(g.order());
    f.with_order(n).map_coeffs(|k, a| a * g.coeff(k))
}

/// `(1-t) φ + t ψ`, order `min`.
pub fn linear_sum(phi: &TruncatedSeries, psi: &TruncatedSeries, t: f64) -> Result<TruncatedSeries> {
    if !(0.0..=1.0).contains(&t) {
        return Err(invalid(format!("linear-sum weight must lie in [0, 1], got {t}")));
    }
    let n = phi.order().min(psi.order());
    Ok(phi.with_order(n).map_coeffs(|k, a| a * (1.0 - t) + psi.coeff(k) * t))
}

fn require_unit_constant(p: &TruncatedSeries) -> Result<()> {
    if p.coeff(0) != ONE {
        return Err(Error::NotCaratheodoryNormalized(format!("{}", p.coeff(0))));
    }
    Ok(())
}

/// `n`-fold iteration of `p -> (α/z^α)∫_0^z t^{α-1} p(t) dt`.
///
/// Each stage multiplies `c_k` by `α/(α+k)`, applied one stage at a time so
/// that splitting `n` into `n1 + n2` reproduces the same floating-point result.
pub fn iterate_alpha(p: &TruncatedSeries, alpha: f64, n: usize) -> Result<TruncatedSeries> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(invalid(format!("α must be positive, got {alpha}")));
    }
    require_unit_constant(p)?;
    Ok(p.map_coeffs(|k, c| {
        let factor = alpha / (alpha + k as f64);
        (0..n).fold(c, |acc, _| acc * factor)
    }))
}

/// `p_{σ,n}`: stage `m = 1..n` applies `(σ-m+1)/z^{σ-m+1} ∫_0^z t^{σ-m} p_{σ,m-1}(t) dt`.
///
/// Requires `σ > n - 1` so every stage exponent is positive.
pub fn iterate_sigma(p: &TruncatedSeries, sigma: f64, n: usize) -> Result<TruncatedSeries> {
    if !sigma.is_finite() || (n > 0 && !(sigma > (n - 1) as f64)) {
        return Err(invalid(format!("σ must exceed n - 1 = {}, got {sigma}", n as f64 - 1.0)));
    }
    require_unit_constant(p)?;
    Ok(p.map_coeffs(|k, c| {
        (1..=n).fold(c, |acc, m| {
            let exponent = sigma - m as f64 + 1.0;
            acc * (exponent / (exponent + k as f64))
        })
    }))
}

//! Carathéodory functions: `h(0) = 1`, `Re h > 0` on the disk.
//!
//! Covers the Herglotz and Schwarz representations, the Janowski
//! generalization, the positivity-preserving transformations, a seeded
//! sampler over discrete Herglotz measures, and the sharp coefficient
//! inequalities `|c_k| <= 2` and `|c_2 - c_1²/2| <= 2 - |c_1|²/2`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::probe::ProbeGrid;
use crate::series::{TruncatedSeries, ZERO_CONSTANT_TOL};

/// Margins below `-VIOLATION_TOL` count as violations.
pub const VIOLATION_TOL: f64 = 1e-9;

/// Allowed deviation of the total mass from 1.
pub const MASS_TOL: f64 = 1e-12;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Discrete probability measure on `[0, 2π)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MeasureRepr", into = "MeasureRepr")]
pub struct HerglotzMeasure {
    atoms: Vec<(f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct MeasureRepr {
    atoms: Vec<[f64; 2]>,
}

impl TryFrom<MeasureRepr> for HerglotzMeasure {
    type Error = Error;

    fn try_from(repr: MeasureRepr) -> Result<Self> {
        Self::new(repr.atoms.into_iter().map(|[t, mu]| (t, mu)).collect())
    }
}

impl From<HerglotzMeasure> for MeasureRepr {
    fn from(m: HerglotzMeasure) -> Self {
        MeasureRepr { atoms: m.atoms.into_iter().map(|(t, mu)| [t, mu]).collect() }
    }
}

impl HerglotzMeasure {
    /// Atoms `(angle, weight)`; angles are reduced into `[0, 2π)`.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("at least one atom is required".into()));
        }
        if atoms.iter().any(|&(t, mu)| !t.is_finite() || !mu.is_finite()) {
            return Err(Error::InvalidMeasure("atoms must be finite".into()));
        }
        if atoms.iter().any(|&(_, mu)| mu < 0.0) {
            return Err(Error::InvalidMeasure("weights must be nonnegative".into()));
        }
        let mass: f64 = atoms.iter().map(|&(_, mu)| mu).sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::InvalidMeasure(format!("total mass is {mass}, expected 1")));
        }
        let atoms = atoms
            .into_iter()
            .map(|(t, mu)| {
                let t = t.rem_euclid(TAU);
                // rem_euclid can round up to exactly 2π
                (if t >= TAU { 0.0 } else { t }, mu)
            })
            .collect();
        Ok(Self { atoms })
    }

    pub fn point_mass(angle: f64) -> Self {
        Self::new(vec![(angle, 1.0)]).expect("a unit point mass is a valid measure")
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    /// `c_0 = 1`, `c_k = 2 Σ_j μ_j e^{-ik t_j}`.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_fn(order, |k| {
            if k == 0 {
                return ONE;
            }
            self.atoms
                .iter()
                .map(|&(t, mu)| Complex64::from_polar(2.0 * mu, -(k as f64) * t))
                .sum()
        })
    }

    /// Closed-form `Σ_j μ_j (e^{it_j} + z)/(e^{it_j} - z)`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.atoms
            .iter()
            .map(|&(t, mu)| {
                let e = Complex64::from_polar(1.0, t);
                (e + z) / (e - z) * mu
            })
            .sum()
    }
}

/// Series of the Carathéodory function with Herglotz measure `m`.
pub fn herglotz_to_series(m: &HerglotzMeasure, order: usize) -> TruncatedSeries {
    m.to_series(order)
}

/// Seeded sampler of discrete Herglotz measures.
///
/// Angles are uniform on `[0, 2π)`; weights are the spacings of sorted
/// uniforms (a flat Dirichlet draw). One ChaCha stream feeds both.
#[derive(Clone, Debug)]
pub struct HerglotzSampler {
    rng: ChaCha8Rng,
}

impl HerglotzSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn measure(&mut self, n_atoms: usize) -> Result<HerglotzMeasure> {
        if n_atoms == 0 {
            return Err(Error::InvalidParameter("n_atoms must be at least 1".into()));
        }
        let angles: Vec<f64> = (0..n_atoms).map(|_| self.rng.random_range(0.0..TAU)).collect();
        let mut cuts: Vec<f64> = (1..n_atoms).map(|_| self.rng.random::<f64>()).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.insert(0, 0.0);
        cuts.push(1.0);
        let mut weights: Vec<f64> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
        // absorb rounding so the mass is 1 to the last bit we can manage
        let drift: f64 = 1.0 - weights.iter().sum::<f64>();
        weights[n_atoms - 1] += drift;
        HerglotzMeasure::new(angles.into_iter().zip(weights).collect())
    }

    pub fn series(&mut self, n_atoms: usize, order: usize) -> Result<TruncatedSeries> {
        Ok(self.measure(n_atoms)?.to_series(order))
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// Deterministic sample of a Carathéodory series for a given seed.
pub fn sample(seed: u64, n_atoms: usize, order: usize) -> Result<TruncatedSeries> {
    HerglotzSampler::new(seed).series(n_atoms, order)
}

/// Analytic `ϑ` with `ϑ(0) = 0` (the unit bound is probed, not assumed).
#[derive(Clone, Debug, PartialEq)]
pub struct SchwarzFunction(TruncatedSeries);

impl SchwarzFunction {
    pub fn new(series: TruncatedSeries) -> Result<Self> {
        if series.coeff(0) != ZERO {
            return Err(Error::NotSchwarzNormalized);
        }
        Ok(Self(series))
    }

    /// `ϑ(z) = z`.
    pub fn identity(order: usize) -> Self {
        Self(TruncatedSeries::z(order))
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.0
    }
}

/// `h = (1 + ϑ)/(1 - ϑ)`.
pub fn schwarz_to_h(theta: &SchwarzFunction) -> TruncatedSeries {
    let one = TruncatedSeries::one(theta.0.order());
    (&one + &theta.0)
        .divide(&(&one - &theta.0))
        .expect("denominator has constant term 1")
}

/// `ϑ = (h - 1)/(h + 1)`.
pub fn h_to_schwarz(h: &TruncatedSeries) -> Result<SchwarzFunction> {
    require_unit_constant(h)?;
    let one = TruncatedSeries::one(h.order());
    let denominator = h + &one;
    if denominator.coeff(0).norm() <= ZERO_CONSTANT_TOL {
        return Err(Error::ConstantDenominatorZero);
    }
    let mut theta = (h - &one).divide(&denominator)?.into_coeffs();
    theta[0] = ZERO;
    SchwarzFunction::new(TruncatedSeries::new(theta)?)
}

/// Janowski parameters `-1 <= b < a <= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JanowskiParams {
    a: f64,
    b: f64,
}

impl JanowskiParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(-1.0 <= b && b < a && a <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "Janowski parameters need -1 <= b < a <= 1, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }

    /// `(a, b) = (1, -1)`, the Carathéodory class itself.
    pub fn caratheodory() -> Self {
        Self { a: 1.0, b: -1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }
}

/// `h = (1 + aϑ)/(1 + bϑ)`.
pub fn janowski(theta: &SchwarzFunction, params: JanowskiParams) -> TruncatedSeries {
    let one = TruncatedSeries::one(theta.0.order());
    let num = &one + &theta.0.scale(Complex64::new(params.a, 0.0));
    let den = &one + &theta.0.scale(Complex64::new(params.b, 0.0));
    num.divide(&den).expect("denominator has constant term 1")
}

/// Transformations mapping Carathéodory functions to Carathéodory functions.
#[derive(Clone, Debug, PartialEq)]
pub enum Preservation {
    /// (i) `g(e^{it} z)`, `t` real
    Rotate { t: f64 },
    /// (ii) `g(tz)`, `t ∈ [-1, 1]`
    Dilate { t: f64 },
    /// (iii) `g((z+t)/(1+t̄z)) / g(t)`, `|t| < 1`
    Automorphism { t: Complex64 },
    /// (iv) `(g + it)/(1 + itg)`, `t` real
    HalfPlaneTwist { t: f64 },
    /// (v) `g^t`, `t ∈ [-1, 1]`
    Power { t: f64 },
    /// (vi) `g^t h^τ`, `t, τ, t + τ ∈ [0, 1]`
    ProductPower { h: TruncatedSeries, t: f64, tau: f64 },
}

impl Preservation {
    pub fn label(&self) -> &'static str {
        match self {
            Preservation::Rotate { .. } => "i",
            Preservation::Dilate { .. } => "ii",
            Preservation::Automorphism { .. } => "iii",
            Preservation::HalfPlaneTwist { .. } => "iv",
            Preservation::Power { .. } => "v",
            Preservation::ProductPower { .. } => "vi",
        }
    }

    fn validate(&self) -> Result<()> {
        let unit = |t: f64| (0.0..=1.0).contains(&t);
        let ok = match self {
            Preservation::Rotate { t } | Preservation::HalfPlaneTwist { t } => t.is_finite(),
            Preservation::Dilate { t } | Preservation::Power { t } => (-1.0..=1.0).contains(t),
            Preservation::Automorphism { t } => t.norm() < 1.0,
            Preservation::ProductPower { t, tau, .. } => unit(*t) && unit(*tau) && unit(t + tau),
        };
        if !ok {
            return Err(Error::InvalidParameter(format!("parameter out of range for transformation ({})", self.label())));
        }
        Ok(())
    }
}

/// Applies a positivity-preserving transformation to `g`.
///
/// The constant term of the output is checked to be 1 within 1e-12 and
/// then set to exactly 1.
pub fn preserve(kind: &Preservation, g: &TruncatedSeries) -> Result<TruncatedSeries> {
    kind.validate()?;
    require_unit_constant(g)?;
    let p = match kind {
        Preservation::Rotate { t } => g.map_coeffs(|k, c| c * Complex64::from_polar(1.0, k as f64 * t)),
        Preservation::Dilate { t } => g.map_coeffs(|k, c| c * t.powi(k as i32)),
        Preservation::Automorphism { t } => {
            let shifted = g.recenter(*t);
            let at_t = shifted.coeff(0);
            if at_t.norm() <= ZERO_CONSTANT_TOL {
                return Err(Error::ConstantDenominatorZero);
            }
            let shrink = 1.0 - t.norm_sqr();
            let w = TruncatedSeries::from_fn(g.order(), |k| match k {
                0 => ZERO,
                _ => (-t.conj()).powi(k as i32 - 1) * shrink,
            });
            shifted.compose(&w)?.scale(ONE / at_t)
        }
        Preservation::HalfPlaneTwist { t } => {
            let it = I * *t;
            let num = g.map_coeffs(|k, c| if k == 0 { c + it } else { c });
            let den = g.map_coeffs(|k, c| if k == 0 { ONE + it * c } else { it * c });
            num.divide(&den)?
        }
        Preservation::Power { t } => g.principal_power(*t)?,
        Preservation::ProductPower { h, t, tau } => {
            require_unit_constant(h)?;
            g.principal_power(*t)?.multiply(&h.principal_power(*tau)?)
        }
    };
    let c0 = p.coeff(0);
    if (c0 - ONE).norm() > ZERO_CONSTANT_TOL {
        return Err(Error::NotCaratheodoryNormalized(format!("{c0}")));
    }
    let mut coeffs = p.into_coeffs();
    coeffs[0] = ONE;
    TruncatedSeries::new(coeffs)
}

fn require_unit_constant(h: &TruncatedSeries) -> Result<()> {
    if h.coeff(0) != ONE {
        return Err(Error::NotCaratheodoryNormalized(format!("{}", h.coeff(0))));
    }
    Ok(())
}

/// Margin of one coefficient against its bound.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IndexedMargin {
    pub k: usize,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
}

/// Per-index margins `2 - |c_k|` for `k = 1..N`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientBoundReport {
    pub margins: Vec<IndexedMargin>,
    pub worst_margin: f64,
    pub worst_index: usize,
    pub violations: Vec<usize>,
}

impl CoefficientBoundReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `|c_k| <= 2`.
pub fn check_coefficient_bound(h: &TruncatedSeries) -> Result<CoefficientBoundReport> {
    require_unit_constant(h)?;
    if h.order() < 1 {
        return Err(Error::OrderTooLow { needed: 1, got: 0 });
    }
    let margins: Vec<IndexedMargin> = (1..=h.order())
        .map(|k| {
            let value = h.coeff(k).norm();
            IndexedMargin { k, value, bound: 2.0, margin: 2.0 - value }
        })
        .collect();
    let worst = margins
        .iter()
        .min_by(|a, b| a.margin.total_cmp(&b.margin))
        .copied()
        .expect("order >= 1");
    let violations = margins.iter().filter(|m| m.margin < -VIOLATION_TOL).map(|m| m.k).collect();
    Ok(CoefficientBoundReport {
        margins,
        worst_margin: worst.margin,
        worst_index: worst.k,
        violations,
    })
}

/// `|c_2 - c_1²/2|` against `2 - |c_1|²/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PommerenkeReport {
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    pub violated: bool,
}

/// Checks `|c_2 - c_1²/2| <= 2 - |c_1|²/2`.
pub fn check_pommerenke(h: &TruncatedSeries) -> Result<PommerenkeReport> {
    require_unit_constant(h)?;
    if h.order() < 2 {
        return Err(Error::OrderTooLow { needed: 2, got: h.order() });
    }
    let (c1, c2) = (h.coeff(1), h.coeff(2));
    let value = (c2 - c1 * c1 / 2.0).norm();
    let bound = 2.0 - c1.norm_sqr() / 2.0;
    let margin = bound - value;
    Ok(PommerenkeReport { value, bound, margin, violated: margin < -VIOLATION_TOL })
}

/// Series of `(1 + ½(c_1 + εc̄_1)z + εz²) / (1 - ½(c_1 - εc̄_1)z - εz²)`,
/// the equality case of the Pommerenke inequality.
pub fn pommerenke_extremal(c1: Complex64, eps: Complex64, order: usize) -> Result<TruncatedSeries> {
    if !(c1.norm() <= 2.0) {
        return Err(Error::InvalidParameter(format!("|c1| must not exceed 2, got {}", c1.norm())));
    }
    if !((eps.norm() - 1.0).abs() <= ZERO_CONSTANT_TOL) {
        return Err(Error::InvalidParameter(format!("|ε| must be 1, got {}", eps.norm())));
    }
    let coeffs = |k: usize, c0: Complex64, c1: Complex64, c2: Complex64| match k {
        0 => c0,
        1 => c1,
        2 => c2,
        _ => ZERO,
    };
    let a = (c1 + eps * c1.conj()) * 0.5;
    let b = (c1 - eps * c1.conj()) * 0.5;
    let num = TruncatedSeries::from_fn(order, |k| coeffs(k, ONE, a, eps));
    let den = TruncatedSeries::from_fn(order, |k| coeffs(k, ONE, -b, -eps));
    num.divide(&den)
}

/// Worst-case margins of the Schwarz lemma and the Carathéodory derivative
/// inequality over a grid. Both are `<= 0` for genuine Schwarz functions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SchwarzReport {
    /// `max |ϑ(z)| - |z|`
    pub modulus_excess: f64,
    /// `max |ϑ'(z)| - (1 - |ϑ(z)|²)/(1 - |z|²)`
    pub derivative_excess: f64,
    pub violated: bool,
}

pub fn schwarz_checks(theta: &SchwarzFunction, grid: &ProbeGrid) -> SchwarzReport {
    let mut modulus_excess = f64::NEG_INFINITY;
    let mut derivative_excess = f64::NEG_INFINITY;
    for z in grid.points() {
        let [v, d, _] = theta.0.evaluate_jet(z);
        modulus_excess = modulus_excess.max(v.norm() - z.norm());
        derivative_excess = derivative_excess.max(d.norm() - (1.0 - v.norm_sqr()) / (1.0 - z.norm_sqr()));
    }
    SchwarzReport {
        modulus_excess,
        derivative_excess,
        violated: modulus_excess > VIOLATION_TOL || derivative_excess > VIOLATION_TOL,
    }
}

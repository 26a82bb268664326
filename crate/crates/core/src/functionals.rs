//! Coefficient functionals of normalized series and their sharp bounds.

use num_complex::Complex64;
use serde::Serialize;

use crate::caratheodory::IndexedMargin;
use crate::error::{Error, Result};
use crate::series::NormalizedSeries;

/// `1/2 + e^{-2/3}`, the bound on `|c_5|` for odd functions `sqrt(f(z²))`
/// with `f` starlike.
pub fn odd_c5_bound() -> f64 {
    0.5 + (-2.0f64 / 3.0).exp()
}

/// Value of a functional and, when one is known, its bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FunctionalReport {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<IndexedMargin>,
}

impl FunctionalReport {
    fn bounded(name: &str, value: f64, bound: f64) -> Self {
        Self {
            name: name.to_string(),
            value,
            bound: Some(bound),
            margin: Some(bound - value),
            terms: Vec::new(),
        }
    }

    /// True when there is a bound and the value exceeds it by more than `tol`.
    pub fn violates(&self, tol: f64) -> bool {
        self.margin.is_some_and(|m| m < -tol)
    }
}

fn require_order(f: &NormalizedSeries, needed: usize) -> Result<()> {
    if f.order() < needed {
        return Err(Error::OrderTooLow { needed, got: f.order() });
    }
    Ok(())
}

/// `1 + 2e^{-2α/(1-α)}` on `[0, 1)`, extended by its limit 1 at `α = 1`.
pub fn fekete_szego_bound(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!("α must lie in [0, 1], got {alpha}")));
    }
    if alpha == 1.0 {
        return Ok(1.0);
    }
    Ok(1.0 + 2.0 * (-2.0 * alpha / (1.0 - alpha)).exp())
}

/// `|a_3 - α a_2²|` against the Fekete–Szegő bound.
pub fn fekete_szego(f: &NormalizedSeries, alpha: f64) -> Result<FunctionalReport> {
    require_order(f, 3)?;
    let bound = fekete_szego_bound(alpha)?;
    let (a2, a3) = (f.coeff(2), f.coeff(3));
    let value = (a3 - a2 * a2 * alpha).norm();
    Ok(FunctionalReport::bounded("fekete-szego", value, bound))
}

/// Coefficient `c_5` of `sqrt(f(z²))`, namely `(a_3 - a_2²/4)/2`.
pub fn odd_c5(f: &NormalizedSeries) -> Result<Complex64> {
    require_order(f, 3)?;
    let (a2, a3) = (f.coeff(2), f.coeff(3));
    Ok((a3 - a2 * a2 / 4.0) / 2.0)
}

/// `q`-th Hankel determinant `H_q(n) = det[a_{n+i+j}]_{i,j<q}` with `a_1 = 1`.
///
/// Cofactor expansion for `q <= 4`, LU with partial pivoting beyond.
pub fn hankel(f: &NormalizedSeries, q: usize, n: usize) -> Result<Complex64> {
    if q < 1 || n < 1 {
        return Err(Error::InvalidParameter(format!("Hankel needs q >= 1 and n >= 1, got q = {q}, n = {n}")));
    }
    require_order(f, n + 2 * (q - 1))?;
    let matrix: Vec<Vec<Complex64>> = (0..q)
        .map(|i| (0..q).map(|j| f.coeff(n + i + j)).collect())
        .collect();
    Ok(if q <= 4 { cofactor_det(&matrix) } else { lu_det(matrix) })
}

fn cofactor_det(m: &[Vec<Complex64>]) -> Complex64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        size => {
            let mut det = Complex64::new(0.0, 0.0);
            for col in 0..size {
                let minor: Vec<Vec<Complex64>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != col)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let term = m[0][col] * cofactor_det(&minor);
                if col % 2 == 0 {
                    det += term;
                } else {
                    det -= term;
                }
            }
            det
        }
    }
}

fn lu_det(mut m: Vec<Vec<Complex64>>) -> Complex64 {
    let size = m.len();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..size {
        let pivot = (col..size)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .expect("non-empty range");
        if m[pivot][col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        for row in col + 1..size {
            let factor = m[row][col] / p;
            let (top, bottom) = m.split_at_mut(row);
            for (x, &v) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x -= factor * v;
            }
        }
    }
    det
}

/// `|a_k| <= k` for every `k >= 2`.
///
/// `value` is `|a_k|` at the worst index, `bound` that index, and `margin`
/// the smallest `k - |a_k|`; `terms` lists every index.
pub fn bieberbach_check(f: &NormalizedSeries) -> Result<FunctionalReport> {
    require_order(f, 2)?;
    let terms: Vec<IndexedMargin> = (2..=f.order())
        .map(|k| {
            let value = f.coeff(k).norm();
            let bound = k as f64;
            IndexedMargin { k, value, bound, margin: bound - value }
        })
        .collect();
    let worst = terms
        .iter()
        .min_by(|a, b| a.margin.total_cmp(&b.margin))
        .copied()
        .expect("order >= 2");
    Ok(FunctionalReport {
        name: "bieberbach".into(),
        value: worst.value,
        bound: Some(worst.bound),
        margin: Some(worst.margin),
        terms,
    })
}

/// `|a_2 + 1/ξ| <= 2` for an omitted value `ξ`.
pub fn covering_check(f: &NormalizedSeries, xi: Complex64) -> Result<FunctionalReport> {
    if xi.norm() == 0.0 || !xi.re.is_finite() || !xi.im.is_finite() {
        return Err(Error::InvalidParameter("ξ must be finite and nonzero".into()));
    }
    require_order(f, 2)?;
    let value = (f.coeff(2) + 1.0 / xi).norm();
    Ok(FunctionalReport::bounded("covering", value, 2.0))
}

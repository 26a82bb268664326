//! Numerical predicates for the geometric classes on sampled circles,
//! partial sums, and a bisection radius solver.
//!
//! All predicates here are necessary-condition probes on finite grids. They
//! can refute a property but never certify it on the continuum.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{NormalizedSeries, TruncatedSeries};

/// Strictness threshold for "positive real part" and "nonvanishing".
pub const POSITIVITY_EPS: f64 = 1e-9;

/// Largest radius probed; every extremal of interest is singular at `z = 1`.
pub const RADIUS_CAP: f64 = 0.999;

/// Innermost radius at which a radius predicate must hold.
pub const RADIUS_FLOOR: f64 = 1e-3;

/// Angles per circle for local univalence.
pub const UNIVALENCE_ANGLES: usize = 2048;

const MAX_BISECTIONS: usize = 64;
const MAX_INJECTIVITY_ANGLES: usize = 4096;
const DISTINCT_EPS: f64 = 1e-9;

/// Radii × equispaced angles discretizing the unit disk.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeGrid {
    radii: Vec<f64>,
    angles_per_circle: usize,
}

impl ProbeGrid {
    pub fn new(radii: Vec<f64>, angles_per_circle: usize) -> Result<Self> {
        if angles_per_circle < 8 {
            return Err(Error::InvalidParameter(format!(
                "angles_per_circle must be >= 8, got {angles_per_circle}"
            )));
        }
        if radii.is_empty() {
            return Err(Error::InvalidParameter("probe grid needs at least one radius".into()));
        }
        if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::InvalidParameter("probe radii must lie in (0, 1)".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("probe radii must be strictly increasing".into()));
        }
        Ok(Self { radii, angles_per_circle })
    }

    /// A single circle `|z| = r`.
    pub fn circle(r: f64, angles_per_circle: usize) -> Result<Self> {
        Self::new(vec![r], angles_per_circle)
    }

    /// `count` equally spaced radii `r_max/count, ..., r_max`.
    pub fn uniform(count: usize, r_max: f64, angles_per_circle: usize) -> Result<Self> {
        let radii = (1..=count).map(|i| r_max * i as f64 / count as f64).collect();
        Self::new(radii, angles_per_circle)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_circle(&self) -> usize {
        self.angles_per_circle
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.radii
            .iter()
            .flat_map(move |&r| circle_points(r, self.angles_per_circle))
    }
}

impl Default for ProbeGrid {
    /// Radii 0.1, 0.2, ..., 0.9 with 256 angles each.
    fn default() -> Self {
        Self::uniform(9, 0.9, 256).expect("static grid is valid")
    }
}

/// `n` equispaced points on `|z| = r`, starting at `θ = 0`.
pub fn circle_points(r: f64, n: usize) -> impl Iterator<Item = Complex64> {
    (0..n).map(move |j| Complex64::from_polar(r, TAU * j as f64 / n as f64))
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("radius must lie in (0, 1), got {r}")));
    }
    Ok(())
}

/// Minimum of `Re F(z)` over `n_angles` equispaced points of `|z| = r`.
pub fn min_real_part<F>(quantity: F, r: f64, n_angles: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Complex64,
{
    check_radius(r)?;
    if n_angles == 0 {
        return Err(Error::InvalidParameter("n_angles must be positive".into()));
    }
    let mut min = f64::INFINITY;
    for z in circle_points(r, n_angles) {
        let w = quantity(z);
        if !w.re.is_finite() || !w.im.is_finite() {
            return Err(Error::EvaluationSingularity(format!("{z}")));
        }
        min = min.min(w.re);
    }
    Ok(min)
}

/// Minimum of `Re h` over every point of a grid.
pub fn grid_min_real_part(h: &TruncatedSeries, grid: &ProbeGrid) -> f64 {
    grid.points().map(|z| h.evaluate(z).re).fold(f64::INFINITY, f64::min)
}

/// Geometric classes, each defined by positivity of a real part.
#[derive(Clone, Debug, PartialEq)]
pub enum GeometricClass {
    /// `Re f' > 0`
    BoundedTurning,
    /// `Re z f'/f > 0`
    Starlike,
    /// `Re (1 + z f''/f') > 0`
    Convex,
    /// `Re f'/g' > 0` for a convex `g`
    CloseToConvex(NormalizedSeries),
    /// `Re f/z > 0`
    RatioPositive,
    /// `Re (z f')'/g' > 0` for a convex `g`
    QuasiConvex(NormalizedSeries),
}

impl GeometricClass {
    pub fn name(&self) -> &'static str {
        match self {
            GeometricClass::BoundedTurning => "bounded-turning",
            GeometricClass::Starlike => "starlike",
            GeometricClass::Convex => "convex",
            GeometricClass::CloseToConvex(_) => "close-to-convex",
            GeometricClass::RatioPositive => "ratio-positive",
            GeometricClass::QuasiConvex(_) => "quasi-convex",
        }
    }

    /// The quantity whose real part defines the class, evaluated at `z ≠ 0`.
    pub fn quantity(&self, f: &TruncatedSeries, z: Complex64) -> Complex64 {
        let [v, d, dd] = f.evaluate_jet(z);
        match self {
            GeometricClass::BoundedTurning => d,
            GeometricClass::Starlike => z * d / v,
            GeometricClass::Convex => 1.0 + z * dd / d,
            GeometricClass::CloseToConvex(g) => d / g.evaluate_jet(z)[1],
            GeometricClass::RatioPositive => v / z,
            GeometricClass::QuasiConvex(g) => (d + z * dd) / g.evaluate_jet(z)[1],
        }
    }
}

impl fmt::Display for GeometricClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parses class names that need no comparison function.
impl FromStr for GeometricClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bounded-turning" | "bounded_turning" => Ok(GeometricClass::BoundedTurning),
            "starlike" => Ok(GeometricClass::Starlike),
            "convex" => Ok(GeometricClass::Convex),
            "ratio-positive" | "ratio_positive" => Ok(GeometricClass::RatioPositive),
            "close-to-convex" | "close_to_convex" | "quasi-convex" | "quasi_convex" => Err(
                Error::InvalidParameter(format!("class `{s}` needs a comparison function g")),
            ),
            other => Err(Error::InvalidParameter(format!("unknown class `{other}`"))),
        }
    }
}

/// Minimum real part of the class quantity on `|z| = r`.
pub fn class_min_real_part(
    class: &GeometricClass,
    f: &NormalizedSeries,
    r: f64,
    n_angles: usize,
) -> Result<f64> {
    min_real_part(|z| class.quantity(f, z), r, n_angles)
}

/// True iff the class quantity has real part above [`POSITIVITY_EPS`] on `|z| = r`.
pub fn class_predicate(
    class: &GeometricClass,
    f: &NormalizedSeries,
    r: f64,
    n_angles: usize,
) -> Result<bool> {
    Ok(class_min_real_part(class, f, r, n_angles)? > POSITIVITY_EPS)
}

/// `s_k(z) = z + a_2 z^2 + ... + a_k z^k`.
pub fn partial_sum(f: &NormalizedSeries, k: usize) -> Result<NormalizedSeries> {
    if k < 1 || k > f.order() {
        return Err(Error::InvalidParameter(format!(
            "partial sum degree must lie in 1..={}, got {k}",
            f.order()
        )));
    }
    Ok(f.with_order(k))
}

/// Bracket `[lo, hi]` around the transition radius of a monotone predicate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusResult {
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
    pub predicate_name: String,
    /// Set when the predicate still holds at [`RADIUS_CAP`].
    pub capped: bool,
    /// Every `(r, predicate(r))` evaluated, in order.
    pub trace: Vec<(f64, bool)>,
}

impl RadiusResult {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, r: f64) -> bool {
        self.lo <= r && r <= self.hi
    }
}

/// Bisection for the largest radius where `predicate` holds, assuming
/// monotonicity in `r`.
///
/// The predicate must hold at [`RADIUS_FLOOR`]. If it never fails inside
/// `(RADIUS_FLOOR, RADIUS_CAP]` the result is capped with `lo = hi = RADIUS_CAP`.
pub fn radius_solve<P>(name: &str, mut predicate: P, tol: f64) -> Result<RadiusResult>
where
    P: FnMut(f64) -> Result<bool>,
{
    if !(1e-15..1.0).contains(&tol) {
        return Err(Error::InvalidParameter(format!("tolerance must lie in [1e-15, 1), got {tol}")));
    }
    let mut trace = Vec::new();
    let mut probe = |r: f64, trace: &mut Vec<(f64, bool)>| -> Result<bool> {
        let ok = predicate(r)?;
        trace.push((r, ok));
        Ok(ok)
    };
    if !probe(RADIUS_FLOOR, &mut trace)? {
        return Err(Error::DegenerateAtCenter(RADIUS_FLOOR));
    }
    // The cap is only probed if bisection never sees a failure, so a
    // predicate that turns true again near the boundary cannot mask the
    // first transition.
    let (mut lo, mut hi) = (RADIUS_FLOOR, RADIUS_CAP);
    let mut hi_seen_false = false;
    let mut iterations = 0;
    while hi - lo > tol && iterations < MAX_BISECTIONS {
        let mid = 0.5 * (lo + hi);
        if probe(mid, &mut trace)? {
            lo = mid;
        } else {
            hi = mid;
            hi_seen_false = true;
        }
        iterations += 1;
    }
    if !hi_seen_false && probe(RADIUS_CAP, &mut trace)? {
        return Ok(RadiusResult {
            lo: RADIUS_CAP,
            hi: RADIUS_CAP,
            iterations,
            predicate_name: name.to_string(),
            capped: true,
            trace,
        });
    }
    Ok(RadiusResult {
        lo,
        hi,
        iterations,
        predicate_name: name.to_string(),
        capped: false,
        trace,
    })
}

/// Winding number of `F(re^{iθ})` about the origin.
///
/// Arcs whose argument jumps by more than π/4 are subdivided, so curves
/// passing close to the origin are still resolved. Returns `None` when a
/// sample lies within [`POSITIVITY_EPS`] of the origin.
pub fn winding_number<F>(quantity: F, r: f64, n_angles: usize) -> Option<i64>
where
    F: Fn(Complex64) -> Complex64,
{
    const MAX_DEPTH: u32 = 48;

    fn arc<F: Fn(Complex64) -> Complex64>(
        quantity: &F,
        r: f64,
        (t0, w0): (f64, Complex64),
        (t1, w1): (f64, Complex64),
        depth: u32,
    ) -> Option<f64> {
        let step = (w1 / w0).arg();
        if step.abs() < PI / 4.0 || depth >= MAX_DEPTH {
            return Some(step);
        }
        let tm = 0.5 * (t0 + t1);
        let wm = quantity(Complex64::from_polar(r, tm));
        if wm.norm() <= POSITIVITY_EPS {
            return None;
        }
        Some(arc(quantity, r, (t0, w0), (tm, wm), depth + 1)? + arc(quantity, r, (tm, wm), (t1, w1), depth + 1)?)
    }

    let samples: Vec<(f64, Complex64)> = (0..=n_angles)
        .map(|j| {
            let t = TAU * j as f64 / n_angles as f64;
            (t, quantity(Complex64::from_polar(r, t)))
        })
        .collect();
    if samples.iter().any(|(_, w)| !(w.norm() > POSITIVITY_EPS)) {
        return None;
    }
    let mut total = 0.0;
    for pair in samples.windows(2) {
        total += arc(&quantity, r, pair[0], pair[1], 0)?;
    }
    Some((total / TAU).round() as i64)
}

/// True iff `F` has no zero in the closed disk `|z| <= r`, judged by the
/// argument principle on `|z| = r` with [`UNIVALENCE_ANGLES`] base samples.
pub fn zero_free_disk<F>(quantity: F, r: f64) -> bool
where
    F: Fn(Complex64) -> Complex64,
{
    matches!(winding_number(quantity, r, UNIVALENCE_ANGLES), Some(0))
}

/// Largest radius on which `f'` stays nonvanishing (local univalence).
///
/// Takes the derivative as an evaluator so that closed forms and series
/// are treated alike. Fails with [`Error::NoZeroFound`] when `f'` has no
/// zero up to [`RADIUS_CAP`].
pub fn local_univalence_radius<D>(derivative: D, tol: f64) -> Result<RadiusResult>
where
    D: Fn(Complex64) -> Complex64,
{
    let result = radius_solve("local-univalence", |r| Ok(zero_free_disk(&derivative, r)), tol)?;
    if result.capped {
        return Err(Error::NoZeroFound { r_max: RADIUS_CAP });
    }
    Ok(result)
}

/// [`local_univalence_radius`] for the truncation polynomial of `f`.
pub fn local_univalence_radius_of_series(f: &TruncatedSeries, tol: f64) -> Result<RadiusResult> {
    let derivative = f.differentiate();
    local_univalence_radius(|z| derivative.evaluate(z), tol)
}

/// One sample of a boundary image curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub re: f64,
    pub im: f64,
}

/// Image of `|z| = r` under `f` at `n_angles` equispaced angles.
pub fn boundary_curve<F>(f: F, r: f64, n_angles: usize) -> Vec<BoundaryPoint>
where
    F: Fn(Complex64) -> Complex64,
{
    (0..n_angles)
        .map(|j| {
            let theta = TAU * j as f64 / n_angles as f64;
            let w = f(Complex64::from_polar(r, theta));
            BoundaryPoint { theta, re: w.re, im: w.im }
        })
        .collect()
}

/// Writes a boundary curve as `theta,re,im` CSV.
pub fn write_boundary_csv<W: Write>(points: &[BoundaryPoint], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for p in points {
        writer.serialize(p).map_err(|e| Error::Malformed(e.to_string()))?;
    }
    writer.flush().map_err(|e| Error::Malformed(e.to_string()))
}

/// Best-effort injectivity test on the image of `|z| = r`.
///
/// Fails if two samples coincide within 1e-9 or if two non-adjacent edges
/// of the sampled image polygon cross.
pub fn injectivity_probe<F>(f: F, r: f64, n_angles: usize) -> Result<bool>
where
    F: Fn(Complex64) -> Complex64,
{
    check_radius(r)?;
    if !(3..=MAX_INJECTIVITY_ANGLES).contains(&n_angles) {
        return Err(Error::InvalidParameter(format!(
            "n_angles must lie in 3..={MAX_INJECTIVITY_ANGLES}, got {n_angles}"
        )));
    }
    let pts: Vec<Complex64> = circle_points(r, n_angles).map(&f).collect();
    if pts.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
        return Err(Error::EvaluationSingularity(format!("on |z| = {r}")));
    }
    Ok(samples_distinct(&pts) && polygon_is_simple(&pts))
}

fn samples_distinct(pts: &[Complex64]) -> bool {
    let mut sorted: Vec<Complex64> = pts.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re));
    for (i, a) in sorted.iter().enumerate() {
        for b in &sorted[i + 1..] {
            if b.re - a.re > DISTINCT_EPS {
                break;
            }
            if (a - b).norm() <= DISTINCT_EPS {
                return false;
            }
        }
    }
    true
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

fn on_segment(p: Complex64, q: Complex64, x: Complex64) -> bool {
    x.re >= p.re.min(q.re) && x.re <= p.re.max(q.re) && x.im >= p.im.min(q.im) && x.im <= p.im.max(q.im)
}

fn segments_intersect(p1: Complex64, p2: Complex64, q1: Complex64, q2: Complex64) -> bool {
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Closed polygon through `pts` has no crossing between non-adjacent edges.
fn polygon_is_simple(pts: &[Complex64]) -> bool {
    let n = pts.len();
    let edge = |i: usize| (pts[i], pts[(i + 1) % n]);
    let mut order: Vec<usize> = (0..n).collect();
    let min_x = |i: usize| pts[i].re.min(pts[(i + 1) % n].re);
    let max_x = |i: usize| pts[i].re.max(pts[(i + 1) % n].re);
    order.sort_by(|&a, &b| min_x(a).total_cmp(&min_x(b)));
    for (pos, &i) in order.iter().enumerate() {
        let (a1, a2) = edge(i);
        let limit = max_x(i);
        for &j in &order[pos + 1..] {
            if min_x(j) > limit {
                break;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent {
                continue;
            }
            let (b1, b2) = edge(j);
            if segments_intersect(a1, a2, b1, b2) {
                return false;
            }
        }
    }
    true
}

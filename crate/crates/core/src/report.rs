//! Batch sweep of every coefficient bound over sampled Carathéodory series.

use serde::Serialize;

use crate::caratheodory::{check_coefficient_bound, check_pommerenke, HerglotzSampler, VIOLATION_TOL};
use crate::error::{Error, Result};
use crate::functionals::{bieberbach_check, fekete_szego, odd_c5, odd_c5_bound};
use crate::series::NormalizedSeries;
use crate::zoo;

const FEKETE_ALPHAS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// Worst margin seen for one inequality across the sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub checked: usize,
    pub violations: usize,
    pub worst_margin: f64,
}

impl CheckSummary {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0, violations: 0, worst_margin: f64::INFINITY }
    }

    fn record(&mut self, margin: f64) {
        self.checked += 1;
        self.worst_margin = self.worst_margin.min(margin);
        if margin < -VIOLATION_TOL {
            self.violations += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub samples: usize,
    pub atoms: usize,
    pub order: usize,
    pub violations: usize,
    pub checks: Vec<CheckSummary>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    pub fn check(&self, name: &str) -> Option<&CheckSummary> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn coefficient_margins(f: &NormalizedSeries, bound: impl Fn(usize) -> f64) -> f64 {
    (2..=f.order())
        .map(|k| bound(k) - f.coeff(k).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Samples `n_samples` Carathéodory series (each from `n_atoms` Herglotz
/// atoms, truncated at `order`) and runs every bound and constructor on them.
pub fn report_suite(seed: u64, n_samples: usize, n_atoms: usize, order: usize) -> Result<SuiteReport> {
    if n_samples == 0 {
        return Err(Error::InvalidParameter("n_samples must be at least 1".into()));
    }
    if order < 3 {
        return Err(Error::InvalidParameter(format!("order must be at least 3, got {order}")));
    }
    let mut sampler = HerglotzSampler::new(seed);
    let convex_g = zoo::convex_extremal(order + 1);

    let mut caratheodory = CheckSummary::new("caratheodory |c_k| <= 2");
    let mut pommerenke = CheckSummary::new("pommerenke");
    let mut ratio = CheckSummary::new("ratio-positive |a_k| <= 2");
    let mut turning = CheckSummary::new("bounded-turning |a_k| <= 2/k");
    let mut starlike = CheckSummary::new("starlike |a_k| <= k");
    let mut convex = CheckSummary::new("convex |a_k| <= 1");
    let mut close = CheckSummary::new("close-to-convex |a_k| <= k");
    let mut fekete = CheckSummary::new("fekete-szego on starlike");
    let mut odd = CheckSummary::new("odd |c_5| on starlike");

    for _ in 0..n_samples {
        let h = sampler.series(n_atoms, order)?;
        caratheodory.record(check_coefficient_bound(&h)?.worst_margin);
        pommerenke.record(check_pommerenke(&h)?.margin);

        ratio.record(coefficient_margins(&zoo::from_ratio_positive(&h)?, |_| 2.0));
        turning.record(coefficient_margins(&zoo::from_bounded_turning(&h)?, |k| 2.0 / k as f64));

        let star = zoo::from_starlike(&h)?;
        starlike.record(bieberbach_check(&star)?.margin.expect("bounded functional"));
        convex.record(coefficient_margins(&zoo::alexander_inverse(&star), |_| 1.0));
        close.record(bieberbach_check(&zoo::from_close_to_convex(&h, &convex_g)?)?.margin.expect("bounded functional"));

        for alpha in FEKETE_ALPHAS {
            fekete.record(fekete_szego(&star, alpha)?.margin.expect("bounded functional"));
        }
        odd.record(odd_c5_bound() - odd_c5(&star)?.norm());
    }

    let checks = vec![caratheodory, pommerenke, ratio, turning, starlike, convex, close, fekete, odd];
    Ok(SuiteReport {
        seed,
        samples: n_samples,
        atoms: n_atoms,
        order,
        violations: checks.iter().map(|c| c.violations).sum(),
        checks,
    })
}

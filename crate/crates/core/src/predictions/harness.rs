//! Runs every applicable check on one graph and collects the results as
//! [`BoundReport`]s.

use super::{critical_l_bracket, subcritical_l_bounds, survival_floor, BoundReport, Verdict};
use crate::error::{Error, Result};
use crate::graph::{girth, Graph};
use crate::nbrw::{
    estimate_measure_from_stats, estimate_survival, exact_t_distribution, mixing_time, McOptions, MixingTime, TSampleStats, Z95,
};
use crate::report::{num, Table};
use crate::saw::DEFAULT_NODE_BUDGET;
use crate::saw::{enumerate_census, evaluate, monotonicity_scan, verify_intersection_identity, Convention, EvalOptions, SawCensus};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Identity residuals above this fail.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

/// Graphs up to this size get an exact mixing time for the survival-floor check.
const MIXING_MAX_N: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub root: usize,
    pub budget: u64,
    pub samples: u64,
    pub seed: u64,
    pub bootstrap: usize,
    pub assume_transitive: bool,
    pub mixing_horizon: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            root: 0,
            budget: DEFAULT_NODE_BUDGET,
            samples: 100_000,
            seed: 1,
            bootstrap: 200,
            assume_transitive: false,
            mixing_horizon: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct VerifyReport {
    pub reports: Vec<BoundReport>,
    /// Checks that were skipped, and why.
    pub notes: Vec<String>,
}

impl VerifyReport {
    pub fn any_violated(&self) -> bool {
        self.reports.iter().any(|r| r.holds == Verdict::Violated)
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&["quantity", "measured", "ci_lo", "ci_hi", "bound_lo", "bound_hi", "source", "holds"]);
        for note in &self.notes {
            t.meta("skipped", note);
        }
        for r in &self.reports {
            t.push(vec![
                r.quantity.clone(),
                num(r.measured),
                num(r.ci_lo),
                num(r.ci_hi),
                num(r.bound_lo),
                num(r.bound_hi),
                r.source.clone(),
                r.holds.to_string(),
            ]);
        }
        t
    }
}

/// `Convention::Paper` `L`, exactly from a census or by sampling.
enum LengthSource<'a> {
    Exact(&'a SawCensus),
    Sampled(&'a TSampleStats, McOptions),
}

impl LengthSource<'_> {
    fn length(&self, x: f64) -> Result<(f64, (f64, f64))> {
        match self {
            LengthSource::Exact(c) => {
                let l = evaluate(c, x, EvalOptions { convention: Convention::Paper, ..Default::default() })?.length;
                Ok((l, (l, l)))
            }
            LengthSource::Sampled(stats, opts) => {
                let est = estimate_measure_from_stats(stats, x, *opts)?;
                Ok((est.eval.length, est.ci_length))
            }
        }
    }

    fn tag(&self) -> &'static str {
        match self {
            LengthSource::Exact(_) => "exact",
            LengthSource::Sampled(..) => "sampled",
        }
    }
}

/// Checks the intersection identity, monotonicity of `L`, and on regular
/// graphs of degree at least 3 the sub-critical and critical brackets for
/// the `Convention::Paper` `L` and the survival floor.
pub fn verify_graph(g: &Graph, x_grid: &[f64], opts: VerifyOptions) -> Result<VerifyReport> {
    let mut out = VerifyReport::default();
    let root = opts.root;
    g.check_root(root)?;

    match verify_intersection_identity(g, root, x_grid, opts.assume_transitive, opts.budget) {
        Ok(residuals) => {
            for r in residuals {
                let source = format!("L+1 = I Z at x={}", num(r.x));
                out.reports.push(BoundReport::exact("identity_residual", r.residual, (0.0, IDENTITY_TOLERANCE), &source));
            }
        }
        Err(e @ (Error::NotTransitive | Error::TransitivityUnknown | Error::BudgetExceeded { .. })) => {
            out.notes.push(format!("intersection identity: {e}"));
        }
        Err(e) => return Err(e),
    }

    let census = match enumerate_census(g, root, g.n() - 1, opts.budget) {
        Ok(c) => Some(c),
        Err(Error::BudgetExceeded { .. }) => {
            out.notes.push("exact census over budget; using sampled estimates".into());
            None
        }
        Err(e) => return Err(e),
    };

    let mut sorted: Vec<f64> = x_grid.to_vec();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup();
    if let (Some(c), true) = (&census, sorted.len() >= 2) {
        let scan = monotonicity_scan(c, &sorted, Convention::Exact)?;
        let worst = scan.lengths.windows(2).map(|w| (w[0] - w[1]) / w[1].abs().max(f64::MIN_POSITIVE)).fold(f64::NEG_INFINITY, f64::max);
        out.reports.push(BoundReport::exact("L_relative_decrease", worst, (f64::NEG_INFINITY, 1e-12), "L non-decreasing in x"));
    }

    let Some(d) = g.regular_degree().filter(|&d| d >= 3) else {
        out.notes.push("large-girth bounds need a regular graph of degree at least 3".into());
        return Ok(out);
    };
    let Some(g0) = girth(g).finite() else {
        out.notes.push("graph has no cycle".into());
        return Ok(out);
    };
    let n = g.n();
    let stats = estimate_survival(g, root, opts.samples, opts.seed, n)?;
    let mc = McOptions { convention: Convention::Paper, assume_transitive: false, bootstrap: opts.bootstrap };
    let source = match &census {
        Some(c) => LengthSource::Exact(c),
        None => LengthSource::Sampled(&stats, mc),
    };

    for &x in &sorted {
        if (d - 1) as f64 * x < 1.0 {
            let bounds = subcritical_l_bounds(x, d, g0)?;
            let (l, ci) = source.length(x)?;
            let tag = format!("sub-critical sandwich, {} L at x={}, girth {g0}", source.tag(), num(x));
            out.reports.push(BoundReport::new("L", l, ci, bounds, &tag));
        }
    }

    let x_c = 1.0 / (d - 1) as f64;
    let exact_t = exact_t_distribution(g, root, opts.budget).ok();
    let (mean_t, t_tag) = match &exact_t {
        Some(dist) => (dist.mean_t().to_f64().unwrap_or(f64::NAN), "exact E[T]"),
        None => (stats.mean_t(), "sampled E[T]"),
    };
    let (l, ci) = source.length(x_c)?;
    let tag = format!("critical bracket from {t_tag}, {} L at x={}", source.tag(), num(x_c));
    out.reports.push(BoundReport::new("L", l, ci, critical_l_bracket(mean_t, d), &tag));

    if n > MIXING_MAX_N {
        out.notes.push(format!("survival floor: mixing time not computed for n > {MIXING_MAX_N}"));
        return Ok(out);
    }
    match mixing_time(g, opts.mixing_horizon)?.tau {
        MixingTime::Tau(tau) => {
            for k in [0, g0] {
                let floor = survival_floor(k, tau, n, g0, d);
                let tag = format!("survival floor k={k} m=tau={tau}");
                if let Some(dist) = &exact_t {
                    if k + tau <= n && dist.survival[k] > num_rational::BigRational::from_integer(0.into()) {
                        let ratio = (&dist.survival[k + tau] / &dist.survival[k]).to_f64().unwrap_or(f64::NAN);
                        out.reports.push(BoundReport::exact("survival_ratio", ratio, (floor, 1.0), &tag));
                    }
                } else {
                    let above = |k: usize| stats.histogram.iter().skip(k + 1).sum::<u64>();
                    let base = above(k);
                    if base > 0 {
                        let p = above(k + tau) as f64 / base as f64;
                        let half = Z95 * (p * (1.0 - p) / base as f64).sqrt();
                        out.reports.push(BoundReport::new("survival_ratio", p, (p - half, p + half), (floor, 1.0), &tag));
                    }
                }
            }
        }
        MixingTime::ExceedsHorizon => {
            out.notes.push(format!("survival floor: mixing time exceeds horizon {}", opts.mixing_horizon));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn petersen_passes_everything() {
        let g = Family::Petersen.generate().unwrap();
        let report = verify_graph(&g, &[0.3, 0.5, 1.0], VerifyOptions { samples: 2000, ..Default::default() }).unwrap();
        let identity: Vec<&BoundReport> = report.reports.iter().filter(|r| r.quantity == "identity_residual").collect();
        assert_eq!(identity.len(), 3);
        assert!(identity.iter().all(|r| r.measured <= 1e-10));
        assert!(report.reports.iter().any(|r| r.source.starts_with("sub-critical")));
        assert!(report.reports.iter().any(|r| r.source.starts_with("critical bracket from exact")));
        assert!(report.reports.iter().all(|r| r.holds == Verdict::Holds), "{:#?}", report.reports);
        assert!(!report.any_violated());
    }

    #[test]
    fn path_graph_skips_identity_and_bounds() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)], 0).unwrap();
        let report = verify_graph(&g, &[0.5, 1.0], VerifyOptions::default()).unwrap();
        assert_eq!(report.reports.len(), 1);
        assert_eq!(report.reports[0].quantity, "L_relative_decrease");
        assert_eq!(report.notes.len(), 2);
    }

    #[test]
    fn large_graph_uses_samples() {
        let g = Family::RandomRegular { n: 300, d: 3, seed: 5 }.generate().unwrap();
        let opts = VerifyOptions { budget: 100_000, samples: 20_000, bootstrap: 50, ..Default::default() };
        let report = verify_graph(&g, &[0.2, 0.4], opts).unwrap();
        assert!(report.reports.iter().filter(|r| r.quantity == "L").all(|r| r.source.contains("sampled")));
        assert!(!report.any_violated(), "{:#?}", report.reports);
        let table = report.to_table();
        assert_eq!(table.columns.len(), 8);
        assert_eq!(table.rows.len(), report.reports.len());
    }
}

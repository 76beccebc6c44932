//! Sweeps over `x` and over graph sizes.

use super::census::{enumerate_census, DEFAULT_NODE_BUDGET};
use super::measure::{check_positive_x, Convention, LogSeries, Method};
use super::SawCensus;
use crate::error::{Error, Result};
use crate::graph::SizedFamily;
use crate::nbrw::{splitting_survival, SplittingOptions};
use serde::{Deserialize, Serialize};

fn check_grid(x_grid: &[f64]) -> Result<()> {
    for &x in x_grid {
        check_positive_x(x)?;
    }
    if x_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::PreconditionViolated("x grid must be strictly increasing".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// `L(x[index]) > L(x[index + 1])` beyond tolerance.
    pub index: usize,
    pub x: f64,
    pub length: f64,
    pub next_length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub monotone: bool,
    pub first_violation: Option<Violation>,
    pub lengths: Vec<f64>,
}

/// Checks that `L` is non-decreasing along `x_grid`, up to a relative
/// tolerance of `1e-12`.
pub fn monotonicity_scan(census: &SawCensus, x_grid: &[f64], convention: Convention) -> Result<MonotonicityReport> {
    check_grid(x_grid)?;
    let series = LogSeries::from_census(census, convention)?;
    let lengths: Vec<f64> = x_grid.iter().map(|&x| series.log_sum_and_mean(x).1).collect();
    let first_violation = lengths.windows(2).position(|w| w[0] > w[1] + 1e-12 * w[0].abs().max(w[1].abs())).map(|i| Violation {
        index: i,
        x: x_grid[i],
        length: lengths[i],
        next_length: lengths[i + 1],
    });
    Ok(MonotonicityReport { monotone: first_violation.is_none(), first_violation, lengths })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub budget: u64,
    pub convention: Convention,
    /// Values of `Z` whose crossing point in `x` is reported for each size.
    pub levels: Vec<f64>,
    /// Splitting estimate used when the census exceeds the budget on a
    /// regular graph of degree at least 3; `None` leaves those cells missing.
    pub fallback: Option<SplittingOptions>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { budget: DEFAULT_NODE_BUDGET, convention: Convention::Exact, levels: vec![10.0, 100.0], fallback: None }
    }
}

/// One `(size, x)` cell. `log_z`, `length` and `method` are `None` when the
/// size could not be evaluated within budget.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanCell {
    pub size: usize,
    pub n: usize,
    pub x: f64,
    pub log_z: Option<f64>,
    pub length: Option<f64>,
    pub method: Option<Method>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub size: usize,
    pub level: f64,
    /// First `x` at which `Z` reaches `level`, interpolating `ln Z` linearly
    /// between grid points; `None` if the grid never reaches it.
    pub x_hat: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ScanTable {
    pub cells: Vec<ScanCell>,
    pub crossings: Vec<Crossing>,
}

/// Evaluates `Z` and `L` over `sizes x x_grid` and locates where `Z` crosses
/// each level.
pub fn critical_scan(family: SizedFamily, sizes: &[usize], x_grid: &[f64], opts: &ScanOptions) -> Result<ScanTable> {
    check_grid(x_grid)?;
    let mut table = ScanTable::default();
    for &size in sizes {
        let g = family.at(size).generate()?;
        let root = g.root();
        let evaluated: Option<(LogSeries, Method)> = match enumerate_census(&g, root, g.n() - 1, opts.budget) {
            Ok(census) => Some((LogSeries::from_census(&census, opts.convention)?, Method::Exact)),
            Err(Error::BudgetExceeded { .. }) => match opts.fallback {
                Some(split_opts) => match splitting_survival(&g, root, split_opts) {
                    Ok(split) => Some((split.census().log_series(opts.convention), Method::MonteCarlo)),
                    Err(Error::NotRegular | Error::DegreeTooSmall { .. }) => None,
                    Err(e) => return Err(e),
                },
                None => None,
            },
            Err(e) => return Err(e),
        };
        let values: Vec<Option<(f64, f64)>> = x_grid.iter().map(|&x| evaluated.as_ref().map(|(s, _)| s.log_sum_and_mean(x))).collect();
        for (&x, v) in x_grid.iter().zip(&values) {
            table.cells.push(ScanCell {
                size,
                n: g.n(),
                x,
                log_z: v.map(|v| v.0),
                length: v.map(|v| v.1),
                method: evaluated.as_ref().map(|e| e.1),
            });
        }
        for &level in &opts.levels {
            let log_z: Option<Vec<f64>> = values.iter().map(|v| v.map(|v| v.0)).collect();
            let x_hat = log_z.and_then(|lz| crossing(x_grid, &lz, level.ln()));
            table.crossings.push(Crossing { size, level, x_hat });
        }
    }
    Ok(table)
}

fn crossing(xs: &[f64], ys: &[f64], target: f64) -> Option<f64> {
    let i = ys.iter().position(|&y| y >= target)?;
    if i == 0 {
        return Some(xs[0]);
    }
    let (x0, x1, y0, y1) = (xs[i - 1], xs[i], ys[i - 1], ys[i]);
    Some(x0 + (target - y0) / (y1 - y0) * (x1 - x0))
}

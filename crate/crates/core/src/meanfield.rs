//! Closed forms on the complete graph `K_n`.
//!
//! From a vertex of `K_n` there are `(n-1)!/(n-1-k)!` self-avoiding walks of
//! length `k`. Substituting `j = n - 1 - k`,
//!
//! ```text
//! Z(x) = (n-1)! x^(n-1) sum_{j=0}^{n-1} x^(-j) / j!
//! ```
//!
//! so `n - 1 - |w|` under the walk measure is a Poisson(`1/x`) variable
//! conditioned on being at most `n - 1`, and `L = n - 1 - E[P | P <= n - 1]`.

use crate::error::{Error, Result};
use crate::numeric::{log_add_exp, CompensatedSum};
use crate::saw::{check_positive_x, LogSeries};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::f64::consts::{E, PI};
use std::fmt;

/// `(n-1)! / (n-1-k)!`.
pub fn saw_count_complete(n: usize, k: usize) -> Result<BigUint> {
    if n == 0 || k >= n {
        return Err(Error::KOutOfRange { k, max: n.saturating_sub(1) });
    }
    Ok((n - k..n).map(BigUint::from).product())
}

/// Log-coefficients `ln((n-1)!/(n-1-k)!)` for `k = 0..n`.
pub fn complete_graph_series(n: usize) -> LogSeries {
    let mut coeffs = Vec::with_capacity(n);
    let mut acc = 0.0;
    coeffs.push(0.0);
    for k in 1..n {
        acc += ((n - k) as f64).ln();
        coeffs.push(acc);
    }
    LogSeries::new(coeffs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Sub,
    Critical,
    Super,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Sub => "Sub",
            Regime::Critical => "Critical",
            Regime::Super => "Super",
        })
    }
}

/// Regime of `x` on `K_n`: `Critical` when `|(n-1) x - 1| <= n^(-1/2)`,
/// otherwise `Sub` or `Super` by the side of 1.
pub fn classify_regime(n: usize, x: f64) -> Regime {
    let r = (n - 1) as f64 * x;
    if (r - 1.0).abs() <= 1.0 / (n as f64).sqrt() {
        Regime::Critical
    } else if r < 1.0 {
        Regime::Sub
    } else {
        Regime::Super
    }
}

/// A Poisson(`rate`) variable conditioned on `P <= cutoff`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoissonTruncation {
    pub rate: f64,
    pub cutoff: usize,
    /// `E[P | P <= cutoff]`
    pub conditional_mean: f64,
    /// `E[cutoff - P | P <= cutoff]`, summed directly so that it keeps full
    /// relative precision when it is small.
    pub conditional_gap: f64,
    /// `ln sum_{j <= cutoff} rate^j / j!`
    pub log_mass: f64,
    /// `ln P[P > cutoff]`, exact.
    pub log_tail: f64,
}

impl PoissonTruncation {
    pub fn new(rate: f64, cutoff: usize) -> PoissonTruncation {
        let ln_rate = rate.ln();
        let mut weights = Vec::with_capacity(cutoff + 1);
        let mut ln_fact = 0.0;
        for j in 0..=cutoff {
            if j > 0 {
                ln_fact += (j as f64).ln();
            }
            weights.push(j as f64 * ln_rate - ln_fact);
        }
        let max = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (mut mass, mut mean, mut gap) = (CompensatedSum::new(), CompensatedSum::new(), CompensatedSum::new());
        for (j, w) in weights.iter().enumerate() {
            let p = (w - max).exp();
            mass.add(p);
            mean.add(j as f64 * p);
            gap.add((cutoff - j) as f64 * p);
        }
        PoissonTruncation {
            rate,
            cutoff,
            conditional_mean: mean.value() / mass.value(),
            conditional_gap: gap.value() / mass.value(),
            log_mass: max + mass.value().ln(),
            log_tail: log_poisson_tail(rate, cutoff + 1),
        }
    }
}

/// `ln P[P >= m]` for `P ~ Poisson(rate)`: by summing terms upward from `m`
/// when `m` is above the mean, and as one minus the lower sum otherwise.
pub fn log_poisson_tail(rate: f64, m: usize) -> f64 {
    let ln_rate = rate.ln();
    if m as f64 <= rate {
        let mut lower = f64::NEG_INFINITY;
        let mut term = -rate;
        for j in 0..m {
            if j > 0 {
                term += ln_rate - (j as f64).ln();
            }
            lower = log_add_exp(lower, term);
        }
        return (-lower.exp_m1()).ln();
    }
    let ln_fact: f64 = (1..=m).map(|j| (j as f64).ln()).sum();
    let mut term = -rate + m as f64 * ln_rate - ln_fact;
    let mut total = term;
    let mut j = m;
    loop {
        j += 1;
        term += ln_rate - (j as f64).ln();
        total = log_add_exp(total, term);
        if j as f64 > rate && term < total - 40.0 {
            return total;
        }
    }
}

/// `ln` of `(x n)^(-n) e^(n - 1/x)`, an upper bound on `P[P >= n]` for
/// `P ~ Poisson(1/x)` when `n > 1/x`.
pub fn poisson_tail_bound(x: f64, n: usize) -> Result<f64> {
    check_positive_x(x)?;
    let nf = n as f64;
    if nf <= 1.0 / x {
        return Err(Error::PreconditionViolated(format!("the tail bound needs n > 1/x, got n = {n}, 1/x = {}", 1.0 / x)));
    }
    Ok(-nf * (x * nf).ln() + nf - 1.0 / x)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanFieldEval {
    pub n: usize,
    pub x: f64,
    pub log_z: f64,
    pub length: f64,
    pub regime: Regime,
    pub predicted_length: f64,
    pub envelope: Option<(f64, f64)>,
}

/// `Z` and `L` on `K_n` through the truncated Poisson law; cost is linear in
/// `n` and no factorial is ever formed.
pub fn evaluate_complete(n: usize, x: f64) -> Result<MeanFieldEval> {
    check_positive_x(x)?;
    if n < 2 {
        return Err(Error::PreconditionViolated(format!("n must be at least 2, got {n}")));
    }
    let cutoff = n - 1;
    let trunc = PoissonTruncation::new(1.0 / x, cutoff);
    // ln((n-1)! x^(n-1)) as one sum, avoiding the cancellation between its two parts.
    let log_prefactor = (1..n).map(|j| (j as f64 * x).ln()).collect::<CompensatedSum>().value();
    let log_z = log_prefactor + trunc.log_mass;
    let length = trunc.conditional_gap;
    let regime = classify_regime(n, x);
    let eps = ((n - 1) as f64 * x - 1.0).abs();
    let predicted_length = match regime {
        Regime::Sub => (1.0 - eps) / eps,
        Regime::Critical => critical_constant() * ((n - 1) as f64).sqrt(),
        Regime::Super => eps / (1.0 + eps) * (n - 1) as f64,
    };
    let envelope = match regime {
        Regime::Super => supercritical_envelope(n, eps).ok(),
        _ => None,
    };
    Ok(MeanFieldEval { n, x, log_z, length, regime, predicted_length, envelope })
}

/// Bracket `ε/(1+ε) (n-1) ± n I^(n/2) / (1 - I^n)` with
/// `I = max(e^(-ε²/8), √e / 2)` for `L` at `x = (1+ε)/(n-1)`.
pub fn supercritical_envelope(n: usize, eps: f64) -> Result<(f64, f64)> {
    if !(eps > 0.0) {
        return Err(Error::PreconditionViolated(format!("epsilon must be positive, got {eps}")));
    }
    let nf = n as f64;
    let ln_i = (-eps * eps / 8.0).max((E.sqrt() / 2.0).ln());
    let half = nf * (ln_i * nf / 2.0).exp() / -(ln_i * nf).exp_m1();
    let center = eps / (1.0 + eps) * (nf - 1.0);
    if !half.is_finite() || half >= nf - 1.0 {
        return Err(Error::DegenerateEnvelope { n, eps });
    }
    Ok((center - half, center + half))
}

/// `E|N|` for a standard Gaussian, `√(2/π)`: the limit of `L / √(n-1)` at `x = 1/(n-1)`.
pub fn critical_constant() -> f64 {
    (2.0 / PI).sqrt()
}

/// Limit of the exponent along a sequence in a given regime.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GammaLimit {
    Value(f64),
    Unbounded,
}

impl fmt::Display for GammaLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaLimit::Value(v) => write!(f, "{v}"),
            GammaLimit::Unbounded => f.write_str("Unbounded"),
        }
    }
}

/// On complete graphs the exponent tends to 1 along sub-critical and critical
/// sequences and diverges along super-critical ones.
pub fn gamma_mf_prediction(regime: Regime) -> GammaLimit {
    match regime {
        Regime::Sub | Regime::Critical => GammaLimit::Value(1.0),
        Regime::Super => GammaLimit::Unbounded,
    }
}

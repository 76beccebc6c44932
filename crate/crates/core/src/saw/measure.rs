use super::census::SawCensus;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;
use serde::{Deserialize, Serialize};
use std::fmt;

/// How the length-0 term of the series is weighted.
///
/// `Exact` uses `c_0 = 1`, the definition of the walk set. `Paper` uses
/// `c_0 = d/(d-1)`, the value the non-backtracking correspondence
/// `c_k = (d/(d-1)) (d-1)^k P[T > k]` gives at `k = 0`; closed forms written in
/// that convention can then be checked literally.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Exact,
    Paper,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Exact => "exact",
            Convention::Paper => "paper",
        })
    }
}

impl std::str::FromStr for Convention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Convention::Exact),
            "paper" => Ok(Convention::Paper),
            _ => Err(Error::Config(format!("unknown convention '{s}' (expected exact or paper)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Exact,
    TransitiveIdentity,
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "Exact",
            Method::TransitiveIdentity => "TransitiveIdentity",
            Method::MonteCarlo => "MonteCarlo",
        })
    }
}

/// `ln Z / ln(L + 1)`, or `Undefined` when `L = 0` makes the denominator vanish.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Gamma {
    Value(f64),
    Undefined,
}

impl Gamma {
    pub fn from_parts(log_z: f64, length: f64) -> Gamma {
        if length > 0.0 {
            Gamma::Value(log_z / length.ln_1p())
        } else {
            Gamma::Undefined
        }
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Gamma::Value(v) => Some(v),
            Gamma::Undefined => None,
        }
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gamma::Value(v) => write!(f, "{v}"),
            Gamma::Undefined => f.write_str("Undefined"),
        }
    }
}

/// Partition function, expected length, trivial-intersection probability and
/// exponent at one value of `x`. `Z` is kept as its logarithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SawMeasureEval {
    pub x: f64,
    pub log_z: f64,
    pub length: f64,
    pub intersection: Option<f64>,
    pub gamma: Gamma,
    pub method: Method,
    pub convention: Convention,
}

impl SawMeasureEval {
    pub fn z(&self) -> f64 {
        self.log_z.exp()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalOptions {
    pub convention: Convention,
    /// Fill `I` from `I = (L + 1) / Z`, which holds on vertex-transitive graphs.
    pub assume_transitive: bool,
}

/// Power series `sum_k e^{a_k} x^k` stored by its log-coefficients (`-inf` for
/// a zero coefficient).
#[derive(Debug, Clone, PartialEq)]
pub struct LogSeries {
    log_coeffs: Vec<f64>,
}

impl LogSeries {
    pub fn new(log_coeffs: Vec<f64>) -> LogSeries {
        LogSeries { log_coeffs }
    }

    pub fn from_census(census: &SawCensus, convention: Convention) -> Result<LogSeries> {
        census.check_valid()?;
        let mut log_coeffs = census.log_counts();
        if convention == Convention::Paper {
            log_coeffs[0] = paper_log_c0(census)?;
        }
        Ok(LogSeries { log_coeffs })
    }

    pub fn log_coeffs(&self) -> &[f64] {
        &self.log_coeffs
    }

    /// `(ln sum_k c_k x^k, sum_k k c_k x^k / sum_k c_k x^k)`.
    pub fn log_sum_and_mean(&self, x: f64) -> (f64, f64) {
        let ln_x = x.ln();
        let terms: Vec<f64> =
            self.log_coeffs.iter().enumerate().map(|(k, &a)| if a == f64::NEG_INFINITY { a } else { a + k as f64 * ln_x }).collect();
        let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut mass = CompensatedSum::new();
        let mut first = CompensatedSum::new();
        for (k, &t) in terms.iter().enumerate() {
            let w = (t - max).exp();
            mass.add(w);
            first.add(k as f64 * w);
        }
        (max + mass.value().ln(), first.value() / mass.value())
    }
}

/// `ln(d/(d-1))` with `d = c_1`.
fn paper_log_c0(census: &SawCensus) -> Result<f64> {
    match census.root_degree() {
        Some(d) if d >= 2 => Ok((d as f64 / (d - 1) as f64).ln()),
        _ => Err(Error::InvalidCensus("the c_0 = d/(d-1) convention needs a census with c_1 >= 2".into())),
    }
}

pub(crate) fn check_positive_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!("x must be a positive real, got {x}")))
    }
}

/// Evaluates `Z(x) = sum_k c_k x^k` and `L(x) = sum_k k c_k x^k / Z(x)` from an
/// exact census.
///
/// `I` is only reported when the caller asserts vertex-transitivity; it always
/// comes from the exact series (`c_0 = 1`), whatever the convention.
pub fn evaluate(census: &SawCensus, x: f64, opts: EvalOptions) -> Result<SawMeasureEval> {
    check_positive_x(x)?;
    let series = LogSeries::from_census(census, opts.convention)?;
    let (log_z, length) = series.log_sum_and_mean(x);
    let intersection = if opts.assume_transitive {
        let (exact_log_z, exact_length) = match opts.convention {
            Convention::Exact => (log_z, length),
            Convention::Paper => LogSeries::from_census(census, Convention::Exact)?.log_sum_and_mean(x),
        };
        Some(((exact_length + 1.0).ln() - exact_log_z).exp())
    } else {
        None
    };
    Ok(SawMeasureEval {
        x,
        log_z,
        length,
        intersection,
        gamma: Gamma::from_parts(log_z, length),
        method: if opts.assume_transitive { Method::TransitiveIdentity } else { Method::Exact },
        convention: opts.convention,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Family, Graph};
    use crate::saw::census::{enumerate_census, DEFAULT_NODE_BUDGET};
    use num_bigint::{BigInt, BigUint};
    use num_rational::BigRational;
    use num_traits::{ToPrimitive, Zero};
    use proptest::prelude::*;

    fn census_of(fam: Family) -> SawCensus {
        let g = fam.generate().unwrap();
        enumerate_census(&g, 0, g.n() - 1, DEFAULT_NODE_BUDGET).unwrap()
    }

    /// Exact `(Z, L)` in rational arithmetic.
    fn rational_z_and_length(census: &SawCensus, x: &BigRational) -> (BigRational, BigRational) {
        let mut z = BigRational::zero();
        let mut first = BigRational::zero();
        let mut pow = BigRational::from_integer(1.into());
        for (k, c) in census.counts.iter().enumerate() {
            let term = BigRational::from_integer(BigInt::from(c.clone())) * &pow;
            first += &term * BigRational::from_integer(k.into());
            z += term;
            pow *= x;
        }
        let length = &first / &z;
        (z, length)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn cycle5_at_one() {
        let e = evaluate(&census_of(Family::Cycle(5)), 1.0, EvalOptions::default()).unwrap();
        assert!(close(e.z(), 9.0, 1e-14));
        assert!(close(e.length, 20.0 / 9.0, 1e-14));
        assert_eq!(e.intersection, None);
        assert_eq!(e.method, Method::Exact);
    }

    #[test]
    fn k4_at_one_with_identity() {
        let opts = EvalOptions { assume_transitive: true, ..Default::default() };
        let e = evaluate(&census_of(Family::Complete(4)), 1.0, opts).unwrap();
        assert!(close(e.z(), 16.0, 1e-14));
        assert!(close(e.length, 33.0 / 16.0, 1e-14));
        assert!(close(e.intersection.unwrap(), 49.0 / 256.0, 1e-14));
        assert_eq!(e.method, Method::TransitiveIdentity);
        let gamma = e.gamma.value().unwrap();
        assert!(close(gamma, 16f64.ln() / (49.0f64 / 16.0).ln(), 1e-14));
    }

    #[test]
    fn small_x_limit() {
        let e = evaluate(&census_of(Family::Petersen), 1e-9, EvalOptions::default()).unwrap();
        assert!(e.log_z.abs() < 1e-8);
        assert!(e.length < 1e-8);
        let single = SawCensus::from_counts("point", 0, vec![BigUint::from(1u32)]);
        let e = evaluate(&single, 0.5, EvalOptions::default()).unwrap();
        assert_eq!((e.log_z, e.length, e.gamma), (0.0, 0.0, Gamma::Undefined));
    }

    #[test]
    fn huge_counts_do_not_overflow() {
        // K_200 has c_199 = 199!, far beyond f64 range.
        let counts: Vec<BigUint> = (0..200u32)
            .scan(BigUint::from(1u32), |acc, k| {
                let out = acc.clone();
                *acc *= BigUint::from(199 - k);
                Some(out)
            })
            .collect();
        let census = SawCensus::from_counts("K_200", 0, counts);
        let e = evaluate(&census, 1.0, EvalOptions::default()).unwrap();
        assert!(e.log_z.is_finite() && e.log_z > 800.0);
        assert!(e.length > 197.0 && e.length <= 199.0);
    }

    #[test]
    fn paper_convention_shifts_z() {
        let census = census_of(Family::Petersen);
        for x in [0.2, 0.5, 1.0] {
            let exact = evaluate(&census, x, EvalOptions::default()).unwrap();
            let opts = EvalOptions { convention: Convention::Paper, assume_transitive: true };
            let paper = evaluate(&census, x, opts).unwrap();
            assert!(close(paper.z(), exact.z() + 0.5, 1e-13));
            assert!(close(paper.length, exact.length * exact.z() / paper.z(), 1e-13));
            assert!(close(paper.intersection.unwrap(), (exact.length + 1.0) / exact.z(), 1e-13));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let census = census_of(Family::Cycle(5));
        assert!(matches!(evaluate(&census, 0.0, EvalOptions::default()), Err(Error::PreconditionViolated(_))));
        assert!(evaluate(&census, f64::NAN, EvalOptions::default()).is_err());
        let mut bad = census.clone();
        bad.complete = false;
        assert!(matches!(evaluate(&bad, 1.0, EvalOptions::default()), Err(Error::InvalidCensus(_))));
        let gap = SawCensus::from_counts("gap", 0, [1u32, 0, 2].map(BigUint::from).to_vec());
        assert!(matches!(evaluate(&gap, 1.0, EvalOptions::default()), Err(Error::InvalidCensus(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn matches_rational_arithmetic(
            n in 2usize..=8,
            mask in any::<u32>(),
            p in 1u32..40,
            q in 1u32..20,
        ) {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> (i % 32) & 1 == 1).map(|(_, &e)| e).collect();
            let g = Graph::new(n, &edges, 0).unwrap();
            let census = enumerate_census(&g, 0, n - 1, DEFAULT_NODE_BUDGET).unwrap();
            let x = BigRational::new(p.into(), q.into());
            let (z, length) = rational_z_and_length(&census, &x);
            let e = evaluate(&census, p as f64 / q as f64, EvalOptions::default()).unwrap();
            prop_assert!(close(e.z(), z.to_f64().unwrap(), 1e-12));
            prop_assert!(close(e.length, length.to_f64().unwrap(), 1e-12));
        }
    }
}

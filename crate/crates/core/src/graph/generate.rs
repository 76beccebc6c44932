use super::Graph;
use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

/// Pairing attempts before the configuration model gives up.
pub const DEFAULT_RESAMPLE_LIMIT: usize = 10_000;

/// Named graph families. Every generated graph has root 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    /// `(Z/nZ)^dim` with nearest-neighbor edges.
    Torus(usize, usize),
    Hypercube(usize),
    Petersen,
    /// Uniform `d`-regular simple graph on `n` vertices from the pairing model.
    RandomRegular {
        n: usize,
        d: usize,
        seed: u64,
    },
}

impl Family {
    pub fn generate(&self) -> Result<Graph> {
        let name = self.to_string();
        let g = match *self {
            Family::Complete(n) => complete(n)?,
            Family::Cycle(n) => cycle(n)?,
            Family::Torus(n, dim) => torus(n, dim)?,
            Family::Hypercube(dim) => hypercube(dim)?,
            Family::Petersen => petersen(),
            Family::RandomRegular { n, d, seed } => random_regular(n, d, seed, DEFAULT_RESAMPLE_LIMIT)?,
        };
        Ok(g.with_name(name))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Torus(n, dim) => write!(f, "torus:{n}:{dim}"),
            Family::Hypercube(dim) => write!(f, "hypercube:{dim}"),
            Family::Petersen => write!(f, "petersen"),
            Family::RandomRegular { n, d, seed } => write!(f, "random-regular:{n}:{d}:{seed}"),
        }
    }
}

fn parse_usize(tok: &str, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Config(format!("bad {what} '{tok}'")))
}

impl FromStr for Family {
    type Err = Error;

    /// Accepts `complete:N`, `cycle:N`, `torus:N:DIM`, `hypercube:DIM`,
    /// `petersen`, and `random-regular:N:D:SEED` (alias `rr`).
    fn from_str(s: &str) -> Result<Family> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let fam = match parts.as_slice() {
            ["complete" | "K", n] => Family::Complete(parse_usize(n, "size")?),
            ["cycle" | "C", n] => Family::Cycle(parse_usize(n, "size")?),
            ["torus", n, dim] => Family::Torus(parse_usize(n, "size")?, parse_usize(dim, "dimension")?),
            ["torus", n] => Family::Torus(parse_usize(n, "size")?, 2),
            ["hypercube" | "Q", dim] => Family::Hypercube(parse_usize(dim, "dimension")?),
            ["petersen"] => Family::Petersen,
            ["random-regular" | "rr", n, d, seed] => Family::RandomRegular {
                n: parse_usize(n, "size")?,
                d: parse_usize(d, "degree")?,
                seed: seed.parse().map_err(|_| Error::Config(format!("bad seed '{seed}'")))?,
            },
            _ => return Err(Error::Config(format!("unknown graph family '{s}'"))),
        };
        Ok(fam)
    }
}

/// A family indexed by a single size parameter, for sweeps over sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SizedFamily {
    Complete,
    Cycle,
    Torus { dim: usize },
    Hypercube,
    RandomRegular { d: usize, seed: u64 },
}

impl SizedFamily {
    pub fn at(&self, size: usize) -> Family {
        match *self {
            SizedFamily::Complete => Family::Complete(size),
            SizedFamily::Cycle => Family::Cycle(size),
            SizedFamily::Torus { dim } => Family::Torus(size, dim),
            SizedFamily::Hypercube => Family::Hypercube(size),
            SizedFamily::RandomRegular { d, seed } => Family::RandomRegular { n: size, d, seed },
        }
    }
}

impl FromStr for SizedFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<SizedFamily> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        Ok(match parts.as_slice() {
            ["complete"] => SizedFamily::Complete,
            ["cycle"] => SizedFamily::Cycle,
            ["torus"] => SizedFamily::Torus { dim: 2 },
            ["torus", dim] => SizedFamily::Torus { dim: parse_usize(dim, "dimension")? },
            ["hypercube"] => SizedFamily::Hypercube,
            ["random-regular" | "rr", d, seed] => SizedFamily::RandomRegular {
                d: parse_usize(d, "degree")?,
                seed: seed.parse().map_err(|_| Error::Config(format!("bad seed '{seed}'")))?,
            },
            _ => return Err(Error::Config(format!("unknown sized family '{s}'"))),
        })
    }
}

fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InfeasibleParameters(format!("complete graph needs n >= 2, got {n}")));
    }
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::new(n, &edges, 0)
}

fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InfeasibleParameters(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges, 0)
}

fn torus(n: usize, dim: usize) -> Result<Graph> {
    if n < 3 || dim < 1 {
        return Err(Error::InfeasibleParameters(format!("torus needs n >= 3 and dim >= 1, got n={n}, dim={dim}")));
    }
    let total = n.checked_pow(dim as u32).ok_or_else(|| Error::InfeasibleParameters("torus too large".into()))?;
    let mut edges = Vec::with_capacity(total * dim);
    for v in 0..total {
        let mut stride = 1;
        for _ in 0..dim {
            let coord = (v / stride) % n;
            let next = (coord + 1) % n;
            let w = v - coord * stride + next * stride;
            edges.push((v, w));
            stride *= n;
        }
    }
    Graph::new(total, &edges, 0)
}

fn hypercube(dim: usize) -> Result<Graph> {
    if !(1..=24).contains(&dim) {
        return Err(Error::InfeasibleParameters(format!("hypercube dimension must be in 1..=24, got {dim}")));
    }
    let n = 1usize << dim;
    let edges: Vec<_> = (0..n).flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b))).filter(|&(v, w)| v < w)).collect();
    Graph::new(n, &edges, 0)
}

fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, &edges, 0).expect("valid edge set")
}

/// Configuration model: shuffle the `n·d` half-edges, pair them consecutively,
/// and resample the whole pairing until it has no loop or repeated edge.
fn random_regular(n: usize, d: usize, seed: u64, max_attempts: usize) -> Result<Graph> {
    if d < 3 || d >= n || !(n * d).is_multiple_of(2) {
        return Err(Error::InfeasibleParameters(format!("random regular graph needs d >= 3, d < n and n*d even; got n={n}, d={d}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut seen = HashSet::with_capacity(n * d / 2);
    'attempt: for _ in 0..max_attempts {
        stubs.shuffle(&mut rng);
        seen.clear();
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u == v || !seen.insert((u, v)) {
                continue 'attempt;
            }
        }
        let edges: Vec<_> = seen.iter().copied().collect();
        return Graph::new(n, &edges, 0);
    }
    Err(Error::ResampleLimitExceeded { attempts: max_attempts })
}

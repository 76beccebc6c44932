//! The `sawlab` command line.
//!
//! Every flag can also be given in a TOML file passed with `--config`, under
//! the same name with dashes replaced by underscores; flags win on conflict.
//! Output is a table (CSV by default, JSON with `--format json` or a `.json`
//! output path) whose `#` metadata lines echo the resolved configuration.

use crate::error::{Error, Result};
use crate::graph::{
    is_vertex_transitive, load_graph, to_edge_list, to_json, Family, Graph, SizedFamily, Transitivity, DEFAULT_AUTOMORPHISM_BUDGET,
};
use crate::meanfield::{evaluate_complete, saw_count_complete};
use crate::nbrw::{
    estimate_measure_from_stats, estimate_measure_splitting, estimate_survival, mixing_time, mixing_time_from, splitting_survival,
    McEstimate, McOptions, SplittingOptions,
};
use crate::predictions::{verify_graph, VerifyOptions};
use crate::report::{census_table, num, opt_num, Table};
use crate::saw::{
    critical_scan, enumerate_census, enumerate_census_partial, enumerate_pairs, evaluate, Convention, EvalOptions, ScanOptions,
    DEFAULT_NODE_BUDGET,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};

/// Exit status when a run completes but a checked bound or identity fails.
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sawlab", version, about = "Self-avoiding walk statistics on finite graphs")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// TOML file with default values for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Family spec (`petersen`, `complete:6`, `cycle:9`, `torus:5:2`, `hypercube:3`,
    /// `random-regular:N:D:SEED`) or a path to an edge-list / JSON graph file.
    #[arg(long, global = true)]
    pub graph: Option<String>,
    #[arg(long, global = true)]
    pub root: Option<usize>,
    /// Comma-separated values of x.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Option<Vec<f64>>,
    /// `LO:HI:STEPS[:linear|log]`, STEPS points including both ends.
    #[arg(long, global = true)]
    pub grid: Option<String>,
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    /// 0 draws a seed from system entropy; the seed used is written to the output.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Node limit for exhaustive searches.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[arg(long, global = true)]
    pub assume_transitive: bool,
    #[arg(long, global = true)]
    pub convention: Option<Convention>,
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Write a generated graph as an edge list (or JSON).
    Gen,
    /// Count self-avoiding walks by length.
    Census {
        #[arg(long)]
        k_max: Option<usize>,
        /// On budget exhaustion keep the partial counts, flagged incomplete.
        #[arg(long)]
        partial: bool,
    },
    /// Exact Z, L, I and gamma over x.
    Eval,
    /// Trivial-intersection probability by enumerating pairs of walks.
    Pairs,
    /// Monte-Carlo estimates from non-backtracking walks.
    Nbrw {
        /// Emit the survival curve P[T > k] instead of estimates.
        #[arg(long)]
        survival: bool,
        /// Use the population-splitting estimator.
        #[arg(long)]
        splitting: bool,
        #[arg(long)]
        population: Option<usize>,
        #[arg(long)]
        replicates: Option<usize>,
        #[arg(long)]
        bootstrap: Option<usize>,
    },
    /// Mixing time of the non-backtracking walk.
    Mixing {
        #[arg(long)]
        horizon: Option<usize>,
        /// Restrict the maximum over start vertices (gives a lower bound).
        #[arg(long, value_delimiter = ',')]
        starts: Option<Vec<usize>>,
    },
    /// Z and L over a range of graph sizes, with crossing points.
    Scan {
        /// `complete`, `cycle`, `torus[:DIM]`, `hypercube` or `random-regular:D:SEED`.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        /// Values of Z whose crossing in x is located.
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<f64>>,
        /// Fall back to the splitting estimator when the census is over budget.
        #[arg(long)]
        splitting: bool,
        #[arg(long)]
        crossings: bool,
    },
    /// Closed forms on complete graphs.
    Meanfield {
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        /// Compare with an exhaustive census of K_n.
        #[arg(long)]
        check_enumeration: bool,
    },
    /// Check identities and bounds on one graph.
    Verify {
        #[arg(long)]
        bootstrap: Option<usize>,
        #[arg(long)]
        horizon: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Gen => "gen",
            Command::Census { .. } => "census",
            Command::Eval => "eval",
            Command::Pairs => "pairs",
            Command::Nbrw { .. } => "nbrw",
            Command::Mixing { .. } => "mixing",
            Command::Scan { .. } => "scan",
            Command::Meanfield { .. } => "meanfield",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Keys accepted in a config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub graph: Option<String>,
    pub root: Option<usize>,
    pub x: Option<Vec<f64>>,
    pub grid: Option<String>,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub budget: Option<u64>,
    pub assume_transitive: Option<bool>,
    pub convention: Option<Convention>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub k_max: Option<usize>,
    pub partial: Option<bool>,
    pub survival: Option<bool>,
    pub splitting: Option<bool>,
    pub population: Option<usize>,
    pub replicates: Option<usize>,
    pub bootstrap: Option<usize>,
    pub horizon: Option<usize>,
    pub starts: Option<Vec<usize>>,
    pub family: Option<String>,
    pub sizes: Option<Vec<usize>>,
    pub levels: Option<Vec<f64>>,
    pub crossings: Option<bool>,
    pub n: Option<Vec<usize>>,
    pub check_enumeration: Option<bool>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<ConfigFile> {
        let text = std::fs::read_to_string(path)?;
        toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// The resolved settings of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub graph_spec: Option<String>,
    pub root: usize,
    pub x_values: Vec<f64>,
    pub samples: u64,
    pub seed: u64,
    pub seed_from_entropy: bool,
    pub workers: usize,
    pub budget: u64,
    pub assume_transitive: bool,
    pub convention: Convention,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn resolve(common: &CommonArgs, command: &Command, file: &ConfigFile) -> Result<ExperimentConfig> {
        let x_values = match (&common.x, &common.grid, &file.x, &file.grid) {
            (Some(x), _, _, _) => x.clone(),
            (None, Some(g), _, _) => parse_grid(g)?,
            (None, None, Some(x), _) => x.clone(),
            (None, None, None, Some(g)) => parse_grid(g)?,
            (None, None, None, None) => Vec::new(),
        };
        let samples = common.samples.or(file.samples).unwrap_or(100_000);
        if samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        let requested_seed = common.seed.or(file.seed).unwrap_or(1);
        let seed = if requested_seed == 0 { entropy_seed() } else { requested_seed };
        let output = common.output.clone().or(file.output.clone());
        let format = common.format.or(file.format).unwrap_or_else(|| {
            if output.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "json")) {
                Format::Json
            } else {
                Format::Csv
            }
        });
        Ok(ExperimentConfig {
            command: command.name().to_string(),
            graph_spec: common.graph.clone().or(file.graph.clone()),
            root: common.root.or(file.root).unwrap_or(0),
            x_values,
            samples,
            seed,
            seed_from_entropy: requested_seed == 0,
            workers: common.workers.or(file.workers).unwrap_or(0),
            budget: common.budget.or(file.budget).unwrap_or(DEFAULT_NODE_BUDGET),
            assume_transitive: common.assume_transitive || file.assume_transitive.unwrap_or(false),
            convention: common.convention.or(file.convention).unwrap_or_default(),
            output,
            format,
        })
    }

    fn graph(&self) -> Result<Graph> {
        let spec = self.graph_spec.as_deref().ok_or_else(|| Error::Config("--graph is required".into()))?;
        let g = if Path::new(spec).is_file() { load_graph(spec)? } else { spec.parse::<Family>()?.generate()? };
        g.check_root(self.root)?;
        Ok(g)
    }

    fn xs(&self) -> Result<&[f64]> {
        if self.x_values.is_empty() {
            return Err(Error::Config("give values of x with --x or --grid".into()));
        }
        Ok(&self.x_values)
    }

    fn header(&self, t: &mut Table) {
        t.meta("version", env!("CARGO_PKG_VERSION"))
            .meta("command", &self.command)
            .meta("config", serde_json::to_string(self).expect("config serializes"))
            .meta("seed", self.seed)
            .meta("convention", self.convention);
    }
}

fn entropy_seed() -> u64 {
    loop {
        let s: u64 = rand::random();
        if s != 0 {
            return s;
        }
    }
}

/// Parses `LO:HI:STEPS[:linear|log]`.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Config(format!("bad grid '{spec}' (expected LO:HI:STEPS[:linear|log])"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() < 3 || parts.len() > 4 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let steps: usize = parts[2].parse().map_err(|_| bad())?;
    let log = match parts.get(3) {
        None | Some(&"linear") => false,
        Some(&"log") => true,
        Some(_) => return Err(bad()),
    };
    if !(lo < hi) || steps == 0 || (log && !(lo > 0.0)) {
        return Err(Error::Config(format!("grid '{spec}' needs LO < HI, STEPS >= 1, and LO > 0 for a log grid")));
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    let t = |i: usize| i as f64 / (steps - 1) as f64;
    Ok((0..steps).map(|i| if log { (lo.ln() + t(i) * (hi.ln() - lo.ln())).exp() } else { lo + t(i) * (hi - lo) }).collect())
}

/// What a subcommand produced: the table, any extra text output, and whether
/// every check it ran passed.
struct Outcome {
    table: Option<Table>,
    raw: Option<String>,
    checks_passed: bool,
}

impl Outcome {
    fn table(t: Table) -> Outcome {
        Outcome { table: Some(t), raw: None, checks_passed: true }
    }
}

/// Parses `args`, runs the command and returns the process exit status.
/// Errors are reported on stderr as a JSON object `{"error": kind, "message": text}`.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(true) => 0,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let obj = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
            eprintln!("{obj}");
            1
        }
    }
}

/// Runs a parsed command line. Returns whether every check passed.
pub fn run(cli: &Cli) -> Result<bool> {
    let file = match &cli.common.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let cfg = ExperimentConfig::resolve(&cli.common, &cli.command, &file)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build().map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let outcome = pool.install(|| dispatch(&cfg, &cli.command, &file))?;
    let options = serde_json::to_string(&cli.command).expect("options serialize");
    if let Some(raw) = outcome.raw {
        emit(&cfg, &raw)?;
    }
    if let Some(mut table) = outcome.table {
        let mut full = Table::new(&[]);
        cfg.header(&mut full);
        full.meta("options", &options);
        if let Some(p) = &cli.common.config {
            full.meta("config_file", p.display());
        }
        full.metadata.append(&mut table.metadata);
        full.columns = table.columns;
        full.rows = table.rows;
        let text = match cfg.format {
            Format::Csv => full.to_csv()?,
            Format::Json => full.to_json()?,
        };
        emit(&cfg, &text)?;
    }
    Ok(outcome.checks_passed)
}

fn emit(cfg: &ExperimentConfig, text: &str) -> Result<()> {
    match &cfg.output {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn dispatch(cfg: &ExperimentConfig, command: &Command, file: &ConfigFile) -> Result<Outcome> {
    match command {
        Command::Gen => {
            let g = cfg.graph()?;
            let text = match cfg.format {
                Format::Json => to_json(&g) + "\n",
                Format::Csv => to_edge_list(&g),
            };
            Ok(Outcome { table: None, raw: Some(text), checks_passed: true })
        }
        Command::Census { k_max, partial } => {
            let g = cfg.graph()?;
            let k_max = k_max.or(file.k_max).unwrap_or(g.n() - 1);
            let census = if *partial || file.partial.unwrap_or(false) {
                enumerate_census_partial(&g, cfg.root, k_max, cfg.budget)?
            } else {
                enumerate_census(&g, cfg.root, k_max, cfg.budget)?
            };
            Ok(Outcome::table(census_table(&census)))
        }
        Command::Eval => {
            let g = cfg.graph()?;
            let census = enumerate_census(&g, cfg.root, g.n() - 1, cfg.budget)?;
            let transitive = cfg.assume_transitive || is_vertex_transitive(&g, DEFAULT_AUTOMORPHISM_BUDGET) == Transitivity::Yes;
            let opts = EvalOptions { convention: cfg.convention, assume_transitive: transitive };
            let mut t = Table::new(&["x", "Z_log", "L", "I", "gamma", "method"]);
            t.meta("graph", g.name()).meta("root", cfg.root);
            for &x in cfg.xs()? {
                let e = evaluate(&census, x, opts)?;
                t.push(vec![num(x), num(e.log_z), num(e.length), opt_num(e.intersection), e.gamma.to_string(), e.method.to_string()]);
            }
            Ok(Outcome::table(t))
        }
        Command::Pairs => {
            let g = cfg.graph()?;
            let pairs = enumerate_pairs(&g, cfg.root, cfg.budget)?;
            let mut t = Table::new(&["x", "I", "Z_log", "L"]);
            t.meta("graph", g.name()).meta("root", cfg.root);
            for &x in cfg.xs()? {
                let e = evaluate(&pairs.census, x, EvalOptions::default())?;
                t.push(vec![num(x), num(pairs.intersection(x)?), num(e.log_z), num(e.length)]);
            }
            Ok(Outcome::table(t))
        }
        Command::Nbrw { survival, splitting, population, replicates, bootstrap } => {
            let g = cfg.graph()?;
            let split_opts = SplittingOptions {
                population: population.or(file.population).unwrap_or(SplittingOptions::default().population),
                replicates: replicates.or(file.replicates).unwrap_or(SplittingOptions::default().replicates),
                seed: cfg.seed,
            };
            let mc = McOptions {
                convention: cfg.convention,
                assume_transitive: cfg.assume_transitive,
                bootstrap: bootstrap.or(file.bootstrap).unwrap_or(McOptions::default().bootstrap),
            };
            let splitting = *splitting || file.splitting.unwrap_or(false);
            let survival = *survival || file.survival.unwrap_or(false);
            nbrw_table(cfg, &g, splitting, survival, split_opts, mc).map(Outcome::table)
        }
        Command::Mixing { horizon, starts } => {
            let g = cfg.graph()?;
            let horizon = horizon.or(file.horizon).unwrap_or(1000);
            let starts = starts.clone().or(file.starts.clone());
            let report = match &starts {
                Some(s) => mixing_time_from(&g, s, horizon)?,
                None => mixing_time(&g, horizon)?,
            };
            let mut t = Table::new(&["t", "max_dev"]);
            t.meta("graph", g.name()).meta("horizon", horizon).meta("threshold", num(report.threshold)).meta("tau", report.tau);
            if starts.is_some() {
                t.meta("starts", "subset (tau is a lower bound)");
            }
            for (i, d) in report.max_dev.iter().enumerate() {
                t.push(vec![(i + 1).to_string(), num(*d)]);
            }
            Ok(Outcome::table(t))
        }
        Command::Scan { family, sizes, levels, splitting, crossings } => {
            let family: SizedFamily =
                family.clone().or(file.family.clone()).ok_or_else(|| Error::Config("--family is required".into()))?.parse()?;
            let sizes = sizes.clone().or(file.sizes.clone()).unwrap_or_default();
            let opts = ScanOptions {
                budget: cfg.budget,
                convention: cfg.convention,
                levels: levels.clone().or(file.levels.clone()).unwrap_or(ScanOptions::default().levels),
                fallback: (*splitting || file.splitting.unwrap_or(false))
                    .then_some(SplittingOptions { seed: cfg.seed, ..Default::default() }),
            };
            let table = critical_scan(family, &sizes, cfg.xs()?, &opts)?;
            let partial = table.cells.iter().any(|c| c.log_z.is_none());
            let mut t = if *crossings || file.crossings.unwrap_or(false) {
                let mut t = Table::new(&["size", "level", "x_hat"]);
                for c in &table.crossings {
                    t.push(vec![c.size.to_string(), num(c.level), opt_num(c.x_hat)]);
                }
                t
            } else {
                let mut t = Table::new(&["size", "n", "x", "Z_log", "L", "method"]);
                for c in &table.cells {
                    let method = c.method.map(|m| m.to_string()).unwrap_or_default();
                    t.push(vec![c.size.to_string(), c.n.to_string(), num(c.x), opt_num(c.log_z), opt_num(c.length), method]);
                }
                t
            };
            t.meta("partial", partial);
            Ok(Outcome::table(t))
        }
        Command::Meanfield { n, check_enumeration } => {
            let ns = n.clone().or(file.n.clone()).ok_or_else(|| Error::Config("--n is required".into()))?;
            let check = *check_enumeration || file.check_enumeration.unwrap_or(false);
            meanfield_table(cfg, &ns, check)
        }
        Command::Verify { bootstrap, horizon } => {
            let g = cfg.graph()?;
            let opts = VerifyOptions {
                root: cfg.root,
                budget: cfg.budget,
                samples: cfg.samples,
                seed: cfg.seed,
                bootstrap: bootstrap.or(file.bootstrap).unwrap_or(McOptions::default().bootstrap),
                assume_transitive: cfg.assume_transitive,
                mixing_horizon: horizon.or(file.horizon).unwrap_or(VerifyOptions::default().mixing_horizon),
            };
            let report = verify_graph(&g, cfg.xs()?, opts)?;
            let mut t = report.to_table();
            t.metadata.insert(0, ("graph".into(), g.name().to_string()));
            Ok(Outcome { table: Some(t), raw: None, checks_passed: !report.any_violated() })
        }
    }
}

fn nbrw_table(
    cfg: &ExperimentConfig,
    g: &Graph,
    splitting: bool,
    survival: bool,
    split_opts: SplittingOptions,
    mc: McOptions,
) -> Result<Table> {
    let n = g.n();
    if survival {
        let mut t = Table::new(&["k", "survival", "stderr"]);
        t.meta("graph", g.name()).meta("root", cfg.root);
        if splitting {
            let split = splitting_survival(g, cfg.root, split_opts)?;
            let r = split.replicates.len() as f64;
            t.meta("estimator", "splitting").meta("population", split_opts.population).meta("replicates", split_opts.replicates);
            for (k, &ls) in split.log_survival().iter().enumerate() {
                let mean = ls.exp();
                let var = split.replicates.iter().map(|v| (v[k].exp() - mean).powi(2)).sum::<f64>() / (r - 1.0).max(1.0);
                t.push(vec![k.to_string(), num(mean), num((var / r).sqrt())]);
            }
        } else {
            let stats = estimate_survival(g, cfg.root, cfg.samples, cfg.seed, n)?;
            t.meta("estimator", "plain").meta("samples", cfg.samples);
            for (k, (v, e)) in stats.survival.values.iter().zip(&stats.survival.stderr).enumerate() {
                t.push(vec![k.to_string(), num(*v), num(*e)]);
            }
        }
        return Ok(t);
    }
    let xs = cfg.xs()?;
    let estimates: Vec<McEstimate> = if splitting {
        let split = splitting_survival(g, cfg.root, split_opts)?;
        xs.iter().map(|&x| estimate_measure_splitting(&split, x, mc)).collect::<Result<_>>()?
    } else {
        let stats = estimate_survival(g, cfg.root, cfg.samples, cfg.seed, n)?;
        xs.iter().map(|&x| estimate_measure_from_stats(&stats, x, mc)).collect::<Result<_>>()?
    };
    let mut t = Table::new(&[
        "x",
        "Z_log",
        "L",
        "I",
        "gamma",
        "se_Z_log",
        "se_L",
        "se_I",
        "ci_Z_log_lo",
        "ci_Z_log_hi",
        "ci_L_lo",
        "ci_L_hi",
        "ci_I_lo",
        "ci_I_hi",
        "method",
    ]);
    t.meta("graph", g.name()).meta("root", cfg.root).meta("estimator", if splitting { "splitting" } else { "plain" });
    for e in &estimates {
        let ci_i = e.ci_intersection;
        t.push(vec![
            num(e.eval.x),
            num(e.eval.log_z),
            num(e.eval.length),
            opt_num(e.eval.intersection),
            e.eval.gamma.to_string(),
            num(e.se_log_z),
            num(e.se_length),
            opt_num(e.se_intersection),
            num(e.ci_log_z.0),
            num(e.ci_log_z.1),
            num(e.ci_length.0),
            num(e.ci_length.1),
            opt_num(ci_i.map(|c| c.0)),
            opt_num(ci_i.map(|c| c.1)),
            e.eval.method.to_string(),
        ]);
    }
    Ok(t)
}

/// Relative agreement required between closed forms and enumeration.
const ENUMERATION_TOLERANCE: f64 = 1e-9;

fn meanfield_table(cfg: &ExperimentConfig, ns: &[usize], check: bool) -> Result<Outcome> {
    let mut cols = vec!["n", "x", "Z_log", "L", "regime", "predicted_L", "envelope_lo", "envelope_hi"];
    if check {
        cols.extend(["enum_Z_log", "enum_L"]);
    }
    let mut t = Table::new(&cols);
    let mut all_match = true;
    for &n in ns {
        let census = if check {
            let g = Family::Complete(n).generate()?;
            let census = enumerate_census(&g, 0, n - 1, cfg.budget)?;
            for (k, c) in census.counts.iter().enumerate() {
                all_match &= *c == saw_count_complete(n, k)?;
            }
            Some(census)
        } else {
            None
        };
        for &x in cfg.xs()? {
            let e = evaluate_complete(n, x)?;
            let mut row = vec![
                n.to_string(),
                num(x),
                num(e.log_z),
                num(e.length),
                e.regime.to_string(),
                num(e.predicted_length),
                opt_num(e.envelope.map(|v| v.0)),
                opt_num(e.envelope.map(|v| v.1)),
            ];
            if let Some(c) = &census {
                let exact = evaluate(c, x, EvalOptions::default())?;
                let close = |a: f64, b: f64| (a - b).abs() <= ENUMERATION_TOLERANCE * a.abs().max(b.abs()).max(1.0);
                all_match &= close(exact.log_z, e.log_z) && close(exact.length, e.length);
                row.extend([num(exact.log_z), num(exact.length)]);
            }
            t.push(row);
        }
    }
    if check {
        t.meta("enumeration_check", if all_match { "match" } else { "mismatch" });
    }
    Ok(Outcome { table: Some(t), raw: None, checks_passed: all_match })
}

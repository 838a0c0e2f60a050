//! Command-line front end. Every command is deterministic for a given
//! configuration and seed.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use taugraph_core::asymptotics::{planar_constants, AsymptoticConstants};
use taugraph_core::enumeration::{build_census, WeightTable};
use taugraph_core::families::{
    dichotomy_scan, excluded_minors_biconnected, verify_trimmable, Dichotomy, GraphFamily, Verdict,
};
use taugraph_core::pendant::pendant_appearances;
use taugraph_core::sampling::{
    boltzmann_poisson_sample, collect_stats, exact_sample, mcmc_sample, random_tree_sample, BoltzmannConfig,
    DEFAULT_BURN_IN, DEFAULT_THIN,
};
use taugraph_core::scalar::BigRational;
use taugraph_core::{Graph, RootedGraph};

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};
use crate::io::{census_csv, fmt12, parse_samples, read_graph, resolve_family, sample_line, table_csv, GraphJson};
use crate::parallel::{count_slices_par, verify_bridge_addable_par, verify_decomposable_par};
use crate::verify::run_suite;

#[derive(Debug, Parser)]
#[command(name = "taugraph", version, about = "Weighted random graphs from minor-closed classes")]
pub struct Cli {
    /// JSON experiment configuration; flags below override its fields.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for enumeration sweeps.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub overrides: Overrides,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct Overrides {
    /// Built-in family name or family JSON file.
    #[arg(long, global = true)]
    pub family: Option<String>,
    #[arg(long, global = true)]
    pub lambda: Option<String>,
    #[arg(long, global = true)]
    pub nu: Option<String>,
    #[arg(long, global = true, requires = "lambda1")]
    pub lambda0: Option<String>,
    #[arg(long, global = true, requires = "lambda0")]
    pub lambda1: Option<String>,
    #[arg(long, global = true)]
    pub n_min: Option<usize>,
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true)]
    pub enumeration_cap: Option<usize>,
    #[arg(long, global = true)]
    pub minor_budget: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableMethod {
    /// Enumerate every labelled graph.
    Brute,
    /// Forests only: Cayley weights lifted by the exponential formula.
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleMethod {
    Exact,
    Mcmc,
    Boltzmann,
    Trees,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Weighted counts a_n, c_n, b_n as CSV.
    Enumerate {
        #[arg(long, value_enum, default_value = "brute")]
        method: TableMethod,
    },
    /// Connected members up to isomorphism as CSV.
    Census,
    /// Solved constants as JSON.
    Constants {
        /// Growth constant; estimated from the weight table when absent.
        #[arg(long)]
        gamma: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Random members as JSON lines.
    Sample {
        #[arg(long, value_enum, default_value = "exact")]
        method: SampleMethod,
        /// Graph order for exact, MCMC and tree sampling.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        draws: usize,
        #[arg(long, default_value_t = DEFAULT_BURN_IN)]
        burn_in: u64,
        #[arg(long, default_value_t = DEFAULT_THIN)]
        thin: u64,
        /// Boltzmann parameter; 1/(eλ) when absent.
        #[arg(long)]
        rho: Option<f64>,
    },
    /// Summary statistics of a JSON-lines sample file.
    Stats {
        samples: PathBuf,
    },
    /// Mean pendant-appearance density of a rooted graph over a sample file.
    Pendant {
        samples: PathBuf,
        /// Graph file holding H.
        #[arg(long)]
        graph: PathBuf,
        /// 1-based root of H.
        #[arg(long, default_value_t = 1)]
        root: usize,
        /// Growth constant for the limiting density.
        #[arg(long)]
        gamma: Option<f64>,
    },
    /// Closure properties of the family up to n_max, as JSON.
    FamiliesCheck {
        /// Largest multiple tried when testing whether a graph is limited.
        #[arg(long, default_value_t = 3)]
        k_max: usize,
    },
    /// Acceptance checks; `all` or one suite name.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

struct Ctx {
    cfg: ExperimentConfig,
}

impl Ctx {
    fn family(&self) -> CliResult<GraphFamily> {
        Ok(resolve_family(&self.cfg.family)?.with_minor_config(self.cfg.minor_config()))
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.cfg.out {
            Some(path) => std::fs::write(path, text).map_err(|e| CliError::io(path, e)),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json(&self, v: &Value) -> CliResult<()> {
        self.emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("json value")))
    }
}

fn merged_config(cli: &Cli) -> CliResult<ExperimentConfig> {
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    let o = &cli.overrides;
    if let Some(v) = &o.family {
        cfg.family = v.clone();
    }
    if let Some(v) = &o.lambda {
        cfg.lambda = v.clone();
    }
    if let Some(v) = &o.nu {
        cfg.nu = v.clone();
    }
    if o.lambda0.is_some() {
        cfg.lambda0 = o.lambda0.clone();
        cfg.lambda1 = o.lambda1.clone();
    }
    if let Some(v) = o.n_min {
        cfg.n_min = v;
    }
    if let Some(v) = o.n_max {
        cfg.n_max = v;
    }
    if let Some(v) = o.enumeration_cap {
        cfg.enumeration_cap = v;
    }
    if let Some(v) = o.minor_budget {
        cfg.minor_budget = v;
    }
    if let Some(v) = &o.out {
        cfg.out = Some(v.clone());
    }
    if let Some(v) = cli.seed {
        cfg.seed = v;
    }
    if let Some(v) = cli.threads {
        cfg.threads = Some(v);
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> CliResult<()> {
    let cfg = merged_config(cli)?;
    let ctx = Ctx { cfg };
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = ctx.cfg.threads {
            b = b.num_threads(t);
        }
        b.build().map_err(|e| CliError::config(format!("thread pool: {e}")))?
    };
    pool.install(|| dispatch(&cli.command, &ctx))
}

fn dispatch(cmd: &Command, ctx: &Ctx) -> CliResult<()> {
    match cmd {
        Command::Enumerate { method } => {
            let t = weight_table(ctx, *method)?;
            ctx.emit(&table_csv(&t, ctx.cfg.n_min))
        }
        Command::Census => {
            let census = build_census(&ctx.family()?, ctx.cfg.n_max)?;
            ctx.emit(&census_csv(&census))
        }
        Command::Constants { gamma, tol } => ctx.emit_json(&constants(ctx, *gamma, *tol)?),
        Command::Sample {
            method,
            n,
            draws,
            burn_in,
            thin,
            rho,
        } => {
            let graphs = sample(ctx, *method, *n, *draws, *burn_in, *thin, *rho)?;
            let mut s = String::new();
            for g in &graphs {
                s.push_str(&sample_line(g));
                s.push('\n');
            }
            ctx.emit(&s)
        }
        Command::Stats { samples } => {
            let graphs = read_samples(samples)?;
            let st = collect_stats(&graphs, &[], None)?;
            ctx.emit_json(&json!({
                "draws": st.draws,
                "connected_frequency": fmt12(st.conn_freq()),
                "frag_mean": fmt12(st.frag_mean()),
                "core_fraction_mean": fmt12(st.core_frac_mean()),
                "kappa_histogram": st.kappa_hist,
                "frag_histogram": st.frag_hist,
                "core_histogram": st.core_hist,
            }))
        }
        Command::Pendant {
            samples,
            graph,
            root,
            gamma,
        } => {
            let graphs = read_samples(samples)?;
            let h = read_graph(graph)?;
            if *root == 0 || *root > h.n() {
                return Err(CliError::config(format!("root {root} outside 1..={}", h.n())));
            }
            let h = RootedGraph::new(h, root - 1)?;
            if graphs.is_empty() {
                return Err(CliError::config("sample file is empty"));
            }
            let mean = graphs
                .iter()
                .map(|g| pendant_appearances(g, &h) as f64 / g.n().max(1) as f64)
                .sum::<f64>()
                / graphs.len() as f64;
            let lambda = ctx.cfg.weighting()?.to_f64();
            let limit = match gamma {
                Some(g) => Some(taugraph_core::asymptotics::pendant_limit(&h, *g, *lambda.lambda())?),
                None => None,
            };
            ctx.emit_json(&json!({
                "draws": graphs.len(),
                "h": GraphJson::from_graph(h.graph()),
                "mean_density": fmt12(mean),
                "limit": limit.map(fmt12),
            }))
        }
        Command::FamiliesCheck { k_max } => ctx.emit_json(&families_check(ctx, *k_max)?),
        Command::Verify { suite } => {
            let reports = run_suite(suite, ctx.cfg.seed)?;
            let mut s = String::new();
            for r in &reports {
                s.push_str(&serde_json::to_string(r).expect("report serialises"));
                s.push('\n');
                eprintln!("{}", r.line());
            }
            ctx.emit(&s)?;
            let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.id.to_string()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verification(format!("criteria {}", failed.join(", "))))
            }
        }
    }
}

fn weight_table(ctx: &Ctx, method: TableMethod) -> CliResult<WeightTable<BigRational>> {
    let w = ctx.cfg.weighting()?;
    match method {
        TableMethod::Closed => {
            let fam = ctx.family()?;
            if fam.name() != "forests" {
                return Err(CliError::config("the closed-form table is only available for forests"));
            }
            Ok(WeightTable::forests_closed_form(&w, ctx.cfg.n_max)?)
        }
        TableMethod::Brute => {
            let fam = ctx.family()?;
            if ctx.cfg.n_max > 5 {
                eprintln!("enumerating {} up to n = {}", fam.name(), ctx.cfg.n_max);
            }
            let slices = count_slices_par(&fam, ctx.cfg.n_max, ctx.cfg.enumeration_cap)?;
            if let Some(s) = slices.iter().find(|s| s.members() == 0) {
                return Err(taugraph_core::Error::EmptyFamilySlice { n: s.n }.into());
            }
            Ok(WeightTable::from_slices(fam.name(), &w, &slices))
        }
    }
}

fn opt(x: Option<f64>) -> Value {
    x.map(|v| Value::String(fmt12(v))).unwrap_or(Value::Null)
}

fn constants(ctx: &Ctx, gamma: Option<f64>, tol: f64) -> CliResult<Value> {
    let w = ctx.cfg.weighting()?.to_f64();
    let mut growth: Option<Vec<Value>> = None;
    let c = match gamma {
        Some(g) => AsymptoticConstants::solve(g, *w.lambda(), *w.nu(), tol)?,
        None if ctx.cfg.family == "forests" => AsymptoticConstants::forests(&w, tol)?,
        None if ctx.cfg.family == "planar" && ctx.cfg.lambda == "1" && ctx.cfg.nu == "1" => planar_constants()?,
        None => {
            let t = weight_table(ctx, TableMethod::Brute)?;
            let est = t.growth_estimates();
            let last = est
                .iter()
                .rev()
                .flatten()
                .next()
                .copied()
                .ok_or_else(|| CliError::config("no growth estimate; supply --gamma"))?;
            growth = Some(est.iter().map(|g| opt(*g)).collect());
            AsymptoticConstants::solve(last, *w.lambda(), *w.nu(), tol)?
        }
    };
    let mut v = json!({
        "lambda": fmt12(c.lambda),
        "nu": fmt12(c.nu),
        "gamma": fmt12(c.gamma),
        "rho": fmt12(c.rho),
        "beta": opt(c.beta),
        "alpha": fmt12(c.alpha),
        "beta_residual": opt(c.beta_residual),
        "alpha_residual": opt(c.alpha_residual),
        "tol": fmt12(c.tol),
        "conn_limit": opt(c.conn_limit),
        "frag_mean_limit": opt(c.frag_mean_limit),
        "core_conn_limit": opt(c.core_conn_limit),
    });
    if let Some(g) = growth {
        v["growth_estimates"] = Value::Array(g);
    }
    Ok(v)
}

fn sample(
    ctx: &Ctx,
    method: SampleMethod,
    n: usize,
    draws: usize,
    burn_in: u64,
    thin: u64,
    rho: Option<f64>,
) -> CliResult<Vec<Graph>> {
    let seed = ctx.cfg.seed;
    let w = ctx.cfg.weighting()?;
    match method {
        SampleMethod::Exact => Ok(exact_sample(&ctx.family()?, &w, n, seed, draws)?),
        SampleMethod::Mcmc => {
            let wf = w.to_f64();
            Ok(mcmc_sample(&ctx.family()?, &wf, n, draws as u64 * thin, burn_in, thin, seed)?)
        }
        SampleMethod::Trees => Ok(random_tree_sample(n, seed, draws)?),
        SampleMethod::Boltzmann => {
            let wf = w.to_f64();
            let census = build_census(&ctx.family()?, ctx.cfg.n_max)?;
            let rho = rho.unwrap_or(1.0 / (std::f64::consts::E * wf.lambda()));
            let bc = BoltzmannConfig::new(rho, wf, &census)?;
            let out = boltzmann_poisson_sample(&bc, seed, draws)?;
            Ok(out.iter().map(|d| d.to_graph(&census)).collect())
        }
    }
}

fn read_samples(path: &Path) -> CliResult<Vec<Graph>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_samples(&text)
}

fn verdict<C>(v: &Verdict<C>, show: impl Fn(&C) -> Value) -> Value {
    match v {
        Verdict::HoldsUpTo(n) => json!({"holds": true, "checked_up_to": n}),
        Verdict::Counterexample(c) => json!({"holds": false, "counterexample": show(c)}),
    }
}

fn families_check(ctx: &Ctx, k_max: usize) -> CliResult<Value> {
    let fam = ctx.family()?;
    let n = ctx.cfg.n_max.min(ctx.cfg.enumeration_cap);
    let bridge = verify_bridge_addable_par(&fam, n)?;
    let decomposable = verify_decomposable_par(&fam, n)?;
    let trim = verify_trimmable(&fam, n)?;
    let scan = dichotomy_scan(&fam, n.min(5), k_max)?;
    let classes: Vec<Value> = scan
        .iter()
        .map(|e| {
            let class = match e.class {
                Dichotomy::FreelyAddable => json!("freely-addable"),
                Dichotomy::Limited(k) => json!({"limited": k}),
                Dichotomy::Undetermined => json!("undetermined"),
                Dichotomy::Conflict(k) => json!({"conflict": k}),
            };
            json!({"graph": GraphJson::from_graph(&e.graph), "class": class})
        })
        .collect();
    let addable = bridge.holds() && decomposable.holds();
    Ok(json!({
        "family": fam.name(),
        "checked_up_to": n,
        "bridge_addable": verdict(&bridge, |(g, u, v)| json!({"graph": GraphJson::from_graph(g), "pair": [u + 1, v + 1]})),
        "decomposable": verdict(&decomposable, |g| json!(GraphJson::from_graph(g))),
        "addable": addable,
        "trimmable": verdict(&trim.direct, |g| json!(GraphJson::from_graph(g))),
        "trimmable_shortcut": trim.shortcut,
        "excluded_minors_biconnected": excluded_minors_biconnected(&fam),
        "dichotomy": classes,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use taugraph_core::scalar::Scalar;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("taugraph").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn overrides_apply() {
        let cli = parse(&["--family", "trees", "--lambda", "2", "--nu", "3", "--n-max", "5", "enumerate"]);
        let cfg = merged_config(&cli).unwrap();
        assert_eq!(cfg.family, "trees");
        assert_eq!(cfg.n_max, 5);
        let w = cfg.weighting().unwrap();
        assert_eq!(*w.lambda(), BigRational::from_u64(2));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["taugraph", "--lambda=-1", "census"]), 2);
        assert_eq!(run(["taugraph", "--n-max", "8", "--enumeration-cap", "7", "census"]), 3);
        assert_eq!(run(["taugraph", "verify", "nope"]), 2);
        assert_eq!(run(["taugraph", "--version"]), 0);
    }
}

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use cuttree::generate;
use cuttree::io::{read_edge_list, write_edge_list, Label, LabeledGraph, LabeledTree};
use cuttree::{
    connectivity_dendrogram, connectivity_distribution, construct_with_stats, BuildConfig, BuildStats, FlowEngine,
    MaxFlowSolver, Stage, UndirectedGraph, Variant, INFINITE,
};

/// Largest graph `verify` accepts without `--force`.
const VERIFY_LIMIT: usize = 2000;

#[derive(Parser)]
#[command(name = "cuttree", version, about = "Gomory-Hu cut trees for undirected graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a cut tree from an edge list.
    Build {
        input: PathBuf,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Answer connectivity queries from a cut tree file.
    Query {
        tree: PathBuf,
        /// File with one "s t" label pair per line.
        #[arg(long, conflicts_with = "random")]
        pairs: Option<PathBuf>,
        /// Number of uniformly random pairs to query.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Report the mean query latency on stderr.
        #[arg(long)]
        time: bool,
    },
    /// Check every pair of a tree against direct max-flow computations.
    Verify {
        input: PathBuf,
        /// Check this tree file instead of building one.
        #[arg(long)]
        tree: Option<PathBuf>,
        /// Allow graphs above the size guard.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Connectivity distribution: "weight count" lines, descending weight.
    Dist { tree: PathBuf },
    /// Connectivity dendrogram: "node child_a child_b label" lines.
    Dendro { tree: PathBuf },
    /// Write a seeded synthetic graph as an edge list.
    Gen {
        family: Family,
        #[arg(long, default_value_t = 100)]
        n: usize,
        /// Edge probability for gnp.
        #[arg(long, default_value_t = 0.05)]
        p: f64,
        /// Edges per new vertex for pa.
        #[arg(long, default_value_t = 3)]
        m: usize,
        /// Clique size for barbell (n is the number of cliques).
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build with several variants and print timing and work counters.
    Bench {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "A0,A1,A2,A3,A4,A5")]
        variants: Vec<Variant>,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gnp,
    Pa,
    Barbell,
    Tree,
    Cycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Uni,
    Bi,
}

#[derive(Args)]
struct ParamArgs {
    /// Number of packing roots.
    #[arg(long)]
    alpha: Option<usize>,
    /// Breadth limit for tree packing: an integer or "inf".
    #[arg(long, value_parser = parse_beta)]
    beta: Option<Beta>,
    /// Detour budget of the goal-oriented search.
    #[arg(long)]
    gamma: Option<usize>,
    /// Number of top-degree vertices separated from each other first.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct ConfigArgs {
    #[arg(long, default_value = "A5")]
    variant: Variant,
    #[arg(long)]
    engine: Option<Engine>,
    /// Force the bridge and degree-2 reductions on or off.
    #[arg(long)]
    reductions: Option<bool>,
    /// Solve independent pieces on one thread.
    #[arg(long)]
    serial: bool,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Clone, Copy)]
struct Beta(Option<usize>);

fn parse_beta(s: &str) -> Result<Beta, String> {
    if s.eq_ignore_ascii_case("inf") {
        return Ok(Beta(None));
    }
    match s.parse::<usize>() {
        Ok(0) => Err("beta must be positive".into()),
        Ok(b) => Ok(Beta(Some(b))),
        Err(_) => Err(format!("expected a positive integer or \"inf\", got {s:?}")),
    }
}

impl ParamArgs {
    fn apply(&self, cfg: &mut BuildConfig) {
        if let Some(a) = self.alpha {
            cfg.alpha = a;
        }
        if let Some(b) = self.beta {
            cfg.beta = b.0;
        }
        if let Some(g) = self.gamma {
            cfg.gamma = g;
        }
        if let Some(k) = self.k {
            cfg.k = k;
        }
    }
}

impl ConfigArgs {
    fn config(&self) -> BuildConfig {
        let mut cfg = BuildConfig::variant(self.variant);
        self.params.apply(&mut cfg);
        match self.engine {
            Some(Engine::Uni) => cfg.flow_engine = FlowEngine::Unidirectional,
            Some(Engine::Bi) => cfg.flow_engine = FlowEngine::Bidirectional,
            None => {}
        }
        if let Some(r) = self.reductions {
            cfg.reductions = r;
        }
        cfg.parallel = !self.serial;
        cfg
    }
}

enum Failure {
    Input(String),
    Guard(String),
    Mismatch(usize),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<LabeledGraph, Failure> {
    read_edge_list(open(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_tree(path: &Path) -> Result<LabeledTree, Failure> {
    LabeledTree::read(open(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn fmt_value(v: u64) -> String {
    if v == INFINITE {
        "inf".into()
    } else {
        v.to_string()
    }
}

fn build(g: &LabeledGraph, cfg: &BuildConfig) -> (LabeledTree, BuildStats) {
    let (tree, stats) = construct_with_stats(&g.graph, cfg);
    (LabeledTree::new(tree, g.labels.labels().to_vec()), stats)
}

fn report(stats: &BuildStats) {
    eprintln!(
        "reductions: {} bridges, {} degree-2 vertices, {} pieces",
        stats.bridges, stats.degree2_removed, stats.pieces
    );
    for s in Stage::ALL {
        let st = stats.stage(s);
        eprintln!(
            "{:<13} {:>9.3}s cuts={} flows={} goal={} (completed {}) bidir-phases={} arc-scans={}",
            s.name(),
            st.time.as_secs_f64(),
            st.cuts,
            st.flow.max_flow_calls,
            st.flow.goal_calls,
            st.flow.goal_completions,
            st.flow.bidirectional_phases,
            st.flow.arc_scans
        );
    }
    eprintln!("total {:.3}s, {} max-flow runs", stats.total_time.as_secs_f64(), stats.flow_invocations());
}

fn cmd_build(input: &Path, output: Option<&Path>, config: &ConfigArgs) -> Outcome {
    let g = load_graph(input)?;
    let (tree, stats) = build(&g, &config.config());
    report(&stats);
    let mut out = sink(output)?;
    tree.write(&mut out)?;
    out.flush()?;
    Ok(())
}

fn cmd_query(tree: &Path, pairs: Option<&Path>, random: Option<usize>, seed: u64, time: bool) -> Outcome {
    let t = load_tree(tree)?;
    let ids: Vec<(usize, usize)> = if let Some(path) = pairs {
        let mut ids = Vec::new();
        for (i, line) in open(path)?.lines().enumerate() {
            let line = line?;
            let text = line.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let bad = || Failure::Input(format!("{}: line {}: expected \"s t\"", path.display(), i + 1));
            let toks: Vec<&str> = text.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(bad());
            }
            let mut pair = [0; 2];
            for (slot, tok) in pair.iter_mut().zip(&toks) {
                let label: Label = tok.parse().map_err(|_| bad())?;
                *slot = t
                    .id(label)
                    .ok_or_else(|| Failure::Input(format!("line {}: unknown vertex {label}", i + 1)))?;
            }
            ids.push((pair[0], pair[1]));
        }
        ids
    } else if let Some(count) = random {
        if t.is_empty() {
            return Err(Failure::Input("cannot sample pairs from an empty tree".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| (rng.gen_range(0..t.len()), rng.gen_range(0..t.len()))).collect()
    } else {
        return Err(Failure::Input("give --pairs FILE or --random N".into()));
    };
    let start = Instant::now();
    let values: Vec<u64> = ids.iter().map(|&(a, b)| t.tree.query(a, b).expect("ids in range")).collect();
    let elapsed = start.elapsed();
    if time && !values.is_empty() {
        eprintln!(
            "{} queries, mean {:.3} us",
            values.len(),
            elapsed.as_secs_f64() * 1e6 / values.len() as f64
        );
    }
    let mut out = sink(None)?;
    for v in values {
        writeln!(out, "{}", fmt_value(v))?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_verify(input: &Path, tree: Option<&Path>, force: bool, config: &ConfigArgs) -> Outcome {
    let g = load_graph(input)?;
    let n = g.graph.vertex_count();
    if n > VERIFY_LIMIT && !force {
        return Err(Failure::Guard(format!(
            "{n} vertices exceeds the verify limit of {VERIFY_LIMIT}; pass --force to run anyway"
        )));
    }
    let t = match tree {
        Some(path) => load_tree(path)?,
        None => build(&g, &config.config()).0,
    };
    // tree id of every graph vertex
    let mut id = Vec::with_capacity(n);
    for v in 0..n {
        let label = g.labels.label(v);
        id.push(
            t.id(label)
                .ok_or_else(|| Failure::Input(format!("vertex {label} missing from the tree")))?,
        );
    }
    if t.len() != n {
        return Err(Failure::Input(format!("tree has {} vertices, graph has {n}", t.len())));
    }
    let graph: &UndirectedGraph = &g.graph;
    let mismatches: Vec<(usize, usize, u64, u64)> = (0..n)
        .into_par_iter()
        .map_init(MaxFlowSolver::new, |solver, s| {
            let mut bad = Vec::new();
            for u in s + 1..n {
                let oracle = solver.max_flow(graph, s, u, FlowEngine::Unidirectional);
                let got = t.tree.query(id[s], id[u]).expect("ids in range");
                if got != oracle {
                    bad.push((s, u, got, oracle));
                }
            }
            bad
        })
        .flatten()
        .collect();
    let mut out = sink(None)?;
    for &(s, u, got, oracle) in &mismatches {
        writeln!(out, "{} {} {} {}", g.labels.label(s), g.labels.label(u), fmt_value(got), oracle)?;
    }
    out.flush()?;
    let pairs = n * n.saturating_sub(1) / 2;
    if mismatches.is_empty() {
        eprintln!("ok: {pairs} pairs checked");
        Ok(())
    } else {
        Err(Failure::Mismatch(mismatches.len()))
    }
}

fn cmd_dist(tree: &Path) -> Outcome {
    let t = load_tree(tree)?;
    let mut out = sink(None)?;
    for (w, count) in connectivity_distribution(&t.tree) {
        writeln!(out, "{w} {count}")?;
    }
    out.flush()?;
    Ok(())
}

fn cmd_dendro(tree: &Path) -> Outcome {
    let t = load_tree(tree)?;
    let d = connectivity_dendrogram(&t.tree);
    let mut out = sink(None)?;
    for (i, m) in d.merges.iter().enumerate() {
        writeln!(out, "{} {} {} {}", d.leaves + i, m.children[0], m.children[1], m.label)?;
    }
    out.flush()?;
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(family: Family, n: usize, p: f64, m: usize, size: usize, seed: u64, output: Option<&Path>) -> Outcome {
    if !(0.0..=1.0).contains(&p) {
        return Err(Failure::Input(format!("p must lie in [0, 1], got {p}")));
    }
    let g = match family {
        Family::Gnp => generate::gnp_connected(n, p, seed),
        Family::Pa => generate::preferential_attachment(n, m, seed),
        Family::Barbell => generate::barbell(n, size),
        Family::Tree => generate::random_tree(n, seed),
        Family::Cycle => generate::cycle(n),
    };
    let mut out = sink(output)?;
    write_edge_list(&g, &mut out)?;
    out.flush()?;
    Ok(())
}

fn cmd_bench(input: &Path, variants: &[Variant], params: &ParamArgs) -> Outcome {
    let g = load_graph(input)?;
    eprintln!("{} vertices, {} edges", g.graph.vertex_count(), g.graph.edge_count());
    let mut out = sink(None)?;
    writeln!(
        out,
        "variant seconds max_flows goal_runs goal_completions bidir_phases packing_cuts arc_scans"
    )?;
    for &v in variants {
        let mut cfg = BuildConfig::variant(v);
        params.apply(&mut cfg);
        let (_, stats) = build(&g, &cfg);
        let f = stats.flow_totals();
        writeln!(
            out,
            "{v} {:.3} {} {} {} {} {} {}",
            stats.total_time.as_secs_f64(),
            stats.flow_invocations(),
            f.goal_calls,
            f.goal_completions,
            f.bidirectional_phases,
            stats.stage(Stage::Packing).cuts,
            f.arc_scans
        )?;
        out.flush()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Build { input, output, config } => cmd_build(input, output.as_deref(), config),
        Cmd::Query {
            tree,
            pairs,
            random,
            seed,
            time,
        } => cmd_query(tree, pairs.as_deref(), *random, *seed, *time),
        Cmd::Verify {
            input,
            tree,
            force,
            config,
        } => cmd_verify(input, tree.as_deref(), *force, config),
        Cmd::Dist { tree } => cmd_dist(tree),
        Cmd::Dendro { tree } => cmd_dendro(tree),
        Cmd::Gen {
            family,
            n,
            p,
            m,
            size,
            seed,
            output,
        } => cmd_gen(*family, *n, *p, *m, *size, *seed, output.as_deref()),
        Cmd::Bench { input, variants, params } => cmd_bench(input, variants, params),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Mismatch(count)) => {
            eprintln!("{count} mismatching pairs");
            ExitCode::from(1)
        }
    }
}

//! Command-line front end. Six subcommands: `solve` runs the exact solvers on
//! one graph, `gen` prints family instances in the text format (composable
//! with `solve` over a pipe), `rotate` runs the staged witness construction,
//! `verify` and `search` sweep graph populations emitting JSONL records, and
//! `gbound` is the exact-rational threshold sweep.
//!
//! Exit codes: 0 success / nothing found, 1 counterexample or finding,
//! 2 usage or parameter error, 3 I/O error or resource guard.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use antigraph::harness::{run_campaign, validate_k};
use antigraph::rotation::{find_long_structure, threshold_arithmetic};
use antigraph::solve::{longest_anticycle, longest_antipath, longest_directed_path};
use antigraph::{
    AlternatingPath, Campaign, Error, FamilySpec, OrientedGraph, Population, PropertyTag, Witness,
};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

/// Solvers refuse graphs above this order; the searches are exponential and
/// anything larger deserves a deliberate decision, not a hung terminal.
const MAX_SOLVE_VERTICES: usize = 24;

#[derive(Parser)]
#[command(name = "antigraph", version, about = "Antipaths and anticycles in oriented graphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run an exact solver on one graph
    Solve(SolveArgs),
    /// Print a family instance in the text format
    Gen(GenArgs),
    /// Build a long-structure witness by extension, rotation and closure
    Rotate(RotateArgs),
    /// Sweep a property over a graph population
    Verify(SweepArgs),
    /// Hunt for counterexamples to an open statement
    Search(SweepArgs),
    /// Confirm the rational threshold bound g(k) > k up to --kmax
    Gbound(GboundArgs),
}

/// Where the input graph comes from: a text-format file (`-` for standard
/// input) or an inline `<n>:<trit-code>` pair as cited in campaign records.
#[derive(Args)]
struct GraphSource {
    /// Graph file in the text format, `-` for standard input
    #[arg(long, default_value = "-", conflicts_with = "code")]
    input: String,
    /// Inline graph as `<n>:<trit-code>`
    #[arg(long, value_name = "N:TRIT")]
    code: Option<String>,
}

impl GraphSource {
    fn load(&self) -> antigraph::Result<OrientedGraph> {
        if let Some(code) = &self.code {
            let (n, trit) = code
                .split_once(':')
                .ok_or_else(|| Error::Domain(format!("--code wants <n>:<trit>, got `{code}`")))?;
            let n: usize = n
                .parse()
                .map_err(|e| Error::Domain(format!("--code vertex count: {e}")))?;
            let trit: u128 = trit
                .parse()
                .map_err(|e| Error::Domain(format!("--code trit digits: {e}")))?;
            return OrientedGraph::from_trit_code(n, trit);
        }
        let mut text = String::new();
        if self.input == "-" {
            std::io::stdin().read_to_string(&mut text)?;
        } else {
            text = std::fs::read_to_string(&self.input)?;
        }
        OrientedGraph::from_text(&text)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Antipath,
    Anticycle,
    Dipath,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    src: GraphSource,
    /// Which structure to maximise
    #[arg(long, value_enum)]
    what: What,
    /// Suppress the timing line so equal inputs give equal output
    #[arg(long)]
    canonical: bool,
}

#[derive(Args)]
struct GenArgs {
    /// circulant | regular-union | construction-d | random
    #[arg(long)]
    family: String,
    /// Vertex count (circulant, random)
    #[arg(long)]
    n: Option<usize>,
    /// Family parameter k (regular-union, construction-d)
    #[arg(long)]
    k: Option<u64>,
    /// Number of tournament copies (regular-union)
    #[arg(long)]
    copies: Option<usize>,
    /// Arc probability (random)
    #[arg(long)]
    p: Option<f64>,
    /// Generator seed (random)
    #[arg(long)]
    seed: Option<u64>,
    /// Write the graph here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RotateArgs {
    #[command(flatten)]
    src: GraphSource,
    /// Target length threshold: look for structures of length >= k + 1
    #[arg(long)]
    k: u64,
    /// Suppress the timing line
    #[arg(long)]
    canonical: bool,
}

/// Shared by `verify` and `search`: one (property, n, k) cell over either the
/// whole coded population or a block of seeded samples.
#[derive(Args)]
#[command(group(ArgGroup::new("population").required(true).args(["exhaustive", "samples"])))]
struct SweepArgs {
    /// Property to check (theorem-main, lemma-basic, theorem-ks,
    /// corollary-size, stein, problem41)
    #[arg(long)]
    property: PropertyTag,
    /// Vertex count
    #[arg(long)]
    n: usize,
    /// Property parameter k
    #[arg(long)]
    k: u64,
    /// Check every graph on n vertices (n <= 6)
    #[arg(long)]
    exhaustive: bool,
    /// Check this many seeded random graphs instead
    #[arg(long, requires = "p")]
    samples: Option<usize>,
    /// Arc probability for sampled graphs
    #[arg(long)]
    p: Option<f64>,
    /// Base seed; sample i uses seed + i
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Split the population into this many deterministic shards
    #[arg(long, default_value_t = 1)]
    shards: usize,
    /// Worker threads (output is identical whatever the value)
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write one JSONL record per graph here
    #[arg(long)]
    out: Option<PathBuf>,
    /// Suppress the timing line so equal invocations give equal output
    #[arg(long)]
    canonical: bool,
}

impl SweepArgs {
    fn campaign(&self) -> Campaign {
        let population = if self.exhaustive {
            Population::Exhaustive
        } else {
            Population::Sampled {
                p: self.p.unwrap_or(0.5),
                count: self.samples.unwrap_or(0),
                base_seed: self.seed,
            }
        };
        Campaign {
            property: self.property,
            n_values: vec![self.n],
            k_values: vec![self.k],
            population,
            shards: self.shards,
        }
    }
}

#[derive(Args)]
struct GboundArgs {
    /// Check every k from 2 up to this bound
    #[arg(long)]
    kmax: u64,
    /// Suppress the timing line
    #[arg(long)]
    canonical: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Solve(a) => cmd_solve(a),
        Cmd::Gen(a) => cmd_gen(a),
        Cmd::Rotate(a) => cmd_rotate(a),
        Cmd::Verify(a) => cmd_sweep(a, false),
        Cmd::Search(a) => cmd_sweep(a, true),
        Cmd::Gbound(a) => cmd_gbound(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) | Error::ResourceGuard(_) => 3,
                Error::TheoremCounterexample { .. } => 1,
                _ => 2,
            })
        }
    }
}

fn describe_path(p: &AlternatingPath) -> String {
    let verts: Vec<String> = p.vertices().iter().map(|v| v.to_string()).collect();
    format!(
        "antipath length {}: {} (lead {})",
        p.len(),
        verts.join(" "),
        p.lead().as_str()
    )
}

fn cmd_solve(a: SolveArgs) -> antigraph::Result<u8> {
    let g = a.src.load()?;
    if g.n() > MAX_SOLVE_VERTICES {
        return Err(Error::ResourceGuard(format!(
            "solvers are capped at n = {MAX_SOLVE_VERTICES}; got n = {}",
            g.n()
        )));
    }
    let started = Instant::now();
    match a.what {
        What::Antipath => println!("{}", describe_path(&longest_antipath(&g)?)),
        What::Anticycle => match longest_anticycle(&g) {
            Some(c) => {
                let verts: Vec<String> = c.vertices().iter().map(|v| v.to_string()).collect();
                println!("anticycle length {}: {}", c.len(), verts.join(" "));
            }
            None => println!("no anticycle"),
        },
        What::Dipath => {
            let p = longest_directed_path(&g);
            if p.is_empty() {
                return Err(Error::EmptyGraph);
            }
            let verts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            println!("dipath length {}: {}", p.len() - 1, verts.join(" "));
        }
    }
    if !a.canonical {
        println!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    }
    Ok(0)
}

fn cmd_gen(a: GenArgs) -> antigraph::Result<u8> {
    fn want<T>(v: Option<T>, flag: &str, family: &str) -> antigraph::Result<T> {
        v.ok_or_else(|| Error::Domain(format!("family `{family}` needs {flag}")))
    }
    let spec = match a.family.as_str() {
        "circulant" => FamilySpec::Circulant {
            n: want(a.n, "--n", "circulant")?,
        },
        "regular-union" => FamilySpec::RegularUnion {
            k: usize::try_from(want(a.k, "--k", "regular-union")?)
                .map_err(|e| Error::Domain(format!("--k: {e}")))?,
            copies: want(a.copies, "--copies", "regular-union")?,
        },
        "construction-d" => FamilySpec::ConstructionD {
            k: want(a.k, "--k", "construction-d")?,
        },
        "random" => FamilySpec::Random {
            n: want(a.n, "--n", "random")?,
            p: want(a.p, "--p", "random")?,
            seed: want(a.seed, "--seed", "random")?,
        },
        other => {
            return Err(Error::Domain(format!(
                "unknown family `{other}` (expected circulant, regular-union, construction-d, random)"
            )))
        }
    };
    let g = spec.build()?;
    let text = format!("# family: {spec}\n{}", g.to_text());
    match a.out {
        Some(path) => File::create(path)?.write_all(text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_rotate(a: RotateArgs) -> antigraph::Result<u8> {
    let g = a.src.load()?;
    if g.n() > MAX_SOLVE_VERTICES {
        return Err(Error::ResourceGuard(format!(
            "solvers are capped at n = {MAX_SOLVE_VERTICES}; got n = {}",
            g.n()
        )));
    }
    let started = Instant::now();
    match find_long_structure(&g, a.k) {
        Ok((w, strategy)) => {
            println!("strategy: {}", strategy.label());
            match w {
                Witness::Path(p) => println!("witness {}", describe_path(&p)),
                Witness::Cycle(c) => {
                    let verts: Vec<String> = c.vertices().iter().map(|v| v.to_string()).collect();
                    println!("witness anticycle length {}: {}", c.len(), verts.join(" "));
                }
            }
            if !a.canonical {
                println!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
            }
            Ok(0)
        }
        Err(Error::TheoremCounterexample { n, k, need }) => {
            println!("counterexample: n={n} k={k}, no antipath or anticycle of length >= {need}");
            Ok(1)
        }
        Err(e) => Err(e),
    }
}

fn cmd_sweep(a: SweepArgs, search: bool) -> antigraph::Result<u8> {
    if search && !matches!(a.property, PropertyTag::Stein | PropertyTag::Problem41) {
        return Err(Error::Domain(format!(
            "search targets are stein and problem41, got {}",
            a.property
        )));
    }
    validate_k(a.property, a.k)?;
    let campaign = a.campaign();
    let mut file = match &a.out {
        Some(path) => Some(BufWriter::new(File::create(path)?)),
        None => None,
    };
    let summary = run_campaign(
        &campaign,
        file.as_mut().map(|f| f as &mut dyn Write),
        a.jobs,
    )?;
    if let Some(f) = &mut file {
        f.flush()?;
    }

    println!("property: {}", a.property);
    println!("records: {}", summary.records);
    println!("hypothesis-true: {}", summary.hypothesis_count);
    let (plural, singular) = if search {
        ("findings", "finding")
    } else {
        ("counterexamples", "counterexample")
    };
    println!("{plural}: {}", summary.counterexamples.len());
    for (strategy, count) in &summary.strategy_counts {
        println!("strategy {strategy}: {count}");
    }
    for rec in &summary.counterexamples {
        println!("{singular}: {}", rec.to_json());
    }
    if !a.canonical {
        println!("elapsed: {:.3}s", summary.elapsed.as_secs_f64());
    }
    Ok(u8::from(!summary.counterexamples.is_empty()))
}

fn cmd_gbound(a: GboundArgs) -> antigraph::Result<u8> {
    if a.kmax < 2 {
        return Err(Error::Domain(format!(
            "--kmax must be at least 2, got {}",
            a.kmax
        )));
    }
    let started = Instant::now();
    for k in 2..=a.kmax {
        let ta = threshold_arithmetic(k)?;
        debug_assert!(ta.g_of_k > antigraph::rotation::Rational::from_integer(k as i128));
    }
    let last = threshold_arithmetic(a.kmax)?;
    println!("g(k) > k for all k in [2, {}]", a.kmax);
    println!("g({}) = {}", a.kmax, last.g_of_k);
    if !a.canonical {
        println!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    }
    Ok(0)
}

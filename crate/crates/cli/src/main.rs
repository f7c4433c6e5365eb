use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use hajoslab::complex::{betti_numbers, neighborhood_complex, Field};
use hajoslab::constructions::{build_gn, build_gn_prime};
use hajoslab::experiment::{measure, summarize, ExperimentRecord, ExperimentSummary};
use hajoslab::generators::{cra, gnp_with, stream_rng, ura, CraConfig, CraOp, UraConfig};
use hajoslab::io::{from_graph6, from_json, to_graph6};
use hajoslab::recipe::Recipe;
use hajoslab::verify::{run_suite, Suite, VerifyConfig, VerifyReport};
use hajoslab::{Error, Graph};
use serde::Serialize;

/// Hajós-type constructions and the homology of neighbourhood complexes.
#[derive(Parser)]
#[command(name = "hajoslab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a JSON recipe and print the resulting graph.
    Construct {
        #[arg(long)]
        recipe: PathBuf,
        /// Print the canonical relabelling instead of the graph as built.
        #[arg(long)]
        canonical: bool,
        /// Also write the graph as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Reduced Betti numbers of neighbourhood complexes.
    Betti(BettiArgs),
    /// Constructible random algorithm.
    Cra {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Urquhart random algorithm.
    Ura {
        #[arg(long)]
        k: usize,
        /// Most extra vertices per component.
        #[arg(long)]
        m: usize,
        /// Most components per sample.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Erdős–Rényi samples G(order, p).
    Gnp {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        samples: usize,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run a property suite (or `all`).
    Verify {
        suite: String,
        /// `exhaustive-N` sets the largest order for prop2.9.
        mode: Option<String>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "gf2")]
        field: Field,
        #[arg(long, default_value_t = 7)]
        max_order: usize,
        /// Values of n for prop4.8 / prop4.9.
        #[arg(long = "n", num_args = 1.., default_values_t = [5, 6])]
        ns: Vec<usize>,
        /// Write the reports as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BettiArgs {
    #[arg(long, group = "input")]
    graph6: Option<String>,
    /// File with one graph6 string per line, or a JSON graph.
    #[arg(long, group = "input")]
    file: Option<PathBuf>,
    #[arg(long, group = "input")]
    recipe: Option<PathBuf>,
    #[arg(long, group = "input")]
    gn: Option<usize>,
    #[arg(long, group = "input")]
    gn_prime: Option<usize>,
    #[arg(long, default_value = "gf2")]
    field: Field,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
}

#[derive(Args)]
struct RunArgs {
    /// Master seed; a time-based seed is drawn and recorded when omitted.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, default_value = "gf2")]
    field: Field,
}

impl RunArgs {
    fn seed(&self) -> u64 {
        self.seed.unwrap_or_else(|| {
            SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos() as u64).unwrap_or(0)
        })
    }
}

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(err) if err.is_capacity() => EXIT_CAPACITY,
        Some(Error::Sampler(_)) => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("HAJOSLAB_THREADS") {
        let n: usize = v.parse().with_context(|| format!("HAJOSLAB_THREADS={v:?} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(command: Command) -> anyhow::Result<u8> {
    match command {
        Command::Construct { recipe, canonical, json } => {
            let g = load_recipe(&recipe)?.run()?;
            let g = if canonical { hajoslab::canon::canonical_graph(&g) } else { g.compacted() };
            println!("{}", to_graph6(&g));
            println!("order {} size {}", g.order(), g.size());
            if let Some(path) = json {
                fs::write(&path, hajoslab::io::to_json(&g)).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(0)
        }
        Command::Betti(args) => {
            let graphs = betti_inputs(&args)?;
            let mut out = io::stdout().lock();
            for g in graphs {
                let b = betti_numbers(&neighborhood_complex(&g), args.max_dim, args.field)?;
                let line = serde_json::json!({
                    "graph6": to_graph6(&g),
                    "order": g.order(),
                    "size": g.size(),
                    "field": b.field,
                    "betti": b.betti,
                });
                writeln!(out, "{line}")?;
            }
            Ok(0)
        }
        Command::Cra { k, p, t, run } => {
            let seed = run.seed();
            let config = CraConfig::new(k, p, t, seed);
            let batch = cra(&config)?;
            let graphs: Vec<&Graph> = batch.graphs().collect();
            let labels = batch.samples.iter().map(|s| cra_label(&s.provenance)).collect();
            let provenance = batch
                .samples
                .iter()
                .enumerate()
                .map(|(i, s)| serde_json::json!({"sample_index": i, "round": s.attempt, "op": s.provenance}))
                .collect();
            let counters = [("attempts", batch.attempts), ("duplicates", batch.duplicates)];
            write_experiment(&run, serde_json::to_value(&config)?, &graphs, labels, provenance, &counters)
        }
        Command::Ura { k, m, n, t, run } => {
            let config = UraConfig::new(k, m, n, t, run.seed());
            let batch = ura(&config)?;
            let graphs: Vec<&Graph> = batch.graphs().collect();
            let labels = batch
                .samples
                .iter()
                .map(|s| format!("ura:attempt={};components={}", s.attempt, s.provenance.components.len()))
                .collect();
            let provenance = batch
                .samples
                .iter()
                .enumerate()
                .map(|(i, s)| serde_json::json!({"sample_index": i, "attempt": s.attempt, "recipe": s.provenance}))
                .collect();
            let counters =
                [("attempts", batch.attempts), ("duplicates", batch.duplicates), ("discarded", batch.discarded)];
            write_experiment(&run, serde_json::to_value(&config)?, &graphs, labels, provenance, &counters)
        }
        Command::Gnp { order, p, samples, run } => {
            let seed = run.seed();
            let owned: Vec<Graph> = (0..samples).map(|i| gnp_with(order, p, &mut stream_rng(seed, i as u64))).collect();
            let graphs: Vec<&Graph> = owned.iter().collect();
            let labels = (0..samples).map(|i| format!("gnp:stream={i}")).collect();
            let provenance = (0..samples).map(|i| serde_json::json!({"sample_index": i, "stream": i})).collect();
            let config = serde_json::json!({"order": order, "p": p, "samples": samples, "seed": seed});
            write_experiment(&run, config, &graphs, labels, provenance, &[])
        }
        Command::Verify { suite, mode, trials, seed, field, max_order, ns, json } => {
            let mut config = VerifyConfig { trials, seed, field, max_order, ns };
            if let Some(mode) = mode {
                let n = mode
                    .strip_prefix("exhaustive-")
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown mode {mode:?}; expected exhaustive-N")))?;
                config.max_order = n;
            }
            let suites = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse::<Suite>()?] };
            let mut reports: Vec<VerifyReport> = Vec::new();
            for s in suites {
                let r = run_suite(s, &config)?;
                println!("{r}  [{}]", if r.ok() { "ok" } else { "FAIL" });
                for f in r.failures.iter().take(5) {
                    println!("  instance {}: {}", f.instance, f.detail);
                }
                reports.push(r);
            }
            if let Some(path) = json {
                fs::write(&path, serde_json::to_string_pretty(&reports)?)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(if reports.iter().all(VerifyReport::ok) { 0 } else { EXIT_VERIFY })
        }
    }
}

fn load_recipe(path: &Path) -> anyhow::Result<Recipe> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Recipe::from_json(&text)?)
}

fn betti_inputs(args: &BettiArgs) -> anyhow::Result<Vec<Graph>> {
    if let Some(s) = &args.graph6 {
        return Ok(vec![from_graph6(s)?]);
    }
    if let Some(path) = &args.file {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        if text.trim_start().starts_with('{') {
            return Ok(vec![from_json(&text)?]);
        }
        return Ok(text.lines().filter(|l| !l.trim().is_empty()).map(from_graph6).collect::<Result<_, _>>()?);
    }
    if let Some(path) = &args.recipe {
        return Ok(vec![load_recipe(path)?.run()?]);
    }
    if let Some(n) = args.gn {
        return Ok(vec![build_gn(n)?]);
    }
    if let Some(n) = args.gn_prime {
        return Ok(vec![build_gn_prime(n)?]);
    }
    Err(Error::InvalidSpec("give one of --graph6, --file, --recipe, --gn, --gn-prime".into()).into())
}

fn cra_label(op: &CraOp) -> String {
    match op {
        CraOp::Merge { first, second, .. } => format!("cra:merge({first},{second})"),
        CraOp::Identify { source, pair } => format!("cra:identify({source};{},{})", pair.a, pair.b),
    }
}

fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn write_experiment(
    run: &RunArgs,
    config: serde_json::Value,
    graphs: &[&Graph],
    labels: Vec<String>,
    provenance: Vec<serde_json::Value>,
    counters: &[(&str, usize)],
) -> anyhow::Result<u8> {
    use rayon::prelude::*;
    let inputs: Vec<(usize, String, &Graph)> =
        labels.into_iter().zip(graphs.iter().copied()).enumerate().map(|(i, (l, g))| (i, l, g)).collect();
    let (records, skipped): (Vec<ExperimentRecord>, usize) = measure(inputs.into_par_iter(), run.field)?;
    let mut config = config;
    if let serde_json::Value::Object(map) = &mut config {
        map.insert("field".into(), serde_json::to_value(run.field)?);
    }
    let mut summary: ExperimentSummary = summarize(config, &records, skipped);
    summary.generator = counters.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let dir = &run.out_dir;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    write_csv(&dir.join("records.csv"), &records)?;
    write_csv(&dir.join("histogram.csv"), &summary.histogram)?;
    write_csv(&dir.join("scatter.csv"), &summary.scatter)?;
    fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary)?)?;
    let mut g6 = String::new();
    for g in graphs {
        g6.push_str(&to_graph6(g));
        g6.push('\n');
    }
    fs::write(dir.join("graphs.g6"), g6)?;
    fs::write(dir.join("provenance.json"), serde_json::to_string(&provenance)?)?;
    println!(
        "{} graphs, {} skipped, zero_betti_fraction {} ({:.4})",
        summary.count, summary.skipped, summary.zero_betti_fraction, summary.zero_betti_fraction_value
    );
    Ok(0)
}

//! `blowup` — extract and verify blow-up witnesses.
//!
//! Verbs: `count`, `extract`, `verify`, `gen`, `bench`. Exit codes: 0 on
//! success (including vacuous-threshold runs), 1 on input errors, 2 on
//! extraction or verification failure. Flags override the BLOWUP_* env vars,
//! which override defaults.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use blowup_cli::bench::bench_random_biclique;
use blowup_cli::gen::{gen_gnp, graph_file_text, plant_blowup};
use blowup_cli::pipeline::{
    parse_c_policy, parse_s_list, run_pipeline, GraphSource, PipelineConfig,
};
use blowup_core::{
    automorphism_count, copies_from_embeddings, enumerate_embeddings, rational_string,
    verify_covers, verify_type, Graph, Mode, Pattern, WitnessJson, DEFAULT_ENUM_CAP,
    DEFAULT_EXACT_CAP,
};

#[derive(Parser)]
#[command(
    name = "blowup",
    about = "Blow-up witness extraction from graphs rich in copies of a small pattern",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonOpts {
    /// Feasibility cap for the exact biclique search (counting cap is 10x)
    #[arg(long, env = "BLOWUP_CAP", default_value_t = DEFAULT_EXACT_CAP)]
    cap: u128,

    /// Cap on enumerated embeddings
    #[arg(long, env = "BLOWUP_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP)]
    enum_cap: usize,

    /// Worker threads for enumeration (0 = all cores); outputs do not depend
    /// on this
    #[arg(long, env = "BLOWUP_THREADS", default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Count pattern embeddings, copies, and the density c
    Count {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, default_value = "induced")]
        mode: Mode,
        /// Relabel pattern vertices before use, e.g. 0,2,1
        #[arg(long)]
        pattern_order: Option<String>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Run the full extraction pipeline and emit witness JSON
    Extract {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long, default_value = "induced")]
        mode: Mode,
        /// Density: `auto` or an exact rational NUM/DEN in (0, 1/2]
        #[arg(long, default_value = "auto")]
        c: String,
        /// Class sizes per recursion level: `auto` or N[,N…] (last repeats)
        #[arg(long, default_value = "auto")]
        s: String,
        #[arg(long)]
        pattern_order: Option<String>,
        /// Write witness JSON here (stdout otherwise)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Re-verify a witness JSON against its host graph
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        witness: PathBuf,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Generate graphs (random or planted) as edge-list files
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Probe G(n,p) for K(s,s) via the bipartite double; emits CSV
    Bench {
        #[arg(long, default_value_t = 256)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
        #[arg(long, env = "BLOWUP_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        /// Write CSV here (stdout otherwise)
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Erdős–Rényi G(n, p)
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, env = "BLOWUP_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Noise graph with an exact planted blow-up on the first vertices
    Planted {
        #[arg(long)]
        pattern: PathBuf,
        /// Class sizes, e.g. 2,2,5
        #[arg(long)]
        classes: String,
        #[arg(long, default_value_t = 0.0)]
        noise_p: f64,
        #[arg(long)]
        n: usize,
        #[arg(long, env = "BLOWUP_SEED", default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "induced")]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
        /// Also write the planted ground-truth witness JSON
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
}

fn read_pattern(path: &PathBuf, order: &Option<String>) -> Result<Pattern> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading pattern {}", path.display()))?;
    let mut pattern = Pattern::parse(&text)?;
    if let Some(order) = order {
        let order: Vec<usize> = order
            .split(',')
            .map(|tok| tok.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .context("parsing --pattern-order")?;
        pattern = pattern.permuted(&order)?;
    }
    Ok(pattern)
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading graph {}", path.display()))?;
    Ok(Graph::load(&text)?)
}

fn parse_classes(text: &str) -> Result<Vec<usize>> {
    let sizes: Vec<usize> = text
        .split(',')
        .map(|tok| tok.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .context("parsing --classes")?;
    if sizes.contains(&0) {
        bail!("class sizes must be positive");
    }
    Ok(sizes)
}

fn run() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Count {
            graph,
            pattern,
            mode,
            pattern_order,
            common,
        } => {
            let g = read_graph(&graph)?;
            let h = read_pattern(&pattern, &pattern_order)?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(common.threads)
                .build()?;
            let m = pool.install(|| enumerate_embeddings(&g, &h, mode, Some(common.enum_cap)))?;
            let aut = automorphism_count(&h);
            println!("embeddings: {}", m.len());
            println!("aut: {aut}");
            match copies_from_embeddings(m.len() as u64, aut) {
                Ok(copies) => {
                    println!("copies: {copies}");
                    match blowup_core::bounds::density_from_embeddings(m.len() as u64, g.n(), &h) {
                        Ok(d) => println!(
                            "c: {}{}",
                            rational_string(&d.c),
                            if d.clamped { " (clamped)" } else { "" }
                        ),
                        Err(_) => println!("c: 0"),
                    }
                }
                Err(e) => println!("copies: inconsistent ({e})"),
            }
            Ok(0)
        }
        Command::Extract {
            graph,
            pattern,
            mode,
            c,
            s,
            pattern_order,
            out,
            common,
        } => {
            let h = read_pattern(&pattern, &pattern_order)?;
            let mut cfg = PipelineConfig::new(GraphSource::Path(graph), h, mode);
            cfg.c = parse_c_policy(&c).map_err(anyhow::Error::msg)?;
            cfg.s_overrides = parse_s_list(&s).map_err(anyhow::Error::msg)?;
            cfg.counting_cap = common.cap.saturating_mul(10);
            cfg.enum_cap = common.enum_cap;
            cfg.threads = common.threads;
            cfg.out = out;
            let run = run_pipeline(&cfg);
            print!("{}", run.summary);
            if cfg.out.is_none() {
                if let Some(json) = &run.json {
                    print!("{json}");
                }
            }
            Ok(run.exit_code)
        }
        Command::Verify {
            graph,
            witness,
            common,
        } => {
            let g = read_graph(&graph)?;
            let text = std::fs::read_to_string(&witness)
                .with_context(|| format!("reading witness {}", witness.display()))?;
            let parsed = WitnessJson::from_json(&text)?;
            let w = parsed.to_witness()?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(common.threads)
                .build()?;
            let m = pool
                .install(|| enumerate_embeddings(&g, &w.pattern, w.mode, Some(common.enum_cap)))?;
            let type_report = verify_type(&g, &w)?;
            let cover_report = verify_covers(&g, &m, &w);
            println!(
                "verify_type: {}",
                if type_report.ok { "pass" } else { "FAIL" }
            );
            for v in type_report.violations.iter().take(10) {
                println!(
                    "  classes ({}, {}): pair ({}, {}) {:?}",
                    v.class_i, v.class_j, v.a, v.b, v.kind
                );
            }
            println!(
                "verify_covers: {}",
                if cover_report.ok { "pass" } else { "FAIL" }
            );
            for e in cover_report.uncovered_edges.iter().take(10) {
                println!(
                    "  uncovered edge ({}, {}) across classes ({}, {})",
                    e.a, e.b, e.class_i, e.class_j
                );
            }
            for p in cover_report.transversal_problems.iter().take(10) {
                println!("  {p}");
            }
            Ok(if type_report.ok && cover_report.ok {
                0
            } else {
                2
            })
        }
        Command::Gen { what } => {
            match what {
                GenCommand::Gnp { n, p, seed, out } => {
                    if !(0.0..=1.0).contains(&p) {
                        bail!("p must lie in [0, 1]");
                    }
                    let g = gen_gnp(n, p, seed);
                    let desc = format!("gnp n={n} p={p}");
                    std::fs::write(&out, graph_file_text(&g, &desc, seed))
                        .with_context(|| format!("writing {}", out.display()))?;
                    println!(
                        "wrote {} ({} vertices, {} edges)",
                        out.display(),
                        g.n(),
                        g.edge_count()
                    );
                }
                GenCommand::Planted {
                    pattern,
                    classes,
                    noise_p,
                    n,
                    seed,
                    mode,
                    out,
                    witness_out,
                } => {
                    let h = read_pattern(&pattern, &None)?;
                    let sizes = parse_classes(&classes)?;
                    let (g, w) = plant_blowup(&h, &sizes, noise_p, n, seed, mode)?;
                    let desc = format!(
                        "planted pattern r={} classes={classes} noise_p={noise_p} mode={mode}",
                        h.r()
                    );
                    std::fs::write(&out, graph_file_text(&g, &desc, seed))
                        .with_context(|| format!("writing {}", out.display()))?;
                    println!(
                        "wrote {} ({} vertices, {} edges)",
                        out.display(),
                        g.n(),
                        g.edge_count()
                    );
                    if let Some(path) = witness_out {
                        let payload = serde_json::json!({
                            "mode": blowup_core::report::mode_label(mode),
                            "pattern": { "n": h.r(), "edges": h.edges() },
                            "classes": w.classes,
                            "seed": seed,
                        });
                        std::fs::write(&path, format!("{:#}\n", payload))
                            .with_context(|| format!("writing {}", path.display()))?;
                        println!("wrote {}", path.display());
                    }
                }
            }
            Ok(0)
        }
        Command::Bench {
            n,
            p,
            s_max,
            seed,
            trials,
            out,
            common,
        } => {
            if !(0.0..=1.0).contains(&p) {
                bail!("p must lie in [0, 1]");
            }
            let result = bench_random_biclique(n, p, s_max, seed, trials, common.cap);
            match out {
                Some(path) => {
                    std::fs::write(&path, &result.csv)
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!("wrote {}", path.display());
                }
                None => print!("{}", result.csv),
            }
            for (trial, best) in result.largest_found.iter().enumerate() {
                match best {
                    Some(s) => println!("# seed {} largest confirmed s: {s}", seed + trial as u64),
                    None => println!("# seed {} found no biclique", seed + trial as u64),
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dskern_core::graph::Graph;
use dskern_core::plangen::{random_planar, GenSpec};
use dskern_core::reduction::{reduce, Mode};
use dskern_core::solver::{branch_and_reduce, brute_force_gamma, BRUTE_FORCE_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use dskern_cli::bench::{render_table, run_bench, BenchConfig};
use dskern_cli::io::{graph_to_string, read_graph, ParseError};
use dskern_cli::stats::BenchRecord;
use dskern_cli::verify::{default_reducer, dump_failures, run_trials, verify_instance};
use dskern_cli::{EXIT_PARSE_FAILURE, EXIT_VERIFY_FAILURE};

#[derive(Parser)]
#[command(
    name = "dskern",
    about = "Dominating Set kernelization: reduce, solve, generate and benchmark",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ModeArg {
    Gadget,
    Annotated,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a seeded random planar instance.
    Gen {
        /// Vertex count (at least 3).
        #[arg(long)]
        n: usize,
        /// Edge count; drawn uniformly from [n, 3n-6] when omitted.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce an instance to its kernel.
    Reduce {
        /// Input graph file; `-` for stdin.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Gadget)]
        mode: ModeArg,
        /// Enable the white-vertex cleanup rules (annotated mode only).
        #[arg(long)]
        extra_rules: bool,
        /// Write per-instance stats JSON here.
        #[arg(long)]
        stats: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve an instance exactly (kernelize, then branch).
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Annotated)]
        mode: ModeArg,
        #[arg(long)]
        extra_rules: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check reduction correctness against the exhaustive oracle.
    Verify {
        /// Instance to verify; random trials when omitted.
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Largest random instance size (capped by the oracle limit).
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for dumping failing instances.
        #[arg(long, default_value = ".")]
        dump_dir: PathBuf,
    },
    /// Generate, reduce and aggregate over seeded sample sets.
    Bench {
        /// Comma-separated instance sizes.
        #[arg(long, value_delimiter = ',', default_value = "100,500,750,1000,1500,2000,3000,4000")]
        sizes: Vec<usize>,
        /// Instances per size.
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Annotated)]
        mode: ModeArg,
        #[arg(long)]
        extra_rules: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn build_mode(mode: ModeArg, extra_rules: bool) -> anyhow::Result<Mode> {
    match (mode, extra_rules) {
        (ModeArg::Gadget, false) => Ok(Mode::gadget()),
        (ModeArg::Gadget, true) => {
            anyhow::bail!("--extra-rules requires --mode annotated")
        }
        (ModeArg::Annotated, false) => Ok(Mode::annotated()),
        (ModeArg::Annotated, true) => Ok(Mode::annotated_with_extra_rules()),
    }
}

fn read_input(path: &Path) -> Result<Graph, ParseError> {
    if path.as_os_str() == "-" {
        read_graph(BufReader::new(io::stdin().lock()))
    } else {
        read_graph(BufReader::new(File::open(path)?))
    }
}

fn write_output(path: Option<&Path>, content: &str) -> io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}

#[derive(Serialize)]
struct ReduceStats {
    #[serde(flatten)]
    record: BenchRecord,
    total_events: u64,
    forced: Vec<usize>,
}

fn instance_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "stdin".to_string())
}

fn cmd_reduce(
    input: &Path,
    mode: Mode,
    stats: Option<&Path>,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    let g = read_input(input)?;
    // Input labels are 1-based positions; forced ids map straight back.
    let res = reduce(g, mode);
    let gamma = if res.graph.num_vertices() <= BRUTE_FORCE_CAP {
        Some(res.forced.len() + brute_force_gamma(&res.graph).unwrap().gamma)
    } else {
        None
    };
    write_output(out, &graph_to_string(&res.graph))?;
    if let Some(stats_path) = stats {
        let record = BenchRecord::from_reduction(instance_label(input), &res, gamma);
        let total_events = res.events.len() as u64;
        let forced = res.forced.iter().map(|v| v.index() + 1).collect();
        let payload = ReduceStats {
            record,
            total_events,
            forced,
        };
        std::fs::write(stats_path, serde_json::to_string_pretty(&payload)?)?;
    }
    Ok(())
}

fn cmd_solve(input: &Path, mode: Mode, format: Format) -> anyhow::Result<()> {
    let g = read_input(input)?;
    let res = branch_and_reduce(&g, mode);
    let witness: Vec<usize> = res.witness.iter().map(|v| v.index() + 1).collect();
    match format {
        Format::Text => {
            println!("gamma {}", res.gamma);
            println!(
                "witness {}",
                witness
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!("nodes_explored {}", res.nodes_explored);
        }
        Format::Json => {
            let payload = json!({
                "gamma": res.gamma,
                "witness": witness,
                "nodes_explored": res.nodes_explored,
            });
            println!("{}", serde_json::to_string_pretty(&payload)?);
        }
    }
    Ok(())
}

fn cmd_verify(
    input: Option<&Path>,
    trials: usize,
    max_n: usize,
    seed: u64,
    dump_dir: &Path,
) -> anyhow::Result<u8> {
    match input {
        Some(path) => {
            let g = read_input(path)?;
            if g.num_vertices() > BRUTE_FORCE_CAP {
                anyhow::bail!(
                    "instance has {} vertices; the oracle handles at most {}",
                    g.num_vertices(),
                    BRUTE_FORCE_CAP
                );
            }
            // Planarity of file inputs is unknown, so the kernel bound is
            // reported but not enforced.
            let outcome = verify_instance(&instance_label(path), &g, false, default_reducer);
            for line in &outcome.checks {
                println!("{}: {line}", outcome.instance_id);
            }
            println!(
                "{}: {}",
                outcome.instance_id,
                if outcome.passed { "ok" } else { "FAIL" }
            );
            Ok(if outcome.passed { 0 } else { EXIT_VERIFY_FAILURE })
        }
        None => {
            let (report, failures) = run_trials(trials, max_n, seed, default_reducer);
            for o in &report.outcomes {
                println!(
                    "{}: n={} m={} gamma={} kernel={} {}",
                    o.instance_id,
                    o.n,
                    o.m,
                    o.gamma,
                    o.kernel_vertices,
                    if o.passed { "ok" } else { "FAIL" }
                );
            }
            let passed = report.outcomes.iter().filter(|o| o.passed).count();
            println!("{passed}/{} trials passed", report.outcomes.len());
            if !failures.is_empty() {
                let paths = dump_failures(dump_dir, &failures)?;
                for p in paths {
                    eprintln!("dumped failing instance to {}", p.display());
                }
            }
            Ok(report.exit_code())
        }
    }
}

fn cmd_gen(n: usize, m: Option<usize>, seed: u64, out: Option<&Path>) -> anyhow::Result<()> {
    anyhow::ensure!(n >= 3, "need at least 3 vertices");
    let m = m.unwrap_or_else(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6765_6e65_7261_7465);
        rng.gen_range(n..=3 * n - 6)
    });
    let g = random_planar(&GenSpec { n, m, seed })?;
    write_output(out, &graph_to_string(&g))?;
    Ok(())
}

fn cmd_bench(
    sizes: Vec<usize>,
    count: usize,
    seed: u64,
    mode: Mode,
    format: Format,
    out: Option<&Path>,
) -> anyhow::Result<()> {
    anyhow::ensure!(!sizes.is_empty(), "need at least one size");
    let report = run_bench(&BenchConfig {
        sizes,
        count,
        seed,
        mode,
    })?;
    let rendered = match format {
        Format::Text => render_table(&report),
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
    };
    write_output(out, &rendered)?;
    Ok(())
}

fn run() -> anyhow::Result<u8> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Gen { n, m, seed, out } => {
            cmd_gen(n, m, seed, out.as_deref())?;
            Ok(0)
        }
        Cmd::Reduce {
            input,
            mode,
            extra_rules,
            stats,
            out,
        } => {
            let mode = build_mode(mode, extra_rules)?;
            cmd_reduce(&input, mode, stats.as_deref(), out.as_deref())?;
            Ok(0)
        }
        Cmd::Solve {
            input,
            mode,
            extra_rules,
            format,
        } => {
            let mode = build_mode(mode, extra_rules)?;
            cmd_solve(&input, mode, format)?;
            Ok(0)
        }
        Cmd::Verify {
            input,
            trials,
            max_n,
            seed,
            dump_dir,
        } => cmd_verify(input.as_deref(), trials, max_n, seed, &dump_dir),
        Cmd::Bench {
            sizes,
            count,
            seed,
            mode,
            extra_rules,
            format,
            out,
        } => {
            let mode = build_mode(mode, extra_rules)?;
            cmd_bench(sizes, count, seed, mode, format, out.as_deref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = if err.is::<ParseError>() {
                EXIT_PARSE_FAILURE
            } else {
                1
            };
            ExitCode::from(code)
        }
    }
}

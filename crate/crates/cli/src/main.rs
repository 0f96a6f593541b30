//! Command-line front end: instance generation, encoding, exact solving,
//! verification, hardware graphs, embedding, and the experiment pipeline.
//!
//! Exit codes: 0 on success, 1 on property or runtime failure, 2 on usage
//! errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use dwenc::embedding::{find_embedding, EmbedParams};
use dwenc::encoding::{EncodedProblem, EncodingKind};
use dwenc::experiment::{
    run_experiment, summarize, summary_to_csv, to_csv, ExperimentSpec, ProblemFamily,
    DEFAULT_INSTANCES,
};
use dwenc::hardware::{chimera, interaction_graph, pegasus, GraphFamily, HardwareGraph};
use dwenc::mixers::check_subspace_preservation;
use dwenc::problems::ProblemInstance;
use dwenc::verify::run_all;

#[derive(Parser)]
#[command(
    name = "dwenc",
    version,
    about = "Compile discrete-variable problems into two-body Ising models and study their embeddings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "three-color")]
    ThreeColor,
    #[value(name = "n-color")]
    NColor,
    Scheduling,
}

impl From<FamilyArg> for ProblemFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::ThreeColor => ProblemFamily::ThreeColor,
            FamilyArg::NColor => ProblemFamily::NColor,
            FamilyArg::Scheduling => ProblemFamily::Scheduling,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Dw,
    Onehot,
}

impl From<EncodingArg> for EncodingKind {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::Dw => EncodingKind::DomainWall,
            EncodingArg::Onehot => EncodingKind::OneHot,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingChoice {
    Dw,
    Onehot,
    Both,
}

impl EncodingChoice {
    fn expand(self) -> Vec<EncodingKind> {
        match self {
            EncodingChoice::Dw => vec![EncodingKind::DomainWall],
            EncodingChoice::Onehot => vec![EncodingKind::OneHot],
            EncodingChoice::Both => vec![EncodingKind::DomainWall, EncodingKind::OneHot],
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Chimera,
    Pegasus,
}

impl From<TargetArg> for GraphFamily {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Chimera => GraphFamily::Chimera,
            TargetArg::Pegasus => GraphFamily::Pegasus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetChoice {
    Chimera,
    Pegasus,
    Both,
}

impl TargetChoice {
    fn expand(self) -> Vec<GraphFamily> {
        match self {
            TargetChoice::Chimera => vec![GraphFamily::Chimera],
            TargetChoice::Pegasus => vec![GraphFamily::Pegasus],
            TargetChoice::Both => vec![GraphFamily::Chimera, GraphFamily::Pegasus],
        }
    }
}

#[derive(Args)]
struct OutputArg {
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl OutputArg {
    fn write(&self, content: &str) -> Result<()> {
        let mut text = content.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match &self.output {
            Some(path) => {
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random problem instance as JSON.
    GenInstance {
        family: FamilyArg,
        /// Family size parameter: vertices (three-color), colors (n-color),
        /// or events (scheduling).
        #[arg(long)]
        size: usize,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Encode an instance JSON into an Ising model JSON.
    Encode {
        input: PathBuf,
        #[arg(long, value_enum)]
        encoding: EncodingArg,
        /// Core penalty strength; defaults to the per-problem recommendation.
        #[arg(long)]
        lambda: Option<f64>,
        /// Weight per violated soft constraint.
        #[arg(long, default_value_t = 1.0)]
        weight: f64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Exhaustively solve a model JSON and report the ground manifold.
    SolveExact {
        input: PathBuf,
        /// Qubit cap for the exhaustive sweep.
        #[arg(long, default_value_t = dwenc::ising::DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Generate a hardware graph as JSON.
    Hwgraph {
        family: TargetArg,
        #[arg(long = "L")]
        l: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Embed a model or graph JSON into a target graph JSON.
    Embed {
        /// Source: a model JSON (its interaction graph is used) or a graph JSON.
        source: PathBuf,
        /// Target graph JSON.
        target: PathBuf,
        #[arg(long, default_value_t = 10)]
        tries: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Run an embedding-overhead experiment and emit CSV.
    Experiment {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Comma-separated size list, e.g. `--sizes 4,5,6`.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_INSTANCES)]
        instances: usize,
        #[arg(long, value_enum, default_value = "both")]
        encoding: EncodingChoice,
        #[arg(long, value_enum, default_value = "both")]
        target: TargetChoice,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        tries: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Aggregate an experiment CSV per (size, encoding, target).
    Summarize {
        input: PathBuf,
        #[command(flatten)]
        out: OutputArg,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Check mixer subspace preservation for one variable size.
    Mixer {
        #[arg(long)]
        m: usize,
    },
    /// Run the full property suite of every module.
    All,
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn source_graph(path: &Path) -> Result<HardwareGraph> {
    let text = read_file(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if value.get("family").is_some() {
        Ok(HardwareGraph::from_json(&text)?)
    } else {
        let problem = EncodedProblem::from_json(&text)?;
        Ok(interaction_graph(&problem))
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::GenInstance {
            family,
            size,
            seed,
            out,
        } => {
            let instance = ProblemFamily::from(family).generate(size, seed)?;
            out.write(&instance.to_json())
        }
        Command::Encode {
            input,
            encoding,
            lambda,
            weight,
            out,
        } => {
            let instance = ProblemInstance::from_json(&read_file(&input)?)?;
            let problem = instance.encode(encoding.into(), lambda, weight)?;
            for warning in problem.lambda_warnings() {
                eprintln!("warning: {warning}");
            }
            out.write(&problem.to_json())
        }
        Command::SolveExact { input, cap, out } => {
            let problem = EncodedProblem::from_json(&read_file(&input)?)?;
            let ground = problem.model().brute_force_capped(cap)?;
            let values: Vec<serde_json::Value> = ground
                .states
                .iter()
                .map(|s| {
                    if problem.variables().is_empty() {
                        serde_json::Value::Null
                    } else {
                        serde_json::json!(problem.decode_all(s).unwrap())
                    }
                })
                .collect();
            let report = serde_json::json!({
                "energy": ground.energy,
                "spectrum_gap": ground.spectrum_gap,
                "degeneracy": ground.states.len(),
                "states": ground.bitstrings(),
                "values": values,
            });
            out.write(&report.to_string())
        }
        Command::Verify { what } => match what {
            VerifyCommand::Mixer { m } => {
                let mut p = EncodedProblem::new();
                let v = p.add_domain_wall_variable(m, 1.0)?;
                let report = check_subspace_preservation(&v)?;
                println!("{report}");
                println!("valid block (CSV):");
                println!("{}", report.valid_block_csv());
                if report.passed() {
                    Ok(())
                } else {
                    bail!("mixer preservation checks failed for m={m}")
                }
            }
            VerifyCommand::All => {
                let results = run_all();
                let failed = results.iter().filter(|r| !r.passed).count();
                for r in &results {
                    println!("{r}");
                }
                println!(
                    "{} properties, {} passed, {} failed",
                    results.len(),
                    results.len() - failed,
                    failed
                );
                if failed > 0 {
                    bail!("{failed} properties failed")
                }
                Ok(())
            }
        },
        Command::Hwgraph { family, l, out } => {
            let graph = match family {
                TargetArg::Chimera => chimera(l)?,
                TargetArg::Pegasus => pegasus(l)?,
            };
            out.write(&graph.to_json())
        }
        Command::Embed {
            source,
            target,
            tries,
            seed,
            out,
        } => {
            let source_graph = source_graph(&source)?;
            let target_graph = HardwareGraph::from_json(&read_file(&target)?)?;
            let params = EmbedParams {
                max_tries: tries,
                seed,
                ..EmbedParams::default()
            };
            match find_embedding(&source_graph, &target_graph, &params)? {
                Some(embedding) => out.write(&embedding.to_json(&params)?),
                None => Err(anyhow!("no embedding found after {tries} tries")),
            }
        }
        Command::Experiment {
            family,
            sizes,
            instances,
            encoding,
            target,
            seed,
            tries,
            out,
        } => {
            let spec = ExperimentSpec {
                family: family.into(),
                sizes,
                instances,
                encodings: encoding.expand(),
                targets: target.expand(),
                master_seed: seed,
                tries,
            };
            let rows = run_experiment(&spec)?;
            out.write(&to_csv(&rows))
        }
        Command::Summarize { input, out } => {
            let summary = summarize(&read_file(&input)?)?;
            out.write(&summary_to_csv(&summary))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use symscope::cnf::parse_dimacs;
use symscope::oracle::OracleBounds;
use symscope::pipeline::{
    parse_partition, render_sections, run_check_partition, run_pipeline, AnalysisConfig, AnalysisReport, PipelineError,
    Section, Stages, SCHEMA_VERSION,
};
use symscope::symmetric_action::DEFAULT_GIANT_C;

#[derive(Parser)]
#[command(name = "symscope", version, about = "Structure analysis of CNF symmetry groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every stage and print the full report.
    Analyze(Common),
    /// Orbits of the group on model-graph vertices and on literals.
    Orbits(Common),
    /// Orbit graph and finest disjoint direct decomposition.
    Decompose(Common),
    /// Natural symmetric action test per literal orbit.
    Action(Common),
    /// Equivalent literal orbits.
    Equiv(Common),
    /// Row interchangeability matrices.
    Rowsym(Common),
    /// Test whether a literal partition splits the group as a direct product.
    CheckPartition {
        #[command(flatten)]
        common: Common,
        /// One part per line, signed literals separated by spaces or commas.
        partition: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// DIMACS CNF input.
    input: PathBuf,
    /// Generator file, one permutation per line in cycle notation. Without it
    /// the generators are enumerated by brute force (small formulas only).
    #[arg(long)]
    gens: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Giant test constant; must exceed 2 ln 2.
    #[arg(long, default_value_t = DEFAULT_GIANT_C)]
    giant_c: f64,
    /// Cross-check the results against brute-force recomputation.
    #[arg(long)]
    oracle: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Generator cycles use 1-based model-graph vertex numbers: literal
    /// vertices first (1, -1, 2, -2, ...), then clauses in file order.
    #[arg(long)]
    graph_domain: bool,
    /// Include per-stage wall times.
    #[arg(long)]
    timings: bool,
    /// Vertex bound for brute-force enumeration.
    #[arg(long, default_value_t = 64)]
    oracle_max_vertices: usize,
}

impl Common {
    fn config(&self, stages: Stages) -> AnalysisConfig {
        AnalysisConfig {
            seed: self.seed,
            giant_c: self.giant_c,
            oracle: self.oracle,
            graph_domain: self.graph_domain,
            bounds: OracleBounds {
                max_vertices: self.oracle_max_vertices,
                ..OracleBounds::default()
            },
            timings: self.timings,
            stages,
        }
    }
}

fn read_text(path: &Path) -> Result<String, PipelineError> {
    std::fs::read_to_string(path).map_err(|e| PipelineError::Io(format!("{}: {e}", path.display())))
}

fn load(common: &Common) -> Result<(symscope::cnf::CnfFormula, Option<String>), PipelineError> {
    let file = File::open(&common.input).map_err(|e| PipelineError::Io(format!("{}: {e}", common.input.display())))?;
    let formula = parse_dimacs(BufReader::new(file))?;
    let gens = common.gens.as_deref().map(read_text).transpose()?;
    Ok((formula, gens))
}

fn stage_report(common: &Common, stages: Stages, sections: &[Section]) -> Result<(String, bool), PipelineError> {
    let (formula, gens) = load(common)?;
    let config = common.config(stages);
    let report = run_pipeline(formula, gens.as_deref(), &config)?;
    let violated = report
        .decomposition
        .as_ref()
        .is_some_and(|d| !d.contract_violations.is_empty());
    let mut sections = sections.to_vec();
    for extra in [Section::Oracle, Section::Timings] {
        if !sections.contains(&extra) {
            sections.push(extra);
        }
    }
    let out = match common.format {
        Format::Text => render_sections(&report, &sections),
        Format::Json => json_sections(&report, &sections),
    };
    Ok((out, violated))
}

fn json_sections(report: &AnalysisReport, sections: &[Section]) -> String {
    let Value::Object(full) = serde_json::to_value(report).expect("report serializes") else {
        unreachable!("report is an object");
    };
    let mut out = Map::new();
    out.insert("schema_version".into(), json!(SCHEMA_VERSION));
    for section in sections {
        for &key in section.keys() {
            if let Some(v) = full.get(key) {
                out.insert(key.into(), v.clone());
            }
        }
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(out)).expect("json");
    text.push('\n');
    text
}

fn run(cli: Cli) -> Result<(String, bool), PipelineError> {
    match &cli.command {
        Command::Analyze(c) => stage_report(c, Stages::ALL, &Section::ALL),
        Command::Orbits(c) => stage_report(c, Stages::ORBITS, &[Section::Orbits]),
        Command::Decompose(c) => stage_report(c, Stages::DECOMPOSE, &[Section::Decomposition]),
        Command::Action(c) => stage_report(c, Stages::ACTION, &[Section::Action]),
        Command::Equiv(c) => stage_report(c, Stages::EQUIV, &[Section::Equivalence]),
        Command::Rowsym(c) => stage_report(c, Stages::ROWS, &[Section::Rows]),
        Command::CheckPartition { common, partition } => {
            let (formula, gens) = load(common)?;
            let parts = parse_partition(&read_text(partition)?)?;
            let verdict = run_check_partition(formula, gens.as_deref(), &parts, &common.config(Stages::ORBITS))?;
            let out = match common.format {
                Format::Json => {
                    let mut v = serde_json::to_value(&verdict).expect("verdict serializes");
                    v.as_object_mut()
                        .expect("object")
                        .insert("schema_version".into(), json!(SCHEMA_VERSION));
                    let mut text = serde_json::to_string_pretty(&v).expect("json");
                    text.push('\n');
                    text
                }
                Format::Text => {
                    let mut text = format!("schema_version {SCHEMA_VERSION}\naccepted {}\n", verdict.accepted);
                    if let Some(r) = &verdict.rejection {
                        text.push_str(&format!("rejection {}\n", serde_json::to_string(r).expect("json")));
                    }
                    text
                }
            };
            Ok((out, false))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, violated)) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            if violated {
                eprintln!("error: contract violation: split generators are not automorphisms; the generators likely do not generate the full automorphism group");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use lipsat::sampler::EpsilonLadder;
use lipsat::SearchBounds;
use lipsat_cli::dsl::ArcMode;
use lipsat_cli::{exit_code, parse, run, Model, Settings};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Arcs {
    Standard,
    None,
}

/// Decide or certify membership in the Lipschitz saturation, the saturation
/// and the seminormalization, for the commands of a session file.
#[derive(Debug, Parser)]
#[command(name = "lipsat", version)]
struct Cli {
    /// Session file.
    file: PathBuf,
    #[arg(long, default_value_t = 4)]
    max_relation_degree: u32,
    #[arg(long, default_value_t = 6)]
    max_cofactor_degree: u32,
    /// Series horizon for branches and arcs.
    #[arg(long, default_value_t = lipsat::arc::DEFAULT_TRUNCATION)]
    trunc: u32,
    /// Sampler seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sampler scales, decreasing, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = EpsilonLadder::default().scales)]
    scales: Vec<f64>,
    /// Samples per scale.
    #[arg(long, default_value_t = 64)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, value_enum, default_value_t = Arcs::Standard)]
    arcs: Arcs,
    /// Write raw sampler points of every sampling command to this CSV file.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("lipsat: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let src = match std::fs::read_to_string(&cli.file) {
        Ok(s) => s,
        Err(e) => return fail(format!("{}: {e}", cli.file.display())),
    };
    let session = match parse(&src) {
        Ok(s) => s,
        Err(e) => return fail(format!("{}:{e}", cli.file.display())),
    };
    let bounds = match SearchBounds::new(cli.max_relation_degree, cli.max_cofactor_degree) {
        Ok(b) => b,
        Err(e) => return fail(e),
    };
    let ladder = match EpsilonLadder::new(cli.scales.clone(), cli.samples, cli.seed) {
        Ok(l) => l,
        Err(e) => return fail(e),
    };
    let arcs = match cli.arcs {
        Arcs::Standard => ArcMode::Standard,
        Arcs::None => ArcMode::None,
    };
    let settings = Settings { bounds, trunc: cli.trunc, arcs, ladder };
    let model = match Model::build(&session, cli.trunc) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let docs = run(&session, &model, &settings);
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&lipsat_cli::run::to_json(&docs)).expect("json")),
        Format::Text => print!("{}", lipsat_cli::run::to_text(&docs)),
    }
    if let Some(path) = &cli.csv {
        let mut csv = String::new();
        for (i, d) in docs.iter().enumerate() {
            if let Some(r) = &d.report {
                for (k, line) in r.to_csv().lines().enumerate() {
                    if k == 0 && !csv.is_empty() {
                        continue;
                    }
                    csv += &if k == 0 { format!("command,{line}\n") } else { format!("{i},{line}\n") };
                }
            }
        }
        if let Err(e) = std::fs::write(path, csv) {
            return fail(format!("{}: {e}", path.display()));
        }
    }
    ExitCode::from(exit_code(&docs) as u8)
}

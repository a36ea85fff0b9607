use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use necklace_memory::encoder::PearlNecklace;
use necklace_memory::graph::to_dot;
use necklace_memory::parser::{parse, SourceText};
use necklace_memory::random::{random_encoder, EncoderFamily};
use necklace_memory::report::{
    check_brute_force, check_equivalence, equivalence_line, Analysis, AnalysisReport, Verification,
};

/// Minimal quantum memory of CNOT pearl-necklace encoders.
#[derive(Debug, Parser)]
#[command(name = "necklace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report the minimal memory and a frame assignment achieving it.
    Analyze {
        file: PathBuf,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// Also write the commutativity graph in DOT format to this path.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Run the GF(2) equivalence check and include it in the report.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        oracle: OracleArgs,
        /// Run the exhaustive memory search with this offset bound.
        #[arg(long, value_name = "B")]
        bound: Option<i64>,
    },
    /// Write the commutativity graph in DOT format.
    Dot {
        file: PathBuf,
        /// Output path (default: standard output).
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Check stream equivalence of the encoder and its convolutional form.
    Verify {
        file: PathBuf,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Compare the graph memory with an exhaustive search.
    BruteCheck {
        file: PathBuf,
        /// Largest per-gate frame offset searched (default: memory + 1).
        #[arg(long, value_name = "B")]
        bound: Option<i64>,
    },
    /// Run both checks on seeded random encoders.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        count: usize,
    },
}

#[derive(Debug, Args)]
struct OracleArgs {
    /// Number of frames in the truncated simulation.
    #[arg(long, value_name = "F")]
    frames: Option<usize>,
    /// Frames excluded at each end of the window when comparing.
    #[arg(long, value_name = "M")]
    margin: Option<usize>,
}

enum Failure {
    /// Bad input or usage.
    Input(String),
    /// A verification check disagreed.
    Mismatch(String),
}

const EXIT_INPUT: u8 = 1;
const EXIT_MISMATCH: u8 = 2;

fn load(path: &Path) -> Result<PearlNecklace, Failure> {
    let content =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let src = SourceText::new(path.display().to_string(), content);
    parse(&src).map_err(|e| Failure::Input(e.to_string()))
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::Input(format!("stdout: {e}")))
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            file,
            json,
            dot,
            verify,
            oracle,
            bound,
        } => {
            let analysis = Analysis::new(load(&file)?);
            if let Some(path) = &dot {
                write_output(Some(path), &to_dot(&analysis.graph, &analysis.encoder))?;
            }
            let verification = if verify || bound.is_some() {
                let equivalence = if verify {
                    Some(
                        check_equivalence(&analysis, oracle.frames, oracle.margin)
                            .map_err(|e| Failure::Input(e.to_string()))?,
                    )
                } else {
                    None
                };
                let brute_force = bound.map(|b| check_brute_force(&analysis, Some(b)));
                Some(Verification {
                    equivalence,
                    brute_force,
                })
            } else {
                None
            };
            let report = AnalysisReport::new(&analysis, verification);
            let text = if json {
                report.to_json()
            } else {
                report.to_text()
            };
            write_output(None, &text)?;
            match &report.verification {
                Some(v) if !v.passed() => Err(Failure::Mismatch(format!(
                    "{}: verification failed",
                    file.display()
                ))),
                _ => Ok(()),
            }
        }
        Command::Dot { file, output } => {
            let enc = load(&file)?;
            let analysis = Analysis::new(enc);
            write_output(
                output.as_deref(),
                &to_dot(&analysis.graph, &analysis.encoder),
            )
        }
        Command::Verify { file, oracle } => {
            let analysis = Analysis::new(load(&file)?);
            let e = check_equivalence(&analysis, oracle.frames, oracle.margin)
                .map_err(|e| Failure::Input(e.to_string()))?;
            let line = equivalence_line(&e);
            write_output(None, &format!("{line}\n"))?;
            if e.interior_equal && e.invertible {
                Ok(())
            } else {
                Err(Failure::Mismatch(format!("{}: {line}", file.display())))
            }
        }
        Command::BruteCheck { file, bound } => {
            let analysis = Analysis::new(load(&file)?);
            let check = check_brute_force(&analysis, bound);
            write_output(None, &format!("{check}\n"))?;
            if check.ok {
                Ok(())
            } else {
                Err(Failure::Mismatch(format!("{}: {check}", file.display())))
            }
        }
        Command::Selftest { seed, count } => selftest(seed, count),
    }
}

fn selftest(seed: u64, count: usize) -> Result<(), Failure> {
    let family = EncoderFamily::small();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for index in 0..count {
        let analysis = Analysis::new(random_encoder(&mut rng, &family));
        let brute = check_brute_force(&analysis, None);
        let equivalence =
            check_equivalence(&analysis, None, None).map_err(|e| Failure::Input(e.to_string()))?;
        if !brute.ok || !equivalence.interior_equal || !equivalence.invertible {
            let text = necklace_memory::parser::render(&analysis.encoder).content;
            failures.push(format!(
                "instance {index}: {brute}; {}\n{text}",
                equivalence_line(&equivalence)
            ));
        }
    }
    write_output(
        None,
        &format!(
            "selftest seed={seed} instances={count} failures={}\n",
            failures.len()
        ),
    )?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(failures.join("\n")))
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("MISMATCH: {msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}

//! Command-line front end. [`run`] takes its streams as arguments so it can
//! be driven from tests.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::gaintheory::{classify_cycle, is_balanced, GainError};
use crate::graph::{parse_gain_graph, GainGraph, GraphError};
use crate::spectral::{
    a_alpha_matrix, adjacency_matrix, hermitian_eigenvalues, rank_by_elimination, rank_by_spectrum,
    SpectralError,
};
use crate::verify::{
    build_corpus, parse_corpus_spec, run_suite, write_csv, write_jsonl, CorpusError, CorpusItem,
    SuiteOptions, VerifyError, DEFAULT_ALPHAS, DEFAULT_SEEDS,
};
use crate::zeroforcing::{zero_forcing_number, ZfError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_CHECK: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "tgain",
    version,
    about = "Spectral checks for complex unit gain graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Input {
    /// `.ggr` file; `-` or omitted reads standard input.
    pub file: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of A_α(Φ) with clusters
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
    },
    /// Rank of A(Φ) by both oracles
    Rank {
        #[command(flatten)]
        input: Input,
    },
    /// Exact zero forcing number of the underlying graph
    Zf {
        #[command(flatten)]
        input: Input,
    },
    /// Type of a gain cycle
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Balance test with a switching witness
    Balance {
        #[command(flatten)]
        input: Input,
    },
    /// Write a family member as .ggr
    Gen {
        /// cycle N | complete N | bipartite A B | path N | random N MAXDEG
        kind: String,
        params: Vec<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Total gain of a cycle, as num/den of π.
        #[arg(long)]
        gain: Option<String>,
        /// Gain -1 on the first edge.
        #[arg(long, conflicts_with = "seed")]
        flip: bool,
    },
    /// Run the theorem checkers over a corpus
    Verify {
        #[arg(long)]
        corpus: String,
        /// JSON-lines report; `-` writes it to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = DEFAULT_SEEDS)]
        seeds: usize,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_ALPHAS)]
        alpha: Vec<f64>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}: {1}")]
    Io(String, std::io::Error),
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Spectral(#[from] SpectralError),
    #[error("{0}")]
    Zf(#[from] ZfError),
    #[error("{0}")]
    Gain(#[from] GainError),
    #[error("{0}")]
    Verify(#[from] VerifyError),
    #[error("{0}")]
    Corpus(#[from] CorpusError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
        Err(e) if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
            let _ = write!(stderr, "{}", e.render());
            return EXIT_USAGE;
        }
        Err(e) => {
            let text = e.render().to_string();
            let line = text.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(stderr, "{line}");
            return EXIT_USAGE;
        }
    };
    match execute(cli.command, stdin, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_graph(input: &Input, stdin: &mut dyn Read) -> Result<GainGraph, CliError> {
    let mut text = String::new();
    match &input.file {
        Some(path) if path.as_os_str() != "-" => {
            File::open(path)
                .and_then(|mut f| f.read_to_string(&mut text))
                .map_err(|e| CliError::Io(path.display().to_string(), e))?;
        }
        _ => {
            stdin
                .read_to_string(&mut text)
                .map_err(|e| CliError::Io("<stdin>".into(), e))?;
        }
    }
    Ok(parse_gain_graph(&text)?)
}

fn print_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn execute(command: Command, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Spectrum { input, alpha } => {
            let g = read_graph(&input, stdin)?;
            let spec = hermitian_eigenvalues(&a_alpha_matrix(&g, alpha)?)?;
            if input.json {
                print_json(out, &spec)?;
            } else {
                for &(lambda, m) in &spec.clusters {
                    writeln!(out, "{lambda:>14.9}  x{m}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Rank { input } => {
            let g = read_graph(&input, stdin)?;
            let a = adjacency_matrix(&g);
            let (spectrum, elimination) = (rank_by_spectrum(&a)?, rank_by_elimination(&a));
            if input.json {
                #[derive(Serialize)]
                struct RankOut {
                    spectrum: usize,
                    elimination: usize,
                }
                print_json(
                    out,
                    &RankOut {
                        spectrum,
                        elimination,
                    },
                )?;
            } else {
                writeln!(
                    out,
                    "rank {spectrum} (spectrum) / {elimination} (elimination)"
                )?;
            }
            Ok(if spectrum == elimination {
                EXIT_OK
            } else {
                EXIT_FAILED_CHECK
            })
        }
        Command::Zf { input } => {
            let g = read_graph(&input, stdin)?;
            let z = zero_forcing_number(&g)?;
            if input.json {
                print_json(out, &z)?;
            } else {
                writeln!(
                    out,
                    "Z = {}, witness {:?} ({} sets searched)",
                    z.number, z.witness, z.nodes_searched
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Classify { input } => {
            let g = read_graph(&input, stdin)?;
            let t = classify_cycle(&g)?;
            if input.json {
                print_json(out, &serde_json::json!({ "type": t.to_string() }))?;
            } else {
                writeln!(out, "{t}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Balance { input } => {
            let g = read_graph(&input, stdin)?;
            let verdict = is_balanced(&g)?;
            if input.json {
                print_json(out, &verdict)?;
            } else if let Some(w) = &verdict.witness {
                let zeta: Vec<String> = w.zeta.iter().map(ToString::to_string).collect();
                writeln!(out, "balanced\nwitness {}", zeta.join(" "))?;
            } else {
                writeln!(out, "unbalanced")?;
            }
            Ok(EXIT_OK)
        }
        Command::Gen {
            kind,
            params,
            seed,
            gain,
            flip,
        } => {
            let mut item = vec![kind.clone()];
            item.extend(params);
            match kind.as_str() {
                "cycle" => item.push(gain.unwrap_or_else(|| "0/1".into())),
                "random" => item.push(seed.unwrap_or(0).to_string()),
                _ if gain.is_some() => {
                    return Err(CliError::Usage(format!(
                        "--gain does not apply to `{kind}`"
                    )))
                }
                "complete" | "bipartite" if flip => item.push("flip".into()),
                "complete" | "bipartite" => item.extend(seed.map(|s| s.to_string())),
                _ => {}
            }
            let spec = match parse_corpus_spec(&item.join(":"))?.as_slice() {
                [CorpusItem::Family(spec)] => *spec,
                _ => return Err(CliError::Usage(format!("unknown family `{kind}`"))),
            };
            let g = spec.build().map_err(VerifyError::from)?;
            write!(out, "{}", g.to_ggr())?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            corpus,
            out: report_path,
            csv,
            jobs,
            seeds,
            alpha,
        } => {
            let instances = build_corpus(&corpus)?;
            let opts = SuiteOptions {
                alphas: alpha,
                seeds,
                jobs: jobs.max(1),
            };
            let report = run_suite(&instances, &opts)?;
            match report_path {
                Some(p) if p.as_os_str() == "-" => write_jsonl(&report.rows, &mut *out)?,
                Some(p) => {
                    let f =
                        File::create(&p).map_err(|e| CliError::Io(p.display().to_string(), e))?;
                    let mut w = BufWriter::new(f);
                    write_jsonl(&report.rows, &mut w)?;
                    w.flush()?;
                }
                None => {}
            }
            if let Some(p) = csv {
                let f = File::create(&p).map_err(|e| CliError::Io(p.display().to_string(), e))?;
                write_csv(&report.rows, BufWriter::new(f))
                    .map_err(|e| CliError::Output(e.to_string()))?;
            }
            for row in report.rows.iter().filter(|r| r.is_failure()) {
                writeln!(
                    out,
                    "FAIL {} {} measured={} {}",
                    row.instance_id,
                    row.theorem_tag,
                    row.measured,
                    row.note.as_deref().unwrap_or("")
                )?;
            }
            writeln!(out, "{}", report.summary)?;
            Ok(if report.all_pass() {
                EXIT_OK
            } else {
                EXIT_FAILED_CHECK
            })
        }
    }
}

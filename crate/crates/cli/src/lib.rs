//! Commands behind the `eah` binary.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on data errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use thiserror::Error;

use eah_core::automaton::AdaptiveAutomaton;
use eah_core::codec::{self, ContextModel};
use eah_core::container;
use eah_core::report::{BenchReport, BenchRow};
use eah_core::Alphabet;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }
}

impl From<eah_core::Error> for CliError {
    fn from(e: eah_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "eah", version, about = "Order-n adaptive Huffman codec")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compress a file into an EAHC container.
    Encode {
        #[arg(long, short = 'n')]
        order: usize,
        /// `auto` (distinct input bytes, by byte value), `hex:<pairs>`, or the
        /// symbols themselves in index order.
        #[arg(long, default_value = "auto")]
        alphabet: String,
        input: PathBuf,
        output: PathBuf,
    },
    /// Restore the original file from a container.
    Decode { input: PathBuf, output: PathBuf },
    /// Compare EAHn against whole-string Huffman and LZ78.
    Bench {
        /// Comma-separated orders, e.g. `1,2,3`.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        orders: Vec<usize>,
        /// Also write the report as CSV to this path.
        #[arg(long)]
        csv: Option<PathBuf>,
        files: Vec<PathBuf>,
    },
    /// Write the adaptive automaton of a file as Graphviz DOT.
    Dot {
        #[arg(long, short = 'n')]
        order: usize,
        #[arg(long, default_value = "auto")]
        alphabet: String,
        input: PathBuf,
        output: PathBuf,
    },
}

/// Parses an alphabet argument against the input it will be used for.
pub fn parse_alphabet(spec: &str, data: &[u8]) -> CliResult<Alphabet> {
    let result = if spec == "auto" {
        if data.is_empty() {
            Alphabet::new(vec![0u8])
        } else {
            Alphabet::from_data(data)
        }
    } else if let Some(hex) = spec.strip_prefix("hex:") {
        if hex.len() % 2 != 0 {
            return Err(CliError::Usage(format!("odd number of hex digits in {spec:?}")));
        }
        let bytes = (0..hex.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&hex[i..i + 2], 16))
            .collect::<Result<Vec<u8>, _>>()
            .map_err(|e| CliError::Usage(format!("bad hex alphabet {spec:?}: {e}")))?;
        Alphabet::new(bytes)
    } else {
        Alphabet::new(spec.as_bytes())
    };
    result.map_err(|e| CliError::Usage(e.to_string()))
}

fn read(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, data: &[u8]) -> CliResult<()> {
    fs::write(path, data).map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display())))
}

fn check_order(order: usize) -> CliResult<()> {
    if order == 0 || order > u8::MAX as usize {
        return Err(CliError::Usage(format!("order must be in 1..=255, got {order}")));
    }
    Ok(())
}

/// Encodes `input` and writes the container; returns the summary line.
pub fn cmd_encode(input: &Path, order: usize, alphabet: &str, output: &Path) -> CliResult<String> {
    check_order(order)?;
    let data = read(input)?;
    let alphabet = parse_alphabet(alphabet, &data)?;
    let payload = codec::encode(&data, order, &alphabet)?;
    write(output, &container::serialize(&payload)?)?;
    let [a, b, c, d, e] = payload.component_lengths();
    Ok(format!(
        "h={} m={} n={order} |A|={a} |B|={b} |C|={c} |D|={d} |E|={e} LEAH{order}={}",
        payload.h,
        alphabet.len(),
        codec::leah(&payload)
    ))
}

pub fn cmd_decode(input: &Path, output: &Path) -> CliResult<String> {
    let payload = container::parse(&read(input)?)?;
    let data = codec::decode(&payload)?;
    if data.len() as u64 != payload.h {
        return Err(CliError::Data(format!("decoded {} symbols, header says {}", data.len(), payload.h)));
    }
    write(output, &data)?;
    Ok(format!("h={}", data.len()))
}

pub fn cmd_dot(input: &Path, order: usize, alphabet: &str, output: &Path) -> CliResult<()> {
    check_order(order)?;
    let data = read(input)?;
    let alphabet = parse_alphabet(alphabet, &data)?;
    let model = ContextModel::build(&data, order, &alphabet)?;
    let automaton = AdaptiveAutomaton::build(&data, order, &model)?;
    write(output, automaton.to_dot().as_bytes())
}

/// Measures every file at every order. Failures are recorded in the report
/// and do not stop the run; rows keep input order.
pub fn cmd_bench(files: &[PathBuf], orders: &[usize]) -> BenchReport {
    let jobs: Vec<(&PathBuf, usize)> =
        files.iter().flat_map(|f| orders.iter().map(move |&n| (f, n))).collect();
    let results: Vec<_> = jobs
        .par_iter()
        .map(|&(path, order)| {
            let name = path.display().to_string();
            let outcome = check_order(order)
                .and_then(|_| read(path))
                .and_then(|data| {
                    let alphabet = parse_alphabet("auto", &data)?;
                    let row = BenchRow::measure(&name, &data, &alphabet, order)?;
                    Ok((row, data))
                });
            (name, order, outcome)
        })
        .collect();
    let mut report = BenchReport::default();
    for (name, order, outcome) in results {
        match outcome {
            Ok((row, data)) => report.push(row, &data),
            Err(e) => report.failures.push((format!("{name} (n={order})"), e.to_string())),
        }
    }
    report
}

/// Runs a parsed command, printing to stdout; returns the exit status.
pub fn run(cli: Cli) -> i32 {
    let outcome = match cli.command {
        Command::Encode { order, alphabet, input, output } => {
            cmd_encode(&input, order, &alphabet, &output).map(|s| println!("{s}"))
        }
        Command::Decode { input, output } => cmd_decode(&input, &output).map(|s| println!("{s}")),
        Command::Dot { order, alphabet, input, output } => cmd_dot(&input, order, &alphabet, &output),
        Command::Bench { orders, csv, files } => {
            let report = cmd_bench(&files, &orders);
            print!("{}", report.to_table());
            let written = match csv {
                Some(path) => write(&path, report.to_csv().as_bytes()),
                None => Ok(()),
            };
            written.and_then(|_| match report.failures.len() {
                0 => Ok(()),
                k => Err(CliError::Data(format!("{k} input(s) failed"))),
            })
        }
    };
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("eah: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_specs() {
        assert_eq!(parse_alphabet("auto", b"cab").unwrap().symbols(), b"abc");
        assert_eq!(parse_alphabet("auto", b"").unwrap().symbols(), [0]);
        assert_eq!(parse_alphabet("dcba", b"").unwrap().symbols(), b"dcba");
        assert_eq!(parse_alphabet("hex:00ff41", b"").unwrap().symbols(), [0, 0xff, 0x41]);
        assert!(matches!(parse_alphabet("hex:0", b""), Err(CliError::Usage(_))));
        assert!(matches!(parse_alphabet("hex:zz", b""), Err(CliError::Usage(_))));
        assert!(matches!(parse_alphabet("aa", b""), Err(CliError::Usage(_))));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 1);
        assert_eq!(CliError::Data(String::new()).exit_code(), 2);
    }
}

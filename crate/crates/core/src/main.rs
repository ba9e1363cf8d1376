use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use algdeg::bench::{self, BenchConfig};
use algdeg::distribution::format_distribution;
use algdeg::verify::{Level, Verifier};
use algdeg::wlo::{format_masks, format_sequence, MAX_WLO_VARS};
use algdeg::{
    anft_bitwise, deg_wlo_on_demand, enumerate_distribution, masks_direct, masks_from_wlo, parity_check,
    wlo_bucket, wlo_recursive, Degree, DegreeDistribution, Error, LayerTables, MaskSet,
    PipelineKind, TruthTable,
};

/// Algebraic degree of Boolean functions.
///
/// Truth tables are given as a 0/1 string (character j is f_j, left to
/// right), as hex words (word 0 first, bit b of word w is f_{64w+b}), or as a
/// binary file of little-endian 64-bit words.
#[derive(Debug, Parser)]
#[command(name = "algdeg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the algebraic degree of a function (-1 for the zero function).
    Degree {
        #[command(flatten)]
        input: InputArgs,
        /// Algorithm chain, e.g. bitwise:PC+ANFT+WLO or bytewise:ANFT+ES.
        #[arg(long, default_value = "bitwise:PC+ANFT+WLO")]
        pipeline: PipelineKind,
        /// Also print the parity bit, whether the transform ran, and the
        /// layer where the search stopped.
        #[arg(long)]
        explain: bool,
        /// Print the zero function's degree as -inf instead of -1.
        #[arg(long)]
        symbolic: bool,
    },
    /// Print the ANF coefficient vector of a function.
    Anf {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Hex)]
        format: Format,
        /// Write the coefficients to this file in the binary word format.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the weight-lexicographic order of {0,1}^n.
    Wlo {
        n: u32,
        #[arg(long, value_enum, default_value_t = SeqRoute::Bucket)]
        route: SeqRoute,
    },
    /// Print the layer masks, one line per layer starting with layer 0.
    Masks {
        n: u32,
        #[arg(long, value_enum, default_value_t = MaskRoute::Direct)]
        route: MaskRoute,
    },
    /// Print how many functions of n variables have each degree.
    Dist {
        n: u32,
        /// Count by evaluating every function (n <= 4) instead of the closed form.
        #[arg(long)]
        enumerate: bool,
    },
    /// Time the degree pipelines on a seeded random workload; prints CSV.
    Bench(BenchArgs),
    /// Cross-check all algorithms against each other and the oracles.
    Verify {
        #[arg(value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
        /// Clear the top layer mask for this n before verifying (negative
        /// control).
        #[arg(long, hide = true)]
        corrupt_mask: Option<u32>,
    },
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Truth table as a string of 2^n characters 0/1.
    #[arg(long, required_unless_present_any = ["hex", "file"], conflicts_with_all = ["hex", "file"])]
    bits: Option<String>,
    /// Truth table as hex 64-bit words separated by commas or spaces.
    #[arg(long, requires = "nvars", conflicts_with = "file")]
    hex: Option<String>,
    /// Truth table file of little-endian 64-bit words.
    #[arg(long, requires = "nvars")]
    file: Option<PathBuf>,
    /// Number of variables.
    #[arg(short = 'n', long = "nvars")]
    nvars: Option<u32>,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Total number of random 64-bit words per variable count.
    #[arg(long, default_value_t = bench::DEFAULT_WORDS)]
    words: usize,
    /// Variable counts to test (repeatable).
    #[arg(long = "nvars", num_args = 1.., value_delimiter = ',')]
    nvars: Vec<u32>,
    /// Pipelines to time (repeatable); all eight by default.
    #[arg(long = "pipelines", num_args = 1.., value_delimiter = ',')]
    pipelines: Vec<PipelineKind>,
    /// Runs per measurement; with 3 or more the extremes are dropped.
    #[arg(long, default_value_t = bench::DEFAULT_RUNS)]
    runs: usize,
    /// Use 10^9 words per variable count (about 8 GB of memory).
    #[arg(long)]
    full_protocol: bool,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Hex,
    Bits,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeqRoute {
    Bucket,
    Recursive,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MaskRoute {
    Direct,
    Sequence,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VerifyLevel {
    Quick,
    Exhaustive,
}

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Length { .. } => Failure::Usage(format!("input length mismatch: {e}")),
            _ => Failure::Usage(format!("invalid input: {e}")),
        }
    }
}

fn read_input(input: &InputArgs) -> Result<TruthTable, Failure> {
    if let Some(bits) = &input.bits {
        let len = bits.trim().len();
        if let Some(n) = input.nvars {
            if n < 64 && len as u64 != 1u64 << n {
                return Err(Failure::Usage(format!(
                    "input length mismatch: expected {} characters for n = {n}, got {len}",
                    1u64 << n
                )));
            }
        }
        return Ok(TruthTable::from_bit_str(bits)?);
    }
    let n = input.nvars.expect("clap requires --nvars");
    if let Some(hex) = &input.hex {
        return Ok(TruthTable::from_hex_words(n, hex)?);
    }
    let path = input.file.as_ref().expect("clap requires one source");
    let raw = fs::read(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(TruthTable::from_le_bytes(n, &raw)?)
}

fn cmd_degree(
    input: &InputArgs,
    pipeline: PipelineKind,
    explain: bool,
    symbolic: bool,
) -> Result<String, Failure> {
    let tt = read_input(input)?;
    let degree = if tt.n() <= MAX_WLO_VARS {
        pipeline.degree(&tt, &LayerTables::new(tt.n())?)
    } else {
        large_degree(&tt, pipeline)?
    };
    let mut out = match (degree, symbolic) {
        (Degree::NegInfinity, true) => "-inf".to_string(),
        _ => degree.to_sentinel().to_string(),
    };
    out.push('\n');
    if explain {
        let parity = parity_check(&tt);
        let skipped = pipeline.uses_parity_check() && parity == 1;
        let layer = match degree {
            Degree::NegInfinity => "none".to_string(),
            Degree::Finite(k) => k.to_string(),
        };
        out.push_str(&format!("pipeline: {pipeline}\nparity: {parity}\n"));
        out.push_str(&format!(
            "anft: {}\nlayer: {layer}\n",
            if skipped { "skipped" } else { "computed" }
        ));
    }
    Ok(out)
}

/// Tables beyond the materialized sequence range: only the mask-based
/// bitwise chains apply, with masks built per layer.
fn large_degree(tt: &TruthTable, pipeline: PipelineKind) -> Result<Degree, Failure> {
    match pipeline {
        PipelineKind::BitPcAnftWlo if parity_check(tt) == 1 => Ok(Degree::Finite(tt.n())),
        PipelineKind::BitPcAnftWlo | PipelineKind::BitAnftWlo => {
            Ok(deg_wlo_on_demand(&anft_bitwise(tt)))
        }
        _ => Err(Failure::Usage(format!(
            "pipeline {pipeline} needs n <= {MAX_WLO_VARS}; use bitwise:PC+ANFT+WLO"
        ))),
    }
}

fn cmd_anf(input: &InputArgs, format: Format, output: Option<&PathBuf>) -> Result<String, Failure> {
    let anf = anft_bitwise(&read_input(input)?);
    if let Some(path) = output {
        fs::write(path, anf.to_le_bytes())
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(match format {
        Format::Hex => format!("{anf:x}\n"),
        Format::Bits => format!("{}\n", anf.to_bit_string()),
    })
}

fn cmd_bench(args: &BenchArgs) -> Result<String, Failure> {
    let defaults = BenchConfig::default();
    let config = BenchConfig {
        seed: args.seed,
        words: if args.full_protocol {
            bench::FULL_WORDS
        } else {
            args.words
        },
        nvars: if args.nvars.is_empty() {
            defaults.nvars
        } else {
            args.nvars.clone()
        },
        pipelines: if args.pipelines.is_empty() {
            defaults.pipelines
        } else {
            args.pipelines.clone()
        },
        runs: args.runs,
    };
    let csv = bench::report(&bench::run_sweep(&config)?)?;
    match &args.output {
        Some(path) => {
            fs::write(path, &csv)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(csv),
    }
}

fn cmd_verify(level: VerifyLevel, corrupt_mask: Option<u32>) -> Result<String, Failure> {
    let mut verifier = Verifier::new();
    if let Some(n) = corrupt_mask {
        let masks = masks_direct(n)?;
        let mut words: Vec<Vec<u64>> = masks.iter().map(<[u64]>::to_vec).collect();
        words[n as usize].iter_mut().for_each(|w| *w = 0);
        verifier = verifier.with_masks(MaskSet::from_masks(n, words)?);
    }
    let level = match level {
        VerifyLevel::Quick => Level::Quick,
        VerifyLevel::Exhaustive => Level::Exhaustive,
    };
    match verifier.run(level) {
        Ok(lines) => Ok(lines.iter().map(|l| format!("ok: {l}\n")).collect()),
        Err(m) => Err(Failure::Mismatch(format!("mismatch: {m}"))),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Degree {
            input,
            pipeline,
            explain,
            symbolic,
        } => cmd_degree(&input, pipeline, explain, symbolic),
        Command::Anf {
            input,
            format,
            output,
        } => cmd_anf(&input, format, output.as_ref()),
        Command::Wlo { n, route } => {
            let seq = match route {
                SeqRoute::Bucket => wlo_bucket(n)?,
                SeqRoute::Recursive => wlo_recursive(n)?,
            };
            Ok(format!("{}\n", format_sequence(&seq)))
        }
        Command::Masks { n, route } => {
            let masks = match route {
                MaskRoute::Direct => masks_direct(n)?,
                MaskRoute::Sequence => masks_from_wlo(&wlo_bucket(n)?),
            };
            Ok(format_masks(&masks))
        }
        Command::Dist { n, enumerate } => {
            let dist = if enumerate {
                enumerate_distribution(n)?
            } else {
                DegreeDistribution::from_formula(n)?
            };
            Ok(format_distribution(&dist)?)
        }
        Command::Bench(args) => cmd_bench(&args),
        Command::Verify {
            level,
            corrupt_mask,
        } => cmd_verify(level, corrupt_mask),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_MISMATCH)
        }
    }
}

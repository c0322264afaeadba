//! The `pdt` command line.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;

use anyhow::{bail, ensure, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pdt_core::analysis::{
    ratio_bound, ratio_bound_factor, ratio_series, sufficiency_exact, sufficiency_exponents, RatioSeries,
    MAX_EXACT_K,
};
use pdt_core::codec::{decompress, CodecParams, Compressor};
use pdt_core::seqgen::{max_block, sequence_prefix, Horizon, Order, SequenceSpec, Variant, DEFAULT_CAP};
use pdt_core::Alphabet;

use crate::format::{decode_stream, encode_stream, Format, Role, Stream};
use crate::report;
use crate::verify::{self, VerifyConfig};

#[derive(Debug, Parser)]
#[command(name = "pdt", version, about = "Pushdown compressor and block-sequence analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a prefix of a paired sequence as a plain stream.
    Gen(GenArgs),
    /// Compress a plain stream.
    Compress(CompressArgs),
    /// Decompress a compressed stream.
    Decompress(CodecArgs),
    /// Compression ratio at every block boundary.
    Ratio(RatioArgs),
    /// Check codec and block properties over a range of alphabets.
    Verify(VerifyArgs),
    /// Tabulate the analytic ratio bound.
    Bound(BoundArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    /// w₁w̃₁w₂w̃₂⋯ with lexicographic w_n.
    PairedLex,
    /// Each word followed by its reverse, lex order or shuffled by --seed.
    PairedEnum,
}

fn variant(arg: VariantArg, seed: Option<u64>) -> Variant {
    match (arg, seed) {
        (VariantArg::PairedLex, _) => Variant::PairedLex,
        (VariantArg::PairedEnum, None) => Variant::PairedEnumeration(Order::Lex),
        (VariantArg::PairedEnum, Some(s)) => Variant::PairedEnumeration(Order::Shuffled(s)),
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "paired-lex")]
    pub variant: VariantArg,
    /// Shuffle seed for paired-enum.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub n_max: u32,
    /// Largest n·kⁿ a block may have.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "binary")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct CodecArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long = "in", default_value = "-")]
    pub input: PathBuf,
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    /// Output format; defaults to the input's.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct CompressArgs {
    #[command(flatten)]
    pub io: CodecArgs,
    /// Leave a pending odd pop unwritten at end of input.
    #[arg(long)]
    pub no_flush: bool,
}

#[derive(Debug, Args)]
pub struct RatioArgs {
    /// One or more alphabet sizes, run concurrently.
    #[arg(long, value_delimiter = ',', required = true)]
    pub k: Vec<u32>,
    #[arg(long, value_enum, default_value = "paired-lex")]
    pub variant: VariantArg,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Last block; defaults to the largest n with n·kⁿ ≤ cap.
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
    /// Write per-block rows here ("-" for stdout).
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub k_min: u32,
    #[arg(long, default_value_t = 5)]
    pub k_max: u32,
    #[arg(long, default_value_t = 4)]
    pub n_max: u32,
    /// Random words per k for the codec checks.
    #[arg(long, default_value_t = 200)]
    pub words: usize,
    #[arg(long, default_value_t = 2000)]
    pub max_len: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, default_value_t = 2)]
    pub k_min: u32,
    #[arg(long, default_value_t = 16)]
    pub k_max: u32,
}

fn is_std(path: &Path) -> bool {
    path.as_os_str() == "-"
}

fn read_input(path: &Path) -> anyhow::Result<Vec<u8>> {
    if is_std(path) {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn write_output(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    if is_std(path) {
        let mut out = io::stdout().lock();
        out.write_all(bytes)?;
        out.flush()?;
        Ok(())
    } else {
        fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
    }
}

fn read_stream(args: &CodecArgs, role: Role) -> anyhow::Result<(Stream, Format)> {
    let bytes = read_input(&args.input)?;
    let format = Format::detect(&bytes);
    let stream = decode_stream(&bytes, format).with_context(|| format!("decoding {format} stream"))?;
    ensure!(stream.role == role, "expected a {role:?} stream, found {:?}", stream.role);
    ensure!(
        stream.k.k() as u32 == args.k,
        "stream has k={}, but --k {} was given",
        stream.k.k(),
        args.k
    );
    Ok((stream, format))
}

fn gen(args: &GenArgs) -> anyhow::Result<()> {
    let k = Alphabet::new(args.k)?;
    let spec = SequenceSpec {
        k,
        variant: variant(args.variant, args.seed),
        horizon: Horizon::Blocks(args.n_max),
        cap: args.cap,
    };
    let symbols: Vec<_> = sequence_prefix(&spec)?.collect();
    write_output(&args.out, &encode_stream(&symbols, Role::Plain, k, args.format)?)
}

fn compress(args: &CompressArgs) -> anyhow::Result<()> {
    let (stream, format) = read_stream(&args.io, Role::Plain)?;
    let mut params = CodecParams::new(stream.k);
    if args.no_flush {
        params = params.without_flush();
    }
    let packed = Compressor::new(params).compress(&stream.symbols)?;
    let format = args.io.format.unwrap_or(format);
    write_output(&args.io.out, &encode_stream(&packed, Role::Compressed, stream.k, format)?)
}

fn decompress_cmd(args: &CodecArgs) -> anyhow::Result<()> {
    let (stream, format) = read_stream(args, Role::Compressed)?;
    let plain = decompress(&stream.symbols, stream.k)?;
    let format = args.format.unwrap_or(format);
    write_output(&args.out, &encode_stream(&plain, Role::Plain, stream.k, format)?)
}

fn ratio(args: &RatioArgs) -> anyhow::Result<()> {
    let jobs = args
        .k
        .iter()
        .map(|&k| {
            let k = Alphabet::new(k)?;
            let n_max = args.n_max.unwrap_or_else(|| max_block(k, args.cap));
            ensure!(n_max >= 1, "no block of k={} fits under cap {}", k.k(), args.cap);
            Ok((k, n_max))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    let v = variant(args.variant, args.seed);
    let results: Vec<Result<RatioSeries, _>> = thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|&(k, n_max)| s.spawn(move || ratio_series(k, v, n_max, args.cap)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("ratio worker panicked")).collect()
    });
    let series = results.into_iter().collect::<Result<Vec<_>, _>>()?;

    if let Some(path) = &args.csv {
        let rows: Vec<_> = series.iter().flat_map(report::rows).collect();
        let mut buf = Vec::new();
        report::write_csv(&mut buf, &rows)?;
        write_output(path, &buf)?;
        if is_std(path) {
            return Ok(());
        }
    }
    println!("{:>5} {:>3} {:>12} {:>12} {:>8} {:>13} {:>8}", "k", "n", "read", "written", "rho", "min rho n>=3", "bound");
    for s in &series {
        let last = s.points.last().expect("at least one block");
        let min = s.min_rho_after_burn_in().map_or("-".to_string(), |r| format!("{r:.4}"));
        let bound_ok = s.blocks.iter().all(|b| b.bound_ok());
        println!(
            "{:>5} {:>3} {:>12} {:>12} {:>8.4} {:>13} {:>8}",
            s.k.k(),
            last.block,
            last.n_read,
            last.m_written,
            last.rho,
            min,
            if bound_ok { "ok" } else { "VIOLATED" }
        );
    }
    Ok(())
}

fn verify_cmd(args: &VerifyArgs) -> anyhow::Result<bool> {
    ensure!(args.k_min <= args.k_max, "--k-min exceeds --k-max");
    let cfg = VerifyConfig {
        k_min: args.k_min,
        k_max: args.k_max,
        n_max: args.n_max,
        words: args.words,
        max_len: args.max_len,
        seed: args.seed,
        ..VerifyConfig::default()
    };
    let checks = verify::run(&cfg)?;
    for c in &checks {
        match &c.failure {
            None => println!("PASS {} ({} cases)", c.name, c.cases),
            Some(why) => println!("FAIL {} ({} cases): {why}", c.name, c.cases),
        }
    }
    Ok(checks.iter().all(verify::Check::passed))
}

fn bound(args: &BoundArgs) -> anyhow::Result<()> {
    if args.k_min < 2 || args.k_min > args.k_max {
        bail!("need 2 <= --k-min <= --k-max");
    }
    println!("{:>5} {:>8} {:>8} {:>10}  condition", "k", "factor", "bound", "sufficient");
    for k in args.k_min..=args.k_max {
        let (sufficient, condition) = if k <= MAX_EXACT_K {
            let (lb, le, rb, re) = sufficiency_exponents(k);
            (sufficiency_exact(k)?.to_string(), format!("{lb}^{le} < {rb}^{re}"))
        } else {
            ("-".to_string(), String::new())
        };
        println!(
            "{k:>5} {:>8.5} {:>8.5} {sufficient:>10}  {condition}",
            ratio_bound_factor(k),
            ratio_bound(k)
        );
    }
    Ok(())
}

/// Runs a parsed command. `Ok(false)` means a check failed.
pub fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Gen(a) => gen(a)?,
        Command::Compress(a) => compress(a)?,
        Command::Decompress(a) => decompress_cmd(a)?,
        Command::Ratio(a) => ratio(a)?,
        Command::Verify(a) => return verify_cmd(a),
        Command::Bound(a) => bound(a)?,
    }
    Ok(true)
}

/// Exit status: 0 on success, 1 when verification fails, 2 on usage or IO errors.
pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

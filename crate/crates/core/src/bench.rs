//! Timing harness comparing the eight degree pipelines on a seeded random
//! workload.
//!
//! The workload is a stream of 64-bit words from SplitMix64 (state advanced
//! by `0x9e3779b97f4a7c15`, output mixed by the usual two multiply-xorshift
//! rounds). For `n >= 6` each run of `2^(n-6)` consecutive words is one truth
//! table. For `n < 6` each word is one table, truncated to its low `2^n` bits.
//!
//! Only the per-function algorithm chain is timed. Workload generation, mask
//! and sequence construction, and the unpacking needed by byte-wise chains
//! all happen outside the timed regions.

use std::time::{Duration, Instant};

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::degree::{Degree, Family, LayerTables, PipelineKind};
use crate::error::{check_range, Error, Result};
use crate::repr::{unpack_into, used_bits, word_count, MAX_VARS};

pub const DEFAULT_WORDS: usize = 10_000_000;
/// Word count of the full-size protocol.
pub const FULL_WORDS: usize = 1_000_000_000;
pub const DEFAULT_NVARS: [u32; 6] = [6, 8, 10, 12, 14, 16];
pub const DEFAULT_RUNS: usize = 5;

/// Byte budget for one block of unpacked functions in byte-wise runs.
const BYTE_BLOCK: usize = 8 << 20;

/// The first `word_count` words of the SplitMix64 stream seeded with `seed`.
pub fn generate(seed: u64, word_count: usize) -> Vec<u64> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    (0..word_count).map(|_| rng.next_u64()).collect()
}

/// Random truth tables of one variable count, fully materialized.
#[derive(Debug, Clone)]
pub struct Workload {
    seed: u64,
    n: u32,
    words: Vec<u64>,
}

impl Workload {
    /// Generates `word_count` words, rounded down to whole functions.
    pub fn new(seed: u64, word_count: usize, n: u32) -> Result<Self> {
        check_range(n, 1, MAX_VARS)?;
        let per = self::word_count(n);
        let usable = word_count - word_count % per;
        if usable == 0 {
            return Err(Error::InsufficientWords { words: word_count, n });
        }
        let mut words = generate(seed, usable);
        if n < 6 {
            let mask = used_bits(n);
            words.iter_mut().for_each(|w| *w &= mask);
        }
        Ok(Workload { seed, n, words })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn function_count(&self) -> usize {
        self.words.len() / word_count(self.n)
    }

    pub fn function(&self, i: usize) -> &[u64] {
        let per = word_count(self.n);
        &self.words[i * per..(i + 1) * per]
    }

    fn functions(&self) -> std::slice::ChunksExact<'_, u64> {
        self.words.chunks_exact(word_count(self.n))
    }
}

const CHECKSUM_SEED: u64 = 0xcbf2_9ce4_8422_2325;

/// Order-sensitive fold of one degree into a running checksum.
#[inline]
pub fn fold_checksum(acc: u64, degree: Degree) -> u64 {
    (acc ^ (degree.to_sentinel() + 1) as u64).wrapping_mul(0x0000_0100_0000_01b3)
}

/// Checksum of a sequence of degrees, in order.
pub fn checksum<I: IntoIterator<Item = Degree>>(degrees: I) -> u64 {
    degrees.into_iter().fold(CHECKSUM_SEED, fold_checksum)
}

/// One timed measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub pipeline: PipelineKind,
    pub n: u32,
    pub function_count: usize,
    pub seconds: f64,
    pub checksum: u64,
}

/// Times `kind` over every function of `workload` once.
pub fn run_pipeline(
    kind: PipelineKind,
    workload: &Workload,
    tables: &LayerTables,
) -> Result<BenchRow> {
    if tables.n() != workload.n {
        return Err(Error::Parse(format!(
            "layer tables for n = {} used with a workload of n = {}",
            tables.n(),
            workload.n
        )));
    }
    let (elapsed, checksum) = match kind.family() {
        Family::Bitwise => time_bitwise(workload, |words| kind.run_words(words, tables)),
        Family::Bytewise => time_bytewise(workload, |bytes| kind.run_bytes(bytes, tables)),
    };
    Ok(BenchRow {
        pipeline: kind,
        n: workload.n,
        function_count: workload.function_count(),
        seconds: elapsed.as_secs_f64(),
        checksum,
    })
}

/// Loop overhead of a family: the same traversal and checksum folding with
/// no algorithm in the loop body.
pub fn run_noop(family: Family, workload: &Workload) -> f64 {
    let elapsed = match family {
        Family::Bitwise => time_bitwise(workload, |w| Degree::Finite(w[0] as u32 & 1)),
        Family::Bytewise => time_bytewise(workload, |b| Degree::Finite(u32::from(b[0]))),
    }
    .0;
    elapsed.as_secs_f64()
}

fn time_bitwise(workload: &Workload, mut chain: impl FnMut(&mut [u64]) -> Degree) -> (Duration, u64) {
    let mut scratch = vec![0u64; word_count(workload.n)];
    let mut acc = CHECKSUM_SEED;
    let start = Instant::now();
    for f in workload.functions() {
        scratch.copy_from_slice(f);
        acc = fold_checksum(acc, chain(&mut scratch));
    }
    (start.elapsed(), std::hint::black_box(acc))
}

fn time_bytewise(workload: &Workload, mut chain: impl FnMut(&mut [u8]) -> Degree) -> (Duration, u64) {
    let size = 1usize << workload.n;
    let per_block = (BYTE_BLOCK / size).max(1);
    let per_fn = word_count(workload.n);
    let mut block = vec![0u8; per_block * size];
    let mut acc = CHECKSUM_SEED;
    let mut elapsed = Duration::ZERO;
    for words in workload.words.chunks(per_block * per_fn) {
        let count = words.len() / per_fn;
        let bytes = &mut block[..count * size];
        for (f, b) in words.chunks_exact(per_fn).zip(bytes.chunks_exact_mut(size)) {
            unpack_into(f, b);
        }
        let start = Instant::now();
        for b in bytes.chunks_exact_mut(size) {
            acc = fold_checksum(acc, chain(b));
        }
        elapsed += start.elapsed();
    }
    (elapsed, std::hint::black_box(acc))
}

/// Runs `kind` `runs` times. With three or more runs the fastest and slowest
/// are dropped and the rest averaged; otherwise all runs are averaged.
///
/// Panics if two runs disagree on the checksum.
pub fn run_repeated(
    kind: PipelineKind,
    workload: &Workload,
    tables: &LayerTables,
    runs: usize,
) -> Result<BenchRow> {
    let runs = runs.max(1);
    let mut rows = (0..runs)
        .map(|_| run_pipeline(kind, workload, tables))
        .collect::<Result<Vec<_>>>()?;
    assert!(
        rows.windows(2).all(|w| w[0].checksum == w[1].checksum),
        "{kind}: checksum differs between runs"
    );
    let mut times: Vec<f64> = rows.iter().map(|r| r.seconds).collect();
    times.sort_by(f64::total_cmp);
    let kept = if times.len() >= 3 {
        &times[1..times.len() - 1]
    } else {
        &times[..]
    };
    let mut row = rows.swap_remove(0);
    row.seconds = kept.iter().sum::<f64>() / kept.len() as f64;
    Ok(row)
}

/// Parameters of a benchmark sweep.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub seed: u64,
    pub words: usize,
    pub nvars: Vec<u32>,
    pub pipelines: Vec<PipelineKind>,
    pub runs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            seed: 0,
            words: DEFAULT_WORDS,
            nvars: DEFAULT_NVARS.to_vec(),
            pipelines: PipelineKind::ALL.to_vec(),
            runs: DEFAULT_RUNS,
        }
    }
}

/// Runs every configured pipeline at every configured `n`. One workload per
/// `n` is generated and shared by all pipelines.
pub fn run_sweep(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for &n in &config.nvars {
        let workload = Workload::new(config.seed, config.words, n)?;
        let tables = LayerTables::new(n)?;
        for &kind in &config.pipelines {
            rows.push(run_repeated(kind, &workload, &tables, config.runs)?);
        }
    }
    Ok(rows)
}

/// CSV with header `pipeline,n,functions,seconds,checksum`, rows ordered by
/// pipeline then `n`.
pub fn report(rows: &[BenchRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::EmptyReport);
    }
    let mut sorted: Vec<&BenchRow> = rows.iter().collect();
    sorted.sort_by_key(|r| (r.pipeline, r.n));
    let mut out = String::from("pipeline,n,functions,seconds,checksum\n");
    for r in sorted {
        out.push_str(&format!(
            "{},{},{},{:.3},{:016x}\n",
            r.pipeline, r.n, r.function_count, r.seconds, r.checksum
        ));
    }
    Ok(out)
}

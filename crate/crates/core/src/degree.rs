//! Algebraic degree extraction from ANF coefficients, and the combined
//! parity-check / transform / search pipelines.

use std::fmt;
use std::str::FromStr;

use crate::anft::{anf_oracle, anft_bytes_in_place, anft_words_in_place};
use crate::error::{check_range, Error, Result};
use crate::repr::{
    parity_of_bytes, parity_of_words, unpack_into, AnfVector, ByteTable, TruthTable, WORD_BITS,
};
use crate::wlo::{layer_mask, masks_direct, wlo_bucket, MaskSet, WloSequence};

/// Algebraic degree; the zero function has degree minus infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    /// Integer encoding with `-1` for minus infinity.
    pub fn to_sentinel(self) -> i64 {
        match self {
            Degree::NegInfinity => -1,
            Degree::Finite(k) => i64::from(k),
        }
    }

    pub fn from_sentinel(v: i64) -> Option<Self> {
        match v {
            -1 => Some(Degree::NegInfinity),
            0..=0xFFFF_FFFF => Some(Degree::Finite(v as u32)),
            _ => None,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(k) => write!(f, "{k}"),
        }
    }
}

/// Exhaustive search: the largest weight among indices with a set
/// coefficient. Always scans every entry.
pub fn deg_es(anf: &ByteTable) -> Degree {
    deg_es_bytes(anf.values())
}

#[inline]
pub(crate) fn deg_es_bytes(anf: &[u8]) -> Degree {
    let mut best: Option<u32> = None;
    for (i, &a) in anf.iter().enumerate() {
        if a != 0 {
            let w = i.count_ones();
            if best.is_none_or(|b| w > b) {
                best = Some(w);
            }
        }
    }
    best.map_or(Degree::NegInfinity, Degree::Finite)
}

/// Byte-wise WLO search: probes coefficients in reverse WLO order and stops
/// at the first set one.
///
/// Panics if `seq` is for a different variable count.
pub fn deg_wlo_bytewise(anf: &ByteTable, seq: &WloSequence) -> Degree {
    assert_eq!(anf.n(), seq.n(), "variable count mismatch");
    deg_wlo_bytes(anf.values(), seq)
}

#[inline]
pub(crate) fn deg_wlo_bytes(anf: &[u8], seq: &WloSequence) -> Degree {
    let order = seq.order();
    let starts = seq.layer_start();
    for k in (0..starts.len() - 1).rev() {
        for &i in order[starts[k]..starts[k + 1]].iter().rev() {
            if anf[i as usize] != 0 {
                return Degree::Finite(k as u32);
            }
        }
    }
    Degree::NegInfinity
}

/// [`deg_wlo_bytewise`] that also reports how many coefficients it probed.
/// Diagnostic only; the benchmark pipelines use the uncounted search.
pub fn deg_wlo_bytewise_counted(anf: &ByteTable, seq: &WloSequence) -> (Degree, usize) {
    assert_eq!(anf.n(), seq.n(), "variable count mismatch");
    let values = anf.values();
    let mut checks = 0;
    for (pos, &i) in seq.order().iter().enumerate().rev() {
        checks += 1;
        if values[i as usize] != 0 {
            return (Degree::Finite(seq.layer_of_position(pos)), checks);
        }
    }
    (Degree::NegInfinity, checks)
}

/// Bitwise WLO search with layer masks: for `k = n` down to 0, the first
/// layer whose mask meets the coefficients gives the degree.
///
/// Panics if `masks` is for a different variable count.
pub fn deg_wlo_bitwise(anf: &AnfVector, masks: &MaskSet) -> Degree {
    assert_eq!(anf.n(), masks.n(), "variable count mismatch");
    deg_masks_words(anf.words(), masks)
}

#[inline]
pub(crate) fn deg_masks_words(anf: &[u64], masks: &MaskSet) -> Degree {
    for k in (0..=masks.n()).rev() {
        if anf.iter().zip(masks.mask(k)).any(|(a, m)| a & m != 0) {
            return Degree::Finite(k);
        }
    }
    Degree::NegInfinity
}

/// Bitwise WLO search that builds each layer mask only when the search
/// reaches it. For variable counts too large for a whole [`MaskSet`].
pub fn deg_wlo_on_demand(anf: &AnfVector) -> Degree {
    let n = anf.n();
    for k in (0..=n).rev() {
        let mask = layer_mask(n, k).expect("k <= n <= MAX_VARS");
        if anf.words().iter().zip(&mask).any(|(a, m)| a & m != 0) {
            return Degree::Finite(k);
        }
    }
    Degree::NegInfinity
}

/// Check-bits WLO search: probes single bits of the packed coefficients in
/// reverse WLO order.
///
/// Panics if `seq` is for a different variable count.
pub fn deg_cb_wlo(anf: &AnfVector, seq: &WloSequence) -> Degree {
    assert_eq!(anf.n(), seq.n(), "variable count mismatch");
    deg_cb_words(anf.words(), seq)
}

#[inline]
pub(crate) fn deg_cb_words(anf: &[u64], seq: &WloSequence) -> Degree {
    let order = seq.order();
    let starts = seq.layer_start();
    for k in (0..starts.len() - 1).rev() {
        for &i in order[starts[k]..starts[k + 1]].iter().rev() {
            let i = i as usize;
            if (anf[i / WORD_BITS] >> (i % WORD_BITS)) & 1 != 0 {
                return Degree::Finite(k as u32);
            }
        }
    }
    Degree::NegInfinity
}

/// Search run on the packed coefficients after the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BitwiseTail {
    Wlo,
    CbWlo,
}

/// Search run on the byte-wise coefficients after the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BytewiseTail {
    Es,
    Wlo,
}

/// Bitwise method: odd weight means degree `n` and the transform is skipped;
/// otherwise transform and search.
pub fn method_bitwise(
    tt: &TruthTable,
    masks: &MaskSet,
    seq: &WloSequence,
    tail: BitwiseTail,
) -> Degree {
    assert!(
        tt.n() == masks.n() && tt.n() == seq.n(),
        "variable count mismatch"
    );
    let mut scratch = tt.words().to_vec();
    bitwise_chain(&mut scratch, tt.n(), masks, seq, true, tail)
}

/// Byte-wise method: odd weight means degree `n`; otherwise transform and
/// search.
pub fn method_bytewise(bytes: &ByteTable, seq: &WloSequence, tail: BytewiseTail) -> Degree {
    assert_eq!(bytes.n(), seq.n(), "variable count mismatch");
    let mut scratch = bytes.values().to_vec();
    bytewise_chain(&mut scratch, bytes.n(), seq, true, tail)
}

/// Degree from the brute-force ANF; `n <= 10`.
pub fn deg_oracle(bytes: &ByteTable) -> Result<Degree> {
    check_range(bytes.n(), 1, 10)?;
    let anf = anf_oracle(bytes);
    let best = anf
        .values()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a == 1)
        .map(|(i, _)| i.count_ones())
        .max();
    Ok(best.map_or(Degree::NegInfinity, Degree::Finite))
}

/// Runs a bitwise chain in place on `words` (which hold the truth table and
/// are overwritten by the coefficients unless the parity check exits early).
#[inline]
pub(crate) fn bitwise_chain(
    words: &mut [u64],
    n: u32,
    masks: &MaskSet,
    seq: &WloSequence,
    pc: bool,
    tail: BitwiseTail,
) -> Degree {
    if pc && parity_of_words(words) == 1 {
        return Degree::Finite(n);
    }
    anft_words_in_place(words, n);
    match tail {
        BitwiseTail::Wlo => deg_masks_words(words, masks),
        BitwiseTail::CbWlo => deg_cb_words(words, seq),
    }
}

#[inline]
pub(crate) fn bytewise_chain(
    values: &mut [u8],
    n: u32,
    seq: &WloSequence,
    pc: bool,
    tail: BytewiseTail,
) -> Degree {
    if pc && parity_of_bytes(values) == 1 {
        return Degree::Finite(n);
    }
    anft_bytes_in_place(values);
    match tail {
        BytewiseTail::Es => deg_es_bytes(values),
        BytewiseTail::Wlo => deg_wlo_bytes(values, seq),
    }
}

/// WLO sequence and masks for one variable count, built once and shared.
#[derive(Debug, Clone)]
pub struct LayerTables {
    pub seq: WloSequence,
    pub masks: MaskSet,
}

impl LayerTables {
    pub fn new(n: u32) -> Result<Self> {
        Ok(LayerTables {
            seq: wlo_bucket(n)?,
            masks: masks_direct(n)?,
        })
    }

    pub fn n(&self) -> u32 {
        self.seq.n()
    }
}

/// Representation a pipeline works on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Bytewise,
    Bitwise,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Bytewise => "bytewise",
            Family::Bitwise => "bitwise",
        }
    }
}

/// The eight algorithm chains compared by the benchmark.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PipelineKind {
    ByteAnftEs,
    ByteAnftWlo,
    BytePcAnftEs,
    BytePcAnftWlo,
    BitAnftWlo,
    BitAnftCbWlo,
    BitPcAnftWlo,
    BitPcAnftCbWlo,
}

impl PipelineKind {
    pub const ALL: [PipelineKind; 8] = [
        PipelineKind::ByteAnftEs,
        PipelineKind::ByteAnftWlo,
        PipelineKind::BytePcAnftEs,
        PipelineKind::BytePcAnftWlo,
        PipelineKind::BitAnftWlo,
        PipelineKind::BitAnftCbWlo,
        PipelineKind::BitPcAnftWlo,
        PipelineKind::BitPcAnftCbWlo,
    ];

    pub fn family(self) -> Family {
        use PipelineKind::*;
        match self {
            ByteAnftEs | ByteAnftWlo | BytePcAnftEs | BytePcAnftWlo => Family::Bytewise,
            _ => Family::Bitwise,
        }
    }

    pub fn uses_parity_check(self) -> bool {
        use PipelineKind::*;
        matches!(
            self,
            BytePcAnftEs | BytePcAnftWlo | BitPcAnftWlo | BitPcAnftCbWlo
        )
    }

    /// Chain label, e.g. `PC+ANFT+CBWLO`.
    pub fn chain(self) -> &'static str {
        use PipelineKind::*;
        match self {
            ByteAnftEs => "ANFT+ES",
            ByteAnftWlo | BitAnftWlo => "ANFT+WLO",
            BytePcAnftEs => "PC+ANFT+ES",
            BytePcAnftWlo | BitPcAnftWlo => "PC+ANFT+WLO",
            BitAnftCbWlo => "ANFT+CBWLO",
            BitPcAnftCbWlo => "PC+ANFT+CBWLO",
        }
    }

    fn bitwise_tail(self) -> BitwiseTail {
        match self {
            PipelineKind::BitAnftCbWlo | PipelineKind::BitPcAnftCbWlo => BitwiseTail::CbWlo,
            _ => BitwiseTail::Wlo,
        }
    }

    fn bytewise_tail(self) -> BytewiseTail {
        match self {
            PipelineKind::ByteAnftEs | PipelineKind::BytePcAnftEs => BytewiseTail::Es,
            _ => BytewiseTail::Wlo,
        }
    }

    /// Degree of one function given as truth-table words, using `scratch`
    /// buffers for the in-place transform. Byte-wise chains expect the
    /// function already unpacked into `bytes`.
    #[inline]
    pub(crate) fn run_words(self, words: &mut [u64], tables: &LayerTables) -> Degree {
        bitwise_chain(
            words,
            tables.n(),
            &tables.masks,
            &tables.seq,
            self.uses_parity_check(),
            self.bitwise_tail(),
        )
    }

    #[inline]
    pub(crate) fn run_bytes(self, bytes: &mut [u8], tables: &LayerTables) -> Degree {
        bytewise_chain(
            bytes,
            tables.n(),
            &tables.seq,
            self.uses_parity_check(),
            self.bytewise_tail(),
        )
    }

    /// Degree of `tt` through this chain.
    pub fn degree(self, tt: &TruthTable, tables: &LayerTables) -> Degree {
        assert_eq!(tt.n(), tables.n(), "variable count mismatch");
        match self.family() {
            Family::Bitwise => self.run_words(&mut tt.words().to_vec(), tables),
            Family::Bytewise => {
                let mut bytes = vec![0u8; tt.len()];
                unpack_into(tt.words(), &mut bytes);
                self.run_bytes(&mut bytes, tables)
            }
        }
    }
}

impl fmt::Display for PipelineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.family().name(), self.chain())
    }
}

impl FromStr for PipelineKind {
    type Err = Error;

    /// Accepts the display form, e.g. `bitwise:PC+ANFT+WLO` (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_lowercase().replace(' ', "");
        PipelineKind::ALL
            .into_iter()
            .find(|k| k.to_string().to_ascii_lowercase() == wanted)
            .ok_or_else(|| Error::Parse(format!("unknown pipeline {s:?}")))
    }
}

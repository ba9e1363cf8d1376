//! Truth-table representations.
//!
//! A function of `n` variables has `2^n` values `f_0 .. f_{2^n-1}`, where
//! `f_i` is the value at the `i`-th input vector in lexicographic order
//! (`x_1` is the most significant digit of `i`).
//!
//! Two layouts are provided:
//!
//! * [`ByteTable`]: one byte (0 or 1) per value.
//! * [`Packed`] (aliased as [`TruthTable`] and [`AnfVector`]): values packed
//!   into 64-bit words. Index `i` lives in word `i / 64` at the bit of numeric
//!   weight `2^(i % 64)`. For `n < 6` a single word is used and the bits above
//!   `2^n` are kept at zero.

use std::fmt;
use std::io::{Read, Write};
use std::marker::PhantomData;

use crate::error::{check_range, Error, Result};

/// Largest supported variable count.
pub const MAX_VARS: u32 = 30;

pub const WORD_BITS: usize = 64;

/// Number of 64-bit words holding a table of `n` variables.
#[inline]
pub const fn word_count(n: u32) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Mask of the bits of word 0 that carry values when `n < 6`.
#[inline]
pub(crate) const fn used_bits(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

pub(crate) fn check_vars(n: u32) -> Result<()> {
    check_range(n, 1, MAX_VARS)
}

/// Marker for packed truth-table values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Values {}

/// Marker for packed ANF coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {}

/// A bit vector of length `2^n` packed into 64-bit words.
///
/// The marker `K` separates truth tables from ANF coefficient vectors; both
/// share the same layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Packed<K> {
    n: u32,
    words: Vec<u64>,
    _kind: PhantomData<K>,
}

/// Packed truth table `TT(f)`.
pub type TruthTable = Packed<Values>;

/// Packed ANF coefficient vector `A_f`.
pub type AnfVector = Packed<Coefficients>;

impl<K> Packed<K> {
    pub fn new(n: u32, words: Vec<u64>) -> Result<Self> {
        check_vars(n)?;
        if words.len() != word_count(n) {
            return Err(Error::Length {
                expected: word_count(n),
                actual: words.len(),
                unit: "words",
            });
        }
        if words[0] & !used_bits(n) != 0 {
            return Err(Error::UnusedBitsSet { n });
        }
        Ok(Self::from_raw(n, words))
    }

    pub fn zeros(n: u32) -> Result<Self> {
        check_vars(n)?;
        Ok(Self::from_raw(n, vec![0; word_count(n)]))
    }

    pub(crate) fn from_raw(n: u32, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(n));
        debug_assert_eq!(words[0] & !used_bits(n), 0);
        Packed {
            n,
            words,
            _kind: PhantomData,
        }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of values, `2^n`.
    #[inline]
    pub fn len(&self) -> usize {
        1 << self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn into_words(self) -> Vec<u64> {
        self.words
    }

    #[inline]
    pub fn bit(&self, i: usize) -> bool {
        assert!(i < self.len(), "index {i} out of range for n = {}", self.n);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// Reinterprets the words under another marker, e.g. a packed byte-wise
    /// ANF as an [`AnfVector`].
    pub fn cast<L>(self) -> Packed<L> {
        Packed::from_raw(self.n, self.words)
    }

    /// Parses a string of `2^n` characters `'0'`/`'1'`, character `j` being
    /// value `j`. The variable count is taken from the length.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let len = s.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Parse(format!(
                "bit string length {len} is not 2^n for n >= 1"
            )));
        }
        let n = len.trailing_zeros();
        check_vars(n)?;
        let mut words = vec![0u64; word_count(n)];
        for (i, c) in s.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => words[i / WORD_BITS] |= 1 << (i % WORD_BITS),
                _ => {
                    return Err(Error::Parse(format!(
                        "character {:?} at position {i} is not 0 or 1",
                        c as char
                    )))
                }
            }
        }
        Ok(Self::from_raw(n, words))
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len())
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    /// Parses hexadecimal words separated by commas and/or whitespace, word 0
    /// first. A `0x` prefix on each word is optional.
    pub fn from_hex_words(n: u32, s: &str) -> Result<Self> {
        check_vars(n)?;
        let words = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                let digits = t
                    .strip_prefix("0x")
                    .or_else(|| t.strip_prefix("0X"))
                    .unwrap_or(t);
                u64::from_str_radix(digits, 16)
                    .map_err(|e| Error::Parse(format!("bad hex word {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, words)
    }

    /// Decodes the binary file format: little-endian 64-bit words, word `i`
    /// at byte offset `8 i`.
    pub fn from_le_bytes(n: u32, bytes: &[u8]) -> Result<Self> {
        check_vars(n)?;
        let expected = 8 * word_count(n);
        if bytes.len() != expected {
            return Err(Error::Length {
                expected,
                actual: bytes.len(),
                unit: "bytes",
            });
        }
        let words = bytes
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Self::new(n, words)
    }

    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.words.iter().flat_map(|w| w.to_le_bytes()).collect()
    }

    pub fn read_from<R: Read>(n: u32, mut reader: R) -> std::io::Result<Result<Self>> {
        let mut buf = Vec::new();
        reader.read_to_end(&mut buf)?;
        Ok(Self::from_le_bytes(n, &buf))
    }

    pub fn write_to<W: Write>(&self, mut writer: W) -> std::io::Result<()> {
        writer.write_all(&self.to_le_bytes())
    }
}

impl<K> fmt::LowerHex for Packed<K> {
    /// Words in ascending order, space separated. Tables with fewer than 64
    /// values print only `2^n / 4` digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = hex_digits(self.n);
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if f.alternate() {
                write!(f, "0x{w:0digits$x}")?;
            } else {
                write!(f, "{w:0digits$x}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn hex_digits(n: u32) -> usize {
    ((1usize << n.min(6)) / 4).max(1)
}

/// One byte per value; each byte is 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ByteTable {
    n: u32,
    values: Vec<u8>,
}

impl ByteTable {
    pub fn new(n: u32, values: Vec<u8>) -> Result<Self> {
        check_vars(n)?;
        if values.len() != 1 << n {
            return Err(Error::Length {
                expected: 1 << n,
                actual: values.len(),
                unit: "bytes",
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v > 1) {
            return Err(Error::NotABit { index, value });
        }
        Ok(ByteTable { n, values })
    }

    pub fn zeros(n: u32) -> Result<Self> {
        check_vars(n)?;
        Ok(ByteTable {
            n,
            values: vec![0; 1 << n],
        })
    }

    pub(crate) fn from_raw(n: u32, values: Vec<u8>) -> Self {
        debug_assert_eq!(values.len(), 1 << n);
        ByteTable { n, values }
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u8> {
        self.values
    }
}

/// Packs a byte table into 64-bit words.
pub fn pack(bytes: &ByteTable) -> TruthTable {
    let mut words = vec![0u64; word_count(bytes.n)];
    pack_into(&bytes.values, &mut words);
    Packed::from_raw(bytes.n, words)
}

/// Expands packed words into one byte per value.
pub fn unpack<K>(tt: &Packed<K>) -> ByteTable {
    let mut values = vec![0u8; tt.len()];
    unpack_into(&tt.words, &mut values);
    ByteTable::from_raw(tt.n, values)
}

pub(crate) fn pack_into(values: &[u8], words: &mut [u64]) {
    words.fill(0);
    for (word, chunk) in words.iter_mut().zip(values.chunks(WORD_BITS)) {
        *word = chunk
            .iter()
            .enumerate()
            .fold(0, |acc, (b, &v)| acc | (u64::from(v) << b));
    }
}

pub(crate) fn unpack_into(words: &[u64], values: &mut [u8]) {
    for (chunk, &word) in values.chunks_mut(WORD_BITS).zip(words) {
        for (b, v) in chunk.iter_mut().enumerate() {
            *v = ((word >> b) & 1) as u8;
        }
    }
}

/// Hamming weight by summing bytes.
pub fn weight_bytes(bytes: &ByteTable) -> u64 {
    weight_of_bytes(&bytes.values)
}

#[inline]
pub(crate) fn weight_of_bytes(values: &[u8]) -> u64 {
    values.iter().map(|&v| u64::from(v)).sum()
}

/// Hamming weight by per-word population count.
pub fn weight_words<K>(tt: &Packed<K>) -> u64 {
    tt.words.iter().map(|w| u64::from(w.count_ones())).sum()
}

/// Parity of the weight of a packed table.
///
/// All words are XOR-folded into one accumulator, which is then folded onto
/// its lowest bit by halving shifts `32, 16, .., 1`.
pub fn parity_check<K>(tt: &Packed<K>) -> u8 {
    parity_of_words(&tt.words)
}

#[inline]
pub(crate) fn parity_of_words(words: &[u64]) -> u8 {
    let mut sum = words.iter().fold(0u64, |acc, w| acc ^ w);
    let mut shift = 32;
    while shift > 0 {
        sum ^= sum >> shift;
        shift >>= 1;
    }
    (sum & 1) as u8
}

/// Parity of the weight of a byte table.
pub fn parity_check_bytes(bytes: &ByteTable) -> u8 {
    parity_of_bytes(&bytes.values)
}

#[inline]
pub(crate) fn parity_of_bytes(values: &[u8]) -> u8 {
    (weight_of_bytes(values) & 1) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bytes(n: u32, ones: &[usize]) -> ByteTable {
        let mut v = vec![0u8; 1 << n];
        for &i in ones {
            v[i] = 1;
        }
        ByteTable::new(n, v).unwrap()
    }

    #[test]
    fn pack_examples() {
        assert_eq!(pack(&ByteTable::new(2, vec![1; 4]).unwrap()).words(), &[0xF]);
        assert_eq!(pack(&ByteTable::zeros(6).unwrap()).words(), &[0]);
        assert_eq!(pack(&bytes(7, &[64])).words(), &[0, 1]);
    }

    #[test]
    fn unpack_examples() {
        let t = TruthTable::new(2, vec![0xF]).unwrap();
        assert_eq!(unpack(&t).values(), &[1, 1, 1, 1]);
        let t = TruthTable::new(6, vec![0]).unwrap();
        assert_eq!(unpack(&t).values(), &[0u8; 64][..]);
        let t = TruthTable::new(7, vec![0, 1]).unwrap();
        assert_eq!(unpack(&t), bytes(7, &[64]));
    }

    #[test]
    fn byte_table_rejects_bad_input() {
        assert_eq!(
            ByteTable::new(2, vec![0, 1, 2, 0]),
            Err(Error::NotABit { index: 2, value: 2 })
        );
        assert!(matches!(
            ByteTable::new(2, vec![0, 1, 1]),
            Err(Error::Length { expected: 4, actual: 3, .. })
        ));
        assert!(matches!(
            ByteTable::new(31, vec![]),
            Err(Error::VariableCount { n: 31, .. })
        ));
        assert!(matches!(
            ByteTable::new(0, vec![1]),
            Err(Error::VariableCount { n: 0, .. })
        ));
    }

    #[test]
    fn packed_rejects_bad_input() {
        assert_eq!(
            TruthTable::new(2, vec![0x1F]),
            Err(Error::UnusedBitsSet { n: 2 })
        );
        assert!(matches!(
            TruthTable::new(8, vec![0; 3]),
            Err(Error::Length { expected: 4, actual: 3, .. })
        ));
    }

    #[test]
    fn weights() {
        assert_eq!(weight_bytes(&ByteTable::zeros(6).unwrap()), 0);
        assert_eq!(weight_bytes(&ByteTable::new(6, vec![1; 64]).unwrap()), 64);
        assert_eq!(weight_bytes(&bytes(4, &[1, 2, 4])), 3);
        assert_eq!(weight_words(&TruthTable::new(6, vec![u64::MAX]).unwrap()), 64);
        assert_eq!(weight_words(&TruthTable::new(7, vec![0, 1]).unwrap()), 1);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_check(&TruthTable::zeros(9).unwrap()), 0);
        assert_eq!(parity_check(&TruthTable::new(6, vec![1]).unwrap()), 1);
        assert_eq!(
            parity_check(&TruthTable::new(7, vec![u64::MAX, 1]).unwrap()),
            1
        );
        assert_eq!(parity_check_bytes(&ByteTable::zeros(3).unwrap()), 0);
        assert_eq!(parity_check_bytes(&bytes(3, &[5])), 1);
    }

    #[test]
    fn parity_exhaustive_small() {
        for n in 1..=4u32 {
            for tt in 0..(1u64 << (1 << n)) {
                let t = TruthTable::new(n, vec![tt]).unwrap();
                let expected = (tt.count_ones() % 2) as u8;
                assert_eq!(parity_check(&t), expected);
                assert_eq!(weight_words(&t), u64::from(tt.count_ones()));
                assert_eq!(parity_check_bytes(&unpack(&t)), expected);
            }
        }
    }

    #[test]
    fn text_and_hex_formats() {
        let t = TruthTable::from_bit_str("0001").unwrap();
        assert_eq!((t.n(), t.words()), (2, &[0x8u64][..]));
        assert_eq!(t.to_bit_string(), "0001");
        assert!(TruthTable::from_bit_str("000").is_err());
        assert!(TruthTable::from_bit_str("0").is_err());
        assert!(TruthTable::from_bit_str("0021").is_err());

        let t = TruthTable::from_hex_words(7, "0x0, 0000000000000001").unwrap();
        assert_eq!(t.words(), &[0, 1]);
        assert_eq!(format!("{t:x}"), "0000000000000000 0000000000000001");
        assert_eq!(format!("{:#x}", TruthTable::new(3, vec![0x16]).unwrap()), "0x16");
        assert!(matches!(
            TruthTable::from_hex_words(7, "1"),
            Err(Error::Length { expected: 2, actual: 1, .. })
        ));
        assert!(matches!(
            TruthTable::from_hex_words(6, "xyz"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn binary_format() {
        let t = TruthTable::new(7, vec![0x0102030405060708, 0xFF]).unwrap();
        let raw = t.to_le_bytes();
        assert_eq!(raw.len(), 16);
        assert_eq!(raw[0], 0x08);
        assert_eq!(raw[8], 0xFF);
        assert_eq!(TruthTable::from_le_bytes(7, &raw).unwrap(), t);
        assert!(matches!(
            TruthTable::from_le_bytes(7, &raw[..8]),
            Err(Error::Length { expected: 16, actual: 8, .. })
        ));
    }
}

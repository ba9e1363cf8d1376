//! The ANF (Möbius) transform over GF(2).
//!
//! Coefficient `a_g` of the monomial indexed by `g` is the XOR of `f_b` over
//! all `b` whose set bits are a subset of those of `g`. The transform is its
//! own inverse, so the same routines map coefficients back to values.

use crate::repr::{word_count, AnfVector, ByteTable, TruthTable, WORD_BITS};

/// In-word stage masks: `STAGE_MASKS[d]` has bit `b` set iff bit `d` of `b`
/// is set.
pub(crate) const STAGE_MASKS: [u64; 6] = stage_masks();

const fn stage_masks() -> [u64; 6] {
    let mut masks = [0u64; 6];
    let mut d = 0;
    while d < 6 {
        let mut b = 0;
        while b < WORD_BITS {
            if b & (1 << d) != 0 {
                masks[d] |= 1 << b;
            }
            b += 1;
        }
        d += 1;
    }
    masks
}

/// Byte-wise transform, one value per byte.
pub fn anft_bytewise(bytes: &ByteTable) -> ByteTable {
    let mut values = bytes.values().to_vec();
    anft_bytes_in_place(&mut values);
    ByteTable::from_raw(bytes.n(), values)
}

/// In-place byte-wise butterfly; `values.len()` must be a power of two.
pub(crate) fn anft_bytes_in_place(values: &mut [u8]) {
    debug_assert!(values.len().is_power_of_two());
    let mut step = 1;
    while step < values.len() {
        for block in values.chunks_exact_mut(2 * step) {
            let (lo, hi) = block.split_at_mut(step);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
        step <<= 1;
    }
}

/// Bitwise transform on 64-bit words.
pub fn anft_bitwise(tt: &TruthTable) -> AnfVector {
    let mut words = tt.words().to_vec();
    anft_words_in_place(&mut words, tt.n());
    AnfVector::from_raw(tt.n(), words)
}

/// In-place bitwise transform of a table of `n` variables.
///
/// Stages below 6 work inside each word with a shift and a constant mask;
/// the remaining stages XOR whole words.
pub(crate) fn anft_words_in_place(words: &mut [u64], n: u32) {
    debug_assert_eq!(words.len(), word_count(n));
    let inner = n.min(6) as usize;
    for w in words.iter_mut() {
        let mut x = *w;
        for (d, &mask) in STAGE_MASKS.iter().enumerate().take(inner) {
            x ^= (x << (1 << d)) & mask;
        }
        *w = x;
    }
    let mut step = 1;
    while step < words.len() {
        for block in words.chunks_exact_mut(2 * step) {
            let (lo, hi) = block.split_at_mut(step);
            for (h, l) in hi.iter_mut().zip(lo.iter()) {
                *h ^= *l;
            }
        }
        step <<= 1;
    }
}

/// Direct ANF from the definition: every coefficient is an XOR over all
/// subset indices, `O(4^n)` work with no sharing between coefficients.
/// Meant as a test oracle for small `n`.
pub fn anf_oracle(bytes: &ByteTable) -> ByteTable {
    let values = bytes.values();
    let size = values.len();
    let anf = (0..size)
        .map(|g| {
            (0..size)
                .filter(|b| b & !g == 0)
                .fold(0u8, |acc, b| acc ^ values[b])
        })
        .collect();
    ByteTable::from_raw(bytes.n(), anf)
}

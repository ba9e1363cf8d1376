//! Weight-lexicographic order (WLO) of `{0,1}^n` and layer masks.
//!
//! The WLO sequence lists serial numbers `0 .. 2^n-1` grouped by population
//! count (the layers), each layer in increasing order. For `n = 3` it is
//! `0, 1, 2, 4, 3, 5, 6, 7`.

use crate::error::{check_range, Error, Result};
use crate::repr::{used_bits, word_count, MAX_VARS, WORD_BITS};

/// Largest `n` for which a whole sequence or [`MaskSet`] is materialized.
/// Single layers are available up to [`MAX_VARS`] through [`layer_mask`].
pub const MAX_WLO_VARS: u32 = 26;

fn check_wlo_vars(n: u32) -> Result<()> {
    check_range(n, 1, MAX_WLO_VARS)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WloSequence {
    n: u32,
    order: Vec<u32>,
    /// `layer_start[k]` is the position of the first member of layer `k`;
    /// `layer_start[n + 1] == 2^n`.
    layer_start: Vec<usize>,
}

impl WloSequence {
    fn from_layers(n: u32, layers: Vec<Vec<u32>>) -> Self {
        let mut layer_start = Vec::with_capacity(n as usize + 2);
        let mut order = Vec::with_capacity(1 << n);
        for layer in layers {
            layer_start.push(order.len());
            order.extend(layer);
        }
        layer_start.push(order.len());
        WloSequence {
            n,
            order,
            layer_start,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn layer_start(&self) -> &[usize] {
        &self.layer_start
    }

    /// Members of layer `k`, in increasing order.
    pub fn layer(&self, k: u32) -> &[u32] {
        let k = k as usize;
        &self.order[self.layer_start[k]..self.layer_start[k + 1]]
    }

    /// Layer containing sequence position `p`.
    pub fn layer_of_position(&self, p: usize) -> u32 {
        assert!(p < self.order.len());
        (self.layer_start.partition_point(|&s| s <= p) - 1) as u32
    }
}

/// Bucket route: scan `0 .. 2^n` once, dropping each index into the bucket of
/// its weight.
pub fn wlo_bucket(n: u32) -> Result<WloSequence> {
    check_wlo_vars(n)?;
    let mut buckets: Vec<Vec<u32>> = (0..=n)
        .map(|k| Vec::with_capacity(binomial(n, k) as usize))
        .collect();
    for i in 0..(1u32 << n) {
        buckets[i.count_ones() as usize].push(i);
    }
    Ok(WloSequence::from_layers(n, buckets))
}

/// Recursive route: layer `k` of `n` variables is layer `k` of `n - 1`
/// variables followed by layer `k - 1` of `n - 1` variables shifted up by
/// `2^(n-1)`.
pub fn wlo_recursive(n: u32) -> Result<WloSequence> {
    check_wlo_vars(n)?;
    let mut layers: Vec<Vec<u32>> = vec![vec![0], vec![1]];
    for m in 2..=n {
        let high = 1u32 << (m - 1);
        let next = (0..=m as usize)
            .map(|k| {
                let mut layer = layers.get(k).cloned().unwrap_or_default();
                if k > 0 {
                    layer.extend(layers[k - 1].iter().map(|&i| i + high));
                }
                layer
            })
            .collect();
        layers = next;
    }
    Ok(WloSequence::from_layers(n, layers))
}

/// The `n + 1` characteristic layer masks `m_{n,0} .. m_{n,n}`, each
/// `word_count(n)` words long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaskSet {
    n: u32,
    stride: usize,
    words: Vec<u64>,
}

impl MaskSet {
    /// Builds a mask set from explicit words, checking only the shape.
    pub fn from_masks(n: u32, masks: Vec<Vec<u64>>) -> Result<Self> {
        check_wlo_vars(n)?;
        let stride = word_count(n);
        if masks.len() != n as usize + 1 {
            return Err(Error::Length {
                expected: n as usize + 1,
                actual: masks.len(),
                unit: "masks",
            });
        }
        if let Some(bad) = masks.iter().find(|m| m.len() != stride) {
            return Err(Error::Length {
                expected: stride,
                actual: bad.len(),
                unit: "words",
            });
        }
        Ok(MaskSet {
            n,
            stride,
            words: masks.concat(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Words of `m_{n,k}`.
    #[inline]
    pub fn mask(&self, k: u32) -> &[u64] {
        let start = k as usize * self.stride;
        &self.words[start..start + self.stride]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u64]> + '_ {
        self.words.chunks_exact(self.stride)
    }
}

/// Sets, for each layer, the bits named by the members of that layer.
pub fn masks_from_wlo(seq: &WloSequence) -> MaskSet {
    let n = seq.n;
    let stride = word_count(n);
    let mut words = vec![0u64; (n as usize + 1) * stride];
    for k in 0..=n {
        let mask = &mut words[k as usize * stride..(k as usize + 1) * stride];
        for &i in seq.layer(k) {
            let i = i as usize;
            mask[i / WORD_BITS] |= 1 << (i % WORD_BITS);
        }
    }
    MaskSet { n, stride, words }
}

/// Builds every mask straight from population counts, without a sequence.
pub fn masks_direct(n: u32) -> Result<MaskSet> {
    check_wlo_vars(n)?;
    let stride = word_count(n);
    let inner = in_word_layers(n);
    let mut words = vec![0u64; (n as usize + 1) * stride];
    for k in 0..=n {
        fill_layer(n, k, &inner, &mut words[k as usize * stride..][..stride]);
    }
    Ok(MaskSet { n, stride, words })
}

/// A single mask `m_{n,k}`, for any supported `n`.
pub fn layer_mask(n: u32, k: u32) -> Result<Vec<u64>> {
    check_range(n, 1, MAX_VARS)?;
    if k > n {
        return Err(Error::DegreeOutOfRange { n, k });
    }
    let mut mask = vec![0u64; word_count(n)];
    fill_layer(n, k, &in_word_layers(n), &mut mask);
    Ok(mask)
}

/// `inner[j]` marks the in-word bit positions of weight `j`, restricted to
/// the positions a table of `n` variables uses.
fn in_word_layers(n: u32) -> [u64; 7] {
    let mut inner = [0u64; 7];
    for b in 0..WORD_BITS {
        inner[(b as u64).count_ones() as usize] |= 1 << b;
    }
    inner.map(|m| m & used_bits(n))
}

fn fill_layer(n: u32, k: u32, inner: &[u64; 7], out: &mut [u64]) {
    debug_assert_eq!(out.len(), word_count(n));
    // index = 64 w + b, so wt(index) = wt(w) + wt(b)
    for (w, word) in out.iter_mut().enumerate() {
        *word = k
            .checked_sub(w.count_ones())
            .and_then(|j| inner.get(j as usize))
            .copied()
            .unwrap_or(0);
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    (0..k).fold(1u64, |acc, i| acc * (n as u64 - i) / (i + 1))
}

/// Comma-separated serial numbers, e.g. `0, 1, 2, 4, 3, 5, 6, 7`.
pub fn format_sequence(seq: &WloSequence) -> String {
    seq.order
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// One line per layer (layer 0 first), words as space-separated hex.
pub fn format_masks(masks: &MaskSet) -> String {
    let digits = crate::repr::hex_digits(masks.n);
    let mut out = String::new();
    for mask in masks.iter() {
        let line: Vec<String> = mask.iter().map(|w| format!("0x{w:0digits$x}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE_1: [&[u32]; 4] = [
        &[0, 1],
        &[0, 1, 2, 3],
        &[0, 1, 2, 4, 3, 5, 6, 7],
        &[0, 1, 2, 4, 8, 3, 5, 6, 9, 10, 12, 7, 11, 13, 14, 15],
    ];

    #[test]
    fn table_one_both_routes() {
        for (i, expected) in TABLE_1.iter().enumerate() {
            let n = i as u32 + 1;
            assert_eq!(wlo_bucket(n).unwrap().order(), *expected);
            assert_eq!(wlo_recursive(n).unwrap().order(), *expected);
        }
        assert_eq!(wlo_recursive(4).unwrap().layer(2), &[3, 5, 6, 9, 10, 12]);
    }

    #[test]
    fn routes_agree() {
        for n in 1..=12 {
            let a = wlo_bucket(n).unwrap();
            let b = wlo_recursive(n).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.layer_start()[n as usize + 1], 1 << n);
            for k in 0..=n {
                let layer = a.layer(k);
                assert_eq!(layer.len() as u64, binomial(n, k));
                assert!(layer.iter().all(|i| i.count_ones() == k));
                assert!(layer.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }

    #[test]
    fn layer_of_position() {
        let s = wlo_bucket(4).unwrap();
        let layers: Vec<u32> = (0..16).map(|p| s.layer_of_position(p)).collect();
        assert_eq!(layers, [0, 1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 3, 4]);
    }

    #[test]
    fn out_of_range() {
        assert!(wlo_bucket(0).is_err());
        assert!(wlo_recursive(27).is_err());
        assert!(masks_direct(27).is_err());
        assert!(layer_mask(31, 0).is_err());
        assert!(layer_mask(4, 5).is_err());
    }

    #[test]
    fn mask_examples() {
        let m = masks_from_wlo(&wlo_bucket(3).unwrap());
        assert_eq!(m.mask(0), &[0x01]);
        assert_eq!(m.mask(1), &[0x16]);
        assert_eq!(m.mask(3), &[0x80]);
        let d = masks_direct(6).unwrap();
        assert_eq!(d.mask(6), &[0x8000_0000_0000_0000]);
        assert_eq!(d.iter().fold(0, |acc, m| acc | m[0]), u64::MAX);
        assert_eq!(masks_direct(7).unwrap(), masks_from_wlo(&wlo_bucket(7).unwrap()));
    }

    #[test]
    fn masks_routes_agree_and_partition() {
        for n in 1..=16 {
            let direct = masks_direct(n).unwrap();
            assert_eq!(direct, masks_from_wlo(&wlo_bucket(n).unwrap()), "n={n}");
            for w in 0..word_count(n) {
                let mut union = 0u64;
                for k in 0..=n {
                    let word = direct.mask(k)[w];
                    assert_eq!(union & word, 0);
                    union |= word;
                }
                assert_eq!(union, used_bits(n));
            }
            for k in 0..=n {
                assert_eq!(layer_mask(n, k).unwrap(), direct.mask(k));
            }
        }
    }

    #[test]
    fn formatting() {
        assert_eq!(format_sequence(&wlo_bucket(3).unwrap()), "0, 1, 2, 4, 3, 5, 6, 7");
        assert_eq!(format_sequence(&wlo_bucket(1).unwrap()), "0, 1");
        let lines = format_masks(&masks_direct(3).unwrap());
        assert_eq!(lines, "0x01\n0x16\n0x68\n0x80\n");
    }

    #[test]
    fn from_masks_checks_shape() {
        assert!(MaskSet::from_masks(3, vec![vec![0]; 3]).is_err());
        assert!(MaskSet::from_masks(7, vec![vec![0]; 8]).is_err());
        let m = MaskSet::from_masks(3, vec![vec![1], vec![0x16], vec![0x68], vec![0x80]]).unwrap();
        assert_eq!(m, masks_direct(3).unwrap());
    }
}

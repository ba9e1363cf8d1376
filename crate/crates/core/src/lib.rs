//! Algebraic degree of Boolean functions from their truth tables.
//!
//! The combined method first checks the parity of the truth-table weight
//! (odd weight means the degree is `n`), and only for even weight computes
//! the algebraic normal form and searches its coefficients in
//! weight-lexicographic order, highest layer first. Both a byte-per-value
//! and a 64-bit-word implementation are provided.
//!
//! ```
//! use algdeg::{method_bitwise, BitwiseTail, Degree, LayerTables, TruthTable};
//!
//! let tables = LayerTables::new(2).unwrap();
//! let and = TruthTable::from_bit_str("0001").unwrap();
//! let degree = method_bitwise(&and, &tables.masks, &tables.seq, BitwiseTail::Wlo);
//! assert_eq!(degree, Degree::Finite(2));
//! ```

pub mod anft;
pub mod bench;
pub mod degree;
pub mod distribution;
mod error;
pub mod repr;
pub mod verify;
pub mod wlo;

pub use anft::{anf_oracle, anft_bitwise, anft_bytewise};
pub use degree::{
    deg_cb_wlo, deg_es, deg_oracle, deg_wlo_bitwise, deg_wlo_bytewise,
    deg_wlo_bytewise_counted, deg_wlo_on_demand, method_bitwise, method_bytewise, BitwiseTail, BytewiseTail, Degree,
    Family, LayerTables, PipelineKind,
};
pub use distribution::{
    count_formula, enumerate_distribution, high_degree_fraction, DegreeDistribution,
};
pub use error::{Error, Result};
pub use repr::{
    pack, parity_check, parity_check_bytes, unpack, weight_bytes, weight_words, word_count,
    AnfVector, ByteTable, Packed, TruthTable, MAX_VARS,
};
pub use wlo::{
    layer_mask, masks_direct, masks_from_wlo, wlo_bucket, wlo_recursive, MaskSet, WloSequence,
};

//! Self-check suites run by `algdeg verify`.
//!
//! Every degree algorithm, pipeline, transform route, sequence route and mask
//! route is cross-checked against the others and against the brute-force
//! oracles. The exhaustive level walks all functions of up to four variables
//! in increasing truth-table order, so the first mismatch it reports is the
//! smallest counterexample.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::anft::{anf_oracle, anft_bitwise, anft_bytewise};
use crate::degree::{
    deg_cb_wlo, deg_es, deg_oracle, deg_wlo_bitwise, deg_wlo_bytewise, method_bitwise,
    method_bytewise, BitwiseTail, BytewiseTail, Degree, LayerTables, PipelineKind,
};
use crate::distribution::{count_formula, DegreeDistribution, MAX_ENUM_VARS, MAX_FORMULA_VARS};
use crate::repr::{
    pack, parity_check, parity_check_bytes, unpack, used_bits, weight_bytes, weight_words,
    word_count, TruthTable,
};
use crate::wlo::{masks_direct, masks_from_wlo, wlo_bucket, wlo_recursive, MaskSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Exhaustive,
}

/// First failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub check: String,
    pub n: u32,
    /// Offending truth table as hex words, when the check is per function.
    pub input: Option<String>,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed at n = {}", self.check, self.n)?;
        if let Some(input) = &self.input {
            write!(f, " for truth table {input}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

impl std::error::Error for Mismatch {}

fn mismatch(check: &str, n: u32, input: Option<&TruthTable>, detail: String) -> Mismatch {
    Mismatch {
        check: check.to_string(),
        n,
        input: input.map(|t| format!("{t:#x}")),
        detail,
    }
}

type Outcome<T = ()> = Result<T, Mismatch>;

/// Runs the suites, optionally with substituted layer masks.
#[derive(Debug, Clone, Default)]
pub struct Verifier {
    masks: BTreeMap<u32, MaskSet>,
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    /// Uses `masks` instead of the generated masks for its variable count.
    pub fn with_masks(mut self, masks: MaskSet) -> Self {
        self.masks.insert(masks.n(), masks);
        self
    }

    fn tables(&self, n: u32) -> LayerTables {
        let mut tables = LayerTables::new(n).expect("n in range");
        if let Some(m) = self.masks.get(&n) {
            tables.masks = m.clone();
        }
        tables
    }

    /// Runs one level. On success returns one summary line per suite.
    pub fn run(&self, level: Level) -> Outcome<Vec<String>> {
        match level {
            Level::Quick => self.quick(),
            Level::Exhaustive => self.exhaustive(),
        }
    }

    fn exhaustive(&self) -> Outcome<Vec<String>> {
        let mut lines = vec![check_wlo_table()?];
        for n in 1..=MAX_ENUM_VARS {
            let tables = self.tables(n);
            let mut tally: BTreeMap<Degree, BigUint> = BTreeMap::new();
            let total = 1u64 << (1 << n);
            for w in 0..total {
                let tt = TruthTable::new(n, vec![w]).expect("valid table");
                let degree = check_function(&tt, &tables, true)?;
                *tally.entry(degree).or_default() += 1u32;
            }
            let formula = DegreeDistribution::from_formula(n).expect("n in range");
            if tally != formula.counts {
                return Err(mismatch(
                    "degree counts vs closed form",
                    n,
                    None,
                    format!("enumerated {tally:?}, formula {:?}", formula.counts),
                ));
            }
            lines.push(format!("n={n}: {total} functions checked"));
        }
        lines.push(check_formula_identities()?);
        Ok(lines)
    }

    fn quick(&self) -> Outcome<Vec<String>> {
        let mut lines = vec![check_wlo_table()?, check_routes(12, 16)?];
        let mut rng = SplitMix64::seed_from_u64(0x5eed);
        let mut checked = 0usize;
        for n in 1..=16u32 {
            let count = match n {
                1..=8 => 256,
                9..=10 => 32,
                11..=14 => 64,
                _ => 16,
            };
            let tables = self.tables(n);
            for _ in 0..count {
                let tt = TruthTable::new(n, random_table_words(&mut rng, n)).expect("valid table");
                check_function(&tt, &tables, n <= 10)?;
                checked += 1;
            }
        }
        lines.push(format!("{checked} random functions checked for n = 1..16"));
        lines.push(check_formula_identities()?);
        Ok(lines)
    }
}

/// Words of a uniformly random truth table of `n` variables.
pub fn random_table_words(rng: &mut SplitMix64, n: u32) -> Vec<u64> {
    let mut words: Vec<u64> = (0..word_count(n)).map(|_| rng.next_u64()).collect();
    words[0] &= used_bits(n);
    words
}

fn check_wlo_table() -> Outcome<String> {
    const TABLE: [&[u32]; 4] = [
        &[0, 1],
        &[0, 1, 2, 3],
        &[0, 1, 2, 4, 3, 5, 6, 7],
        &[0, 1, 2, 4, 8, 3, 5, 6, 9, 10, 12, 7, 11, 13, 14, 15],
    ];
    for (i, expected) in TABLE.iter().enumerate() {
        let n = i as u32 + 1;
        for (route, seq) in [("bucket", wlo_bucket(n)), ("recursive", wlo_recursive(n))] {
            let seq = seq.expect("n in range");
            if seq.order() != *expected {
                return Err(mismatch(
                    "WLO sequence",
                    n,
                    None,
                    format!("{route} route gave {:?}, expected {expected:?}", seq.order()),
                ));
            }
        }
    }
    Ok("WLO sequences for n = 1..4 match the reference listing".into())
}

fn check_routes(max_seq: u32, max_masks: u32) -> Outcome<String> {
    for n in 1..=max_seq {
        let a = wlo_bucket(n).expect("n in range");
        if a != wlo_recursive(n).expect("n in range") {
            return Err(mismatch("WLO bucket vs recursive", n, None, "sequences differ".into()));
        }
    }
    for n in 1..=max_masks {
        let direct = masks_direct(n).expect("n in range");
        if direct != masks_from_wlo(&wlo_bucket(n).expect("n in range")) {
            return Err(mismatch("masks direct vs from sequence", n, None, "masks differ".into()));
        }
    }
    Ok(format!(
        "sequence routes agree for n <= {max_seq}, mask routes for n <= {max_masks}"
    ))
}

fn check_formula_identities() -> Outcome<String> {
    for n in 0..=MAX_FORMULA_VARS {
        let all = BigUint::one() << (1u64 << n);
        let d = DegreeDistribution::from_formula(n).expect("n in range");
        if d.total() != all {
            return Err(mismatch("degree counts sum", n, None, format!("sum {}", d.total())));
        }
        if count_formula(n, n).expect("k in range") != all >> 1usize {
            return Err(mismatch("top-degree count", n, None, "not half of all functions".into()));
        }
    }
    Ok(format!("closed-form counts complete for n <= {MAX_FORMULA_VARS}"))
}

/// Cross-checks every route on one function and returns its degree.
fn check_function(tt: &TruthTable, tables: &LayerTables, with_oracle: bool) -> Outcome<Degree> {
    let n = tt.n();
    let fail = |check: &str, detail: String| mismatch(check, n, Some(tt), detail);

    let bytes = unpack(tt);
    if pack(&bytes) != *tt {
        return Err(fail("pack/unpack round trip", String::new()));
    }
    let weight = weight_words(tt);
    if weight != weight_bytes(&bytes) {
        return Err(fail("weight", format!("words {weight}, bytes {}", weight_bytes(&bytes))));
    }
    let parity = parity_check(tt);
    if u64::from(parity) != weight % 2 || parity != parity_check_bytes(&bytes) {
        return Err(fail("parity check", format!("parity {parity}, weight {weight}")));
    }

    let anf_bytes = anft_bytewise(&bytes);
    let anf_words = anft_bitwise(tt);
    if pack(&anf_bytes).words() != anf_words.words() {
        return Err(fail("bitwise vs byte-wise transform", String::new()));
    }
    if anft_bytewise(&anf_bytes) != bytes {
        return Err(fail("transform involution", String::new()));
    }

    let reference = if with_oracle {
        if anf_oracle(&bytes) != anf_bytes {
            return Err(fail("transform vs oracle", String::new()));
        }
        deg_oracle(&bytes).expect("n <= 10")
    } else {
        deg_es(&anf_bytes)
    };

    let mut results = vec![
        ("ES", deg_es(&anf_bytes)),
        ("byte-wise WLO", deg_wlo_bytewise(&anf_bytes, &tables.seq)),
        ("bitwise WLO", deg_wlo_bitwise(&anf_words, &tables.masks)),
        ("CB WLO", deg_cb_wlo(&anf_words, &tables.seq)),
    ];
    for tail in [BitwiseTail::Wlo, BitwiseTail::CbWlo] {
        results.push((
            "bitwise method",
            method_bitwise(tt, &tables.masks, &tables.seq, tail),
        ));
    }
    for tail in [BytewiseTail::Es, BytewiseTail::Wlo] {
        results.push(("byte-wise method", method_bytewise(&bytes, &tables.seq, tail)));
    }
    for (name, got) in results {
        if got != reference {
            return Err(fail(name, format!("degree {got}, expected {reference}")));
        }
    }
    for kind in PipelineKind::ALL {
        let got = kind.degree(tt, tables);
        if got != reference {
            return Err(fail(&kind.to_string(), format!("degree {got}, expected {reference}")));
        }
    }
    if (parity == 1) != (reference == Degree::Finite(n)) {
        return Err(fail(
            "odd weight iff degree n",
            format!("parity {parity}, degree {reference}"),
        ));
    }
    Ok(reference)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_passes() {
        let lines = Verifier::new().run(Level::Quick).unwrap();
        assert!(!lines.is_empty());
    }

    #[test]
    fn corrupted_mask_is_caught() {
        let good = masks_direct(3).unwrap();
        let mut masks: Vec<Vec<u64>> = good.iter().map(<[u64]>::to_vec).collect();
        masks[3][0] = 0; // drop x1 x2 x3 from the top layer
        let bad = MaskSet::from_masks(3, masks).unwrap();
        let err = Verifier::new()
            .with_masks(bad)
            .run(Level::Exhaustive)
            .unwrap_err();
        assert_eq!(err.n, 3);
        assert_eq!(err.check, "bitwise WLO");
        // smallest odd-weight table of 3 variables
        assert_eq!(err.input.as_deref(), Some("0x01"));
    }
}

//! How many Boolean functions of `n` variables have each algebraic degree.
//!
//! For `1 <= k <= n` the count is `(2^C(n,k) - 1) * 2^(C(n,0) + .. + C(n,k-1))`:
//! the coefficients of layer `k` must not all vanish, those below it are
//! free, and those above it are zero. Degree 0 is only the constant one.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::degree::{deg_oracle, Degree};
use crate::error::{check_range, Error, Result};
use crate::repr::{unpack, TruthTable};

/// Largest `n` accepted by the closed-form counts.
pub const MAX_FORMULA_VARS: u32 = 16;

/// Largest `n` for which every function is enumerated.
pub const MAX_ENUM_VARS: u32 = 4;

/// Counts per degree class, including the zero function under
/// [`Degree::NegInfinity`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeDistribution {
    pub n: u32,
    pub counts: BTreeMap<Degree, BigUint>,
}

impl DegreeDistribution {
    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    pub fn count(&self, degree: Degree) -> BigUint {
        self.counts.get(&degree).cloned().unwrap_or_default()
    }

    /// Distribution given by the closed-form counts.
    pub fn from_formula(n: u32) -> Result<Self> {
        check_range(n, 0, MAX_FORMULA_VARS)?;
        let mut counts = BTreeMap::new();
        counts.insert(Degree::NegInfinity, BigUint::one());
        for k in 0..=n {
            counts.insert(Degree::Finite(k), count_formula(n, k)?);
        }
        Ok(DegreeDistribution { n, counts })
    }
}

fn binomial(n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of functions of `n` variables with degree exactly `k`.
pub fn count_formula(n: u32, k: u32) -> Result<BigUint> {
    check_range(n, 0, MAX_FORMULA_VARS)?;
    if k > n {
        return Err(Error::DegreeOutOfRange { n, k });
    }
    if k == 0 {
        return Ok(BigUint::one());
    }
    let layer = exponent(binomial(n, k));
    let below = exponent((0..k).map(|i| binomial(n, i)).sum());
    Ok(((BigUint::one() << layer) - 1u32) << below)
}

fn exponent(e: BigUint) -> u64 {
    // at most 2^16 for n <= 16
    u64::try_from(e).expect("exponent fits in u64")
}

/// Tallies the degree of every function of `n <= 4` variables with the
/// brute-force oracle.
pub fn enumerate_distribution(n: u32) -> Result<DegreeDistribution> {
    check_range(n, 1, MAX_ENUM_VARS)?;
    let mut counts: BTreeMap<Degree, BigUint> = BTreeMap::new();
    for w in 0..(1u64 << (1 << n)) {
        let tt = TruthTable::new(n, vec![w])?;
        let degree = deg_oracle(&unpack(&tt))?;
        *counts.entry(degree).or_insert_with(BigUint::zero) += 1u32;
    }
    Ok(DegreeDistribution { n, counts })
}

/// Exact share of functions with degree `n` or `n - 1`.
pub fn high_degree_fraction(n: u32) -> Result<Ratio<BigUint>> {
    check_range(n, 1, MAX_FORMULA_VARS)?;
    let high = count_formula(n, n)? + count_formula(n, n - 1)?;
    Ok(Ratio::new(high, BigUint::one() << (1u64 << n)))
}

/// `-1,1` for the zero function, then `k,d(n,k)` lines, then the high-degree
/// fraction.
pub fn format_distribution(dist: &DegreeDistribution) -> Result<String> {
    let mut out = String::from("degree,count\n");
    for (degree, count) in &dist.counts {
        out.push_str(&format!("{},{count}\n", degree.to_sentinel()));
    }
    if dist.n >= 1 {
        let f = high_degree_fraction(dist.n)?;
        out.push_str(&format!("high_degree_fraction,{}/{}\n", f.numer(), f.denom()));
    }
    Ok(out)
}

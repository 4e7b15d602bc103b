//! Moment and cumulant transforms over the dual-number algebra.
//!
//! Moments and cumulants are linked by the non-crossing moment-cumulant
//! formula `M_n = sum_{p in NC(n)} prod_{B in p} k_|B|` and its Möbius
//! inversion. Because the coefficient algebra is commutative, block products
//! can be taken in any order, which is what makes the multilinear version in
//! [`multilinear_cumulant`] well defined for any mixed-moment oracle.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dual::DualScalar;
use crate::error::{Error, Result};
use crate::nc::{SetPartition, NC_CAP};
use crate::series::CSeries;
use crate::tables;

/// `[M_1, ..., M_N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MomentSequence(Vec<DualScalar>);

/// `[k_1, ..., k_N]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CumulantSequence(Vec<DualScalar>);

macro_rules! sequence_impl {
    ($ty:ident) => {
        impl $ty {
            pub fn new(values: Vec<DualScalar>) -> Self {
                $ty(values)
            }

            pub fn order(&self) -> usize {
                self.0.len()
            }

            /// The `n`-th entry, 1-based.
            pub fn get(&self, n: usize) -> &DualScalar {
                &self.0[n - 1]
            }

            pub fn values(&self) -> &[DualScalar] {
                &self.0
            }

            pub fn into_values(self) -> Vec<DualScalar> {
                self.0
            }

            fn block_product(&self, block_type: &[usize]) -> DualScalar {
                block_type.iter().map(|&s| &self.0[s - 1]).product()
            }
        }
    };
}

sequence_impl!(MomentSequence);
sequence_impl!(CumulantSequence);

impl CumulantSequence {
    /// The R-transform `sum k_n z^n`.
    pub fn r_transform(&self) -> Result<CSeries> {
        CSeries::new(self.0.clone())
    }
}

impl MomentSequence {
    /// The moment series `sum M_n z^n`.
    pub fn moment_series(&self) -> Result<CSeries> {
        CSeries::new(self.0.clone())
    }
}

impl From<CSeries> for CumulantSequence {
    fn from(s: CSeries) -> Self {
        CumulantSequence(s.into_coeffs())
    }
}

impl From<CSeries> for MomentSequence {
    fn from(s: CSeries) -> Self {
        MomentSequence(s.into_coeffs())
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > NC_CAP {
        return Err(Error::SizeLimit { what: "sequence order", value: n, cap: NC_CAP });
    }
    Ok(())
}

/// `M_n = sum_{p in NC(n)} prod_{B in p} k_|B|`.
pub fn cumulants_to_moments(k: &CumulantSequence) -> Result<MomentSequence> {
    check_order(k.order())?;
    let values = (1..=k.order())
        .map(|n| {
            Ok(tables::type_counts(n)?
                .iter()
                .map(|(bt, count)| k.block_product(bt).scale_int(*count as i64))
                .sum())
        })
        .collect::<Result<_>>()?;
    Ok(MomentSequence(values))
}

/// `k_n = sum_{p in NC(n)} M_p mu(p, 1_n)` with `M_p = prod_{B in p} M_|B|`.
pub fn moments_to_cumulants(m: &MomentSequence) -> Result<CumulantSequence> {
    check_order(m.order())?;
    let values = (1..=m.order())
        .map(|n| {
            Ok(tables::moebius_weights(n)?
                .iter()
                .map(|(bt, weight)| m.block_product(bt).scale_int(*weight))
                .sum())
        })
        .collect::<Result<_>>()?;
    Ok(CumulantSequence(values))
}

/// One position of a word: which element, from which family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub family: usize,
    pub element: usize,
}

impl Letter {
    pub fn new(family: usize, element: usize) -> Self {
        Letter { family, element }
    }
}

/// Evaluates `E(w_1 ... w_n)` for words of letters.
///
/// Implementations must be multilinear in each position and pure; the empty
/// word evaluates to `(1, 0)`.
pub trait MixedMomentOracle {
    fn moment(&self, word: &[Letter]) -> Result<DualScalar>;

    /// The sub-word on the given 1-based positions, in increasing order.
    fn restrict(&self, word: &[Letter], positions: &[usize]) -> Vec<Letter> {
        positions.iter().map(|&p| word[p - 1]).collect()
    }
}

/// `k_n(w) = sum_{p in NC(n)} mu(p, 1_n) prod_{B in p} E(w|B)`.
pub fn multilinear_cumulant(oracle: &dyn MixedMomentOracle, word: &[Letter]) -> Result<DualScalar> {
    let n = word.len();
    if n == 0 {
        return Err(Error::domain("cumulants are indexed from n = 1"));
    }
    check_order(n)?;
    let mut total = DualScalar::zero();
    for entry in tables::lattice(n)?.iter() {
        if entry.moebius_to_top == 0 {
            continue;
        }
        let mut term = DualScalar::one();
        for block in entry.partition.blocks() {
            term *= &oracle.moment(&oracle.restrict(word, &block))?;
        }
        total += term.scale_int(entry.moebius_to_top);
    }
    Ok(total)
}

/// True iff the mixed cumulant of `word` vanishes. The word must mix at
/// least two families.
pub fn freeness_test(oracle: &dyn MixedMomentOracle, word: &[Letter]) -> Result<bool> {
    let families: BTreeSet<usize> = word.iter().map(|l| l.family).collect();
    if families.len() < 2 {
        return Err(Error::domain("freeness is only tested on words mixing at least two families"));
    }
    Ok(multilinear_cumulant(oracle, word)?.is_zero())
}

/// Mixed moments of free families, each holding one variable with a
/// prescribed cumulant sequence. Mixed cumulants are zero by construction:
/// `E(w) = sum_{p in NC(n)} prod_{B in p} c(w|B)` where `c(w|B)` is the
/// family's cumulant when every letter of `B` comes from one family and
/// zero otherwise.
#[derive(Clone, Debug)]
pub struct FreeProductOracle {
    families: Vec<CumulantSequence>,
}

impl FreeProductOracle {
    pub fn new(families: Vec<CumulantSequence>) -> Self {
        FreeProductOracle { families }
    }

    fn block_cumulant(&self, word: &[Letter], block: &[usize]) -> Result<DualScalar> {
        let family = word[block[0] - 1].family;
        if block.iter().any(|&p| word[p - 1].family != family) {
            return Ok(DualScalar::zero());
        }
        let seq = &self.families[family];
        if block.len() > seq.order() {
            return Err(Error::Truncation { block: block.len(), order: seq.order() });
        }
        Ok(seq.get(block.len()).clone())
    }
}

impl MixedMomentOracle for FreeProductOracle {
    fn moment(&self, word: &[Letter]) -> Result<DualScalar> {
        if word.is_empty() {
            return Ok(DualScalar::one());
        }
        for letter in word {
            if letter.family >= self.families.len() || letter.element != 0 {
                return Err(Error::domain(format!("unknown letter {letter:?}")));
            }
        }
        let mut total = DualScalar::zero();
        for p in tables::lattice(word.len())?.iter().map(|e| &e.partition) {
            let mut term = DualScalar::one();
            for block in p.blocks() {
                term *= &self.block_cumulant(word, &block)?;
                if term.is_zero() {
                    break;
                }
            }
            total += term;
        }
        Ok(total)
    }
}

/// Every letter is the same variable regardless of its family label, so
/// distinct "families" are as far from free as possible.
#[derive(Clone, Debug)]
pub struct SharedVariableOracle {
    moments: MomentSequence,
}

impl SharedVariableOracle {
    pub fn new(moments: MomentSequence) -> Self {
        SharedVariableOracle { moments }
    }
}

impl MixedMomentOracle for SharedVariableOracle {
    fn moment(&self, word: &[Letter]) -> Result<DualScalar> {
        match word.len() {
            0 => Ok(DualScalar::one()),
            n if n <= self.moments.order() => Ok(self.moments.get(n).clone()),
            n => Err(Error::Truncation { block: n, order: self.moments.order() }),
        }
    }
}

/// Moments of a sum of the given letters, `E((x_1 + ... + x_k)^n)`, expanded
/// by multilinearity over all words.
pub fn moments_of_sum(oracle: &dyn MixedMomentOracle, summands: &[Letter], order: usize) -> Result<MomentSequence> {
    let mut values = Vec::with_capacity(order);
    for n in 1..=order {
        let mut total = DualScalar::zero();
        let words = summands.len().pow(n as u32);
        for code in 0..words {
            let mut rest = code;
            let word: Vec<Letter> = (0..n)
                .map(|_| {
                    let letter = summands[rest % summands.len()];
                    rest /= summands.len();
                    letter
                })
                .collect();
            total += oracle.moment(&word)?;
        }
        values.push(total);
    }
    Ok(MomentSequence(values))
}

/// All non-crossing partitions of `[n]` with `mu(p, 1_n)`, for callers that
/// need the partitions themselves rather than block types.
pub(crate) fn moebius_expansion(n: usize) -> Result<Vec<(SetPartition, i64)>> {
    check_order(n)?;
    Ok(tables::lattice(n)?
        .iter()
        .filter(|e| e.moebius_to_top != 0)
        .map(|e| (e.partition.clone(), e.moebius_to_top))
        .collect())
}

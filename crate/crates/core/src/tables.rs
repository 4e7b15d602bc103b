//! Per-`n` caches of lattice data used by the transforms.
//!
//! Every sum over `NC(n)` in this crate only depends on block-size types, so
//! the caches store aggregated multiplicities instead of partitions where
//! they can.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::Result;
use crate::nc::{self, PartitionInterval, SetPartition};

pub(crate) type BlockType = Vec<usize>;

struct PerN<T>(OnceLock<RwLock<HashMap<usize, Arc<T>>>>);

impl<T> PerN<T> {
    const fn new() -> Self {
        PerN(OnceLock::new())
    }

    fn get_or_build(&self, n: usize, build: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
        let map = self.0.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(hit) = map.read().unwrap().get(&n) {
            return Ok(Arc::clone(hit));
        }
        let value = Arc::new(build()?);
        Ok(Arc::clone(map.write().unwrap().entry(n).or_insert(value)))
    }
}

/// One non-crossing partition with its complement and `mu(p, 1_n)`.
pub(crate) struct LatticeEntry {
    pub partition: SetPartition,
    pub kreweras: SetPartition,
    pub moebius_to_top: i64,
}

pub(crate) fn lattice(n: usize) -> Result<Arc<Vec<LatticeEntry>>> {
    static CACHE: PerN<Vec<LatticeEntry>> = PerN::new();
    CACHE.get_or_build(n, || {
        nc::enumerate_nc(n)?
            .into_iter()
            .map(|p| {
                let kreweras = nc::kreweras(&p)?;
                let moebius_to_top = nc::moebius(&PartitionInterval::to_top(p.clone()))?;
                Ok(LatticeEntry { partition: p, kreweras, moebius_to_top })
            })
            .collect()
    })
}

/// Number of partitions in `NC(n)` of each block type.
pub(crate) fn type_counts(n: usize) -> Result<Arc<Vec<(BlockType, u64)>>> {
    static CACHE: PerN<Vec<(BlockType, u64)>> = PerN::new();
    CACHE.get_or_build(n, || {
        let mut counts: BTreeMap<BlockType, u64> = BTreeMap::new();
        for p in nc::enumerate_nc(n)? {
            *counts.entry(p.block_type()).or_default() += 1;
        }
        Ok(counts.into_iter().collect())
    })
}

/// Sum of `mu(p, 1_n)` over partitions of each block type.
pub(crate) fn moebius_weights(n: usize) -> Result<Arc<Vec<(BlockType, i64)>>> {
    static CACHE: PerN<Vec<(BlockType, i64)>> = PerN::new();
    CACHE.get_or_build(n, || {
        let mut weights: BTreeMap<BlockType, i64> = BTreeMap::new();
        for entry in lattice(n)?.iter() {
            *weights.entry(entry.partition.block_type()).or_default() += entry.moebius_to_top;
        }
        weights.retain(|_, w| *w != 0);
        Ok(weights.into_iter().collect())
    })
}

/// Pairs `(type(p), type(Kr(p)))` with multiplicity, over all of `NC(n)`
/// and over the partitions having `{1}` as a block.
pub(crate) struct ConvolutionTerms {
    pub all: Vec<(BlockType, BlockType, u64)>,
    pub first_singleton: Vec<(BlockType, BlockType, u64)>,
}

pub(crate) fn convolution_terms(n: usize) -> Result<Arc<ConvolutionTerms>> {
    static CACHE: PerN<ConvolutionTerms> = PerN::new();
    CACHE.get_or_build(n, || {
        let mut all: BTreeMap<(BlockType, BlockType), u64> = BTreeMap::new();
        let mut first: BTreeMap<(BlockType, BlockType), u64> = BTreeMap::new();
        for entry in lattice(n)?.iter() {
            let key = (entry.partition.block_type(), entry.kreweras.block_type());
            if entry.partition.has_singleton(1) {
                *first.entry(key.clone()).or_default() += 1;
            }
            *all.entry(key).or_default() += 1;
        }
        let flatten = |m: BTreeMap<(BlockType, BlockType), u64>| m.into_iter().map(|((a, b), c)| (a, b, c)).collect();
        Ok(ConvolutionTerms { all: flatten(all), first_singleton: flatten(first) })
    })
}

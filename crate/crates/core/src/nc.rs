//! Non-crossing partition lattices of type A and type B.
//!
//! A [`SetPartition`] of `{1, ..., n}` is stored as its restricted-growth
//! string (RGS): element `i` carries the index of its block, blocks being
//! numbered in order of their minimum. The RGS is a canonical form, so
//! derived equality and hashing are equality of partitions.
//!
//! Enumeration walks restricted-growth strings in lexicographic order and
//! prunes any prefix that already contains a crossing, so the output order
//! is the lexicographic order on RGS.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` for which `NC(n)` is enumerated (`Catalan(14)` = 2 674 440).
pub const NC_CAP: usize = 14;
/// Largest `n` for which `NC^B(n)` is enumerated.
pub const NCB_CAP: usize = 7;

const MAX_GROUND_SET: usize = u8::MAX as usize;

/// A partition of `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    labels: Vec<u8>,
}

impl SetPartition {
    /// Builds a partition from 1-based blocks, validating that they are
    /// disjoint and cover `{1, ..., n}` exactly.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if n == 0 || n > MAX_GROUND_SET {
            return Err(Error::domain(format!("ground set size {n} out of range 1..={MAX_GROUND_SET}")));
        }
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::domain("empty block"));
            }
            for &e in block {
                if e == 0 || e > n {
                    return Err(Error::domain(format!("element {e} outside 1..={n}")));
                }
                if owner[e - 1].replace(b).is_some() {
                    return Err(Error::domain(format!("element {e} appears twice")));
                }
            }
        }
        let raw: Vec<usize> = owner
            .into_iter()
            .enumerate()
            .map(|(i, o)| o.ok_or_else(|| Error::domain(format!("element {} missing", i + 1))))
            .collect::<Result<_>>()?;
        Ok(SetPartition::from_labels(&raw))
    }

    /// Canonicalizes arbitrary block labels into an RGS.
    pub(crate) fn from_labels(raw: &[usize]) -> Self {
        let mut map: HashMap<usize, u8> = HashMap::new();
        let labels = raw
            .iter()
            .map(|l| {
                let next = map.len() as u8;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        SetPartition { labels }
    }

    pub(crate) fn from_rgs(labels: Vec<u8>) -> Self {
        SetPartition { labels }
    }

    /// The partition into singletons, the bottom element `0_n`.
    pub fn singletons(n: usize) -> Self {
        assert!((1..=MAX_GROUND_SET).contains(&n));
        SetPartition { labels: (0..n as u8).collect() }
    }

    /// The one-block partition, the top element `1_n`.
    pub fn one_block(n: usize) -> Self {
        assert!((1..=MAX_GROUND_SET).contains(&n));
        SetPartition { labels: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m as usize + 1)
    }

    pub fn restricted_growth_string(&self) -> &[u8] {
        &self.labels
    }

    /// Block index (0-based, ordered by block minimum) of the 1-based element `e`.
    pub fn block_of(&self, e: usize) -> usize {
        self.labels[e - 1] as usize
    }

    /// Blocks as sorted 1-based element lists, ordered by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i + 1);
        }
        out
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.num_blocks()];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// Block sizes sorted in decreasing order; the isomorphism type of the
    /// partition as far as multiplicative functions are concerned.
    pub fn block_type(&self) -> Vec<usize> {
        let mut sizes = self.block_sizes();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    pub fn has_singleton(&self, e: usize) -> bool {
        let l = self.labels[e - 1];
        self.labels.iter().filter(|&&m| m == l).count() == 1
    }

    /// The partition restricted to a sorted subset of elements, relabelled
    /// to `{1, ..., |subset|}` preserving order.
    pub fn restrict(&self, subset: &[usize]) -> SetPartition {
        let raw: Vec<usize> = subset.iter().map(|&e| self.block_of(e)).collect();
        SetPartition::from_labels(&raw)
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&blocks.join("|"))
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

/// Parses the `"1,2|3"` form; `n` is the number of elements listed.
impl FromStr for SetPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let blocks = parse_blocks::<usize>(s)?;
        let n = blocks.iter().map(Vec::len).sum();
        SetPartition::new(n, blocks)
    }
}

fn parse_blocks<T: FromStr>(s: &str) -> Result<Vec<Vec<T>>> {
    s.trim()
        .split('|')
        .map(|block| {
            block
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<T>()
                        .map_err(|_| Error::parse(format!("bad element `{e}` in partition `{s}`")))
                })
                .collect()
        })
        .collect()
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A symmetric non-crossing partition of `{1, ..., n, -1, ..., -n}`.
///
/// Stored as an RGS over the `2n` points in the cyclic order
/// `1 < ... < n < -1 < ... < -n`; the map `v -> -v` is rotation by `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TypeBPartition {
    n: usize,
    labels: Vec<u8>,
}

impl TypeBPartition {
    pub fn new(n: usize, blocks: Vec<Vec<i64>>) -> Result<Self> {
        if n == 0 || 2 * n > MAX_GROUND_SET {
            return Err(Error::domain(format!("type B rank {n} out of range")));
        }
        let position = |v: i64| -> Result<usize> {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n {
                return Err(Error::domain(format!("element {v} outside ±1..=±{n}")));
            }
            Ok(if v > 0 { a } else { n + a })
        };
        let as_points = blocks
            .iter()
            .map(|b| b.iter().map(|&v| position(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let flat = SetPartition::new(2 * n, as_points)?;
        if !is_noncrossing(&flat) {
            return Err(Error::domain("type B partition is crossing"));
        }
        if !labels_symmetric(&flat.labels, n) {
            return Err(Error::domain("type B partition is not closed under v -> -v"));
        }
        Ok(TypeBPartition { n, labels: flat.labels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn point_value(&self, pos: usize) -> i64 {
        if pos < self.n {
            pos as i64 + 1
        } else {
            -((pos - self.n) as i64 + 1)
        }
    }

    /// Blocks with elements in cyclic order, blocks ordered by their first element.
    pub fn blocks(&self) -> Vec<Vec<i64>> {
        let k = self.labels.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut out = vec![Vec::new(); k];
        for (pos, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(self.point_value(pos));
        }
        out
    }

    /// Number of blocks `V` with `V = -V`.
    pub fn symmetric_blocks(&self) -> usize {
        self.blocks()
            .iter()
            .filter(|b| b.iter().all(|v| b.contains(&-v)))
            .count()
    }

    /// The underlying partition of the `2n` points `1..=2n`.
    pub fn as_set_partition(&self) -> SetPartition {
        SetPartition::from_rgs(self.labels.clone())
    }
}

impl fmt::Display for TypeBPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        f.write_str(&blocks.join("|"))
    }
}

impl fmt::Debug for TypeBPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TypeBPartition({self})")
    }
}

impl FromStr for TypeBPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let blocks = parse_blocks::<i64>(s)?;
        let total: usize = blocks.iter().map(Vec::len).sum();
        if !total.is_multiple_of(2) {
            return Err(Error::parse(format!("`{s}` lists an odd number of points")));
        }
        TypeBPartition::new(total / 2, blocks)
    }
}

impl Serialize for TypeBPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A pair `lower <= upper` in the refinement order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionInterval {
    lower: SetPartition,
    upper: SetPartition,
}

impl PartitionInterval {
    pub fn new(lower: SetPartition, upper: SetPartition) -> Result<Self> {
        if !refines(&lower, &upper)? {
            return Err(Error::domain(format!("{lower} does not refine {upper}")));
        }
        Ok(PartitionInterval { lower, upper })
    }

    /// The interval `[p, 1_n]`.
    pub fn to_top(lower: SetPartition) -> Self {
        let upper = SetPartition::one_block(lower.n());
        PartitionInterval { lower, upper }
    }

    pub fn lower(&self) -> &SetPartition {
        &self.lower
    }

    pub fn upper(&self) -> &SetPartition {
        &self.upper
    }
}

/// Non-crossing test on an arbitrary labelling of `0..len`: every block
/// must open and close like a bracket.
pub(crate) fn labels_noncrossing<L: Copy + Into<usize>>(labels: &[L]) -> bool {
    let k = labels.iter().map(|&l| l.into()).max().map_or(0, |m| m + 1);
    let mut last = vec![0usize; k];
    for (i, &l) in labels.iter().enumerate() {
        last[l.into()] = i;
    }
    let mut seen = vec![false; k];
    let mut stack: Vec<usize> = Vec::new();
    for (i, &l) in labels.iter().enumerate() {
        let l = l.into();
        if seen[l] {
            if stack.last() != Some(&l) {
                return false;
            }
            if last[l] == i {
                stack.pop();
            }
        } else {
            seen[l] = true;
            if last[l] != i {
                stack.push(l);
            }
        }
    }
    true
}

fn labels_symmetric(labels: &[u8], n: usize) -> bool {
    let mut image: HashMap<u8, u8> = HashMap::new();
    for pos in 0..2 * n {
        let mirror = labels[(pos + n) % (2 * n)];
        if *image.entry(labels[pos]).or_insert(mirror) != mirror {
            return false;
        }
    }
    true
}

/// True iff no `a < b < c < d` have `a, c` in one block and `b, d` in another.
pub fn is_noncrossing(p: &SetPartition) -> bool {
    labels_noncrossing(&p.labels)
}

/// Visits every non-crossing RGS of length `n` in lexicographic order.
pub(crate) fn for_each_nc(n: usize, mut visit: impl FnMut(&[u8])) {
    fn go(
        labels: &mut Vec<u8>,
        first: &mut Vec<usize>,
        last: &mut Vec<usize>,
        n: usize,
        visit: &mut dyn FnMut(&[u8]),
    ) {
        let i = labels.len();
        if i == n {
            visit(labels);
            return;
        }
        for b in 0..first.len() {
            // Joining block b is legal unless some element strictly between
            // b's current end and i belongs to a block opened before that end.
            let end = last[b];
            if (end + 1..i).any(|c| first[labels[c] as usize] < end) {
                continue;
            }
            labels.push(b as u8);
            last[b] = i;
            go(labels, first, last, n, visit);
            last[b] = end;
            labels.pop();
        }
        labels.push(first.len() as u8);
        first.push(i);
        last.push(i);
        go(labels, first, last, n, visit);
        first.pop();
        last.pop();
        labels.pop();
    }
    if n == 0 {
        return;
    }
    let mut labels = Vec::with_capacity(n);
    go(&mut labels, &mut Vec::new(), &mut Vec::new(), n, &mut visit);
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(format!("{what} must be positive")));
    }
    if n > cap {
        return Err(Error::SizeLimit { what, value: n, cap });
    }
    Ok(())
}

/// All non-crossing partitions of `{1, ..., n}` in lexicographic RGS order.
pub fn enumerate_nc(n: usize) -> Result<Vec<SetPartition>> {
    enumerate_nc_capped(n, NC_CAP)
}

pub fn enumerate_nc_capped(n: usize, cap: usize) -> Result<Vec<SetPartition>> {
    check_cap("n", n, cap.min(MAX_GROUND_SET))?;
    let mut out = Vec::new();
    for_each_nc(n, |rgs| out.push(SetPartition::from_rgs(rgs.to_vec())));
    Ok(out)
}

/// All symmetric non-crossing partitions of `{±1, ..., ±n}`, obtained by
/// filtering `NC(2n)` for closure under `v -> -v`. Ordered by the RGS of the
/// underlying `2n`-point partition.
pub fn enumerate_ncb(n: usize) -> Result<Vec<TypeBPartition>> {
    enumerate_ncb_capped(n, NCB_CAP)
}

pub fn enumerate_ncb_capped(n: usize, cap: usize) -> Result<Vec<TypeBPartition>> {
    check_cap("n", n, cap.min(MAX_GROUND_SET / 2))?;
    let mut out = Vec::new();
    for_each_nc(2 * n, |rgs| {
        if labels_symmetric(rgs, n) {
            out.push(TypeBPartition { n, labels: rgs.to_vec() });
        }
    });
    Ok(out)
}

/// True iff every block of `p` lies inside a block of `q`.
pub fn refines(p: &SetPartition, q: &SetPartition) -> Result<bool> {
    if p.n() != q.n() {
        return Err(Error::dimension(format!(
            "partitions of {} and {} elements are not comparable",
            p.n(),
            q.n()
        )));
    }
    let mut image: Vec<Option<u8>> = vec![None; p.num_blocks()];
    for (&lp, &lq) in p.labels.iter().zip(&q.labels) {
        match image[lp as usize] {
            None => image[lp as usize] = Some(lq),
            Some(prev) if prev != lq => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

/// Kreweras complement.
///
/// Interleave the points as `1, 1', 2, 2', ..., n, n'`, start from singletons
/// on the primed points and keep merging pairs of primed blocks as long as
/// `p` together with the primed partition stays non-crossing. The primed
/// partitions compatible with `p` form a down-set with a unique maximum, so
/// the greedy merge terminates at the complement.
pub fn kreweras(p: &SetPartition) -> Result<SetPartition> {
    if !is_noncrossing(p) {
        return Err(Error::domain(format!("{p} is crossing; Kreweras complement undefined")));
    }
    let n = p.n();
    let offset = p.num_blocks();
    let mut primed: Vec<usize> = (0..n).collect();
    let mut joint = vec![0usize; 2 * n];
    let compatible = |primed: &[usize], joint: &mut [usize]| {
        for i in 0..n {
            joint[2 * i] = p.labels[i] as usize;
            joint[2 * i + 1] = offset + primed[i];
        }
        labels_noncrossing(joint)
    };
    loop {
        let mut merged = false;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (primed[i], primed[j]);
                if a == b {
                    continue;
                }
                let candidate: Vec<usize> = primed.iter().map(|&l| if l == b { a } else { l }).collect();
                if compatible(&candidate, &mut joint) {
                    primed = candidate;
                    merged = true;
                }
            }
        }
        if !merged {
            break;
        }
    }
    Ok(SetPartition::from_labels(&primed))
}

fn moebius_memo() -> &'static Mutex<HashMap<usize, i64>> {
    static MEMO: OnceLock<Mutex<HashMap<usize, i64>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::from([(1, 1)])))
}

/// `mu(0_k, 1_k)` in `NC(k)`, from `sum_{r in NC(k)} mu(0_k, r) = 0` where the
/// lower interval `[0_k, r]` factors as the product of `NC(|B|)` over blocks of `r`.
fn chain_moebius(k: usize) -> Result<i64> {
    if let Some(&v) = moebius_memo().lock().unwrap().get(&k) {
        return Ok(v);
    }
    check_cap("Möbius interval size", k, NC_CAP)?;
    let mut smaller = vec![0i64; k];
    for (j, slot) in smaller.iter_mut().enumerate().skip(1) {
        *slot = chain_moebius(j)?;
    }
    let mut sum = 0i64;
    for_each_nc(k, |rgs| {
        let p = SetPartition::from_rgs(rgs.to_vec());
        if p.num_blocks() > 1 {
            sum += p.block_sizes().iter().map(|&s| smaller[s]).product::<i64>();
        }
    });
    let value = -sum;
    moebius_memo().lock().unwrap().insert(k, value);
    Ok(value)
}

/// Isomorphism class of an interval `[p, q]` of the non-crossing lattice:
/// the multiset of chain lengths `k` such that `[p, q]` is the product of
/// the full lattices `NC(k)`.
pub fn interval_type(interval: &PartitionInterval) -> Result<Vec<usize>> {
    let (p, q) = (&interval.lower, &interval.upper);
    if !is_noncrossing(p) || !is_noncrossing(q) {
        return Err(Error::domain("Möbius function is taken in the non-crossing lattice; both ends must be non-crossing"));
    }
    let mut sizes = Vec::new();
    for block in q.blocks() {
        let local = p.restrict(&block);
        sizes.extend(kreweras(&local)?.block_sizes());
    }
    sizes.retain(|&s| s > 1);
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    Ok(sizes)
}

/// Möbius function of the non-crossing lattice on `[lower, upper]`.
///
/// Evaluated on the isomorphism class of the interval (see
/// [`interval_type`]); the value for each full lattice `NC(k)` comes from the
/// defining recursion and is memoized by `k`.
pub fn moebius(interval: &PartitionInterval) -> Result<i64> {
    interval_type(interval)?
        .into_iter()
        .map(chain_moebius)
        .product()
}

/// Möbius function by the bare recursion `mu(p, p) = 1`,
/// `sum_{p <= r <= s} mu(p, r) = 0`, over the explicitly enumerated interval.
/// Quadratic in the interval size; used as a cross-check.
pub fn moebius_by_recursion(interval: &PartitionInterval) -> Result<i64> {
    let (p, q) = (&interval.lower, &interval.upper);
    if !is_noncrossing(p) || !is_noncrossing(q) {
        return Err(Error::domain("both ends of the interval must be non-crossing"));
    }
    let mut members: Vec<SetPartition> = Vec::new();
    for r in enumerate_nc(p.n())? {
        if refines(p, &r)? && refines(&r, q)? {
            members.push(r);
        }
    }
    // Finer partitions first, so every r is processed after everything below it.
    members.sort_by_key(|r| std::cmp::Reverse(r.num_blocks()));
    let mut mu: Vec<i64> = Vec::with_capacity(members.len());
    for (idx, r) in members.iter().enumerate() {
        let value = if r == p {
            1
        } else {
            let mut below = 0;
            for (s, mu_s) in members[..idx].iter().zip(&mu) {
                if s.num_blocks() > r.num_blocks() && refines(s, r)? {
                    below += mu_s;
                }
            }
            -below
        };
        if r == q {
            return Ok(value);
        }
        mu.push(value);
    }
    unreachable!("upper end is always a member of its own interval")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    /// Every RGS of length n, no pruning.
    fn all_set_partitions(n: usize) -> Vec<SetPartition> {
        let mut out = Vec::new();
        let mut rgs = vec![0u8; n];
        fn go(rgs: &mut Vec<u8>, i: usize, max: u8, out: &mut Vec<SetPartition>) {
            if i == rgs.len() {
                out.push(SetPartition::from_rgs(rgs.clone()));
                return;
            }
            for l in 0..=max + 1 {
                rgs[i] = l;
                go(rgs, i + 1, max.max(l), out);
            }
        }
        if n == 1 {
            return vec![SetPartition::singletons(1)];
        }
        go(&mut rgs, 1, 0, &mut out);
        out
    }

    fn crossing_by_quadruples(p: &SetPartition) -> bool {
        let n = p.n();
        for a in 1..=n {
            for b in a + 1..=n {
                for c in b + 1..=n {
                    for d in c + 1..=n {
                        let (ba, bb, bc, bd) = (p.block_of(a), p.block_of(b), p.block_of(c), p.block_of(d));
                        if ba == bc && bb == bd && ba != bb {
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn crossing_examples() {
        assert!(!is_noncrossing(&sp("1,3|2,4")));
        assert!(is_noncrossing(&sp("1,4|2,3")));
        let all3 = all_set_partitions(3);
        assert_eq!(all3.len(), 5);
        assert!(all3.iter().all(is_noncrossing));
    }

    #[test]
    fn stack_check_agrees_with_quadruples() {
        for n in 1..=7 {
            for p in all_set_partitions(n) {
                assert_eq!(is_noncrossing(&p), !crossing_by_quadruples(&p), "{p}");
            }
        }
    }

    #[test]
    fn enumeration_matches_filtered_brute_force() {
        assert_eq!(enumerate_nc(1).unwrap(), vec![SetPartition::singletons(1)]);
        for n in 1..=8 {
            let mut brute: Vec<_> = all_set_partitions(n).into_iter().filter(is_noncrossing).collect();
            brute.sort();
            let fast = enumerate_nc(n).unwrap();
            // RGS lexicographic order is the derived Ord on SetPartition.
            assert_eq!(fast, brute, "n = {n}");
        }
        assert_eq!(enumerate_nc(3).unwrap().len(), 5);
        assert_eq!(enumerate_nc(4).unwrap().len(), 14);
        let crossing: Vec<_> = all_set_partitions(4).into_iter().filter(|p| !is_noncrossing(p)).collect();
        assert_eq!(crossing, vec![sp("1,3|2,4")]);
    }

    #[test]
    fn enumeration_caps() {
        assert!(matches!(enumerate_nc(15), Err(Error::SizeLimit { .. })));
        assert!(matches!(enumerate_ncb(8), Err(Error::SizeLimit { .. })));
        assert!(enumerate_nc(0).is_err());
    }

    fn brute_ncb(n: usize) -> usize {
        all_set_partitions(2 * n)
            .into_iter()
            .filter(|p| is_noncrossing(p) && labels_symmetric(&p.labels, n))
            .count()
    }

    #[test]
    fn type_b_counts_match_brute_force() {
        let ncb1 = enumerate_ncb(1).unwrap();
        let shown: Vec<String> = ncb1.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["1,-1", "1|-1"]);
        for (n, expected) in [(1, 2), (2, 6), (3, 20)] {
            assert_eq!(brute_ncb(n), expected);
            assert_eq!(enumerate_ncb(n).unwrap().len(), expected);
        }
    }

    #[test]
    fn type_b_has_at_most_one_symmetric_block() {
        for n in 1..=5 {
            for p in enumerate_ncb(n).unwrap() {
                assert!(p.symmetric_blocks() <= 1, "{p}");
            }
        }
    }

    #[test]
    fn type_b_parse_and_validate() {
        let p: TypeBPartition = "1,-1|2|-2".parse().unwrap();
        assert_eq!(p.n(), 2);
        assert_eq!(p.to_string(), "1,-1|2|-2");
        // not symmetric
        assert!("1,2|-1|-2".parse::<TypeBPartition>().is_err());
        // crossing on the cycle 1 < 2 < -1 < -2
        assert!("1,-1|2,-2".parse::<TypeBPartition>().is_err());
    }

    #[test]
    fn refines_examples() {
        let n = 5;
        for p in enumerate_nc(n).unwrap() {
            assert!(refines(&SetPartition::singletons(n), &p).unwrap());
            assert!(refines(&p, &SetPartition::one_block(n)).unwrap());
        }
        assert!(!refines(&sp("1,2|3"), &sp("1,3|2")).unwrap());
        assert!(matches!(refines(&sp("1|2"), &sp("1,2,3")), Err(Error::Dimension(_))));
    }

    /// Definitional complement: scan all primed partitions for the coarsest
    /// one that is jointly non-crossing with p.
    fn kreweras_by_search(p: &SetPartition) -> SetPartition {
        let n = p.n();
        let mut best: Option<SetPartition> = None;
        for q in all_set_partitions(n) {
            let mut joint = vec![0usize; 2 * n];
            for i in 0..n {
                joint[2 * i] = p.labels[i] as usize;
                joint[2 * i + 1] = n + q.labels[i] as usize;
            }
            if labels_noncrossing(&joint) && best.as_ref().is_none_or(|b| q.num_blocks() < b.num_blocks()) {
                best = Some(q);
            }
        }
        best.unwrap()
    }

    /// i' and j' share a complement block iff {i+1, ..., j} is a union of blocks of p.
    fn kreweras_by_intervals(p: &SetPartition) -> SetPartition {
        let n = p.n();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut owner = vec![usize::MAX; n + 1];
        for i in 1..=n {
            if owner[i] != usize::MAX {
                continue;
            }
            owner[i] = blocks.len();
            let mut block = vec![i];
            for j in i + 1..=n {
                let inside = |e: usize| e > i && e <= j;
                let closed = (i + 1..=j).all(|e| (1..=n).filter(|&f| p.block_of(f) == p.block_of(e)).all(inside));
                if closed {
                    owner[j] = blocks.len();
                    block.push(j);
                }
            }
            blocks.push(block);
        }
        SetPartition::new(n, blocks).unwrap()
    }

    #[test]
    fn kreweras_examples() {
        for n in 1..=6 {
            assert_eq!(kreweras(&SetPartition::singletons(n)).unwrap(), SetPartition::one_block(n));
            assert_eq!(kreweras(&SetPartition::one_block(n)).unwrap(), SetPartition::singletons(n));
        }
        assert_eq!(kreweras(&sp("1,2|3")).unwrap(), sp("1|2,3"));
        assert!(matches!(kreweras(&sp("1,3|2,4")), Err(Error::Domain(_))));
    }

    #[test]
    fn kreweras_matches_oracles() {
        for n in 1..=5 {
            for p in enumerate_nc(n).unwrap() {
                assert_eq!(kreweras(&p).unwrap(), kreweras_by_search(&p), "{p}");
            }
        }
        for n in 1..=8 {
            for p in enumerate_nc(n).unwrap() {
                assert_eq!(kreweras(&p).unwrap(), kreweras_by_intervals(&p), "{p}");
            }
        }
    }

    #[test]
    fn kreweras_laws() {
        for n in 1..=7 {
            let all = enumerate_nc(n).unwrap();
            let images: Vec<_> = all.iter().map(|p| kreweras(p).unwrap()).collect();
            let mut sorted = images.clone();
            sorted.sort();
            assert_eq!(sorted, all, "bijection at n = {n}");
            for (p, k) in all.iter().zip(&images) {
                assert_eq!(p.num_blocks() + k.num_blocks(), n + 1);
                assert_eq!(kreweras(k).unwrap().block_type(), p.block_type());
            }
        }
    }

    #[test]
    fn moebius_examples() {
        let p = sp("1,2|3");
        assert_eq!(moebius(&PartitionInterval::new(p.clone(), p).unwrap()).unwrap(), 1);
        let two = PartitionInterval::new(SetPartition::singletons(2), SetPartition::one_block(2)).unwrap();
        assert_eq!(moebius(&two).unwrap(), -1);
        let four = PartitionInterval::new(SetPartition::singletons(4), SetPartition::one_block(4)).unwrap();
        assert_eq!(moebius_by_recursion(&four).unwrap(), -5);
        assert_eq!(moebius(&four).unwrap(), -5);
        assert!(matches!(
            PartitionInterval::new(sp("1,2|3"), sp("1,3|2")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn moebius_factorization_agrees_with_recursion() {
        for n in 1..=6 {
            let all = enumerate_nc(n).unwrap();
            for p in &all {
                for q in &all {
                    if refines(p, q).unwrap() {
                        let iv = PartitionInterval::new(p.clone(), q.clone()).unwrap();
                        assert_eq!(moebius(&iv).unwrap(), moebius_by_recursion(&iv).unwrap(), "[{p}, {q}]");
                    }
                }
            }
        }
    }

    #[test]
    fn display_round_trip() {
        let p = sp("3,1|2");
        assert_eq!(p.to_string(), "1,3|2");
        assert_eq!(p.n(), 3);
        assert!("1,2|2".parse::<SetPartition>().is_err());
        assert!("1,3".parse::<SetPartition>().is_err());
        assert_eq!(serde_json::to_string(&p).unwrap(), "\"1,3|2\"");
    }
}

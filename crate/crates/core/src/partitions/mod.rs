//! Set partitions of `[n] = {1, ..., n}` and the non-crossing sublattice.
//!
//! A [`SetPartition`] is always stored in canonical form: every block sorted
//! ascending, blocks ordered by their minimum. Two partitions are equal exactly
//! when they have the same blocks, so derived `Eq`/`Hash` are meaningful.

mod enumerate;
mod graph;
mod mobius;

pub use enumerate::{
    enumerate_pair_noncrossing, enumerate_pair_partitions, enumerate_partitions,
    enumerate_noncrossing, noncrossing_by_construction, noncrossing_by_filter, Partitions,
};
pub use graph::{classify_pair_partition, count_bicon_pairs, intersection_graph, IntersectionGraph, PairClass};
pub use mobius::{mobius_nc, noncrossing_interval};

use std::fmt;
use std::str::FromStr;

use crate::error::{arg_err, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Builds a partition from arbitrary blocks, validating coverage and
    /// disjointness and bringing the result into canonical form.
    pub fn from_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut canon = Vec::with_capacity(blocks.len());
        for mut block in blocks {
            if block.is_empty() {
                return arg_err("empty block");
            }
            block.sort_unstable();
            for &e in &block {
                if e == 0 || e > n {
                    return arg_err(format!("element {e} outside [1, {n}]"));
                }
                if seen[e] {
                    return arg_err(format!("element {e} appears twice"));
                }
                seen[e] = true;
            }
            canon.push(block);
        }
        if let Some(missing) = (1..=n).find(|&e| !seen[e]) {
            return arg_err(format!("element {missing} is not covered"));
        }
        canon.sort_unstable_by_key(|b| b[0]);
        Ok(SetPartition { n, blocks: canon })
    }

    /// Builds a partition from a label per element: `labels[i-1]` names the
    /// block of element `i`. Labels are arbitrary; equal labels share a block.
    pub fn from_labels<L: Eq + Copy>(labels: &[L]) -> Self {
        let mut keys: Vec<L> = Vec::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match keys.iter().position(|&k| k == l) {
                Some(b) => blocks[b].push(i + 1),
                None => {
                    keys.push(l);
                    blocks.push(vec![i + 1]);
                }
            }
        }
        // first-occurrence order is already ordered by minimum
        SetPartition { n: labels.len(), blocks }
    }

    pub(crate) fn from_canonical(n: usize, blocks: Vec<Vec<usize>>) -> Self {
        debug_assert!(Self::from_blocks(n, blocks.clone()).map(|p| p.blocks == blocks).unwrap_or(false));
        SetPartition { n, blocks }
    }

    /// `0_n`: every element its own block.
    pub fn singletons(n: usize) -> Self {
        SetPartition { n, blocks: (1..=n).map(|i| vec![i]).collect() }
    }

    /// `1_n`: a single block (empty partition when `n = 0`).
    pub fn full(n: usize) -> Self {
        let blocks = if n == 0 { vec![] } else { vec![(1..=n).collect()] };
        SetPartition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks, `|π|`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Block index (into [`blocks`](Self::blocks)) for each element; entry
    /// `i-1` belongs to element `i`. This is the restricted growth string.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (b, block) in self.blocks.iter().enumerate() {
            for &e in block {
                labels[e - 1] = b;
            }
        }
        labels
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn is_pair(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 2)
    }

    pub fn has_singleton(&self) -> bool {
        self.blocks.iter().any(|b| b.len() == 1)
    }

    /// True when no two distinct blocks interleave as `v1 < w1 < v2 < w2`.
    pub fn is_noncrossing(&self) -> bool {
        labels_noncrossing(&self.labels(), &self.blocks)
    }

    /// Image of the partition under a relabelling of the ground set. `f` must
    /// be a bijection of `[n]` (1-indexed).
    pub fn map_elements(&self, f: impl Fn(usize) -> usize) -> SetPartition {
        let blocks = self.blocks.iter().map(|b| b.iter().map(|&e| f(e)).collect()).collect();
        Self::from_blocks(self.n, blocks).expect("map_elements requires a bijection of [n]")
    }

    /// Order-reversing relabelling `k -> n + 1 - k`.
    pub fn reversed(&self) -> SetPartition {
        let n = self.n;
        self.map_elements(|k| n + 1 - k)
    }

    /// Restriction to the elements of `subset` (sorted ascending), relabelled
    /// onto `[subset.len()]` by rank.
    pub fn restrict(&self, subset: &[usize]) -> SetPartition {
        let labels = self.labels();
        let restricted: Vec<usize> = subset.iter().map(|&e| labels[e - 1]).collect();
        SetPartition::from_labels(&restricted)
    }
}

/// Stack test for crossings: an element that continues an open block must find
/// that block on top of the stack.
fn labels_noncrossing(labels: &[usize], blocks: &[Vec<usize>]) -> bool {
    let mut stack: Vec<usize> = Vec::new();
    for (i, &b) in labels.iter().enumerate() {
        let e = i + 1;
        let block = &blocks[b];
        let first = block[0] == e;
        let last = *block.last().unwrap() == e;
        if first {
            if !last {
                stack.push(b);
            }
        } else {
            if stack.last() != Some(&b) {
                return false;
            }
            if last {
                stack.pop();
            }
        }
    }
    true
}

/// `σ ≤ π`: every block of `sigma` lies inside a single block of `pi`.
pub fn is_refinement(sigma: &SetPartition, pi: &SetPartition) -> Result<bool> {
    if sigma.n != pi.n {
        return arg_err(format!("ground sets differ: {} vs {}", sigma.n, pi.n));
    }
    let labels = pi.labels();
    Ok(sigma
        .blocks
        .iter()
        .all(|b| b.iter().all(|&e| labels[e - 1] == labels[b[0] - 1])))
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, block) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses `"1,4|2,5|3,6"`; the ground set is `[total element count]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SetPartition::singletons(0));
        }
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let block = part
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad element {t:?} in {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum();
        SetPartition::from_blocks(n, blocks).map_err(|e| Error::Parse(e.to_string()))
    }
}

//! Meandric systems: two non-crossing pairings of `2m` points on a line, one
//! drawn above and one below, which together trace closed loops.
//!
//! Serialization convention: the left-node pairing of a bi-non-crossing
//! partition becomes `top` and the right-node pairing becomes `bottom`. The
//! loop count does not depend on this choice.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bichromatic::{combine_alternating, BncPartition};
use crate::error::{arg_err, Error, Result};
use crate::partitions::{enumerate_pair_noncrossing, SetPartition};

/// Largest size accepted by [`loop_distribution`]; `Catalan(m)²` systems are visited.
pub const MAX_DISTRIBUTION_SIZE: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeandricSystem {
    top: SetPartition,
    bottom: SetPartition,
}

impl MeandricSystem {
    pub fn new(top: SetPartition, bottom: SetPartition) -> Result<Self> {
        for (name, arcs) in [("top", &top), ("bottom", &bottom)] {
            if arcs.n() % 2 == 1 || !arcs.is_pair() || !arcs.is_noncrossing() {
                return arg_err(format!("{name} = {arcs} is not a non-crossing pairing"));
            }
        }
        if top.n() != bottom.n() {
            return arg_err("top and bottom must pair the same points");
        }
        Ok(MeandricSystem { top, bottom })
    }

    /// Number of loops available: `m` with `2m` points.
    pub fn size(&self) -> usize {
        self.top.n() / 2
    }

    pub fn top(&self) -> &SetPartition {
        &self.top
    }

    pub fn bottom(&self) -> &SetPartition {
        &self.bottom
    }

    /// Inverse of [`from_bnc`]: the alternating vertically split pair
    /// partition on `[4m]` with this system's arcs.
    pub fn to_bnc(&self) -> BncPartition {
        combine_alternating(&self.top, &self.bottom).expect("NC2 pairings always combine")
    }
}

fn partners(arcs: &SetPartition) -> Vec<usize> {
    let mut partner = vec![0; arcs.n() + 1];
    for b in arcs.blocks() {
        partner[b[0]] = b[1];
        partner[b[1]] = b[0];
    }
    partner
}

/// `M`: sends `p ∈ BNC^a_{vs,2}(2m)` to the meandric system of size `m`.
pub fn from_bnc(p: &BncPartition) -> Result<MeandricSystem> {
    if !p.partition().is_pair() {
        return arg_err(format!("{} has a block that is not a pair", p.partition()));
    }
    let (left, right) = p.alternating_sides()?;
    MeandricSystem::new(left, right)
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut x = x;
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// `c(M)`: union-find over the `2m` points, one union per arc.
pub fn loop_count(system: &MeandricSystem) -> usize {
    let points = system.top.n();
    let mut uf = UnionFind::new(points);
    for arcs in [&system.top, &system.bottom] {
        for b in arcs.blocks() {
            uf.union(b[0] - 1, b[1] - 1);
        }
    }
    (0..points).filter(|&x| uf.find(x) == x).count()
}

/// `c(M)` by walking each loop, alternating top and bottom arcs.
pub fn loop_count_by_tracing(system: &MeandricSystem) -> usize {
    let points = system.top.n();
    let (up, down) = (partners(&system.top), partners(&system.bottom));
    let mut visited = vec![false; points + 1];
    let mut loops = 0;
    for start in 1..=points {
        if visited[start] {
            continue;
        }
        loops += 1;
        let mut at = start;
        loop {
            visited[at] = true;
            let across = up[at];
            visited[across] = true;
            at = down[across];
            if at == start {
                break;
            }
        }
    }
    loops
}

/// Histogram of `c(M)` over all `Catalan(m)²` meandric systems of size `m`.
pub fn loop_distribution(m: usize) -> Result<BTreeMap<usize, u64>> {
    if m > MAX_DISTRIBUTION_SIZE {
        return Err(Error::Resource(format!(
            "loop_distribution visits Catalan(m)^2 systems; size {m} exceeds the limit {MAX_DISTRIBUTION_SIZE}"
        )));
    }
    let pairings = enumerate_pair_noncrossing(2 * m);
    let hist = pairings
        .par_iter()
        .map(|top| {
            let mut local = BTreeMap::new();
            for bottom in &pairings {
                let system = MeandricSystem { top: top.clone(), bottom: bottom.clone() };
                *local.entry(loop_count(&system)).or_insert(0u64) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut acc, part| {
            for (c, k) in part {
                *acc.entry(c).or_insert(0) += k;
            }
            acc
        });
    Ok(hist)
}

impl fmt::Display for MeandricSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "top={};bottom={}", self.top, self.bottom)
    }
}

impl FromStr for MeandricSystem {
    type Err = Error;

    /// Parses `"top=1,2|3,4;bottom=1,4|2,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let mut top = None;
        let mut bottom = None;
        for part in s.trim().split(';') {
            match part.trim().split_once('=') {
                Some(("top", arcs)) => top = Some(arcs.parse::<SetPartition>()?),
                Some(("bottom", arcs)) => bottom = Some(arcs.parse::<SetPartition>()?),
                _ => return Err(Error::Parse(format!("expected top=...;bottom=..., got {s:?}"))),
            }
        }
        match (top, bottom) {
            (Some(t), Some(b)) => MeandricSystem::new(t, b).map_err(|e| Error::Parse(e.to_string())),
            _ => Err(Error::Parse(format!("missing top or bottom in {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bichromatic::enumerate_bnc_vs2_alt;
    use crate::rational::catalan;
    use std::collections::HashSet;

    fn sys(s: &str) -> MeandricSystem {
        s.parse().unwrap()
    }

    #[test]
    fn bijection_small_sizes() {
        let one = enumerate_bnc_vs2_alt(2);
        let m = from_bnc(&one[0]).unwrap();
        assert_eq!(m, sys("top=1,2;bottom=1,2"));

        let images: HashSet<MeandricSystem> =
            enumerate_bnc_vs2_alt(4).iter().map(|p| from_bnc(p).unwrap()).collect();
        assert_eq!(images.len(), 4);
        let nc2 = enumerate_pair_noncrossing(4);
        for t in &nc2 {
            for b in &nc2 {
                assert!(images.contains(&MeandricSystem::new(t.clone(), b.clone()).unwrap()));
            }
        }
    }

    #[test]
    fn round_trip() {
        for m in 0..=3 {
            for p in enumerate_bnc_vs2_alt(2 * m) {
                assert_eq!(from_bnc(&p).unwrap().to_bnc(), p);
            }
        }
    }

    #[test]
    fn from_bnc_rejects_non_pairs() {
        let tau = combine_alternating(&SetPartition::full(2), &SetPartition::singletons(2)).unwrap();
        assert!(from_bnc(&tau).is_err());
    }

    #[test]
    fn loop_examples() {
        assert_eq!(loop_count(&sys("top=1,2|3,4;bottom=1,4|2,3")), 1);
        assert_eq!(loop_count(&sys("top=1,2;bottom=1,2")), 1);
        let same = sys("top=1,4|2,3|5,6;bottom=1,4|2,3|5,6");
        assert_eq!(loop_count(&same), 3);
        // the size-4 picture with two loops
        let fig = sys("top=1,6|2,5|3,4|7,8;bottom=1,8|2,3|4,5|6,7");
        assert_eq!(loop_count(&fig), 2);
        assert_eq!(loop_count_by_tracing(&fig), 2);
    }

    #[test]
    fn rejects_bad_systems() {
        assert!("top=1,3|2,4;bottom=1,2|3,4".parse::<MeandricSystem>().is_err());
        assert!("top=1,2;bottom=1,2|3,4".parse::<MeandricSystem>().is_err());
        assert!("top=1,2,3,4;bottom=1,2|3,4".parse::<MeandricSystem>().is_err());
        assert!("bottom=1,2".parse::<MeandricSystem>().is_err());
    }

    #[test]
    fn distribution_examples() {
        assert_eq!(loop_distribution(1).unwrap(), BTreeMap::from([(1, 1)]));
        assert_eq!(loop_distribution(2).unwrap(), BTreeMap::from([(1, 2), (2, 2)]));
        for m in 1..=5 {
            let hist = loop_distribution(m).unwrap();
            let c = catalan(m);
            assert_eq!(hist.values().sum::<u64>(), c * c);
            assert_eq!(hist[&m], c);
            assert!(hist.keys().all(|&k| (1..=m).contains(&k)));
        }
        assert!(matches!(loop_distribution(7), Err(Error::Resource(_))));
    }

    #[test]
    fn full_loops_only_on_diagonal_and_symmetry() {
        let nc2 = enumerate_pair_noncrossing(8);
        for t in &nc2 {
            for b in &nc2 {
                let s = MeandricSystem::new(t.clone(), b.clone()).unwrap();
                let swapped = MeandricSystem::new(b.clone(), t.clone()).unwrap();
                let c = loop_count(&s);
                assert_eq!(c, loop_count(&swapped));
                assert_eq!(c, loop_count_by_tracing(&s));
                assert_eq!(c == 4, t == b);
            }
        }
    }
}

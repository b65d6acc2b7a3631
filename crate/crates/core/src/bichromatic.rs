//! Left/right designations `χ`, the reading order `≺_χ` and bi-non-crossing
//! partitions.
//!
//! `χ` reads its left positions in increasing order followed by its right
//! positions in decreasing order; `s_χ(k)` is the `k`-th position read. A
//! partition is bi-non-crossing when pulling it back along `s_χ` gives a
//! non-crossing partition, so `BNC(χ)` is simply `NC(n)` pushed through `s_χ`.

use std::fmt;
use std::str::FromStr;

use crate::error::{arg_err, Error, Result};
use crate::partitions::{enumerate_noncrossing, enumerate_pair_noncrossing, mobius_nc, SetPartition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChiMap {
    sides: Vec<Side>,
    // perm[k-1] = s_χ(k)
    perm: Vec<usize>,
    // inv[i-1] = s_χ^{-1}(i)
    inv: Vec<usize>,
}

impl ChiMap {
    pub fn new(sides: Vec<Side>) -> Self {
        let n = sides.len();
        let mut perm: Vec<usize> = (1..=n).filter(|&i| sides[i - 1] == Side::Left).collect();
        perm.extend((1..=n).rev().filter(|&i| sides[i - 1] == Side::Right));
        let mut inv = vec![0; n];
        for (k, &i) in perm.iter().enumerate() {
            inv[i - 1] = k + 1;
        }
        ChiMap { sides, perm, inv }
    }

    /// `χ_{m,a}` on `[2m]`: odd positions left, even positions right.
    pub fn alternating(m: usize) -> Self {
        Self::new((1..=2 * m).map(|k| if k % 2 == 1 { Side::Left } else { Side::Right }).collect())
    }

    pub fn n(&self) -> usize {
        self.sides.len()
    }

    pub fn side(&self, i: usize) -> Side {
        self.sides[i - 1]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    /// `s_χ` as the list `(s_χ(1), ..., s_χ(n))`.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn s(&self, k: usize) -> usize {
        self.perm[k - 1]
    }

    pub fn s_inv(&self, i: usize) -> usize {
        self.inv[i - 1]
    }

    /// `a ≺_χ b`.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.s_inv(a) < self.s_inv(b)
    }

    pub fn positions(&self, side: Side) -> Vec<usize> {
        (1..=self.n()).filter(|&i| self.side(i) == side).collect()
    }

    /// `s_χ^{-1} · π`.
    pub fn pull_back(&self, pi: &SetPartition) -> SetPartition {
        pi.map_elements(|i| self.s_inv(i))
    }

    /// `s_χ · π`.
    pub fn push_forward(&self, pi: &SetPartition) -> SetPartition {
        pi.map_elements(|k| self.s(k))
    }
}

pub fn chi_alternating(m: usize) -> ChiMap {
    ChiMap::alternating(m)
}

pub fn chi_permutation(chi: &ChiMap) -> Vec<usize> {
    chi.permutation().to_vec()
}

impl fmt::Display for ChiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sides {
            f.write_str(match s {
                Side::Left => "L",
                Side::Right => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for ChiMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sides = s
            .trim()
            .chars()
            .map(|c| match c {
                'L' | 'l' => Ok(Side::Left),
                'R' | 'r' => Ok(Side::Right),
                other => Err(Error::Parse(format!("chi must be over {{L,R}}, found {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChiMap::new(sides))
    }
}

/// True iff `s_χ^{-1} · π` is non-crossing.
pub fn is_bnc(pi: &SetPartition, chi: &ChiMap) -> Result<bool> {
    if pi.n() != chi.n() {
        return arg_err(format!("partition on [{}] but chi on [{}]", pi.n(), chi.n()));
    }
    Ok(chi.pull_back(pi).is_noncrossing())
}

/// A partition together with a `χ` under which it is bi-non-crossing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BncPartition {
    partition: SetPartition,
    chi: ChiMap,
}

impl BncPartition {
    pub fn new(partition: SetPartition, chi: ChiMap) -> Result<Self> {
        if !is_bnc(&partition, &chi)? {
            return arg_err(format!("{partition} is not bi-non-crossing for chi = {chi}"));
        }
        Ok(BncPartition { partition, chi })
    }

    pub fn partition(&self) -> &SetPartition {
        &self.partition
    }

    pub fn chi(&self) -> &ChiMap {
        &self.chi
    }

    /// No block mixes left and right positions.
    pub fn is_vertically_split(&self) -> bool {
        self.partition
            .blocks()
            .iter()
            .all(|b| b.iter().all(|&i| self.chi.side(i) == self.chi.side(b[0])))
    }

    /// For a vertically split partition over `χ_{m,a}`: the partitions on the
    /// `m` left nodes (`2k-1 ↦ k`) and on the `m` right nodes (`2k ↦ k`).
    pub fn alternating_sides(&self) -> Result<(SetPartition, SetPartition)> {
        let n = self.partition.n();
        if n % 2 == 1 || self.chi != ChiMap::alternating(n / 2) {
            return arg_err("alternating_sides needs chi alternating");
        }
        if !self.is_vertically_split() {
            return arg_err(format!("{} is not vertically split", self.partition));
        }
        let odd: Vec<usize> = (1..=n).step_by(2).collect();
        let even: Vec<usize> = (2..=n).step_by(2).collect();
        Ok((self.partition.restrict(&odd), self.partition.restrict(&even)))
    }
}

pub fn is_vertically_split(p: &BncPartition) -> bool {
    p.is_vertically_split()
}

/// `BNC(χ)`: each non-crossing partition of `[n]` pushed through `s_χ`.
pub fn enumerate_bnc(chi: &ChiMap) -> Vec<BncPartition> {
    enumerate_noncrossing(chi.n())
        .map(|nc| BncPartition { partition: chi.push_forward(&nc), chi: chi.clone() })
        .collect()
}

/// Interleaves a left partition and a right partition of `[m]` onto `[2m]`.
pub fn combine_alternating(left: &SetPartition, right: &SetPartition) -> Result<BncPartition> {
    let m = left.n();
    if right.n() != m {
        return arg_err("left and right partitions must share the same size");
    }
    let mut blocks: Vec<Vec<usize>> = left.blocks().iter().map(|b| b.iter().map(|&k| 2 * k - 1).collect()).collect();
    blocks.extend(right.blocks().iter().map(|b| b.iter().map(|&k| 2 * k).collect()));
    BncPartition::new(SetPartition::from_blocks(2 * m, blocks)?, ChiMap::alternating(m))
}

/// `BNC^a_vs(m)`: one non-crossing partition on the left nodes times one on
/// the right nodes, `Catalan(m)²` items.
pub fn enumerate_bnc_vs_alt(m: usize) -> Vec<BncPartition> {
    let nc: Vec<SetPartition> = enumerate_noncrossing(m).collect();
    let mut out = Vec::with_capacity(nc.len() * nc.len());
    for left in &nc {
        for right in &nc {
            out.push(combine_alternating(left, right).expect("NC x NC is vertically split BNC"));
        }
    }
    out
}

/// `BNC^a_{vs,2}(m)`: the pair-block subfamily, `|NC₂(m)|²` items.
pub fn enumerate_bnc_vs2_alt(m: usize) -> Vec<BncPartition> {
    let nc2 = enumerate_pair_noncrossing(m);
    let mut out = Vec::with_capacity(nc2.len() * nc2.len());
    for left in &nc2 {
        for right in &nc2 {
            out.push(combine_alternating(left, right).expect("NC2 x NC2 is vertically split BNC"));
        }
    }
    out
}

/// `μ_BNC(π, σ) = μ_NC(s_χ^{-1}·π, s_χ^{-1}·σ)`.
pub fn mobius_bnc(pi: &BncPartition, sigma: &BncPartition) -> Result<i64> {
    if pi.chi != sigma.chi {
        return arg_err(format!("chi mismatch: {} vs {}", pi.chi, sigma.chi));
    }
    mobius_nc(&pi.chi.pull_back(&pi.partition), &pi.chi.pull_back(&sigma.partition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, is_refinement};
    use crate::rational::catalan;
    use std::collections::HashSet;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    fn chi(s: &str) -> ChiMap {
        s.parse().unwrap()
    }

    // Independent crossing test directly in the ≺_χ order.
    fn bnc_by_order(pi: &SetPartition, chi: &ChiMap) -> bool {
        let blocks = pi.blocks();
        for (a, v) in blocks.iter().enumerate() {
            for (b, w) in blocks.iter().enumerate() {
                if a == b {
                    continue;
                }
                for &v1 in v {
                    for &w1 in w {
                        for &v2 in v {
                            for &w2 in w {
                                if chi.precedes(v1, w1) && chi.precedes(w1, v2) && chi.precedes(v2, w2) {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn all_chis(n: usize) -> Vec<ChiMap> {
        (0..1u32 << n)
            .map(|mask| {
                ChiMap::new((0..n).map(|i| if mask >> i & 1 == 1 { Side::Right } else { Side::Left }).collect())
            })
            .collect()
    }

    #[test]
    fn alternating_maps() {
        assert_eq!(chi_alternating(1).to_string(), "LR");
        let c = chi_alternating(2);
        assert_eq!(c.to_string(), "LRLR");
        assert_eq!(chi_permutation(&c), vec![1, 3, 4, 2]);
        let c3 = chi_alternating(3);
        assert_eq!(c3.positions(Side::Left), vec![1, 3, 5]);
        assert_eq!(c3.positions(Side::Right), vec![2, 4, 6]);
        assert_eq!(chi_alternating(0).n(), 0);
    }

    #[test]
    fn permutation_examples() {
        assert_eq!(chi_permutation(&chi("LLLL")), vec![1, 2, 3, 4]);
        assert_eq!(chi_permutation(&chi("LRRLLR")), vec![1, 4, 5, 6, 3, 2]);
        assert_eq!(chi_permutation(&chi("RRR")), vec![3, 2, 1]);
        let c = chi("LRRLLR");
        for i in 1..=6 {
            assert_eq!(c.s(c.s_inv(i)), i);
        }
        assert!(c.precedes(5, 6) && c.precedes(6, 2) && !c.precedes(2, 3));
        assert!("LXR".parse::<ChiMap>().is_err());
    }

    #[test]
    fn membership_examples() {
        let pi = p("1,4|2,5|3,6");
        assert!(is_bnc(&pi, &chi("LRRLLR")).unwrap());
        assert!(!is_bnc(&pi, &chi("LLLLLL")).unwrap());
        assert!(is_bnc(&SetPartition::singletons(6), &chi("RLRLRR")).unwrap());
        assert!(is_bnc(&pi, &chi("LRR")).is_err());
    }

    #[test]
    fn enumeration_matches_filter_and_order_test() {
        for n in 0..=6 {
            let all: Vec<SetPartition> = enumerate_partitions(n).collect();
            for c in all_chis(n) {
                let built: HashSet<SetPartition> =
                    enumerate_bnc(&c).into_iter().map(|b| b.partition().clone()).collect();
                let filtered: HashSet<SetPartition> =
                    all.iter().filter(|pi| is_bnc(pi, &c).unwrap()).cloned().collect();
                assert_eq!(built.len() as u64, catalan(n));
                assert_eq!(built, filtered, "chi = {c}");
                for pi in &all {
                    assert_eq!(is_bnc(pi, &c).unwrap(), bnc_by_order(pi, &c));
                }
            }
        }
    }

    #[test]
    fn small_bnc_counts() {
        assert_eq!(enumerate_bnc(&chi("LR")).len(), 2);
        assert_eq!(enumerate_bnc(&chi("RLLR")).len(), 14);
        for b in enumerate_bnc(&chi("RLLRL")) {
            assert!(is_bnc(b.partition(), b.chi()).unwrap());
        }
    }

    #[test]
    fn vertical_split_examples() {
        let c = chi("LRRLLR");
        let crossing = BncPartition::new(p("1,4|2,5|3,6"), c.clone()).unwrap();
        assert!(!is_vertically_split(&crossing));
        let split = BncPartition::new(p("1,4,5|2,6|3"), c.clone()).unwrap();
        assert!(is_vertically_split(&split));
        let all_single = BncPartition::new(SetPartition::singletons(6), c).unwrap();
        assert!(is_vertically_split(&all_single));
        // τ_ℓr on 1_ℓ=1, 1_r=2, 2_ℓ=3, 2_r=4
        let tau_lr = BncPartition::new(p("1,3|2,4"), chi_alternating(2)).unwrap();
        assert!(is_vertically_split(&tau_lr));
    }

    #[test]
    fn vs_alt_family() {
        assert_eq!(enumerate_bnc_vs_alt(1).len(), 1);
        assert_eq!(enumerate_bnc_vs_alt(3).len(), 25);
        let four: HashSet<SetPartition> =
            enumerate_bnc_vs_alt(2).into_iter().map(|b| b.partition().clone()).collect();
        let expected: HashSet<SetPartition> =
            ["1|2|3|4", "1,3|2|4", "1|3|2,4", "1,3|2,4"].iter().map(|s| p(s)).collect();
        assert_eq!(four, expected);
        for m in 0..=4 {
            let family = enumerate_bnc_vs_alt(m);
            assert_eq!(family.len() as u64, catalan(m) * catalan(m));
            let mut images = HashSet::new();
            for b in &family {
                assert!(b.is_vertically_split());
                assert!(is_bnc(b.partition(), b.chi()).unwrap());
                let (l, r) = b.alternating_sides().unwrap();
                assert!(l.is_noncrossing() && r.is_noncrossing());
                assert!(images.insert((l, r)), "map to (left, right) must be injective");
            }
        }
    }

    #[test]
    fn vs2_alt_family() {
        let two = enumerate_bnc_vs2_alt(2);
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].partition(), &p("1,3|2,4"));
        assert!(enumerate_bnc_vs2_alt(3).is_empty());
        assert_eq!(enumerate_bnc_vs2_alt(4).len(), 4);
        assert!(enumerate_bnc_vs2_alt(6).iter().all(|b| b.partition().is_pair()));
    }

    #[test]
    fn mobius_bnc_examples() {
        let c = chi("LLLL");
        let zero = BncPartition::new(SetPartition::singletons(4), c.clone()).unwrap();
        let one = BncPartition::new(SetPartition::full(4), c.clone()).unwrap();
        assert_eq!(mobius_bnc(&zero, &zero).unwrap(), 1);
        assert_eq!(
            mobius_bnc(&zero, &one).unwrap(),
            mobius_nc(&SetPartition::singletons(4), &SetPartition::full(4)).unwrap()
        );
        let a = chi_alternating(2);
        let zero_a = BncPartition::new(SetPartition::singletons(4), a.clone()).unwrap();
        let one_a = BncPartition::new(SetPartition::full(4), a).unwrap();
        assert_eq!(mobius_bnc(&zero_a, &one_a).unwrap(), -5);
        assert!(mobius_bnc(&zero, &one_a).is_err());
    }

    #[test]
    fn mobius_bnc_satisfies_recursion() {
        for n in 0..=5 {
            for c in all_chis(n) {
                let family = enumerate_bnc(&c);
                for pi in &family {
                    for sigma in &family {
                        if !is_refinement(pi.partition(), sigma.partition()).unwrap() {
                            assert_eq!(mobius_bnc(pi, sigma).unwrap(), 0);
                            continue;
                        }
                        let between = family.iter().filter(|t| {
                            is_refinement(pi.partition(), t.partition()).unwrap()
                                && is_refinement(t.partition(), sigma.partition()).unwrap()
                        });
                        let (mut up, mut down) = (0, 0);
                        for t in between {
                            up += mobius_bnc(t, sigma).unwrap();
                            down += mobius_bnc(pi, t).unwrap();
                        }
                        let delta = i64::from(pi == sigma);
                        assert_eq!((up, down), (delta, delta));
                    }
                }
            }
        }
    }
}

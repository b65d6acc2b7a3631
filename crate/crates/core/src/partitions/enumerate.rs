use super::SetPartition;

/// All partitions of `[n]` in restricted-growth-string order.
pub struct Partitions {
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[0..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl Partitions {
    fn new(n: usize) -> Self {
        Partitions { rgs: vec![0; n], prefix_max: vec![0; n], started: false, done: false }
    }

    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        for i in (1..n).rev() {
            if self.rgs[i] <= self.prefix_max[i - 1] {
                self.rgs[i] += 1;
                self.prefix_max[i] = self.prefix_max[i - 1].max(self.rgs[i]);
                for j in i + 1..n {
                    self.rgs[j] = 0;
                    self.prefix_max[j] = self.prefix_max[i];
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(SetPartition::from_labels(&self.rgs))
    }
}

/// Every partition of `[n]` exactly once; `Bell(n)` items, one (empty) for `n = 0`.
pub fn enumerate_partitions(n: usize) -> Partitions {
    Partitions::new(n)
}

/// Non-crossing partitions of `[n]`; `Catalan(n)` items.
pub fn enumerate_noncrossing(n: usize) -> Box<dyn Iterator<Item = SetPartition>> {
    if n <= 10 {
        Box::new(noncrossing_by_filter(n))
    } else {
        Box::new(noncrossing_by_construction(n).into_iter())
    }
}

pub fn noncrossing_by_filter(n: usize) -> impl Iterator<Item = SetPartition> {
    enumerate_partitions(n).filter(SetPartition::is_noncrossing)
}

/// Builds NC(n) from the block containing the first element and independent
/// non-crossing fillings of the gaps it leaves.
pub fn noncrossing_by_construction(n: usize) -> Vec<SetPartition> {
    let mut memo: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
    nc_blocks(n, &mut memo)
        .iter()
        .map(|blocks| SetPartition::from_blocks(n, blocks.clone()).expect("construction yields partitions"))
        .collect()
}

// Block lists of all NC partitions of [len], memoized by length.
fn nc_blocks(len: usize, memo: &mut Vec<Vec<Vec<Vec<usize>>>>) -> Vec<Vec<Vec<usize>>> {
    while memo.len() <= len {
        let k = memo.len();
        let built = build_nc(k, memo);
        memo.push(built);
    }
    memo[len].clone()
}

fn build_nc(len: usize, memo: &[Vec<Vec<Vec<usize>>>]) -> Vec<Vec<Vec<usize>>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    // choose the rest of 1's block as a subset of {2..=len}
    for mask in 0u64..(1u64 << (len - 1)) {
        let mut first_block = vec![1];
        first_block.extend((2..=len).filter(|&e| mask >> (e - 2) & 1 == 1));
        // gaps between consecutive members, and after the last
        let mut gaps = Vec::new();
        for w in first_block.windows(2) {
            gaps.push((w[0] + 1, w[1] - 1));
        }
        gaps.push((*first_block.last().unwrap() + 1, len));
        let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![first_block]];
        for (lo, hi) in gaps {
            if lo > hi {
                continue;
            }
            let fillings = &memo[hi - lo + 1];
            let mut next = Vec::with_capacity(partial.len() * fillings.len());
            for base in &partial {
                for fill in fillings {
                    let mut blocks = base.clone();
                    blocks.extend(fill.iter().map(|b| b.iter().map(|&e| e + lo - 1).collect()));
                    next.push(blocks);
                }
            }
            partial = next;
        }
        out.extend(partial);
    }
    out
}

/// Non-crossing pair partitions, `NC₂(n)`; empty when `n` is odd.
pub fn enumerate_pair_noncrossing(n: usize) -> Vec<SetPartition> {
    if n % 2 == 1 {
        return Vec::new();
    }
    // table[k] holds the pairings of [k]; 1 pairs with j, inside and outside fill independently
    let mut table: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![vec![]]];
    for len in 1..=n {
        let mut here = Vec::new();
        if len % 2 == 0 {
            for j in (2..=len).step_by(2) {
                for inner in &table[j - 2] {
                    for outer in &table[len - j] {
                        let mut blocks = vec![vec![1, j]];
                        blocks.extend(inner.iter().map(|b| b.iter().map(|&e| e + 1).collect()));
                        blocks.extend(outer.iter().map(|b| b.iter().map(|&e| e + j).collect()));
                        here.push(blocks);
                    }
                }
            }
        }
        table.push(here);
    }
    table[n]
        .iter()
        .map(|blocks| SetPartition::from_blocks(n, blocks.clone()).expect("pairs cover [n]"))
        .collect()
}

/// All pair partitions of `[n]`, `(n-1)!!` items; empty when `n` is odd.
pub fn enumerate_pair_partitions(n: usize) -> Vec<SetPartition> {
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut partner = vec![0usize; n + 1];
    all_pairs(n, &mut partner, &mut out);
    out
}

fn all_pairs(n: usize, partner: &mut [usize], out: &mut Vec<SetPartition>) {
    let Some(first) = (1..=n).find(|&e| partner[e] == 0) else {
        let blocks = (1..=n).filter(|&e| partner[e] > e).map(|e| vec![e, partner[e]]).collect();
        out.push(SetPartition::from_canonical(n, blocks));
        return;
    };
    for other in first + 1..=n {
        if partner[other] == 0 {
            partner[first] = other;
            partner[other] = first;
            all_pairs(n, partner, out);
            partner[first] = 0;
            partner[other] = 0;
        }
    }
}

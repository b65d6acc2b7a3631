use std::collections::{HashMap, VecDeque};
use std::sync::{Mutex, OnceLock};

use super::{enumerate_pair_partitions, SetPartition};
use crate::error::{arg_err, Error, Result};

/// Largest `2j` for which `|P₂^bicon(2j)|` is counted by brute force;
/// `(2j-1)!!` pair partitions are visited.
pub const MAX_BICON_ORDER: usize = 16;

/// Blocks as vertices; an edge joins two blocks that interleave.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionGraph {
    adjacency: Vec<Vec<bool>>,
}

impl IntersectionGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        let n = self.vertex_count();
        (0..n).map(|i| (i + 1..n).filter(|&j| self.adjacency[i][j]).count()).sum()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().enumerate().filter(|(_, &e)| e).map(|(w, _)| w)
    }

    /// Connected with at least one vertex.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == n
    }

    /// Two-colourable (every component).
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let c = colour[v].unwrap();
                for w in self.neighbours(v) {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

/// Two sorted blocks cross iff their merged sequence alternates owners at
/// least four times (`V W V W`).
fn blocks_cross(v: &[usize], w: &[usize]) -> bool {
    let (mut i, mut j) = (0, 0);
    let mut runs = 0;
    let mut last: Option<bool> = None;
    while i < v.len() || j < w.len() {
        let from_v = j == w.len() || (i < v.len() && v[i] < w[j]);
        if from_v {
            i += 1;
        } else {
            j += 1;
        }
        if last != Some(from_v) {
            runs += 1;
            last = Some(from_v);
        }
    }
    runs >= 4
}

pub fn intersection_graph(pi: &SetPartition) -> IntersectionGraph {
    let blocks = pi.blocks();
    let k = blocks.len();
    let mut adjacency = vec![vec![false; k]; k];
    for a in 0..k {
        for b in a + 1..k {
            let e = blocks_cross(&blocks[a], &blocks[b]);
            adjacency[a][b] = e;
            adjacency[b][a] = e;
        }
    }
    IntersectionGraph { adjacency }
}

/// Membership of a partition in `P₂(n)`, `P₂^con(n)` and `P₂^bicon(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairClass {
    pub is_pair: bool,
    pub is_connected: bool,
    pub is_bipartite_connected: bool,
}

pub fn classify_pair_partition(pi: &SetPartition) -> PairClass {
    let is_pair = pi.is_pair();
    if !is_pair {
        return PairClass { is_pair, is_connected: false, is_bipartite_connected: false };
    }
    let g = intersection_graph(pi);
    let is_connected = g.is_connected();
    PairClass { is_pair, is_connected, is_bipartite_connected: is_connected && g.is_bipartite() }
}

fn bicon_cache() -> &'static Mutex<HashMap<usize, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `|P₂^bicon(2j)|` by exhaustive classification of all pair partitions.
pub fn count_bicon_pairs(two_j: usize) -> Result<u64> {
    if two_j < 2 || two_j % 2 == 1 {
        return arg_err(format!("count_bicon_pairs needs an even order >= 2, got {two_j}"));
    }
    if two_j > MAX_BICON_ORDER {
        return Err(Error::Resource(format!(
            "|P2^bicon({two_j})| would enumerate {two_j}-1 double-factorial pairings; limit is order {MAX_BICON_ORDER}"
        )));
    }
    if let Some(&c) = bicon_cache().lock().expect("bicon cache poisoned").get(&two_j) {
        return Ok(c);
    }
    let count = enumerate_pair_partitions(two_j)
        .iter()
        .filter(|p| classify_pair_partition(p).is_bipartite_connected)
        .count() as u64;
    bicon_cache().lock().expect("bicon cache poisoned").insert(two_j, count);
    Ok(count)
}

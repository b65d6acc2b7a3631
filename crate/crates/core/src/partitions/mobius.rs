use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use super::{enumerate_partitions, is_refinement, SetPartition};
use crate::error::{arg_err, Result};

type MobiusCache = RwLock<HashMap<(SetPartition, SetPartition), i64>>;

fn cache() -> &'static MobiusCache {
    static CACHE: OnceLock<MobiusCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// All non-crossing `τ` with `π ≤ τ ≤ σ`, found by merging blocks of `π`
/// inside each block of `σ`. Empty when `π` does not refine `σ`.
pub fn noncrossing_interval(pi: &SetPartition, sigma: &SetPartition) -> Result<Vec<SetPartition>> {
    if !is_refinement(pi, sigma)? {
        return Ok(Vec::new());
    }
    let sigma_labels = sigma.labels();
    // π-block indices grouped by the σ-block holding them
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); sigma.block_count()];
    for (b, block) in pi.blocks().iter().enumerate() {
        groups[sigma_labels[block[0] - 1]].push(b);
    }
    let group_partitions: Vec<Vec<Vec<usize>>> = groups
        .iter()
        .map(|g| enumerate_partitions(g.len()).map(|p| p.labels()).collect())
        .collect();

    let pi_labels = pi.labels();
    let mut out = Vec::new();
    let mut choice = vec![0usize; groups.len()];
    loop {
        // merged label of each π-block: (group, label within group)
        let mut merged = vec![(0usize, 0usize); pi.block_count()];
        for (g, members) in groups.iter().enumerate() {
            let labels = &group_partitions[g][choice[g]];
            for (i, &b) in members.iter().enumerate() {
                merged[b] = (g, labels[i]);
            }
        }
        let tau_labels: Vec<(usize, usize)> = pi_labels.iter().map(|&b| merged[b]).collect();
        let tau = SetPartition::from_labels(&tau_labels);
        if tau.is_noncrossing() {
            out.push(tau);
        }
        // odometer over the per-group choices
        let mut g = 0;
        loop {
            if g == groups.len() {
                return Ok(out);
            }
            choice[g] += 1;
            if choice[g] < group_partitions[g].len() {
                break;
            }
            choice[g] = 0;
            g += 1;
        }
    }
}

/// Möbius function of the non-crossing partition lattice, computed from the
/// defining recursion `Σ_{π ≤ τ ≤ σ} μ(τ, σ) = δ(π, σ)` and memoized
/// process-wide. Returns 0 when `π` does not refine `σ`.
pub fn mobius_nc(pi: &SetPartition, sigma: &SetPartition) -> Result<i64> {
    if pi.n() != sigma.n() {
        return arg_err(format!("ground sets differ: {} vs {}", pi.n(), sigma.n()));
    }
    if !pi.is_noncrossing() || !sigma.is_noncrossing() {
        return arg_err("mobius_nc requires non-crossing partitions");
    }
    if !is_refinement(pi, sigma)? {
        return Ok(0);
    }
    mobius_rec(pi, sigma)
}

fn mobius_rec(pi: &SetPartition, sigma: &SetPartition) -> Result<i64> {
    if pi == sigma {
        return Ok(1);
    }
    let key = (pi.clone(), sigma.clone());
    if let Some(&v) = cache().read().expect("mobius cache poisoned").get(&key) {
        return Ok(v);
    }
    let mut sum = 0i64;
    for tau in noncrossing_interval(pi, sigma)? {
        if &tau != pi {
            sum += mobius_rec(&tau, sigma)?;
        }
    }
    let value = -sum;
    cache().write().expect("mobius cache poisoned").insert(key, value);
    Ok(value)
}

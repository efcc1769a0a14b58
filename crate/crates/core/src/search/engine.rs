//! The tuple search: shard on the first entry, search shards
//! independently (in parallel when enabled), merge in shard order.

use std::collections::BTreeSet;

use super::distance::{distance_class_blocks, distance_class_check};
use super::filters::{apply_filters, Filter};
use super::instance::{canonicalize_partition, e2, DecompInstance, Partition, Provenance};
use super::partition::{
    enumerate_balanced_partitions_with, NodeBudget, PartitionOptions, DEFAULT_NODE_BUDGET,
};
use crate::error::{Error, Result};

pub const MAX_K: usize = 8;
pub const MAX_VALUE: u64 = 1 << 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub k: usize,
    pub m: usize,
    pub lo: u64,
    pub hi: u64,
    pub distinct: bool,
    pub equal_size: bool,
    pub filters: Vec<Filter>,
    pub limit: usize,
    pub jobs: usize,
    pub node_budget: u64,
}

impl SearchConfig {
    pub fn new(k: usize, m: usize, lo: u64, hi: u64) -> Self {
        SearchConfig {
            k,
            m,
            lo,
            hi,
            distinct: false,
            equal_size: false,
            filters: Vec::new(),
            limit: usize::MAX,
            jobs: 1,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }

    pub fn distance_class_only(&self) -> bool {
        self.filters.contains(&Filter::DistanceClassOnly)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.k < 2 || self.k > MAX_K {
            return bad(format!("k must be in 2..={MAX_K}, got {}", self.k));
        }
        if self.m < 2 {
            return bad(format!("m must be at least 2, got {}", self.m));
        }
        if self.lo < 1 || self.lo > self.hi || self.hi > MAX_VALUE {
            return bad(format!(
                "range must satisfy 1 <= min <= max <= {MAX_VALUE}, got [{}, {}]",
                self.lo, self.hi
            ));
        }
        if self.limit < 1 || self.jobs < 1 {
            return bad("limit and jobs must be at least 1".into());
        }
        if self.distance_class_only() {
            let e = self.k + 1;
            if e < 3 || !crate::squares::is_prime(e as u64) || self.m != self.k / 2 {
                return bad(format!(
                    "distance-class-only needs k+1 an odd prime and m = k/2 (k={}, m={})",
                    self.k, self.m
                ));
            }
        }
        Ok(())
    }

    fn pair_count(&self) -> usize {
        self.k * (self.k - 1) / 2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when built without the `parallel` feature.
    Parallel,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOutcome {
    pub instances: Vec<DecompInstance>,
    /// The node budget ran out; `instances` is a prefix of the full result.
    pub aborted: bool,
    pub nodes: u64,
}

/// Runs a search, in parallel when `jobs > 1`.
pub fn search(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let exec = if cfg.jobs > 1 {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    search_with(cfg, exec)
}

pub fn search_with(cfg: &SearchConfig, exec: Execution) -> Result<SearchOutcome> {
    cfg.validate()?;
    let mut merge = Merge::new(cfg);
    if cfg.m > cfg.pair_count() {
        return Ok(merge.finish());
    }
    let firsts: Vec<u64> = (cfg.lo..=cfg.hi).collect();
    match exec {
        Execution::Sequential => {
            for &first in &firsts {
                let shard = run_shard(cfg, first, merge.remaining_budget());
                if merge.absorb(shard) {
                    break;
                }
            }
        }
        Execution::Parallel => run_parallel(cfg, &firsts, &mut merge)?,
    }
    Ok(merge.finish())
}

#[cfg(feature = "parallel")]
fn run_parallel(cfg: &SearchConfig, firsts: &[u64], merge: &mut Merge) -> Result<()> {
    use rayon::prelude::*;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    // Waves bound the wasted work once the limit or budget is hit.
    let wave = cfg.jobs * 4;
    for chunk in firsts.chunks(wave) {
        let budget = merge.remaining_budget();
        let shards: Vec<Shard> = pool.install(|| {
            chunk
                .par_iter()
                .map(|&first| run_shard(cfg, first, budget))
                .collect()
        });
        for shard in shards {
            if merge.absorb(shard) {
                return Ok(());
            }
        }
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(cfg: &SearchConfig, firsts: &[u64], merge: &mut Merge) -> Result<()> {
    for &first in firsts {
        if merge.absorb(run_shard(cfg, first, merge.remaining_budget())) {
            break;
        }
    }
    Ok(())
}

struct Shard {
    /// Hits with the shard-local node count at the time they were found.
    hits: Vec<(u64, DecompInstance)>,
    nodes: u64,
    aborted: bool,
}

struct Merge {
    limit: usize,
    budget: u64,
    used: u64,
    out: SearchOutcome,
    done: bool,
}

impl Merge {
    fn new(cfg: &SearchConfig) -> Self {
        Merge {
            limit: cfg.limit,
            budget: cfg.node_budget,
            used: 0,
            out: SearchOutcome::default(),
            done: false,
        }
    }

    fn remaining_budget(&self) -> u64 {
        self.budget - self.used
    }

    /// Returns true once no further shards are needed.
    ///
    /// A hit is accepted only if the global node count at the moment it
    /// was found stays within budget, which makes the cut point
    /// independent of how shards were scheduled.
    fn absorb(&mut self, shard: Shard) -> bool {
        if self.done {
            return true;
        }
        for (at, inst) in shard.hits {
            if self.used + at > self.budget {
                self.out.aborted = true;
                self.done = true;
                break;
            }
            self.out.instances.push(inst);
            if self.out.instances.len() >= self.limit {
                self.used += at;
                self.done = true;
                return true;
            }
        }
        if self.done {
            self.used = self.budget;
            return true;
        }
        if shard.aborted || self.used + shard.nodes > self.budget {
            self.out.aborted = true;
            self.used = self.budget;
            self.done = true;
            return true;
        }
        self.used += shard.nodes;
        false
    }

    fn finish(mut self) -> SearchOutcome {
        self.out.nodes = self.used;
        self.out
    }
}

fn run_shard(cfg: &SearchConfig, first: u64, budget: u64) -> Shard {
    let mut budget = NodeBudget::new(budget);
    let mut shard = Shard {
        hits: Vec::new(),
        nodes: 0,
        aborted: false,
    };
    let k = cfg.k;
    let step = u64::from(cfg.distinct);
    let mut tuple = vec![first; k];
    // Initialize the odometer at the smallest admissible tuple.
    for i in 1..k {
        tuple[i] = tuple[i - 1] + step;
    }
    if tuple[k - 1] > cfg.hi {
        return shard;
    }
    let opts = PartitionOptions {
        equal_size: cfg.equal_size,
    };
    loop {
        if budget.used >= budget.limit {
            shard.aborted = true;
            break;
        }
        budget.used += 1;
        let values: Vec<i128> = tuple.iter().map(|&x| x as i128).collect();
        let partitions = if quick_reject(&values, cfg.m) {
            Ok(Vec::new())
        } else if cfg.distance_class_only() {
            distance_class_partitions(&values, &mut budget)
        } else {
            enumerate_balanced_partitions_with(&values, cfg.m, opts, &mut budget)
        };
        let Ok(partitions) = partitions else {
            shard.aborted = true;
            break;
        };
        for blocks in partitions {
            let inst = DecompInstance::new(values.clone(), blocks, Provenance::Search)
                .expect("enumerated partitions are balanced");
            if apply_filters(&inst, &cfg.filters).passed {
                shard.hits.push((budget.used, inst));
            }
        }
        if shard.hits.len() >= cfg.limit || !advance(&mut tuple, cfg.hi, step) {
            break;
        }
    }
    shard.nodes = budget.used.min(budget.limit);
    shard.hits.truncate(cfg.limit);
    shard
}

// Next tuple in lexicographic order with tuple[0] fixed.
fn advance(tuple: &mut [u64], hi: u64, step: u64) -> bool {
    let k = tuple.len();
    let mut i = k - 1;
    while i >= 1 {
        // Largest value position i may take so the tail still fits.
        let cap = hi - step * (k - 1 - i) as u64;
        if tuple[i] < cap {
            tuple[i] += 1;
            for j in i + 1..k {
                tuple[j] = tuple[j - 1] + step;
            }
            return true;
        }
        i -= 1;
    }
    false
}

/// Necessary conditions for positive sorted tuples: `m | e₂`, and the
/// largest product cannot exceed the block sum.
fn quick_reject(sorted: &[i128], m: usize) -> bool {
    let total = e2(sorted);
    let m = m as i128;
    if total % m != 0 {
        return true;
    }
    let k = sorted.len();
    sorted[k - 2] * sorted[k - 1] * m > total
}

// Tries every ordering of the tuple; each balanced ordering contributes
// its distance classes, mapped back to indices of the sorted tuple.
fn distance_class_partitions(
    values: &[i128],
    budget: &mut NodeBudget,
) -> std::result::Result<Vec<Partition>, super::partition::BudgetExceeded> {
    let k = values.len();
    let classes = distance_class_blocks(k).expect("validated");
    let mut found = BTreeSet::new();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        budget.used += 1;
        if budget.used > budget.limit {
            return Err(super::partition::BudgetExceeded);
        }
        let ordered: Vec<i128> = perm.iter().map(|&i| values[i]).collect();
        if distance_class_check(&ordered).expect("validated").balanced {
            let blocks = classes
                .iter()
                .map(|b| b.iter().map(|&(a, c)| (perm[a], perm[c])).collect())
                .collect();
            found.insert(canonicalize_partition(blocks));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(found.into_iter().collect())
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn advance_enumerates_combinations() {
        let mut t = vec![1, 2, 3];
        let mut n = 1;
        while advance(&mut t, 6, 1) {
            n += 1;
        }
        assert_eq!(n, 10); // C(5, 2) with the first entry fixed at 1
        let mut t = vec![2, 2];
        let mut seen = vec![t.clone()];
        while advance(&mut t, 4, 0) {
            seen.push(t.clone());
        }
        assert_eq!(seen, vec![vec![2, 2], vec![2, 3], vec![2, 4]]);
    }

    #[test]
    fn permutations() {
        let mut p = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 6);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(SearchConfig::new(1, 2, 1, 5).validate().is_err());
        assert!(SearchConfig::new(4, 1, 1, 5).validate().is_err());
        assert!(SearchConfig::new(4, 2, 0, 5).validate().is_err());
        assert!(SearchConfig::new(4, 2, 6, 5).validate().is_err());
        let mut c = SearchConfig::new(5, 2, 1, 5);
        c.filters.push(Filter::DistanceClassOnly);
        assert!(c.validate().is_err());
    }

    #[test]
    fn k2_is_empty() {
        let out = search(&SearchConfig::new(2, 2, 1, 9)).unwrap();
        assert!(out.instances.is_empty());
        assert!(!out.aborted);
    }

    #[test]
    fn finds_base_instance() {
        let mut cfg = SearchConfig::new(4, 2, 1, 41);
        cfg.distinct = true;
        cfg.filters = vec![Filter::CubeGap];
        let out = search(&cfg).unwrap();
        let hit = out
            .instances
            .iter()
            .find(|i| i.tuple == vec![6, 16, 26, 41])
            .expect("base tuple");
        assert_eq!(hit.block_sum, 1318);
    }

    #[test]
    fn distance_mode_finds_base_instance() {
        let mut cfg = SearchConfig::new(4, 2, 6, 41);
        cfg.distinct = true;
        cfg.filters = vec![Filter::DistanceClassOnly, Filter::CubeGap];
        let out = search(&cfg).unwrap();
        assert!(out.instances.iter().any(|i| i.tuple == vec![6, 16, 26, 41]));
    }

    #[test]
    fn limit_and_budget() {
        let mut cfg = SearchConfig::new(4, 2, 1, 12);
        cfg.limit = 3;
        let out = search(&cfg).unwrap();
        assert_eq!(out.instances.len(), 3);
        assert!(!out.aborted);

        cfg.limit = usize::MAX;
        cfg.node_budget = 200;
        let out = search(&cfg).unwrap();
        assert!(out.aborted);
        let full = search(&SearchConfig::new(4, 2, 1, 12)).unwrap();
        assert!(out.instances.len() < full.instances.len());
        assert_eq!(out.instances[..], full.instances[..out.instances.len()]);
    }
}

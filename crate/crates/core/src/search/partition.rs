//! Exhaustive enumeration of balanced partitions of the pair set.

use super::instance::{e2, pairwise_products, Pair, Partition};

/// Default cap on backtracking nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BudgetExceeded;

/// Shared node counter for a backtracking run.
#[derive(Clone, Copy, Debug)]
pub struct NodeBudget {
    pub used: u64,
    pub limit: u64,
}

impl NodeBudget {
    pub fn new(limit: u64) -> Self {
        NodeBudget { used: 0, limit }
    }

    pub fn unlimited() -> Self {
        Self::new(u64::MAX)
    }

    #[inline]
    fn tick(&mut self) -> Result<(), BudgetExceeded> {
        self.used += 1;
        if self.used > self.limit {
            Err(BudgetExceeded)
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PartitionOptions {
    /// Require every block to contain the same number of pairs.
    pub equal_size: bool,
}

/// All unordered partitions of the pair set into `m` nonempty blocks of
/// equal product sum.
pub fn enumerate_balanced_partitions(tuple: &[i128], m: usize) -> Vec<Partition> {
    enumerate_balanced_partitions_with(
        tuple,
        m,
        PartitionOptions::default(),
        &mut NodeBudget::unlimited(),
    )
    .expect("unlimited budget")
}

pub fn enumerate_balanced_partitions_with(
    tuple: &[i128],
    m: usize,
    opts: PartitionOptions,
    budget: &mut NodeBudget,
) -> Result<Vec<Partition>, BudgetExceeded> {
    let items = pairwise_products(tuple);
    let n = items.len();
    if m == 0 || n < m {
        return Ok(Vec::new());
    }
    let total = e2(tuple);
    if total % m as i128 != 0 {
        return Ok(Vec::new());
    }
    if opts.equal_size && !n.is_multiple_of(m) {
        return Ok(Vec::new());
    }
    let mut pos_suffix = vec![0i128; n + 1];
    let mut neg_suffix = vec![0i128; n + 1];
    for i in (0..n).rev() {
        let v = items[i].1;
        pos_suffix[i] = pos_suffix[i + 1] + v.max(0);
        neg_suffix[i] = neg_suffix[i + 1] + v.min(0);
    }
    let mut search = Backtrack {
        items: &items,
        m,
        target: total / m as i128,
        cap: if opts.equal_size { n / m } else { n },
        pos_suffix,
        neg_suffix,
        sums: Vec::with_capacity(m),
        blocks: Vec::with_capacity(m),
        out: Vec::new(),
    };
    search.go(0, budget)?;
    let mut out = search.out;
    out.sort();
    Ok(out)
}

struct Backtrack<'a> {
    items: &'a [(Pair, i128)],
    m: usize,
    target: i128,
    cap: usize,
    pos_suffix: Vec<i128>,
    neg_suffix: Vec<i128>,
    sums: Vec<i128>,
    blocks: Vec<Vec<Pair>>,
    out: Vec<Partition>,
}

impl Backtrack<'_> {
    // Every open block must still be able to reach the target using only
    // items from `next` on, and enough items must remain to seed the
    // blocks that are not open yet.
    fn feasible(&self, next: usize) -> bool {
        let remaining = self.items.len() - next;
        if remaining < self.m - self.blocks.len() {
            return false;
        }
        let (lo, hi) = (self.neg_suffix[next], self.pos_suffix[next]);
        self.sums
            .iter()
            .all(|&s| s + lo <= self.target && self.target <= s + hi)
    }

    fn go(&mut self, idx: usize, budget: &mut NodeBudget) -> Result<(), BudgetExceeded> {
        budget.tick()?;
        if idx == self.items.len() {
            if self.blocks.len() == self.m && self.sums.iter().all(|&s| s == self.target) {
                self.out.push(self.blocks.clone());
            }
            return Ok(());
        }
        let (pair, v) = self.items[idx];
        for b in 0..self.blocks.len() {
            if self.blocks[b].len() >= self.cap {
                continue;
            }
            self.sums[b] += v;
            self.blocks[b].push(pair);
            if self.feasible(idx + 1) {
                self.go(idx + 1, budget)?;
            }
            self.blocks[b].pop();
            self.sums[b] -= v;
        }
        if self.blocks.len() < self.m {
            self.sums.push(v);
            self.blocks.push(vec![pair]);
            if self.feasible(idx + 1) {
                self.go(idx + 1, budget)?;
            }
            self.blocks.pop();
            self.sums.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_partition_is_unique() {
        let parts = enumerate_balanced_partitions(&[6, 16, 26, 41], 2);
        assert_eq!(
            parts,
            vec![vec![
                vec![(0, 1), (0, 2), (2, 3)],
                vec![(0, 3), (1, 2), (1, 3)]
            ]]
        );
    }

    #[test]
    fn subset_sum_oracle_for_base_tuple() {
        // All 2^6 subsets of the six products; count halves summing to 1318.
        let prods = [96i128, 156, 246, 416, 656, 1066];
        let hits = (0u32..64)
            .filter(|mask| {
                (0..6)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| prods[b])
                    .sum::<i128>()
                    == 1318
            })
            .count();
        // each unordered split is counted once per side
        assert_eq!(hits / 2, 1);
    }

    #[test]
    fn parity_obstruction() {
        assert!(enumerate_balanced_partitions(&[1, 2, 3, 4], 2).is_empty());
    }

    #[test]
    fn all_ones() {
        // C(6,3)/2 = 10 ways to split six unit products into two triples.
        assert_eq!(enumerate_balanced_partitions(&[1, 1, 1, 1], 2).len(), 10);
        assert_eq!(enumerate_balanced_partitions(&[1, 1, 1, 1], 3).len(), 15);
        assert_eq!(enumerate_balanced_partitions(&[1, 1, 1, 1], 6).len(), 1);
        assert!(enumerate_balanced_partitions(&[1, 1, 1, 1], 7).is_empty());
    }

    #[test]
    fn equal_size_toggle() {
        // (1,1,1,2): products 1,1,2,1,2,2 -> sum 9, m = 3 target 3
        let free = enumerate_balanced_partitions(&[1, 1, 1, 2], 3);
        let eq = enumerate_balanced_partitions_with(
            &[1, 1, 1, 2],
            3,
            PartitionOptions { equal_size: true },
            &mut NodeBudget::unlimited(),
        )
        .unwrap();
        assert!(eq.iter().all(|p| p.iter().all(|b| b.len() == 2)));
        assert!(eq.len() <= free.len());
        assert!(!eq.is_empty());
    }

    #[test]
    fn signed_tuples() {
        let t = [-3i128, 1, 2];
        // products -3, -6, 2: odd total
        assert_eq!(enumerate_balanced_partitions(&t, 2).len(), 0);
        let t = [-1i128, 1, 1, 1];
        // products: -1,-1,-1,1,1,1 -> total 0, target 0 for m = 2
        for p in enumerate_balanced_partitions(&t, 2) {
            for b in p {
                assert_eq!(b.iter().map(|&(i, j)| t[i] * t[j]).sum::<i128>(), 0);
            }
        }
        assert_eq!(enumerate_balanced_partitions(&t, 2).len(), 9);
    }

    #[test]
    fn budget_aborts() {
        let mut budget = NodeBudget::new(5);
        let r = enumerate_balanced_partitions_with(
            &[1, 1, 1, 1, 1],
            2,
            PartitionOptions::default(),
            &mut budget,
        );
        assert_eq!(r, Err(BudgetExceeded));
    }
}

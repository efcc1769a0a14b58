use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::structure::classify_structure;
use crate::error::{Error, Result};

/// Index pair `(i, j)` with `i < j`.
pub type Pair = (usize, usize);

/// Blocks of a partition of the pair set.
pub type Partition = Vec<Vec<Pair>>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Search,
    Cyclotomic { p: u64, e: u64, t: u64 },
}

impl Provenance {
    pub fn describe(&self) -> String {
        match self {
            Provenance::Search => "search".to_string(),
            Provenance::Cyclotomic { p, e, t } => format!("cyclotomic(p={p},e={e},t={t})"),
        }
    }
}

/// A tuple together with a partition of its pairwise products into
/// blocks of equal sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecompInstance {
    pub tuple: Vec<i128>,
    pub m: usize,
    pub blocks: Partition,
    pub block_sum: i128,
    pub sum_squares: i128,
    pub gap: i128,
    pub tags: Vec<String>,
    pub provenance: Provenance,
    pub key: String,
}

/// All `C(k, 2)` pairs with their products, in lexicographic pair order.
pub fn pairwise_products(tuple: &[i128]) -> Vec<(Pair, i128)> {
    let k = tuple.len();
    let mut out = Vec::with_capacity(k * k.saturating_sub(1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            out.push(((i, j), tuple[i] * tuple[j]));
        }
    }
    out
}

/// Second elementary symmetric sum.
pub fn e2(tuple: &[i128]) -> i128 {
    pairwise_products(tuple).iter().map(|(_, p)| p).sum()
}

pub fn sum_of_squares(tuple: &[i128]) -> i128 {
    tuple.iter().map(|x| x * x).sum()
}

/// Sorts pairs inside each block and blocks by their smallest pair.
pub fn canonicalize_partition(mut blocks: Partition) -> Partition {
    for b in &mut blocks {
        for pair in b.iter_mut() {
            if pair.0 > pair.1 {
                *pair = (pair.1, pair.0);
            }
        }
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

/// Stable dedup key: sorted absolute values, block count, and the blocks
/// rewritten in terms of positions in that sorted order.
pub fn canonical_key(tuple: &[i128], blocks: &Partition) -> String {
    let mut order: Vec<usize> = (0..tuple.len()).collect();
    order.sort_by_key(|&i| (tuple[i].unsigned_abs(), i));
    let mut rank = vec![0; tuple.len()];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos;
    }
    let remapped = canonicalize_partition(
        blocks
            .iter()
            .map(|b| b.iter().map(|&(i, j)| (rank[i], rank[j])).collect())
            .collect(),
    );
    let mut key = String::new();
    for (n, &i) in order.iter().enumerate() {
        if n > 0 {
            key.push(',');
        }
        write!(key, "{}", tuple[i].unsigned_abs()).unwrap();
    }
    write!(key, "|{}|", blocks.len()).unwrap();
    for (n, b) in remapped.iter().enumerate() {
        if n > 0 {
            key.push('/');
        }
        for (q, (i, j)) in b.iter().enumerate() {
            if q > 0 {
                key.push(',');
            }
            write!(key, "{i}-{j}").unwrap();
        }
    }
    key
}

impl DecompInstance {
    /// Builds and checks an instance. Fails unless the blocks partition
    /// the full pair set into nonempty blocks of equal product sum.
    pub fn new(tuple: Vec<i128>, blocks: Partition, provenance: Provenance) -> Result<Self> {
        let blocks = canonicalize_partition(blocks);
        let block_sum = check_partition(&tuple, &blocks)?;
        let sum_squares = sum_of_squares(&tuple);
        let key = canonical_key(&tuple, &blocks);
        let mut inst = DecompInstance {
            m: blocks.len(),
            tuple,
            blocks,
            block_sum,
            sum_squares,
            gap: sum_squares - block_sum,
            tags: Vec::new(),
            provenance,
            key,
        };
        inst.tags = classify_structure(&inst)
            .iter()
            .map(|c| c.label())
            .collect();
        Ok(inst)
    }

    /// Re-derives every computed field and compares.
    pub fn validate(&self) -> Result<()> {
        let fresh = DecompInstance::new(
            self.tuple.clone(),
            self.blocks.clone(),
            self.provenance.clone(),
        )?;
        if &fresh != self {
            return Err(Error::Inconsistent(format!(
                "instance {} does not match its recomputed form",
                self.key
            )));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.tuple.len()
    }
}

fn check_partition(tuple: &[i128], blocks: &Partition) -> Result<i128> {
    let k = tuple.len();
    let bad = |msg: String| Err(Error::Inconsistent(msg));
    if k < 2 || blocks.is_empty() {
        return bad("need at least two entries and one block".into());
    }
    let mut seen = vec![vec![false; k]; k];
    let mut count = 0;
    let mut sums = Vec::with_capacity(blocks.len());
    for b in blocks {
        if b.is_empty() {
            return bad("empty block".into());
        }
        let mut s = 0i128;
        for &(i, j) in b {
            if i >= j || j >= k {
                return bad(format!("invalid pair ({i},{j})"));
            }
            if std::mem::replace(&mut seen[i][j], true) {
                return bad(format!("pair ({i},{j}) appears twice"));
            }
            count += 1;
            s += tuple[i] * tuple[j];
        }
        sums.push(s);
    }
    if count != k * (k - 1) / 2 {
        return bad("blocks do not cover every pair".into());
    }
    if sums.iter().any(|&s| s != sums[0]) {
        return bad(format!("unequal block sums {sums:?}"));
    }
    Ok(sums[0])
}

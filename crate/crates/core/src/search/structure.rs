//! Graph shape of each block, viewing a block as a set of edges on the
//! tuple indices, and the "product + common factor·(sum)" rewrites.

use super::instance::{DecompInstance, Pair};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockShape {
    Triangle,
    /// All edges share the given center vertex.
    Star(usize),
    /// Vertex sequence, starting from the smaller endpoint.
    HamiltonianPath(Vec<usize>),
    Unclassified,
}

/// `block_sum = x_i·x_j + x_v·(Σ x_others)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub edge: Pair,
    pub factor: usize,
    pub others: Vec<usize>,
    pub edge_product: i128,
    pub grouped_product: i128,
}

impl Rewrite {
    pub fn render(&self, tuple: &[i128]) -> String {
        let others: Vec<String> = self.others.iter().map(|&o| tuple[o].to_string()).collect();
        format!(
            "{}·{} + {}·({}) = {} + {}",
            tuple[self.edge.0],
            tuple[self.edge.1],
            tuple[self.factor],
            others.join("+"),
            self.edge_product,
            self.grouped_product
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockClass {
    pub shape: BlockShape,
    pub rewrites: Vec<Rewrite>,
}

impl BlockClass {
    pub fn label(&self) -> String {
        match self.shape {
            BlockShape::Triangle => "triangle",
            BlockShape::Star(_) => "star",
            BlockShape::HamiltonianPath(_) => "hamiltonian-path",
            BlockShape::Unclassified => "unclassified",
        }
        .to_string()
    }
}

/// Shapes are only assigned for four entries split into two blocks;
/// anything else is tagged unclassified.
pub fn classify_structure(inst: &DecompInstance) -> Vec<BlockClass> {
    let classified = inst.k() == 4 && inst.blocks.len() == 2;
    inst.blocks
        .iter()
        .map(|b| {
            if !classified {
                return BlockClass {
                    shape: BlockShape::Unclassified,
                    rewrites: Vec::new(),
                };
            }
            BlockClass {
                shape: block_shape(b),
                rewrites: rewrites(&inst.tuple, b),
            }
        })
        .collect()
}

pub fn block_shape(block: &[Pair]) -> BlockShape {
    if block.len() != 3 {
        return BlockShape::Unclassified;
    }
    let mut degree = [0usize; 4];
    for &(i, j) in block {
        if i >= 4 || j >= 4 {
            return BlockShape::Unclassified;
        }
        degree[i] += 1;
        degree[j] += 1;
    }
    if let Some(c) = degree.iter().position(|&d| d == 3) {
        return BlockShape::Star(c);
    }
    if degree.contains(&0) {
        return BlockShape::Triangle;
    }
    // Degrees are 1,2,2,1: walk from the smaller endpoint.
    let start = degree.iter().position(|&d| d == 1).unwrap();
    let mut path = vec![start];
    let mut used = [false; 3];
    while path.len() < 4 {
        let cur = *path.last().unwrap();
        let (idx, &(i, j)) = block
            .iter()
            .enumerate()
            .find(|(n, &(i, j))| !used[*n] && (i == cur || j == cur))
            .expect("path continues");
        used[idx] = true;
        path.push(if i == cur { j } else { i });
    }
    BlockShape::HamiltonianPath(path)
}

/// Every way to single out one edge so that the remaining edges all share
/// a common vertex.
pub fn rewrites(tuple: &[i128], block: &[Pair]) -> Vec<Rewrite> {
    let mut out = Vec::new();
    if block.len() < 2 {
        return out;
    }
    for (n, &edge) in block.iter().enumerate() {
        let rest: Vec<Pair> = block
            .iter()
            .enumerate()
            .filter(|(q, _)| *q != n)
            .map(|(_, &p)| p)
            .collect();
        let (a, b) = rest[0];
        for v in [a, b] {
            if rest.iter().all(|&(i, j)| i == v || j == v) {
                let others: Vec<usize> = rest
                    .iter()
                    .map(|&(i, j)| if i == v { j } else { i })
                    .collect();
                let s: i128 = others.iter().map(|&o| tuple[o]).sum();
                out.push(Rewrite {
                    edge,
                    factor: v,
                    others,
                    edge_product: tuple[edge.0] * tuple[edge.1],
                    grouped_product: tuple[v] * s,
                });
                break;
            }
        }
    }
    out
}

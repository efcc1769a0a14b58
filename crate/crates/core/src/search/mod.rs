//! Balanced decompositions of pairwise products: verification,
//! enumeration, classification and search.

mod distance;
mod engine;
mod filters;
mod instance;
mod partition;
mod structure;

pub use distance::{distance_class_blocks, distance_class_check, DistanceClasses};
pub use engine::{search, search_with, Execution, SearchConfig, SearchOutcome, MAX_K, MAX_VALUE};
pub use filters::{apply_filters, Filter, FilterReport, PrimeGapWitness};
pub use instance::{
    canonical_key, canonicalize_partition, e2, pairwise_products, sum_of_squares, DecompInstance,
    Pair, Partition, Provenance,
};
pub use partition::{
    enumerate_balanced_partitions, enumerate_balanced_partitions_with, BudgetExceeded, NodeBudget,
    PartitionOptions, DEFAULT_NODE_BUDGET,
};
pub use structure::{block_shape, classify_structure, rewrites, BlockClass, BlockShape, Rewrite};

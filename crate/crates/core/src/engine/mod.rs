//! Fiber counting and enumeration of the word-map group `F_n(G)`.

mod distset;
mod fiber;
mod wmg;

pub use distset::DistributionSet;
pub use fiber::{
    convolve, disjoint_blocks, fiber_distribution, power_word, solutions_count_xd, FiberDistribution,
    FiberOptions, DEFAULT_TUPLE_BUDGET,
};
pub use wmg::{
    distribution_set, enumerate_wordmap_group, EnumOptions, WordMapGroup, DEFAULT_ENTRY_BUDGET,
    DEFAULT_MAP_CAP, MAX_TABLE_LEN,
};

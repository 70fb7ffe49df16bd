//! Finite-graph searches, extraction algorithms and exhaustive oracles.

mod bipartite;
mod components;
pub(crate) mod exact;
mod forests;
pub(crate) mod heuristic;
pub(crate) mod lasvergnas;
mod oracles;
mod witness;

pub use bipartite::{
    bipartite_3path_partition, validate_bipartite_partition, BipartiteColoring, BipartitePartition, BIPARTITE_EXACT_LIMIT,
};
pub use components::{largest_mono_component, mono_components};
pub use exact::{
    densest_prefix_path, longest_mono_path, longest_mono_path_with_limit, longest_oriented_path, longest_oriented_path_with_limit,
    longest_path_on, DIRECTED_DP_LIMIT, UNDIRECTED_DP_LIMIT,
};
pub use forests::{
    glp_on, glp_path_forests, mpf_dense_forest, mpf_dense_forest_with, EqualCountChoice, GlpForests, IncrementState,
    MpfBranch, MpfOptions, MpfResult, MpfTrace,
};
pub use heuristic::{heuristic_long_path, SearchBudget};
pub use lasvergnas::{
    las_vergnas_condition, las_vergnas_path, BipartiteGraph, LvCondition, LvOutcome, LAS_VERGNAS_EXACT_LIMIT,
};
pub use oracles::{
    bipartite3_oracle, bipartite3_random, gg_oracle, glp_oracle, glp_random, gyarfas_oracle, lasvergnas_oracle,
    lasvergnas_random, mpf_random, raynaud_oracle, seeded_total_coloring, MpfRunSummary, OracleSummary,
};
pub use witness::{
    matches_orientation, parse_pattern, pattern_string, switch_profile, validate_forest, validate_path, Dir,
    ForestWitness, Orientation, PathWitness, SwitchProfile,
};

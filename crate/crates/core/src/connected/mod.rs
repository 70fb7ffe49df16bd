//! The 3-coloring trichotomy and connected subgraphs of large strong upper density.

mod oracle;
mod sud;
mod trichotomy;

pub use oracle::{trichotomy_oracle, TrichotomyOracle};
pub use sud::{default_checkpoints, sud_tree_2col, sud_tree_3col, Link, SudRegime, SudTree};
pub use trichotomy::{
    components_on, extend_type_ii, trichotomy, type_ii_slots, validate_trichotomy, BlockCheck, TrichotomyCase,
    TrichotomyCertificate,
};

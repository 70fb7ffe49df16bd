//! Interval-by-interval assembly of dense monochromatic paths on `[n]`.
//!
//! Each interval contributes an artifact (a dense forest or a connector), and
//! consecutive artifacts are joined by short monochromatic links. Every
//! assembly carries a trace that [`validate_trace`] re-checks against the
//! coloring.

pub mod bridges;
pub mod connector;
mod schedule;
mod stitch;
mod strong;
mod trace;
mod upper;

pub use bridges::{bridge_dual, bridge_no_matching, two_matching, Bridge, BridgeSide, DualBridge, DualCase};
pub use connector::{
    check_connector, connector_in_color, connector_path, find_alpha_connector, ConnectorWitness, CONNECTOR_EXACT_LIMIT, CONNECTOR_EXHAUSTIVE_LIMIT,
    CONNECTOR_SAMPLED_PAIRS,
};
pub use schedule::Schedule;
pub use strong::{assemble_23_sud_path, StrongOptions};
pub use trace::{validate_trace, ArtifactSummary, Assembly, AssemblyKind, AssemblyTrace, CaseTag, IntervalRecord, PairCase, Piece, Separation, Source};
pub use upper::{assemble_34_path, find_separation, vertex_colors, UpperOptions};

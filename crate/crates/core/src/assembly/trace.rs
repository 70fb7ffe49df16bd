use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::colorings::{EdgeColoring, IntervalPartition};
use crate::density::DensityProfile;
use crate::engine::{validate_path, MpfBranch, PathWitness};
use crate::error::ensure;
use crate::{ColorId, Ratio, Result, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssemblyKind {
    /// Upper-density path from dense forests.
    Upper,
    /// Strong-upper-density path from connectors.
    Strong,
}

/// Case labels of the two constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "1a")]
    OneA,
    #[serde(rename = "1b")]
    OneB,
}

impl CaseTag {
    /// The label for a consecutive connector pair from its recorded facts.
    pub fn for_pair(chi: [ColorId; 2], matching: bool) -> CaseTag {
        match (chi[0] == chi[1], matching) {
            (false, _) => CaseTag::Two,
            (true, true) => CaseTag::OneA,
            (true, false) => CaseTag::OneB,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Dense forest of the interval in the chosen color.
    Forest,
    /// Forest of the chosen color over the whole interval.
    Fill,
    /// Path through the interval's connector.
    Connector,
    /// Bridge across two intervals with no matching between their connectors.
    Bridge,
    /// One color of a dual bridge.
    DualBridge,
    /// Path over the complement of a small separator.
    Separated,
}

/// One stretch of the assembled path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Piece {
    Artifact { intervals: Vec<usize>, source: Source, vertices: Vec<Vertex> },
    /// Internal vertices between the previous piece's end and the next piece's start;
    /// empty for a single edge.
    Join { via: Vec<Vertex>, tag: Option<CaseTag> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ArtifactSummary {
    Forest { color: ColorId, ell: u32, size: usize, paths: usize, density: Ratio, branch: MpfBranch },
    Connector { color: ColorId, x: usize, alpha: Ratio, cycle: usize, layers: usize, warning: Option<String> },
    Missing { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub position: usize,
    pub start: Vertex,
    pub end: Vertex,
    pub artifact: ArtifactSummary,
    /// Whether some piece of the path comes from this interval's artifact.
    pub used: bool,
}

impl IntervalRecord {
    pub fn color(&self) -> Option<ColorId> {
        match &self.artifact {
            ArtifactSummary::Forest { color, .. } | ArtifactSummary::Connector { color, .. } => Some(*color),
            ArtifactSummary::Missing { .. } => None,
        }
    }
}

/// Color and matching facts for two consecutive connectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairCase {
    pub from: usize,
    pub chi: [ColorId; 2],
    /// Two disjoint edges of the shared color join the connectors (only meaningful when the colors agree).
    pub matching: bool,
    pub case: CaseTag,
}

/// Two same-colored vertices that a small vertex set separates in their color.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub x: Vertex,
    pub y: Vertex,
    pub color: ColorId,
    pub separator: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssemblyTrace {
    pub kind: AssemblyKind,
    pub n: u32,
    pub partition: IntervalPartition,
    pub case: CaseTag,
    pub color: ColorId,
    pub intervals: Vec<IntervalRecord>,
    pub pairs: Vec<PairCase>,
    pub separation: Option<Separation>,
    pub pieces: Vec<Piece>,
    pub discarded: Vec<String>,
    /// Best tail record of any single interval forest on the same checkpoints, for comparison with the path.
    pub single_forest_record: Option<Ratio>,
}

impl AssemblyTrace {
    /// The path spelled out by the pieces.
    pub fn path(&self) -> PathWitness {
        let vertices = self
            .pieces
            .iter()
            .flat_map(|p| match p {
                Piece::Artifact { vertices, .. } => vertices.iter(),
                Piece::Join { via, .. } => via.iter(),
            })
            .copied()
            .collect();
        PathWitness::new(vertices, self.color)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// The result of an assembly: the path, its audit trace and its density profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assembly {
    pub path: PathWitness,
    pub trace: AssemblyTrace,
    pub profile: DensityProfile,
}

/// Re-validate a trace against its coloring: pieces pairwise disjoint, every artifact inside
/// its intervals, joins between artifacts, pair tags consistent with their facts, and the
/// concatenation a single monochromatic path.
pub fn validate_trace<C: EdgeColoring + ?Sized>(coloring: &C, trace: &AssemblyTrace) -> Result<PathWitness> {
    ensure!(trace.n == coloring.order(), Witness, "trace is for [{}], coloring for [{}]", trace.n, coloring.order());
    let mut seen: HashSet<Vertex> = HashSet::new();
    let mut last_artifact = false;
    for (i, piece) in trace.pieces.iter().enumerate() {
        let vs = match piece {
            Piece::Artifact { intervals, vertices, .. } => {
                ensure!(!vertices.is_empty(), Witness, "piece {i} is empty");
                if trace.separation.is_none() {
                    for v in vertices {
                        let ok = intervals.iter().any(|&p| trace.intervals.get(p).is_some_and(|r| (r.start..=r.end).contains(v)));
                        ensure!(ok, Witness, "piece {i} vertex {v} lies outside intervals {intervals:?}");
                    }
                }
                last_artifact = true;
                vertices
            }
            Piece::Join { via, .. } => {
                ensure!(last_artifact && matches!(trace.pieces.get(i + 1), Some(Piece::Artifact { .. })), Witness, "join {i} is not between two artifacts");
                last_artifact = false;
                via
            }
        };
        for &v in vs {
            ensure!(seen.insert(v), Witness, "vertex {v} is reused by piece {i}");
        }
    }
    for pc in &trace.pairs {
        ensure!(pc.case == CaseTag::for_pair(pc.chi, pc.matching), Witness, "pair {} is tagged {:?} against its facts", pc.from, pc.case);
    }
    let path = trace.path();
    validate_path(coloring, &path)?;
    Ok(path)
}

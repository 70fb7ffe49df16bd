//! Paths that cross from one interval into the next, built from a pair of connectors.

use serde::{Deserialize, Serialize};

use super::connector::{connector_path, ConnectorWitness};
use crate::colorings::EdgeColoring;
use crate::density::{local_density, VertexSet};
use crate::engine::lasvergnas::hamiltonian_path_between;
use crate::engine::{las_vergnas_path, validate_path, BipartiteGraph, LvCondition, LvOutcome, PathWitness, SearchBudget};
use crate::error::ensure;
use crate::{ColorId, Error, Ratio, Result, Vertex};

/// Which side of the bridge carries both path endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BridgeSide {
    /// Endpoints in `X1`.
    First,
    /// Endpoints in `X2`.
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bridge {
    pub path: PathWitness,
    /// The balancing initial segment `I` of `V2`.
    pub segment: VertexSet,
    /// Vertices of `X1 ∪ I` left off the path.
    pub missed: Vec<Vertex>,
    pub condition: LvCondition,
    pub local_density: Ratio,
    /// `(1 − eps)² · |X1| / |V1|`
    pub bound: Ratio,
}

impl Bridge {
    pub fn meets_bound(&self) -> bool {
        self.local_density >= self.bound
    }
}

/// Two disjoint `color` edges between `a` and `b`, if any.
pub fn two_matching<C: EdgeColoring + ?Sized>(coloring: &C, a: &VertexSet, b: &VertexSet, color: ColorId) -> Option<[(Vertex, Vertex); 2]> {
    let edge = |x: Vertex, y: Vertex| x != y && coloring.color(x, y) == color;
    let (p, q) = a.iter().find_map(|x| b.iter().find(|&y| edge(x, y)).map(|y| (x, y)))?;
    if let Some(e) = a.iter().filter(|&x| x != p && x != q).find_map(|x| b.iter().filter(|&y| y != q && y != p && y != x).find(|&y| edge(x, y)).map(|y| (x, y))) {
        return Some([(p, q), e]);
    }
    let from_p = b.iter().find(|&y| y != q && y != p && edge(p, y))?;
    let to_q = a.iter().find(|&x| x != p && x != from_p && edge(x, q))?;
    Some([(p, from_p), (to_q, q)])
}

fn check_order(v1: &VertexSet, v2: &VertexSet) -> Result<()> {
    ensure!(v1.len() >= 2 && v2.len() >= 2, Param, "bridge parts need at least 2 vertices each");
    ensure!(v1.max().unwrap() < v2.members()[0], Param, "V1 must precede V2");
    Ok(())
}

/// A path in the color opposite to `X2`'s, inside `V1 ∪ V2`, with both ends in `X1` or in `X2`,
/// when no two disjoint `X2`-colored edges join `X1` to `X2`.
///
/// Balances an initial segment `I` of `V2` against `X1`, drops one vertex per side, and asks
/// for a Hamiltonian path in the remaining nearly complete bipartite graph.
pub fn bridge_no_matching<C: EdgeColoring + ?Sized>(
    coloring: &C,
    v1: &VertexSet,
    v2: &VertexSet,
    x1: &VertexSet,
    x2: &ConnectorWitness,
    side: BridgeSide,
    eps: Ratio,
    budget: &SearchBudget,
) -> Result<Bridge> {
    ensure!(!coloring.is_directed() && coloring.num_colors() == 2, Param, "bridges need an undirected 2-coloring");
    check_order(v1, v2)?;
    ensure!(x1.iter().all(|v| v1.contains(v)), Param, "X1 must lie in V1");
    ensure!(x2.x.iter().all(|v| v2.contains(v)), Param, "X2 must lie in V2");
    ensure!(x1.len() >= 3, Param, "X1 needs at least 3 vertices");
    let chi = x2.color;
    let red = chi.flip();
    if let Some(m) = two_matching(coloring, x1, &x2.x, chi) {
        return Err(Error::Contract(format!("{chi} matching {:?} joins X1 to X2", m)));
    }

    let mut lhs = x1.len();
    let mut rhs = 0;
    let mut cut = None;
    for (i, v) in v2.iter().enumerate() {
        if x2.x.contains(v) {
            rhs += 1;
        } else {
            lhs += 1;
        }
        if lhs == rhs {
            cut = Some(i + 1);
            break;
        }
    }
    let cut = cut.ok_or_else(|| Error::Contract(format!("X2 ({} of {}) is too small to balance X1 ({})", x2.x.len(), v2.len(), x1.len())))?;
    let segment = VertexSet::new(v2.members()[..cut].to_vec());
    let mut y1: Vec<Vertex> = x1.iter().chain(segment.iter().filter(|&v| !x2.x.contains(v))).collect();
    y1.sort_unstable();
    let y2: Vec<Vertex> = segment.iter().filter(|&v| x2.x.contains(v)).collect();
    let m = y1.len();
    ensure!(m >= 4, Contract, "balanced sides of {m} vertices are too small");

    let is_red = |a: Vertex, b: Vertex| coloring.color(a, b) == red;
    let chi_deg = |v: Vertex, other: &[Vertex]| other.iter().filter(|&&w| !is_red(v, w)).count();
    let heaviest = |pool: &[Vertex], other: &[Vertex]| *pool.iter().max_by_key(|&&v| (chi_deg(v, other), std::cmp::Reverse(v))).unwrap();
    let y1_drop = heaviest(&y1, &y2);
    let y1r: Vec<Vertex> = y1.iter().copied().filter(|&v| v != y1_drop).collect();
    let y2_drop = heaviest(&y2, &y1r);
    let y2r: Vec<Vertex> = y2.iter().copied().filter(|&v| v != y2_drop).collect();

    // Ends come from `home`; `away` is the opposite side.
    let (home, away) = match side {
        BridgeSide::First => (y1r.iter().copied().filter(|v| x1.contains(*v)).collect::<Vec<_>>(), y2r.clone()),
        BridgeSide::Second => (y2r.clone(), y1r.clone()),
    };
    let home_side = if side == BridgeSide::First { &y1r } else { &y2r };
    ensure!(home.len() >= 2, Contract, "fewer than two endpoint candidates on the chosen side");
    let red_deg = |v: Vertex, other: &[Vertex]| other.iter().filter(|&&w| is_red(v, w)).count();
    let (tail, z) = home
        .iter()
        .find_map(|&a| away.iter().copied().filter(|&z| is_red(a, z)).max_by_key(|&z| (red_deg(z, home_side), std::cmp::Reverse(z))).map(|z| (a, z)))
        .ok_or_else(|| Error::Contract("no red edge from the endpoint side across".into()))?;
    let left: Vec<Vertex> = home_side.iter().copied().filter(|&v| v != tail).collect();
    let head = *home.iter().filter(|&&v| v != tail).max_by_key(|&&v| (red_deg(v, &away), std::cmp::Reverse(v))).unwrap();
    let w_drop = *away.iter().filter(|&&v| v != z).min_by_key(|&&v| (red_deg(v, &left), v)).unwrap();
    let right: Vec<Vertex> = away.iter().copied().filter(|&v| v != w_drop).collect();
    ensure!(left.len() == right.len() && left.len() >= 2, Internal, "unbalanced bridge sides");

    let g = BipartiteGraph::from_fn(left, right, red, is_red);
    let condition = crate::engine::las_vergnas_condition(&g);
    let ham = match las_vergnas_path(&g, head, z, budget)? {
        LvOutcome::Path(p) => p,
        LvOutcome::ConditionFails(_) => hamiltonian_path_between(&g, head, z, budget)
            .ok_or_else(|| Error::HeuristicFailed(format!("degree condition fails and no Hamiltonian {head},{z}-path was found")))?,
    };
    let mut vertices = ham.vertices;
    vertices.push(tail);
    let path = PathWitness::new(vertices, red);
    validate_path(coloring, &path)?;

    let on: std::collections::HashSet<Vertex> = path.vertices.iter().copied().collect();
    let missed = x1.iter().chain(segment.iter()).filter(|v| !on.contains(v)).collect();
    let local = local_density(&VertexSet::new(path.vertices.clone()))?;
    let one = Ratio::from_integer(1);
    let bound = (one - eps) * (one - eps) * Ratio::new(x1.len() as u64, v1.len() as u64);
    Ok(Bridge { path, segment, missed, condition, local_density: local, bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualCase {
    /// Two disjoint `X2`-colored edges join the connectors.
    Matching,
    /// No such edges; the `X1`-colored path comes from the balanced bridge.
    NoMatching,
}

/// Two paths of different colors sharing the endpoints `u`, `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualBridge {
    pub case: DualCase,
    pub u: Vertex,
    pub v: Vertex,
    /// In `X1`'s color.
    pub first: PathWitness,
    /// In `X2`'s color.
    pub second: PathWitness,
}

impl DualBridge {
    pub fn in_color(&self, c: ColorId) -> Option<&PathWitness> {
        [&self.first, &self.second].into_iter().find(|p| p.color == c)
    }
}

/// Paths in both colors between common ends, from connectors of different colors in
/// consecutive parts.
pub fn bridge_dual<C: EdgeColoring + ?Sized>(
    coloring: &C,
    v1: &VertexSet,
    v2: &VertexSet,
    x1: &ConnectorWitness,
    x2: &ConnectorWitness,
    eps: Ratio,
    budget: &SearchBudget,
) -> Result<DualBridge> {
    ensure!(!coloring.is_directed() && coloring.num_colors() == 2, Param, "bridges need an undirected 2-coloring");
    check_order(v1, v2)?;
    ensure!(x1.color != x2.color, Param, "dual bridges need connectors of different colors");
    ensure!(x1.x.iter().all(|v| v1.contains(v)) && x2.x.iter().all(|v| v2.contains(v)), Param, "connectors must lie in their parts");
    let out = match two_matching(coloring, &x1.x, &x2.x, x2.color) {
        Some([(u1, u2), (w1, w2)]) => {
            let first = connector_path(coloring, x1, u1, w1)?;
            let inner = connector_path(coloring, x2, u2, w2)?;
            let mut vs = vec![u1];
            vs.extend(inner.vertices);
            vs.push(w1);
            DualBridge { case: DualCase::Matching, u: u1, v: w1, first, second: PathWitness::new(vs, x2.color) }
        }
        None => {
            let b = bridge_no_matching(coloring, v1, v2, &x1.x, x2, BridgeSide::Second, eps, budget)?;
            let (u, v) = (b.path.first(), b.path.last());
            let second = connector_path(coloring, x2, u, v)?;
            DualBridge { case: DualCase::NoMatching, u, v, first: b.path, second }
        }
    };
    validate_path(coloring, &out.first)?;
    validate_path(coloring, &out.second)?;
    ensure!(
        out.first.first() == out.u && out.first.last() == out.v && out.second.first() == out.u && out.second.last() == out.v,
        Internal,
        "dual bridge paths do not share their ends"
    );
    Ok(out)
}

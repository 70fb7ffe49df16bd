//! Hamiltonian paths with prescribed endpoints in balanced bipartite graphs.

use serde::{Deserialize, Serialize};

use super::exact::{hamiltonian_between, MaskGraph};
use super::heuristic::{posa_between, BitGraph, SearchBudget};
use super::witness::PathWitness;
use crate::error::ensure;
use crate::{ColorId, Error, Result, Vertex};

/// Largest side searched exhaustively.
pub const LAS_VERGNAS_EXACT_LIMIT: usize = 10;

/// A bipartite graph between `left` (U) and `right` (V) whose edges all carry `color`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteGraph {
    pub left: Vec<Vertex>,
    pub right: Vec<Vertex>,
    /// Row-major `left.len() x right.len()` adjacency.
    pub adj: Vec<bool>,
    pub color: ColorId,
}

impl BipartiteGraph {
    pub fn new(left: Vec<Vertex>, right: Vec<Vertex>, adj: Vec<bool>, color: ColorId) -> Result<Self> {
        ensure!(adj.len() == left.len() * right.len(), Param, "adjacency has {} cells, expected {}", adj.len(), left.len() * right.len());
        Ok(BipartiteGraph { left, right, adj, color })
    }

    pub fn from_fn(left: Vec<Vertex>, right: Vec<Vertex>, color: ColorId, edge: impl Fn(Vertex, Vertex) -> bool) -> Self {
        let adj = left.iter().flat_map(|&u| right.iter().map(|&v| edge(u, v)).collect::<Vec<_>>()).collect();
        BipartiteGraph { left, right, adj, color }
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.right.len() + j]
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        (0..self.left.len()).map(|i| (0..self.right.len()).filter(|&j| self.has(i, j)).count()).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        (0..self.right.len()).map(|j| (0..self.left.len()).filter(|&i| self.has(i, j)).count()).collect()
    }

    fn local_edge(&self, x: usize, y: usize) -> bool {
        let m = self.left.len();
        match (x < m, y < m) {
            (true, false) => self.has(x, y - m),
            (false, true) => self.has(y, x - m),
            _ => false,
        }
    }

    fn label(&self, x: usize) -> Vertex {
        let m = self.left.len();
        if x < m {
            self.left[x]
        } else {
            self.right[x - m]
        }
    }
}

/// The degree condition evaluated on sorted degree sequences; `j`, `k` are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LvCondition {
    pub m: usize,
    pub j: usize,
    pub k: usize,
    pub d_uj: usize,
    pub d_vk: usize,
    pub holds: bool,
}

fn first_low(mut degrees: Vec<usize>) -> (usize, usize) {
    degrees.sort_unstable();
    // Always exists: the largest degree is at most m ≤ m + 1.
    let idx = degrees.iter().enumerate().position(|(i, &d)| d <= i + 2).expect("degree bounded by side size");
    (idx + 1, degrees[idx])
}

pub fn las_vergnas_condition(g: &BipartiteGraph) -> LvCondition {
    let m = g.left.len();
    let (j, d_uj) = first_low(g.left_degrees());
    let (k, d_vk) = first_low(g.right_degrees());
    LvCondition { m, j, k, d_uj, d_vk, holds: d_uj + d_vk >= m + 2 }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LvOutcome {
    Path(PathWitness),
    ConditionFails(LvCondition),
}

/// A Hamiltonian `u,v`-path when the degree condition holds: exhaustive for `m ≤ 10`,
/// rotation–extension above. The condition holding without a path found is an internal error.
pub fn las_vergnas_path(g: &BipartiteGraph, u: Vertex, v: Vertex, budget: &SearchBudget) -> Result<LvOutcome> {
    let m = g.left.len();
    ensure!(m >= 2 && g.right.len() == m, Param, "need |U| = |V| = m ≥ 2");
    let s = g.left.iter().position(|&x| x == u).ok_or_else(|| Error::Param(format!("{u} is not in U")))?;
    let t = g.right.iter().position(|&x| x == v).ok_or_else(|| Error::Param(format!("{v} is not in V")))? + m;
    let cond = las_vergnas_condition(g);
    if !cond.holds {
        return Ok(LvOutcome::ConditionFails(cond));
    }
    let path = hamiltonian_path(g, s, t, budget).ok_or_else(|| {
        Error::Internal(format!("degree condition holds (j={}, k={}) but no Hamiltonian {u},{v}-path was found", cond.j, cond.k))
    })?;
    let w = PathWitness::new(path.into_iter().map(|x| g.label(x)).collect(), g.color);
    ensure!(w.len() == 2 * m && w.vertices.windows(2).all(|p| is_edge(g, p[0], p[1])), Internal, "invalid Hamiltonian path");
    Ok(LvOutcome::Path(w))
}

/// Hamiltonian `u,v`-path searched without consulting the degree condition.
pub(crate) fn hamiltonian_path_between(g: &BipartiteGraph, u: Vertex, v: Vertex, budget: &SearchBudget) -> Option<PathWitness> {
    let m = g.left.len();
    let s = g.left.iter().position(|&x| x == u)?;
    let t = g.right.iter().position(|&x| x == v)? + m;
    let path = hamiltonian_path(g, s, t, budget)?;
    Some(PathWitness::new(path.into_iter().map(|x| g.label(x)).collect(), g.color))
}

/// Hamiltonian path between local indices `s` and `t`, whatever the degree condition says.
pub(crate) fn hamiltonian_path(g: &BipartiteGraph, s: usize, t: usize, budget: &SearchBudget) -> Option<Vec<usize>> {
    let k = 2 * g.left.len();
    if g.left.len() <= LAS_VERGNAS_EXACT_LIMIT {
        let adj = (0..k).map(|x| (0..k).filter(|&y| g.local_edge(x, y)).fold(0u32, |a, y| a | 1 << y)).collect();
        hamiltonian_between(&MaskGraph::from_adjacency(adj), s, t)
    } else {
        let labels = (0..k).map(|x| g.label(x)).collect();
        let bg = BitGraph::from_fn(labels, |x, y| g.local_edge(x, y));
        let mut rng = budget.rng(k as u64 ^ 0x1f);
        posa_between(&bg, s, t, budget, &mut rng)
    }
}

fn is_edge(g: &BipartiteGraph, a: Vertex, b: Vertex) -> bool {
    let side = |x: Vertex| g.left.iter().position(|&y| y == x).map(Ok).or_else(|| g.right.iter().position(|&y| y == x).map(Err));
    match (side(a), side(b)) {
        (Some(Ok(i)), Some(Err(j))) | (Some(Err(j)), Some(Ok(i))) => g.has(i, j),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RED;

    fn complete(m: u32) -> BipartiteGraph {
        BipartiteGraph::from_fn((1..=m).collect(), (m + 1..=2 * m).collect(), RED, |_, _| true)
    }

    #[test]
    fn complete_graph_paths() {
        let g = complete(4);
        for u in 1..=4 {
            for v in 5..=8 {
                match las_vergnas_path(&g, u, v, &SearchBudget::default()).unwrap() {
                    LvOutcome::Path(p) => assert_eq!((p.first(), p.last(), p.len()), (u, v, 8)),
                    other => panic!("{other:?}"),
                }
            }
        }
    }

    #[test]
    fn large_complete_uses_rotation() {
        let g = complete(30);
        assert!(matches!(las_vergnas_path(&g, 3, 40, &SearchBudget::default()).unwrap(), LvOutcome::Path(p) if p.len() == 60));
    }

    #[test]
    fn low_degree_vertex_reported() {
        // u_1 = vertex 1 sees only vertex 5.
        let g = BipartiteGraph::from_fn((1..=4).collect(), (5..=8).collect(), RED, |u, v| u != 1 || v == 5);
        let c = las_vergnas_condition(&g);
        assert_eq!((c.j, c.d_uj), (1, 1));
        assert!(!c.holds);
        assert!(matches!(las_vergnas_path(&g, 2, 6, &SearchBudget::default()).unwrap(), LvOutcome::ConditionFails(_)));
    }
}

//! Partitions of 2-colored complete bipartite graphs into at most three monochromatic paths.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::exact::{free_dp, reconstruct, MaskGraph, Step};
use super::heuristic::{posa_path, BitGraph, SearchBudget};
use super::witness::PathWitness;
use crate::colorings::EdgeColoring;
use crate::error::ensure;
use crate::{ColorId, Result, Vertex, BLUE, RED};

/// Largest side handled by exhaustive search.
pub const BIPARTITE_EXACT_LIMIT: usize = 6;
const REMAINDER_EXACT_LIMIT: usize = 20;

/// A 2-coloring of the complete bipartite graph between `left` and `right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartiteColoring {
    left: Vec<Vertex>,
    right: Vec<Vertex>,
    /// Row-major: `colors[i * right.len() + j]` colors `{left[i], right[j]}`.
    colors: Vec<ColorId>,
}

impl BipartiteColoring {
    pub fn new(left: Vec<Vertex>, right: Vec<Vertex>, colors: Vec<ColorId>) -> Result<Self> {
        ensure!(colors.len() == left.len() * right.len(), Param, "need {} edge colors, got {}", left.len() * right.len(), colors.len());
        ensure!(colors.iter().all(|c| c.0 < 2), Param, "bipartite colorings use two colors");
        let mut all: Vec<Vertex> = left.iter().chain(&right).copied().collect();
        all.sort_unstable();
        ensure!(all.windows(2).all(|w| w[0] != w[1]), Param, "sides must be disjoint sets of distinct vertices");
        Ok(BipartiteColoring { left, right, colors })
    }

    /// The bipartite graph `[left, right]` induced by a host 2-coloring.
    pub fn from_host<C: EdgeColoring + ?Sized>(host: &C, left: Vec<Vertex>, right: Vec<Vertex>) -> Result<Self> {
        let colors = left.iter().flat_map(|&u| right.iter().map(move |&v| host.color(u, v))).collect();
        Self::new(left, right, colors)
    }

    pub fn left(&self) -> &[Vertex] {
        &self.left
    }

    pub fn right(&self) -> &[Vertex] {
        &self.right
    }

    fn local_color(&self, i: usize, j: usize) -> ColorId {
        self.colors[i * self.right.len() + j]
    }

    fn label(&self, x: usize) -> Vertex {
        let m = self.left.len();
        if x < m {
            self.left[x]
        } else {
            self.right[x - m]
        }
    }

    fn local_edge(&self, x: usize, y: usize, c: ColorId) -> bool {
        let m = self.left.len();
        match (x < m, y < m) {
            (true, false) => self.local_color(x, y - m) == c,
            (false, true) => self.local_color(y, x - m) == c,
            _ => false,
        }
    }

    fn index(&self) -> HashMap<Vertex, (bool, usize)> {
        let mut idx = HashMap::new();
        for (i, &v) in self.left.iter().enumerate() {
            idx.insert(v, (true, i));
        }
        for (j, &v) in self.right.iter().enumerate() {
            idx.insert(v, (false, j));
        }
        idx
    }

    /// Color of `{u, v}` when the pair crosses the bipartition.
    pub fn color(&self, u: Vertex, v: Vertex) -> Option<ColorId> {
        let idx = self.index();
        match (idx.get(&u)?, idx.get(&v)?) {
            ((true, i), (false, j)) | ((false, j), (true, i)) => Some(self.local_color(*i, *j)),
            _ => None,
        }
    }

    pub fn is_left(&self, v: Vertex) -> bool {
        self.left.contains(&v)
    }
}

/// Paths partitioning a bipartite host, with the endpoint defect: endpoints of red paths
/// lying on the left plus endpoints of blue paths lying on the right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BipartitePartition {
    pub paths: Vec<PathWitness>,
    pub defect: usize,
}

/// Wrong-side endpoints of `p` when paths of color `right_color` should end on the right.
pub(crate) fn path_defect(p: &PathWitness, is_left: &dyn Fn(Vertex) -> bool, right_color: ColorId) -> usize {
    let wrong = |v: Vertex| usize::from(is_left(v) == (p.color == right_color));
    if p.len() == 1 {
        wrong(p.first())
    } else {
        wrong(p.first()) + wrong(p.last())
    }
}

pub fn validate_bipartite_partition(bc: &BipartiteColoring, part: &BipartitePartition) -> Result<()> {
    ensure!(!part.paths.is_empty() || bc.left.is_empty() && bc.right.is_empty(), Witness, "empty partition");
    ensure!(part.paths.len() <= 3, Witness, "{} paths, at most 3 allowed", part.paths.len());
    let idx = bc.index();
    let mut seen = std::collections::HashSet::new();
    for p in &part.paths {
        ensure!(!p.is_empty(), Witness, "empty path");
        for &v in &p.vertices {
            ensure!(idx.contains_key(&v), Witness, "vertex {v} not in host");
            ensure!(seen.insert(v), Witness, "vertex {v} covered twice");
        }
        for w in p.vertices.windows(2) {
            let c = bc.color(w[0], w[1]);
            ensure!(c == Some(p.color), Witness, "pair {{{},{}}} is not a {} edge", w[0], w[1], p.color);
        }
    }
    ensure!(seen.len() == idx.len(), Witness, "partition covers {} of {} vertices", seen.len(), idx.len());
    let d: usize = part.paths.iter().map(|p| path_defect(p, &|v| bc.is_left(v), RED)).sum();
    ensure!(d == part.defect, Witness, "recorded defect {} but paths give {d}", part.defect);
    Ok(())
}

/// Per-color `ends` tables over all subsets of a vertex list of at most 31 local vertices.
struct SubsetPaths {
    graphs: [MaskGraph; 2],
    dp: [Vec<u32>; 2],
}

impl SubsetPaths {
    fn new(bc: &BipartiteColoring, verts: &[usize]) -> Self {
        let build = |c: ColorId| {
            let adj = verts
                .iter()
                .map(|&x| verts.iter().enumerate().filter(|(_, &y)| bc.local_edge(x, y, c)).fold(0u32, |m, (j, _)| m | 1 << j))
                .collect();
            MaskGraph::from_adjacency(adj)
        };
        let graphs = [build(RED), build(BLUE)];
        let dp = [free_dp(&graphs[0], &|_| Step::Any, verts.len()), free_dp(&graphs[1], &|_| Step::Any, verts.len())];
        SubsetPaths { graphs, dp }
    }

    fn color_for(&self, mask: u32) -> Option<usize> {
        (0..2).find(|&c| self.dp[c][mask as usize] != 0)
    }

    fn path(&self, mask: u32, verts: &[usize]) -> (ColorId, Vec<usize>) {
        let c = self.color_for(mask).expect("pathable mask");
        let end = self.dp[c][mask as usize].trailing_zeros() as usize;
        let (p, _) = reconstruct(&self.graphs[c], &self.dp[c], mask, end, &|_| Step::Any);
        (ColorId(c as u8), p.into_iter().map(|i| verts[i]).collect())
    }

    /// Fewest pathable blocks (at most `max_blocks`) partitioning `full`, lowest-first enumeration.
    fn cover(&self, full: u32, max_blocks: usize) -> Option<Vec<u32>> {
        let ok = |m: u32| self.color_for(m).is_some();
        if full == 0 {
            return Some(Vec::new());
        }
        if ok(full) {
            return Some(vec![full]);
        }
        if max_blocks < 2 {
            return None;
        }
        let low = full & full.wrapping_neg();
        let rest = full ^ low;
        // Enumerate blocks containing the lowest vertex.
        let mut sub = rest;
        loop {
            let a = sub | low;
            if a != full && ok(a) && ok(full ^ a) {
                return Some(vec![a, full ^ a]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        if max_blocks < 3 {
            return None;
        }
        let mut sub = rest;
        loop {
            let a = sub | low;
            if a != full && ok(a) {
                let others = full ^ a;
                let low2 = others & others.wrapping_neg();
                let rest2 = others ^ low2;
                let mut s2 = rest2;
                loop {
                    let b = s2 | low2;
                    if b != others && ok(b) && ok(others ^ b) {
                        return Some(vec![a, b, others ^ b]);
                    }
                    if s2 == 0 {
                        break;
                    }
                    s2 = (s2 - 1) & rest2;
                }
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        None
    }
}

fn finish(bc: &BipartiteColoring, local: Vec<(ColorId, Vec<usize>)>) -> Result<BipartitePartition> {
    let m = bc.left.len();
    let paths: Vec<PathWitness> = local
        .into_iter()
        .map(|(c, p)| {
            // A lone vertex carries the color whose paths belong on its side.
            let c = if p.len() == 1 { if p[0] < m { BLUE } else { RED } } else { c };
            PathWitness::new(p.iter().map(|&x| bc.label(x)).collect(), c)
        })
        .collect();
    let defect = paths.iter().map(|p| path_defect(p, &|v| bc.is_left(v), RED)).sum();
    let part = BipartitePartition { paths, defect };
    validate_bipartite_partition(bc, &part)?;
    Ok(part)
}

/// Partition a 2-colored `K_{m,m}` into at most three monochromatic paths. Exhaustive for
/// `m ≤ 6`; above that, rotation–extension for the first path and exhaustive covering of the
/// remainder. Every result is validated; a failed search is reported, never returned.
pub fn bipartite_3path_partition(bc: &BipartiteColoring, budget: &SearchBudget) -> Result<BipartitePartition> {
    let m = bc.left.len();
    ensure!(m >= 1 && m == bc.right.len(), Param, "need K_{{m,m}} with m ≥ 1, got {}x{}", m, bc.right.len());
    if m <= BIPARTITE_EXACT_LIMIT {
        let verts: Vec<usize> = (0..2 * m).collect();
        let sp = SubsetPaths::new(bc, &verts);
        let full = ((1u64 << (2 * m)) - 1) as u32;
        let blocks = sp.cover(full, 3).ok_or_else(|| crate::Error::Internal(format!("no 3-path partition of a {m}x{m} coloring")))?;
        return finish(bc, blocks.into_iter().map(|b| sp.path(b, &verts)).collect());
    }
    let k = 2 * m;
    let labels: Vec<Vertex> = (0..k).map(|x| bc.label(x)).collect();
    let graphs = [BitGraph::from_fn(labels.clone(), |x, y| bc.local_edge(x, y, RED)), BitGraph::from_fn(labels, |x, y| bc.local_edge(x, y, BLUE))];
    let mut rng = budget.rng(k as u64 + 7);
    for attempt in 0..budget.restarts.max(1) * 2 {
        let c = (attempt % 2) as usize;
        let start = if attempt < 2 { 0 } else { rng.gen_range(0..k) };
        let first = posa_path(&graphs[c], start, budget.rotations, &mut rng);
        let mut used = vec![false; k];
        first.iter().for_each(|&x| used[x] = true);
        let rest: Vec<usize> = (0..k).filter(|&x| !used[x]).collect();
        if rest.len() > REMAINDER_EXACT_LIMIT {
            continue;
        }
        let sp = SubsetPaths::new(bc, &rest);
        let full = ((1u64 << rest.len()) - 1) as u32;
        if let Some(blocks) = sp.cover(full, 2) {
            let mut local = vec![(ColorId(c as u8), first)];
            local.extend(blocks.into_iter().map(|b| sp.path(b, &rest)));
            return finish(bc, local);
        }
    }
    Err(crate::Error::HeuristicFailed(format!("no 3-path partition found for a {m}x{m} coloring within budget")))
}

//! Held–Karp style subset DP over (vertex set, endpoint) states for small hosts.

use super::witness::{Dir, Orientation, PathWitness};
use crate::colorings::EdgeColoring;
use crate::error::ensure;
use crate::{ColorId, Result, Vertex};

pub const UNDIRECTED_DP_LIMIT: u32 = 24;
pub const DIRECTED_DP_LIMIT: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Step {
    F,
    B,
    Any,
}

/// Adjacency masks of one color over local indices `0..k`.
#[derive(Debug, Clone)]
pub(crate) struct MaskGraph {
    pub k: usize,
    /// `out[v]`: `u` with arc `v -> u` of the color.
    pub out: Vec<u32>,
    /// `inn[v]`: `u` with arc `u -> v` of the color.
    pub inn: Vec<u32>,
}

impl MaskGraph {
    pub fn from_coloring<C: EdgeColoring + ?Sized>(c: &C, verts: &[Vertex], color: ColorId) -> Self {
        let k = verts.len();
        assert!(k <= 31);
        let mut out = vec![0u32; k];
        let mut inn = vec![0u32; k];
        for i in 0..k {
            for j in 0..k {
                if i != j && c.color(verts[i], verts[j]) == color {
                    out[i] |= 1 << j;
                    inn[j] |= 1 << i;
                }
            }
        }
        MaskGraph { k, out, inn }
    }

    pub fn from_adjacency(adj: Vec<u32>) -> Self {
        MaskGraph { k: adj.len(), out: adj.clone(), inn: adj }
    }

    /// Vertices `u` that may precede `w` when the edge `u w` is taken as `step`.
    #[inline]
    fn pred(&self, w: usize, step: Step) -> u32 {
        match step {
            Step::F => self.inn[w],
            Step::B => self.out[w],
            Step::Any => self.inn[w] | self.out[w],
        }
    }

    fn dir_of(&self, u: usize, w: usize, step: Step) -> Dir {
        match step {
            Step::F => Dir::F,
            Step::B => Dir::B,
            Step::Any => {
                if self.inn[w] & (1 << u) != 0 {
                    Dir::F
                } else {
                    Dir::B
                }
            }
        }
    }
}

#[inline]
pub(crate) fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

/// `dp[mask]` = possible last vertices of paths with vertex set `mask` obeying `rule`.
pub(crate) fn free_dp(g: &MaskGraph, rule: &dyn Fn(usize) -> Step, max_vertices: usize) -> Vec<u32> {
    let k = g.k;
    let mut dp = vec![0u32; 1 << k];
    for v in 0..k {
        dp[1 << v] = 1 << v;
    }
    for mask in 1u32..(1u32 << k) {
        let p = mask.count_ones() as usize;
        if p < 2 || p > max_vertices {
            continue;
        }
        let step = rule(p - 2);
        let mut ends = 0;
        for w in bits(mask) {
            let prev = mask ^ (1 << w);
            if dp[prev as usize] & g.pred(w, step) != 0 {
                ends |= 1 << w;
            }
        }
        dp[mask as usize] = ends;
    }
    dp
}

/// Walk back from `(mask, end)` to a full path, lowest predecessor first.
pub(crate) fn reconstruct(g: &MaskGraph, dp: &[u32], mut mask: u32, mut end: usize, rule: &dyn Fn(usize) -> Step) -> (Vec<usize>, Vec<Dir>) {
    let mut path = vec![end];
    let mut dirs = Vec::new();
    while mask.count_ones() > 1 {
        let prev = mask ^ (1 << end);
        let step = rule(prev.count_ones() as usize - 1);
        let cand = dp[prev as usize] & g.pred(end, step);
        let u = cand.trailing_zeros() as usize;
        debug_assert!(cand != 0);
        dirs.push(g.dir_of(u, end, step));
        path.push(u);
        mask = prev;
        end = u;
    }
    path.reverse();
    dirs.reverse();
    (path, dirs)
}

/// Best `(mask, end)`: most vertices, then lowest mask, then lowest end.
fn best_state(dp: &[u32]) -> (u32, usize) {
    let mut best = (0u32, 0u32, 0usize);
    for (mask, &ends) in dp.iter().enumerate() {
        if ends != 0 {
            let p = (mask as u32).count_ones();
            if p > best.0 {
                best = (p, mask as u32, ends.trailing_zeros() as usize);
            }
        }
    }
    (best.1, best.2)
}

fn search(g: &MaskGraph, rule: &dyn Fn(usize) -> Step, max_vertices: usize) -> (Vec<usize>, Vec<Dir>) {
    let dp = free_dp(g, rule, max_vertices);
    let (mask, end) = best_state(&dp);
    reconstruct(g, &dp, mask, end, rule)
}

fn to_witness(verts: &[Vertex], local: (Vec<usize>, Vec<Dir>), color: ColorId, directed: bool) -> PathWitness {
    let vertices = local.0.iter().map(|&i| verts[i]).collect();
    if directed {
        PathWitness::directed(vertices, color, &local.1)
    } else {
        PathWitness::new(vertices, color)
    }
}

/// Maximum-vertex path of one color on `[n]` (undirected host, `n ≤ 24`).
pub fn longest_mono_path<C: EdgeColoring + ?Sized>(coloring: &C, color: ColorId) -> Result<PathWitness> {
    longest_mono_path_with_limit(coloring, color, UNDIRECTED_DP_LIMIT)
}

pub fn longest_mono_path_with_limit<C: EdgeColoring + ?Sized>(coloring: &C, color: ColorId, limit: u32) -> Result<PathWitness> {
    ensure!(!coloring.is_directed(), Param, "use longest_oriented_path on directed hosts");
    let verts: Vec<Vertex> = (1..=coloring.order()).collect();
    longest_path_on(coloring, &verts, color, limit)
}

/// Longest path of one color inside the vertex list `verts` (undirected host).
pub fn longest_path_on<C: EdgeColoring + ?Sized>(coloring: &C, verts: &[Vertex], color: ColorId, limit: u32) -> Result<PathWitness> {
    ensure!(verts.len() as u32 <= limit.min(28), Budget, "exact path search over {} vertices exceeds limit {limit}", verts.len());
    ensure!(!verts.is_empty(), Param, "empty vertex list");
    let g = MaskGraph::from_coloring(coloring, verts, color);
    Ok(to_witness(verts, search(&g, &|_| Step::Any, g.k), color, false))
}

/// A path of one color on `[n]` (undirected host) with the most vertices inside `[c]`.
pub fn densest_prefix_path<C: EdgeColoring + ?Sized>(coloring: &C, color: ColorId, c: Vertex, limit: u32) -> Result<PathWitness> {
    ensure!(!coloring.is_directed(), Param, "prefix-cover search needs an undirected host");
    let n = coloring.order();
    ensure!(n >= 1 && n <= limit.min(28), Budget, "exact path search over {n} vertices exceeds limit {limit}");
    let verts: Vec<Vertex> = (1..=n).collect();
    let g = MaskGraph::from_coloring(coloring, &verts, color);
    let dp = free_dp(&g, &|_| Step::Any, g.k);
    let low = if c >= 32 { u32::MAX } else { (1u32 << c) - 1 };
    let mut best = (0u32, 0u32, 0usize);
    for (mask, &ends) in dp.iter().enumerate() {
        let inside = (mask as u32 & low).count_ones();
        if ends != 0 && inside > best.0 {
            best = (inside, mask as u32, ends.trailing_zeros() as usize);
        }
    }
    Ok(to_witness(&verts, reconstruct(&g, &dp, best.1, best.2, &|_| Step::Any), color, false))
}

/// Longest path of one color whose arc directions follow `orientation` (directed host, `n ≤ 16`).
pub fn longest_oriented_path<C: EdgeColoring + ?Sized>(coloring: &C, color: ColorId, orientation: &Orientation) -> Result<PathWitness> {
    longest_oriented_path_with_limit(coloring, color, orientation, DIRECTED_DP_LIMIT)
}

pub fn longest_oriented_path_with_limit<C: EdgeColoring + ?Sized>(
    coloring: &C,
    color: ColorId,
    orientation: &Orientation,
    limit: u32,
) -> Result<PathWitness> {
    ensure!(coloring.is_directed(), Param, "oriented paths need a directed host");
    let n = coloring.order();
    ensure!(n <= limit.min(28), Budget, "exact oriented search on {n} vertices exceeds limit {limit}");
    let verts: Vec<Vertex> = (1..=n).collect();
    let g = MaskGraph::from_coloring(coloring, &verts, color);
    let best = match orientation {
        Orientation::Unconstrained => search(&g, &|_| Step::Any, g.k),
        Orientation::Consistent => search(&g, &|_| Step::F, g.k),
        Orientation::AntiDirected => {
            let a = search(&g, &|i| if i % 2 == 0 { Step::F } else { Step::B }, g.k);
            let b = search(&g, &|i| if i % 2 == 0 { Step::B } else { Step::F }, g.k);
            if b.0.len() > a.0.len() { b } else { a }
        }
        Orientation::Word(word) => {
            let w = word.clone();
            search(&g, &move |i| if w[i] == Dir::F { Step::F } else { Step::B }, word.len() + 1)
        }
    };
    Ok(to_witness(&verts, best, color, true))
}

/// Longest cycle in an undirected adjacency-mask graph, as local indices.
pub(crate) fn longest_cycle(g: &MaskGraph) -> Option<Vec<usize>> {
    let k = g.k;
    // Paths start at the lowest vertex of their mask.
    let mut dp = vec![0u32; 1 << k];
    for v in 0..k {
        dp[1 << v] = 1 << v;
    }
    let mut best: Option<(u32, u32, usize)> = None;
    for mask in 1u32..(1u32 << k) {
        let p = mask.count_ones();
        if p < 2 {
            continue;
        }
        let low = mask.trailing_zeros() as usize;
        let mut ends = 0;
        for w in bits(mask & !(1 << low)) {
            if dp[(mask ^ (1 << w)) as usize] & g.out[w] != 0 {
                ends |= 1 << w;
            }
        }
        dp[mask as usize] = ends;
        if p >= 3 {
            let closing = ends & g.out[low];
            if closing != 0 && best.map_or(true, |b| p > b.0) {
                best = Some((p, mask, closing.trailing_zeros() as usize));
            }
        }
    }
    let (_, mask, end) = best?;
    let (path, _) = reconstruct(g, &dp, mask, end, &|_| Step::Any);
    Some(path)
}

/// Hamiltonian path from `s` to `t` over all `k` local vertices, if any.
pub(crate) fn hamiltonian_between(g: &MaskGraph, s: usize, t: usize) -> Option<Vec<usize>> {
    let k = g.k;
    if s == t {
        return if k == 1 { Some(vec![s]) } else { None };
    }
    let mut dp = vec![0u32; 1 << k];
    dp[1 << s] = 1 << s;
    for mask in 1u32..(1u32 << k) {
        if mask & (1 << s) == 0 || mask.count_ones() < 2 {
            continue;
        }
        let mut ends = 0;
        for w in bits(mask & !(1 << s)) {
            if dp[(mask ^ (1 << w)) as usize] & g.out[w] != 0 {
                ends |= 1 << w;
            }
        }
        dp[mask as usize] = ends;
    }
    let full = ((1u64 << k) - 1) as u32;
    if dp[full as usize] & (1 << t) == 0 {
        return None;
    }
    Some(reconstruct(g, &dp, full, t, &|_| Step::Any).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{materialize, gen_constant, ColorTable};
    use crate::engine::witness::validate_path;
    use crate::{BLUE, RED};

    #[test]
    fn complete_graph_is_hamiltonian() {
        let c = materialize(&gen_constant(RED, 2, false).unwrap(), 5).unwrap();
        let w = longest_mono_path(&c, RED).unwrap();
        assert_eq!(w.len(), 5);
        validate_path(&c, &w).unwrap();
        assert_eq!(longest_mono_path(&c, BLUE).unwrap().len(), 1);
    }

    #[test]
    fn single_edge() {
        let t = ColorTable::new(2, 2, false);
        assert_eq!(longest_mono_path(&t, RED).unwrap().len(), 2);
    }

    #[test]
    fn budget_enforced() {
        let c = materialize(&gen_constant(RED, 2, false).unwrap(), 25).unwrap();
        assert!(matches!(longest_mono_path(&c, RED), Err(crate::Error::Budget(_))));
        let d = materialize(&gen_constant(RED, 2, true).unwrap(), 17).unwrap();
        assert!(matches!(longest_oriented_path(&d, RED, &Orientation::Consistent), Err(crate::Error::Budget(_))));
    }

    #[test]
    fn consistent_on_all_red_digraph() {
        let d = materialize(&gen_constant(RED, 2, true).unwrap(), 5).unwrap();
        let w = longest_oriented_path(&d, RED, &Orientation::Consistent).unwrap();
        assert_eq!(w.len(), 5);
        assert_eq!(w.pattern.as_deref(), Some("FFFF"));
        validate_path(&d, &w).unwrap();
    }

    #[test]
    fn transitive_tournament_forces_consistent_paths_forward() {
        // Red arcs go up, blue arcs go down: every red consistent path is increasing.
        let mut t = ColorTable::new(6, 2, true);
        for u in 1..=6 {
            for v in 1..=6 {
                if u > v {
                    t.set(u, v, BLUE);
                }
            }
        }
        let w = longest_oriented_path(&t, RED, &Orientation::Consistent).unwrap();
        assert_eq!(w.vertices, vec![1, 2, 3, 4, 5, 6]);
        // 1 -> 6 <- 2 -> 5 <- 3 -> 4
        let a = longest_oriented_path(&t, RED, &Orientation::AntiDirected).unwrap();
        assert_eq!(a.len(), 6);
        validate_path(&t, &a).unwrap();
        let word = longest_oriented_path(&t, RED, &Orientation::Word(vec![Dir::F, Dir::F])).unwrap();
        assert_eq!(word.len(), 3);
    }

    #[test]
    fn cycles_and_fixed_endpoints() {
        // 5-cycle plus a pendant vertex.
        let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5)];
        let mut adj = vec![0u32; 6];
        for (a, b) in edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        let g = MaskGraph::from_adjacency(adj);
        assert_eq!(longest_cycle(&g).unwrap().len(), 5);
        let p = hamiltonian_between(&g, 0, 5).unwrap();
        assert_eq!(p.first(), Some(&0));
        assert_eq!(p.last(), Some(&5));
        assert_eq!(p.len(), 6);
        assert!(hamiltonian_between(&g, 1, 2).is_none());
    }
}

//! Rotation–extension (Pósa) and greedy path heuristics on bitset adjacency rows.

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::witness::{validate_path, Dir, PathWitness};
use crate::colorings::EdgeColoring;
use crate::error::ensure;
use crate::{ColorId, Result, Vertex};

/// Work limits for the randomized searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub restarts: u32,
    pub rotations: u32,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { restarts: 8, rotations: 20_000, seed: 0 }
    }
}

impl SearchBudget {
    pub(crate) fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}

/// Undirected graph on local indices with host labels.
#[derive(Debug, Clone)]
pub(crate) struct BitGraph {
    pub labels: Vec<Vertex>,
    pub adj: Vec<FixedBitSet>,
}

impl BitGraph {
    /// `edge` must be symmetric; it is evaluated once per unordered pair.
    pub fn from_fn(labels: Vec<Vertex>, edge: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let k = labels.len();
        let mut adj: Vec<FixedBitSet> = (0..k)
            .into_par_iter()
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(k);
                for j in i + 1..k {
                    if edge(i, j) {
                        row.insert(j);
                    }
                }
                row
            })
            .collect();
        for i in 0..k {
            let later: Vec<usize> = adj[i].ones().collect();
            for j in later {
                adj[j].insert(i);
            }
        }
        BitGraph { labels, adj }
    }

    /// The `color` subgraph of an undirected host on `labels`.
    pub fn from_coloring<C: EdgeColoring + ?Sized>(c: &C, labels: Vec<Vertex>, color: ColorId) -> Self {
        let l = labels.clone();
        Self::from_fn(labels, move |i, j| c.color(l[i], l[j]) == color)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// The complement on the same labels: the other color of a 2-coloring.
    pub fn complement(mut self) -> Self {
        for (i, row) in self.adj.iter_mut().enumerate() {
            row.toggle_range(..);
            row.set(i, false);
        }
        self
    }

    pub fn has(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones(..)
    }

    pub fn to_labels(&self, path: &[usize]) -> Vec<Vertex> {
        path.iter().map(|&i| self.labels[i]).collect()
    }
}

const NONE: usize = usize::MAX;

struct Posa<'g> {
    g: &'g BitGraph,
    path: Vec<usize>,
    pos: Vec<usize>,
    free: FixedBitSet,
}

impl<'g> Posa<'g> {
    fn new(g: &'g BitGraph, start: usize, blocked: Option<usize>) -> Self {
        let mut free = FixedBitSet::with_capacity(g.len());
        free.insert_range(..);
        if let Some(b) = blocked {
            free.set(b, false);
        }
        let mut p = Posa { g, path: Vec::new(), pos: vec![NONE; g.len()], free };
        p.push(start);
        p
    }

    fn push(&mut self, v: usize) {
        self.pos[v] = self.path.len();
        self.path.push(v);
        self.free.set(v, false);
    }

    fn free_neighbor(&self, v: usize) -> Option<usize> {
        let row = self.g.adj[v].as_slice();
        let free = self.free.as_slice();
        row.iter().zip(free).enumerate().find_map(|(b, (x, y))| {
            let m = x & y;
            (m != 0).then(|| b * (usize::BITS as usize) + m.trailing_zeros() as usize)
        })
    }

    fn reverse_range(&mut self, i: usize, j: usize) {
        self.path[i..=j].reverse();
        for k in i..=j {
            self.pos[self.path[k]] = k;
        }
    }

    fn extend_tail(&mut self) -> bool {
        let end = *self.path.last().unwrap();
        match self.free_neighbor(end) {
            Some(w) => {
                self.push(w);
                true
            }
            None => false,
        }
    }

    fn extend_head(&mut self) -> bool {
        let head = self.path[0];
        match self.free_neighbor(head) {
            Some(w) => {
                let l = self.path.len();
                self.reverse_range(0, l - 1);
                self.push(w);
                true
            }
            None => false,
        }
    }

    /// Pósa rotation at the tail: pick an on-path neighbor `p_i` of the end and reverse `p_{i+1}..end`.
    fn rotate(&mut self, rng: &mut ChaCha8Rng) -> bool {
        let l = self.path.len();
        if l < 3 {
            return false;
        }
        let end = self.path[l - 1];
        let cands: Vec<usize> = self.g.adj[end].ones().map(|w| self.pos[w]).filter(|&i| i != NONE && i + 2 < l).collect();
        match cands.choose(rng) {
            Some(&i) => {
                self.reverse_range(i + 1, l - 1);
                true
            }
            None => false,
        }
    }
}

/// Longest path found by extension at both ends plus tail rotations.
pub(crate) fn posa_path(g: &BitGraph, start: usize, rotations: u32, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut p = Posa::new(g, start, None);
    let mut left = rotations;
    loop {
        if p.extend_tail() || p.extend_head() {
            continue;
        }
        if left == 0 || !p.rotate(rng) {
            break;
        }
        left -= 1;
    }
    p.path
}

/// Hamiltonian `s,t`-path by extension and rotation from the fixed head `s`.
pub(crate) fn posa_between(g: &BitGraph, s: usize, t: usize, budget: &SearchBudget, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
    let k = g.len();
    if s == t {
        return (k == 1).then(|| vec![s]);
    }
    for _ in 0..budget.restarts.max(1) {
        let mut p = Posa::new(g, s, Some(t));
        let mut left = budget.rotations;
        loop {
            if p.extend_tail() {
                continue;
            }
            if p.path.len() == k - 1 && g.has(*p.path.last().unwrap(), t) {
                p.path.push(t);
                return Some(p.path);
            }
            if left == 0 || !p.rotate(rng) {
                break;
            }
            left -= 1;
        }
    }
    None
}

/// Close a path into a cycle through a crossing pair, or truncate to the longest closable prefix.
pub(crate) fn close_cycle(g: &BitGraph, path: &[usize]) -> Option<Vec<usize>> {
    let l = path.len();
    if l < 3 {
        return None;
    }
    let (a, z) = (path[0], path[l - 1]);
    if g.has(a, z) {
        return Some(path.to_vec());
    }
    for i in 1..l - 2 {
        if g.has(a, path[i + 1]) && g.has(path[i], z) {
            let mut c = path[..=i].to_vec();
            c.extend(path[i + 1..].iter().rev());
            return Some(c);
        }
    }
    (2..l).rev().find(|&j| g.has(a, path[j])).map(|j| path[..=j].to_vec())
}

/// Longest cycle found over restarts of rotation–extension, stopping after two restarts without gain.
pub(crate) fn long_cycle(g: &BitGraph, budget: &SearchBudget) -> Option<Vec<usize>> {
    let k = g.len();
    if k < 3 {
        return None;
    }
    let mut rng = budget.rng(k as u64);
    let mut best: Option<Vec<usize>> = None;
    let mut stale = 0;
    for r in 0..budget.restarts.max(1) {
        let start = if r == 0 { (0..k).max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v))).unwrap() } else { rng.gen_range(0..k) };
        let path = posa_path(g, start, budget.rotations, &mut rng);
        match close_cycle(g, &path) {
            Some(c) if best.as_ref().map_or(true, |b| c.len() > b.len()) => {
                best = Some(c);
                stale = 0;
            }
            _ => stale += 1,
        }
        if best.as_ref().is_some_and(|b| b.len() == k) || stale == 2 {
            break;
        }
    }
    best
}

/// Long monochromatic path beyond exact-search range. Undirected hosts use rotation–extension;
/// directed hosts use greedy two-ended extension into consistently oriented paths.
pub fn heuristic_long_path<C: EdgeColoring + ?Sized>(coloring: &C, color: ColorId, budget: &SearchBudget) -> Result<PathWitness> {
    ensure!(color.0 < coloring.num_colors(), Param, "color {color} out of range");
    let n = coloring.order();
    let w = if coloring.is_directed() {
        greedy_consistent(coloring, color, budget)
    } else {
        let g = BitGraph::from_coloring(coloring, (1..=n).collect(), color);
        let mut rng = budget.rng(n as u64);
        let mut best: Vec<usize> = Vec::new();
        for r in 0..budget.restarts.max(1) {
            let start = if r == 0 { 0 } else { rng.gen_range(0..g.len()) };
            let p = posa_path(&g, start, budget.rotations, &mut rng);
            if p.len() > best.len() {
                best = p;
            }
            if best.len() == g.len() {
                break;
            }
        }
        PathWitness::new(g.to_labels(&best), color)
    };
    validate_path(coloring, &w)?;
    Ok(w)
}

#[derive(Clone, Copy)]
enum Pick {
    Lowest,
    Highest,
    Random,
}

fn greedy_consistent<C: EdgeColoring + ?Sized>(c: &C, color: ColorId, budget: &SearchBudget) -> PathWitness {
    let n = c.order();
    let mut rng = budget.rng(n as u64 + 1);
    let mut best: Vec<Vertex> = Vec::new();
    let policies = [Pick::Lowest, Pick::Highest, Pick::Random];
    for r in 0..budget.restarts.max(1) {
        let start = if r == 0 { 1 } else { rng.gen_range(1..=n) };
        let policy = policies[r as usize % policies.len()];
        let p = greedy_run(c, color, start, policy, &mut rng);
        if p.len() > best.len() {
            best = p;
        }
    }
    let dirs = vec![Dir::F; best.len().saturating_sub(1)];
    PathWitness::directed(best, color, &dirs)
}

fn greedy_run<C: EdgeColoring + ?Sized>(c: &C, color: ColorId, start: Vertex, pick: Pick, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
    let n = c.order();
    let mut used = vec![false; n as usize + 1];
    used[start as usize] = true;
    let mut path = std::collections::VecDeque::from([start]);
    let choose = |cands: Vec<Vertex>, rng: &mut ChaCha8Rng| -> Option<Vertex> {
        match pick {
            Pick::Lowest => cands.first().copied(),
            Pick::Highest => cands.last().copied(),
            Pick::Random => cands.choose(rng).copied(),
        }
    };
    loop {
        let tail = *path.back().unwrap();
        let outs: Vec<Vertex> = (1..=n).filter(|&w| !used[w as usize] && c.color(tail, w) == color).collect();
        if let Some(w) = choose(outs, rng) {
            used[w as usize] = true;
            path.push_back(w);
            continue;
        }
        let head = *path.front().unwrap();
        let ins: Vec<Vertex> = (1..=n).filter(|&w| !used[w as usize] && c.color(w, head) == color).collect();
        match choose(ins, rng) {
            Some(w) => {
                used[w as usize] = true;
                path.push_front(w);
            }
            None => break,
        }
    }
    path.into()
}

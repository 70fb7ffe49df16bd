//! Maximal monochromatic connectors: a long cycle plus its two-neighbor closure.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::colorings::{EdgeColoring, Relabeled};
use crate::density::VertexSet;
use crate::engine::exact::{longest_cycle, MaskGraph};
use crate::engine::heuristic::{long_cycle, BitGraph};
use crate::engine::{validate_path, PathWitness, SearchBudget};
use crate::error::ensure;
use crate::{ColorId, Ratio, Result, Vertex};

/// Intervals up to this size get an exact longest cycle as base.
pub const CONNECTOR_EXACT_LIMIT: usize = 20;
/// Pair certification is exhaustive up to this connector size.
pub const CONNECTOR_EXHAUSTIVE_LIMIT: usize = 10;
/// Sampled pairs above the exhaustive limit.
pub const CONNECTOR_SAMPLED_PAIRS: usize = 50;

/// A monochromatic vertex set `X` inside an interval, grown from a base cycle by repeatedly
/// adding vertices with two same-color neighbors already in `X`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectorWitness {
    pub interval: VertexSet,
    pub x: VertexSet,
    pub color: ColorId,
    /// Minimum of `|path| / |interval|` over the certified pairs.
    pub alpha: Ratio,
    /// Cycle order; the last vertex is adjacent to the first.
    pub base_cycle: PathWitness,
    /// `layers[0]` is the cycle, `layers[i]` the vertices added in round `i`.
    pub layers: Vec<VertexSet>,
    pub certified_pairs: usize,
    pub exhaustive: bool,
    pub warning: Option<String>,
}

impl ConnectorWitness {
    /// The nested sets `X_0 ⊆ X_1 ⊆ ...`.
    pub fn closure_layers(&self) -> Vec<VertexSet> {
        let mut acc = Vec::new();
        self.layers
            .iter()
            .map(|l| {
                acc.extend(l.iter());
                VertexSet::new(acc.clone())
            })
            .collect()
    }
}

/// The best connector over all colors: highest certified alpha, then largest `X`, then lowest color.
pub fn find_alpha_connector<C: EdgeColoring + ?Sized>(coloring: &C, interval: &VertexSet, budget: &SearchBudget) -> Result<ConnectorWitness> {
    ensure!(!coloring.is_directed(), Param, "connectors live on undirected hosts");
    ensure!(interval.len() >= 6, Param, "interval of {} vertices; connectors need at least 6", interval.len());
    ensure!(interval.max().unwrap() <= coloring.order(), Param, "interval exceeds the prefix [{}]", coloring.order());
    let mut best: Option<ConnectorWitness> = None;
    let mut prev: Option<BitGraph> = None;
    for c in 0..coloring.num_colors() {
        let g = match prev.take() {
            Some(other) if coloring.num_colors() == 2 => other.complement(),
            _ => BitGraph::from_coloring(coloring, interval.members().to_vec(), ColorId(c)),
        };
        let found = connector_on(coloring, interval, ColorId(c), &g, budget)?;
        prev = Some(g);
        if let Some(w) = found {
            let better = best.as_ref().map_or(true, |b| (w.alpha, w.x.len()) > (b.alpha, b.x.len()));
            if better {
                best = Some(w);
            }
        }
    }
    best.ok_or_else(|| crate::Error::HeuristicFailed(format!("no monochromatic cycle in an interval of {} vertices", interval.len())))
}

/// The connector of one color, if that color has a cycle in the interval.
pub fn connector_in_color<C: EdgeColoring + ?Sized>(
    coloring: &C,
    interval: &VertexSet,
    color: ColorId,
    budget: &SearchBudget,
) -> Result<Option<ConnectorWitness>> {
    let g = BitGraph::from_coloring(coloring, interval.members().to_vec(), color);
    connector_on(coloring, interval, color, &g, budget)
}

fn connector_on<C: EdgeColoring + ?Sized>(
    coloring: &C,
    interval: &VertexSet,
    color: ColorId,
    g: &BitGraph,
    budget: &SearchBudget,
) -> Result<Option<ConnectorWitness>> {
    let labels = interval.members().to_vec();
    let cycle = if labels.len() <= CONNECTOR_EXACT_LIMIT {
        let view = Relabeled::new(coloring, labels.clone());
        let local: Vec<Vertex> = (1..=labels.len() as Vertex).collect();
        longest_cycle(&MaskGraph::from_coloring(&view, &local, color))
    } else {
        long_cycle(g, budget)
    };
    let Some(cycle) = cycle else { return Ok(None) };

    let k = labels.len();
    let mut layer = vec![u32::MAX; k];
    let mut inside = FixedBitSet::with_capacity(k);
    for &i in &cycle {
        layer[i] = 0;
        inside.insert(i);
    }
    let mut layers = vec![VertexSet::new(g.to_labels(&cycle))];
    loop {
        let added: Vec<usize> = (0..k).filter(|&v| !inside.contains(v) && g.adj[v].intersection_count(&inside) >= 2).collect();
        if added.is_empty() {
            break;
        }
        for &v in &added {
            layer[v] = layers.len() as u32;
            inside.insert(v);
        }
        layers.push(VertexSet::new(g.to_labels(&added)));
    }

    let members: Vec<usize> = inside.ones().collect();
    let x = VertexSet::new(g.to_labels(&members));
    let base_cycle = PathWitness::new(g.to_labels(&cycle), color);
    let warning = (cycle.len() * 3 < k).then(|| format!("longest {color} cycle found has {} of {k} vertices, below a third", cycle.len()));
    let mut conn = ConnectorWitness {
        interval: interval.clone(),
        x,
        color,
        alpha: Ratio::from_integer(0),
        base_cycle,
        layers,
        certified_pairs: 0,
        exhaustive: false,
        warning,
    };

    let router = Router::from_parts(g, &members, &layer, &cycle, color);
    let xs = conn.x.members().to_vec();
    let pairs: Vec<(Vertex, Vertex)> = if xs.len() <= CONNECTOR_EXHAUSTIVE_LIMIT {
        conn.exhaustive = true;
        (0..xs.len()).flat_map(|i| (i + 1..xs.len()).map(move |j| (i, j))).map(|(i, j)| (xs[i], xs[j])).collect()
    } else {
        let mut rng = budget.rng(0xc0 ^ interval.members()[0] as u64 ^ ((color.0 as u64) << 40));
        (0..CONNECTOR_SAMPLED_PAIRS)
            .map(|_| {
                let s = sample(&mut rng, xs.len(), 2);
                (xs[s.index(0)], xs[s.index(1)])
            })
            .collect()
    };
    let mut worst = usize::MAX;
    for &(u, v) in &pairs {
        let p = router.path(u, v)?;
        validate_path(coloring, &p)?;
        ensure!(p.first() == u && p.last() == v, Internal, "routed path has the wrong ends");
        worst = worst.min(p.len());
    }
    conn.certified_pairs = pairs.len();
    conn.alpha = Ratio::new(worst as u64, k as u64);
    Ok(Some(conn))
}

/// A monochromatic `u,v`-path inside `X`: descend the closure layers to the cycle, then
/// route the cycle the long way round, skipping back along one chord when that is longer.
pub fn connector_path<C: EdgeColoring + ?Sized>(coloring: &C, conn: &ConnectorWitness, u: Vertex, v: Vertex) -> Result<PathWitness> {
    let p = Router::new(coloring, conn).path(u, v)?;
    validate_path(coloring, &p)?;
    Ok(p)
}

/// Check the structural claims of a connector: a closed cycle, two attachment edges per
/// added vertex, and at most one neighbor in `X` for every other interval vertex.
pub fn check_connector<C: EdgeColoring + ?Sized>(coloring: &C, conn: &ConnectorWitness) -> Result<()> {
    let c = conn.color;
    let cyc = &conn.base_cycle;
    validate_path(coloring, cyc)?;
    ensure!(cyc.len() >= 3 && coloring.color(cyc.first(), cyc.last()) == c, Witness, "base cycle does not close in {c}");
    ensure!(conn.layers.first() == Some(&VertexSet::new(cyc.vertices.clone())), Witness, "layer 0 differs from the cycle");
    let mut seen: Vec<Vertex> = Vec::new();
    for (i, l) in conn.layers.iter().enumerate() {
        if i > 0 {
            for v in l.iter() {
                let k = seen.iter().filter(|&&w| coloring.color(v, w) == c).count();
                ensure!(k >= 2, Witness, "vertex {v} of layer {i} has {k} attachment edges");
            }
        }
        seen.extend(l.iter());
    }
    ensure!(VertexSet::new(seen) == conn.x, Witness, "layers do not union to X");
    for v in conn.interval.iter().filter(|&v| !conn.x.contains(v)) {
        let k = conn.x.iter().filter(|&w| coloring.color(v, w) == c).count();
        ensure!(k <= 1, Witness, "outside vertex {v} has {k} {c} neighbors in X; X is not maximal");
    }
    Ok(())
}

const NONE: usize = usize::MAX;

/// Routing data over `X` with local indices.
pub(crate) struct Router {
    g: BitGraph,
    layer: Vec<u32>,
    cycle: Vec<usize>,
    cpos: Vec<usize>,
    index: HashMap<Vertex, usize>,
    color: ColorId,
}

impl Router {
    pub(crate) fn new<C: EdgeColoring + ?Sized>(coloring: &C, conn: &ConnectorWitness) -> Self {
        let labels = conn.x.members().to_vec();
        let index: HashMap<Vertex, usize> = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut layer = vec![0; labels.len()];
        for (i, l) in conn.layers.iter().enumerate() {
            for v in l.iter() {
                layer[index[&v]] = i as u32;
            }
        }
        let cycle = conn.base_cycle.vertices.iter().map(|v| index[v]).collect();
        let g = BitGraph::from_coloring(coloring, labels, conn.color);
        Self::assemble(g, layer, cycle, index, conn.color)
    }

    fn from_parts(host: &BitGraph, members: &[usize], layer: &[u32], cycle: &[usize], color: ColorId) -> Self {
        let mut local = vec![NONE; host.len()];
        for (i, &m) in members.iter().enumerate() {
            local[m] = i;
        }
        let labels: Vec<Vertex> = members.iter().map(|&m| host.labels[m]).collect();
        let adj = members
            .iter()
            .map(|&m| {
                let mut row = FixedBitSet::with_capacity(members.len());
                row.extend(host.adj[m].ones().filter(|&w| local[w] != NONE).map(|w| local[w]));
                row
            })
            .collect();
        let index = labels.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let layer = members.iter().map(|&m| layer[m]).collect();
        Self::assemble(BitGraph { labels, adj }, layer, cycle.iter().map(|&c| local[c]).collect(), index, color)
    }

    fn assemble(g: BitGraph, layer: Vec<u32>, cycle: Vec<usize>, index: HashMap<Vertex, usize>, color: ColorId) -> Self {
        let mut cpos = vec![NONE; g.len()];
        for (p, &c) in cycle.iter().enumerate() {
            cpos[c] = p;
        }
        Router { g, layer, cycle, cpos, index, color }
    }

    /// Path between two members of `X`, carrying the connector color.
    pub(crate) fn path(&self, u: Vertex, v: Vertex) -> Result<PathWitness> {
        ensure!(u != v, Param, "connector path needs distinct ends");
        let iu = *self.index.get(&u).ok_or_else(|| crate::Error::Param(format!("{u} is not in the connector")))?;
        let iv = *self.index.get(&v).ok_or_else(|| crate::Error::Param(format!("{v} is not in the connector")))?;
        let local = self.chains(iu, iv).map(|(cu, cv)| {
            let route = self.cycle_route(self.cpos[*cu.last().unwrap()], self.cpos[*cv.last().unwrap()]);
            let mut p = cu[..cu.len() - 1].to_vec();
            p.extend(route);
            p.extend(cv[..cv.len() - 1].iter().rev());
            p
        });
        let local = match local {
            Some(p) => p,
            None => self.shortest(iu, iv).ok_or_else(|| crate::Error::Internal(format!("{u} and {v} are not connected in X")))?,
        };
        Ok(PathWitness::new(self.g.to_labels(&local), self.color))
    }

    /// Disjoint descending chains from `a` and `b` to distinct cycle vertices.
    fn chains(&self, a: usize, b: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let k = self.g.len();
        for (first, second) in [(a, b), (b, a)] {
            let mut blocked = FixedBitSet::with_capacity(k);
            blocked.insert(second);
            let Some(c1) = self.descend(first, &blocked) else { continue };
            let mut blocked = FixedBitSet::with_capacity(k);
            blocked.extend(c1.iter().copied());
            let Some(c2) = self.descend(second, &blocked) else { continue };
            return Some(if first == a { (c1, c2) } else { (c2, c1) });
        }
        None
    }

    /// Shortest path from `s` down strictly decreasing layers to a cycle vertex.
    fn descend(&self, s: usize, blocked: &FixedBitSet) -> Option<Vec<usize>> {
        if blocked.contains(s) {
            return None;
        }
        let mut prev = vec![NONE; self.g.len()];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if self.layer[x] == 0 {
                let mut chain = vec![x];
                let mut y = x;
                while y != s {
                    y = prev[y];
                    chain.push(y);
                }
                chain.reverse();
                return Some(chain);
            }
            for w in self.g.adj[x].ones() {
                if self.layer[w] < self.layer[x] && prev[w] == NONE && !blocked.contains(w) {
                    prev[w] = x;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    fn shortest(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut prev = vec![NONE; self.g.len()];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                let mut p = vec![t];
                let mut y = t;
                while y != s {
                    y = prev[y];
                    p.push(y);
                }
                p.reverse();
                return Some(p);
            }
            for w in self.g.adj[x].ones() {
                if prev[w] == NONE {
                    prev[w] = x;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Longest of: the two arcs, and the two single-chord detours, between cycle positions `pa` and `pb`.
    fn cycle_route(&self, pa: usize, pb: usize) -> Vec<usize> {
        let l = self.cycle.len();
        let c = |t: usize| self.cycle[(pa + t) % l];
        let b = (pb + l - pa) % l;
        let forward = || (0..=b).map(c).collect::<Vec<_>>();
        let backward = || std::iter::once(0).chain((b..l).rev()).map(c).collect::<Vec<_>>();
        let mut best = if b + 1 >= l - b + 1 { forward() } else { backward() };
        let cap = 32 * l + 256;

        // c_0, c_{L-1}, ..., c_j, chord, c_i, ..., c_b with 1 ≤ i ≤ b < j.
        let mut evals = 0;
        'a: for s in (b + 2)..(b + l) {
            let cov = l + b + 2 - s;
            if cov <= best.len() || evals > cap {
                break;
            }
            let lo = 1.max(s.saturating_sub(l - 1));
            let hi = b.min(s - (b + 1));
            for i in lo..=hi {
                evals += 1;
                let j = s - i;
                if self.g.has(c(j), c(i)) {
                    best = std::iter::once(0).chain((j..l).rev()).chain(i..=b).map(c).collect();
                    break 'a;
                }
            }
        }

        // c_0, ..., c_i, chord, c_j, c_{j-1}, ..., c_b with 0 ≤ i < b < j.
        let mut evals = 0;
        if b >= 1 && b + 1 < l {
            'b: for s in ((b + 1)..=(b - 1 + l - 1)).rev() {
                let cov = s + 2 - b;
                if cov <= best.len() || evals > cap {
                    break;
                }
                let lo = s.saturating_sub(l - 1);
                let hi = (b - 1).min(s - (b + 1));
                for i in (lo..=hi).rev() {
                    evals += 1;
                    let j = s - i;
                    if self.g.has(c(i), c(j)) {
                        best = (0..=i).chain((b..=j).rev()).map(c).collect();
                        break 'b;
                    }
                }
            }
        }
        best
    }
}

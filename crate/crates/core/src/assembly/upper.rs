//! Upper-density path: dense path forests per interval, stitched in one color.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::schedule::Schedule;
use super::stitch::Stitch;
use super::trace::{ArtifactSummary, Assembly, AssemblyKind, AssemblyTrace, CaseTag, IntervalRecord, Separation, Source};
use crate::colorings::{materialize, ColoringSpec, EdgeColoring, Intervals, PrefixColoring, Relabeled, WithVertexColors};
use crate::density::{profile_set, DensityKind, VertexSet};
use crate::engine::heuristic::BitGraph;
use crate::engine::{glp_on, mpf_dense_forest_with, ForestWitness, MpfOptions, MpfResult, PathWitness, SearchBudget};
use crate::error::ensure;
use crate::{ColorId, Ratio, Result, Vertex, BLUE, RED};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperOptions {
    /// A vertex is red when its red degree into the rest of the prefix is at least this fraction.
    pub degree_threshold: Ratio,
    /// Largest separator tried when looking for a color-disconnected pair.
    pub separator_max: usize,
    /// Also build a chosen-color forest over each whole interval, used when it beats the dense forest.
    pub fill_skipped: bool,
    pub budget: SearchBudget,
}

impl Default for UpperOptions {
    fn default() -> Self {
        UpperOptions { degree_threshold: Ratio::new(1, 2), separator_max: 3, fill_skipped: true, budget: SearchBudget::default() }
    }
}

/// A monochromatic path on `[n]` of high upper density, following the two-case construction:
/// a small separator between same-colored vertices gives a path on its complement; otherwise
/// dense forests are found per interval and stitched in their majority color.
pub fn assemble_34_path(spec: &ColoringSpec, n: u32, schedule: &Schedule, opts: &UpperOptions) -> Result<Assembly> {
    spec.validate()?;
    ensure!(!spec.directed && spec.num_colors == 2, Param, "the upper-density assembly needs an undirected 2-coloring");
    let pc = materialize(spec, n)?;
    let partition = schedule.partition();
    let iv = partition.materialize(n)?;
    let complete = iv.complete_ends().len();
    ensure!(complete >= 3, Param, "[{n}] holds {complete} complete intervals of the schedule; at least 3 are needed");

    let colors = vertex_colors(&pc, opts.degree_threshold);
    let first: Vec<Vertex> = iv.range(0).collect();
    if let Some(sep) = find_separation(&pc, &colors, &first, opts.separator_max) {
        return separated_path(&pc, sep, partition, &iv);
    }
    forest_path(&pc, &colors, schedule, partition, &iv, opts)
}

/// Red when the red degree into `[n] \ [v]` reaches `threshold` of its size.
pub fn vertex_colors<C: EdgeColoring + ?Sized>(c: &C, threshold: Ratio) -> Vec<ColorId> {
    let n = c.order();
    (1..=n)
        .into_par_iter()
        .map(|v| {
            let red = (v + 1..=n).filter(|&w| c.color(v, w) == RED).count() as u64;
            if Ratio::from_integer(red) >= threshold * Ratio::from_integer((n - v) as u64) {
                RED
            } else {
                BLUE
            }
        })
        .collect()
}

const NONE: usize = usize::MAX;

/// A vertex set of size at most `limit` meeting every `s,t`-path, found by unit-capacity
/// augmentation on the split graph; `None` when more than `limit` disjoint paths exist.
fn small_separator(g: &BitGraph, s: usize, t: usize, limit: usize) -> Option<Vec<usize>> {
    let k = g.len();
    let mut vflow = vec![false; k];
    // `arcs[v]` lists the `u` with flow on the arc `u -> v`; arc capacities are unbounded.
    let mut arcs: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut flows = 0;
    loop {
        // Nodes: 2v = in(v), 2v + 1 = out(v).
        let mut parent = vec![NONE; 2 * k];
        let mut unseen_in = FixedBitSet::with_capacity(k);
        unseen_in.insert_range(..);
        unseen_in.set(s, false);
        parent[2 * s + 1] = 2 * s + 1;
        let mut queue = VecDeque::from([2 * s + 1]);
        let mut reached = false;
        while let Some(node) = queue.pop_front() {
            let v = node / 2;
            if node % 2 == 0 {
                if v == t {
                    reached = true;
                    break;
                }
                let step = |to: usize, parent: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
                    if parent[to] == NONE {
                        parent[to] = node;
                        queue.push_back(to);
                    }
                };
                if !vflow[v] {
                    step(2 * v + 1, &mut parent, &mut queue);
                }
                for &u in arcs.get(&v).into_iter().flatten() {
                    step(2 * u + 1, &mut parent, &mut queue);
                }
            } else {
                if vflow[v] && v != s && parent[2 * v] == NONE {
                    parent[2 * v] = node;
                    unseen_in.set(v, false);
                    queue.push_back(2 * v);
                }
                let fresh: Vec<usize> = g.adj[v].intersection(&unseen_in).collect();
                for w in fresh {
                    unseen_in.set(w, false);
                    parent[2 * w] = node;
                    queue.push_back(2 * w);
                }
            }
        }
        if !reached {
            let cut: Vec<usize> = (0..k).filter(|&v| v != s && v != t && parent[2 * v] != NONE && parent[2 * v + 1] == NONE).collect();
            return Some(cut);
        }
        flows += 1;
        if flows > limit {
            return None;
        }
        let mut node = 2 * t;
        while node != 2 * s + 1 {
            let p = parent[node];
            let (a, b) = (p / 2, node / 2);
            match (p % 2, node % 2) {
                (0, 1) if a == b => vflow[a] = true,
                (1, 0) if a == b => vflow[a] = false,
                (1, 0) => arcs.entry(b).or_default().push(a),
                _ => {
                    // Residual of the arc b -> a.
                    let list = arcs.get_mut(&a).unwrap();
                    let i = list.iter().position(|&x| x == b).unwrap();
                    list.swap_remove(i);
                }
            }
            node = p;
        }
    }
}

/// The first same-colored, non-adjacent pair in `first` (lexicographic, red before blue) that
/// at most `limit` vertices separate in its color.
pub fn find_separation<C: EdgeColoring + ?Sized>(c: &C, colors: &[ColorId], first: &[Vertex], limit: usize) -> Option<Separation> {
    let n = c.order();
    for chi in [RED, BLUE] {
        let cand: Vec<Vertex> = first.iter().copied().filter(|&v| colors[v as usize - 1] == chi).collect();
        let rows: Vec<FixedBitSet> = cand
            .par_iter()
            .map(|&v| {
                let mut row = FixedBitSet::with_capacity(n as usize + 1);
                row.extend((1..=n).filter(|&w| w != v && c.color(v, w) == chi).map(|w| w as usize));
                row
            })
            .collect();
        let mut full: Option<BitGraph> = None;
        for i in 0..cand.len() {
            for j in i + 1..cand.len() {
                let (x, y) = (cand[i], cand[j]);
                if rows[i].contains(y as usize) || rows[i].intersection_count(&rows[j]) > limit {
                    continue;
                }
                let g = full.get_or_insert_with(|| BitGraph::from_coloring(c, (1..=n).collect(), chi));
                if let Some(cut) = small_separator(g, x as usize - 1, y as usize - 1, limit) {
                    return Some(Separation { x, y, color: chi, separator: cut.into_iter().map(|v| v as Vertex + 1).collect() });
                }
            }
        }
    }
    None
}

fn reach<C: EdgeColoring + ?Sized>(c: &C, from: Vertex, color: ColorId, blocked: &FixedBitSet) -> Vec<Vertex> {
    let n = c.order();
    let mut seen = blocked.clone();
    seen.insert(from as usize);
    let mut out = vec![from];
    let mut i = 0;
    while i < out.len() {
        let v = out[i];
        for w in 1..=n {
            if !seen.contains(w as usize) && c.color(v, w) == color {
                seen.insert(w as usize);
                out.push(w);
            }
        }
        i += 1;
    }
    out
}

/// Case one: the parts reached from `x` and from `y` avoiding the separator, and the rest,
/// are joined pairwise only in the other color; interleave them in increasing order.
fn separated_path(pc: &PrefixColoring, sep: Separation, partition: crate::colorings::IntervalPartition, iv: &Intervals) -> Result<Assembly> {
    let n = pc.order();
    let mut blocked = FixedBitSet::with_capacity(n as usize + 1);
    blocked.insert(0);
    blocked.extend(sep.separator.iter().map(|&v| v as usize));
    let mut part = vec![u8::MAX; n as usize + 1];
    for (label, start) in [(0u8, sep.x), (1, sep.y)] {
        for v in reach(pc, start, sep.color, &blocked) {
            part[v as usize] = label;
        }
    }
    let mut lists: [VecDeque<Vertex>; 3] = Default::default();
    for v in 1..=n {
        if blocked.contains(v as usize) {
            continue;
        }
        let p = if part[v as usize] == u8::MAX { 2 } else { part[v as usize] };
        part[v as usize] = p;
        lists[p as usize].push_back(v);
    }
    let rho = sep.color.flip();
    let mut vertices = Vec::new();
    let mut cur: Option<u8> = None;
    loop {
        let next = (0..3u8).filter(|&p| Some(p) != cur).filter_map(|p| lists[p as usize].front().map(|&v| (v, p))).min();
        let Some((v, p)) = next else { break };
        lists[p as usize].pop_front();
        vertices.push(v);
        cur = Some(p);
    }
    let intervals = records_plain(iv, true);
    let trace = AssemblyTrace {
        kind: AssemblyKind::Upper,
        n,
        partition,
        case: CaseTag::One,
        color: rho,
        intervals,
        pairs: Vec::new(),
        separation: Some(sep),
        pieces: vec![super::trace::Piece::Artifact { intervals: (0..iv.len()).collect(), source: Source::Separated, vertices }],
        discarded: Vec::new(),
        single_forest_record: None,
    };
    finish(pc, trace, upper_checkpoints(iv, &[]))
}

fn records_plain(iv: &Intervals, used: bool) -> Vec<IntervalRecord> {
    (0..iv.len())
        .map(|p| IntervalRecord {
            position: p,
            start: iv.start(p),
            end: iv.ends[p],
            artifact: ArtifactSummary::Missing { reason: "not needed in this case".into() },
            used,
        })
        .collect()
}

fn upper_checkpoints(iv: &Intervals, ells: &[Vertex]) -> Vec<Vertex> {
    let mut cps: Vec<Vertex> = iv.ends.clone();
    cps.extend_from_slice(ells);
    cps.sort_unstable();
    cps.dedup();
    cps
}

fn finish(pc: &PrefixColoring, trace: AssemblyTrace, checkpoints: Vec<Vertex>) -> Result<Assembly> {
    let path = super::trace::validate_trace(pc, &trace)?;
    let profile = profile_set(&VertexSet::new(path.vertices.clone()), &checkpoints, DensityKind::Upper)?;
    Ok(Assembly { path, trace, profile })
}

struct IntervalForest {
    dense: Option<MpfResult>,
    /// `|F ∩ [ℓ]| / ℓ` in interval-local labels.
    density: Ratio,
    reason: Option<String>,
}

fn map_forest(f: &ForestWitness, labels: &[Vertex]) -> ForestWitness {
    ForestWitness {
        color: f.color,
        paths: f.paths.iter().map(|p| PathWitness::new(p.vertices.iter().map(|&v| labels[v as usize - 1]).collect(), p.color)).collect(),
    }
}

fn forest_path(
    pc: &PrefixColoring,
    colors: &[ColorId],
    schedule: &Schedule,
    partition: crate::colorings::IntervalPartition,
    iv: &Intervals,
    opts: &UpperOptions,
) -> Result<Assembly> {
    let n = pc.order();
    let total = WithVertexColors::new(pc, colors.to_vec());
    let complete = iv.complete_ends();
    let forests: Vec<IntervalForest> = (0..iv.len())
        .into_par_iter()
        .map(|p| {
            let labels: Vec<Vertex> = iv.range(p).collect();
            let (eps, k) = (schedule.eps[p], schedule.k[p]);
            if (labels.len() as u32) < k {
                return IntervalForest { dense: None, density: Ratio::from_integer(0), reason: Some(format!("{} vertices, below k = {k}", labels.len())) };
            }
            let view = Relabeled::new(&total, labels.clone());
            let mopts = MpfOptions { enforce_order_bound: complete.contains(&iv.ends[p]), ..MpfOptions::default() };
            let budget = SearchBudget { seed: opts.budget.seed ^ p as u64, ..opts.budget };
            match mpf_dense_forest_with(&view, eps, k, &budget, &mopts) {
                Ok(mut r) => {
                    let density = r.density();
                    r.forest = map_forest(&r.forest, &labels);
                    r.ell = labels[r.ell as usize - 1];
                    IntervalForest { dense: Some(r), density, reason: None }
                }
                Err(e) => IntervalForest { dense: None, density: Ratio::from_integer(0), reason: Some(e.to_string()) },
            }
        })
        .collect();

    let mut count = [0usize; 2];
    let mut size = [0usize; 2];
    for f in forests.iter().filter_map(|f| f.dense.as_ref()) {
        count[f.forest.color.index()] += 1;
        size[f.forest.color.index()] += f.forest.size();
    }
    let rho = if (count[1], size[1]) > (count[0], size[0]) { BLUE } else { RED };

    let fills: Vec<Option<ForestWitness>> = (0..iv.len())
        .into_par_iter()
        .map(|p| {
            if !opts.fill_skipped {
                return None;
            }
            let labels: Vec<Vertex> = iv.range(p).collect();
            let reds = labels.iter().filter(|&&v| colors[v as usize - 1] == RED).count();
            let minor = if 2 * reds <= labels.len() { RED } else { BLUE };
            let bprime: Vec<Vertex> = labels.iter().copied().filter(|&v| colors[v as usize - 1] != minor).take(labels.iter().filter(|&&v| colors[v as usize - 1] == minor).count()).collect();
            let budget = SearchBudget { seed: opts.budget.seed ^ 0xf111 ^ p as u64, ..opts.budget };
            let g = glp_on(&total, &labels, minor, &bprime, &budget).ok()?;
            Some(if g.minor.color == rho { g.minor } else { g.major })
        })
        .collect();

    let mut st = Stitch::new(pc, rho);
    let mut records = Vec::with_capacity(iv.len());
    let mut ells = Vec::new();
    let mut chosen: Vec<(usize, Source, ForestWitness)> = Vec::new();
    for p in 0..iv.len() {
        let f = &forests[p];
        let artifact = match (&f.dense, &f.reason) {
            (Some(r), _) => {
                ells.push(r.ell);
                ArtifactSummary::Forest {
                    color: r.forest.color,
                    ell: r.ell,
                    size: r.forest.size(),
                    paths: r.forest.paths.len(),
                    density: f.density,
                    branch: r.trace.branch,
                }
            }
            (None, reason) => ArtifactSummary::Missing { reason: reason.clone().unwrap_or_default() },
        };
        let own = f.dense.as_ref().filter(|r| r.forest.color == rho);
        let pick = match (own, &fills[p]) {
            (Some(r), Some(fill)) if fill.size() > r.forest.size() => Some((Source::Fill, fill.clone())),
            (Some(r), _) => Some((Source::Forest, r.forest.clone())),
            (None, Some(fill)) => Some((Source::Fill, fill.clone())),
            _ => None,
        };
        if let Some((src, forest)) = pick {
            st.reserve(forest.vertices());
            chosen.push((p, src, forest));
        } else {
            st.discarded.push(format!("interval {p}: no {rho} forest"));
        }
        records.push(IntervalRecord { position: p, start: iv.start(p), end: iv.ends[p], artifact, used: false });
    }

    for (p, src, forest) in chosen {
        let hi = iv.ends[p];
        let mut paths = forest.paths.clone();
        paths.sort_by_key(|q| *q.vertices.iter().min().unwrap());
        for q in paths {
            let (a, b) = (q.first(), q.last());
            if st.end.is_none() {
                st.push_artifact(vec![p], src, q.vertices);
                records[p].used = true;
                continue;
            }
            let join = st.find_join(&[a, b], &|z| z > hi).or_else(|| st.find_join(&[a, b], &|_| true));
            match join {
                Some((via, t)) => {
                    st.push_join(via, None);
                    let vs = if t == a { q.vertices } else { q.vertices.into_iter().rev().collect() };
                    st.push_artifact(vec![p], src, vs);
                    records[p].used = true;
                }
                None => {
                    st.discarded.push(format!("interval {p}: no {rho} join to the path at {a}..{b}"));
                    st.release(q.vertices.iter().copied());
                }
            }
        }
    }

    let trace = AssemblyTrace {
        kind: AssemblyKind::Upper,
        n,
        partition,
        case: CaseTag::Two,
        color: rho,
        intervals: records,
        pairs: Vec::new(),
        separation: None,
        pieces: st.pieces,
        discarded: st.discarded,
        single_forest_record: None,
    };
    let checkpoints = upper_checkpoints(iv, &ells);
    let mut a = finish(pc, trace, checkpoints.clone())?;
    let singles = forests.iter().filter_map(|f| f.dense.as_ref().map(|r| &r.forest)).chain(fills.iter().flatten());
    let mut best: Option<Ratio> = None;
    for f in singles {
        let prof = profile_set(&VertexSet::new(f.vertices().collect()), &checkpoints, DensityKind::Upper)?;
        best = best.max(prof.record_upper_from(a.profile.tail_start));
    }
    a.trace.single_forest_record = best;
    Ok(a)
}

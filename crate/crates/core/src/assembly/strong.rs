//! Strong-upper-density path: one connector per interval, joined in interval order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bridges::{bridge_dual, bridge_no_matching, two_matching, BridgeSide};
use super::connector::{connector_path, find_alpha_connector, ConnectorWitness};
use super::schedule::Schedule;
use super::stitch::Stitch;
use super::trace::{validate_trace, ArtifactSummary, Assembly, AssemblyKind, AssemblyTrace, CaseTag, IntervalRecord, PairCase, Source};
use crate::colorings::{materialize, ColoringSpec, EdgeColoring, Intervals, PrefixColoring};
use crate::density::{profile_sequence, DensityKind, VertexSequence, VertexSet};
use crate::engine::{PathWitness, SearchBudget};
use crate::error::ensure;
use crate::{ColorId, Result, Vertex, BLUE, RED};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongOptions {
    pub budget: SearchBudget,
}

enum Block {
    Conn(usize),
    Fixed { intervals: Vec<usize>, source: Source, path: PathWitness, tag: CaseTag },
}

impl Block {
    fn intervals(&self) -> Vec<usize> {
        match self {
            Block::Conn(p) => vec![*p],
            Block::Fixed { intervals, .. } => intervals.clone(),
        }
    }
}

/// A monochromatic path on `[n]` of high strong upper density: a maximal connector in each
/// interval, joined by matching edges, by bridges across pairs without matchings, or by dual
/// bridges where the connector colors alternate. Both path colors are tried; the better
/// record is kept.
pub fn assemble_23_sud_path(spec: &ColoringSpec, n: u32, schedule: &Schedule, opts: &StrongOptions) -> Result<Assembly> {
    spec.validate()?;
    ensure!(!spec.directed && spec.num_colors == 2, Param, "the strong-density assembly needs an undirected 2-coloring");
    let pc = materialize(spec, n)?;
    let partition = schedule.partition();
    let iv = partition.materialize(n)?;
    let usable: Vec<usize> = (0..iv.len()).filter(|&p| iv.range(p).count() >= 6).collect();
    ensure!(usable.len() >= 2, Param, "[{n}] holds {} intervals of at least 6 vertices; at least 2 are needed", usable.len());

    let conns: Vec<Option<ConnectorWitness>> = (0..iv.len())
        .into_par_iter()
        .map(|p| {
            if !usable.contains(&p) {
                return None;
            }
            let budget = SearchBudget { seed: opts.budget.seed ^ p as u64, ..opts.budget };
            find_alpha_connector(&pc, &VertexSet::new(iv.range(p).collect()), &budget).ok()
        })
        .collect();

    let pairs: Vec<PairCase> = (0..iv.len().saturating_sub(1))
        .filter_map(|p| {
            let (a, b) = (conns[p].as_ref()?, conns[p + 1].as_ref()?);
            let chi = [a.color, b.color];
            let matching = two_matching(&pc, &a.x, &b.x, b.color).is_some();
            Some(PairCase { from: p, chi, matching, case: CaseTag::for_pair(chi, matching) })
        })
        .collect();

    let mut best: Option<(Assembly, (num_rational::Ratio<u64>, bool))> = None;
    let majority = {
        let blue = conns.iter().flatten().filter(|c| c.color == BLUE).count();
        let red = conns.iter().flatten().filter(|c| c.color == RED).count();
        if blue > red { BLUE } else { RED }
    };
    for rho in [RED, BLUE] {
        let Some(a) = build(&pc, &iv, &conns, &pairs, schedule, rho, opts, partition.clone())? else { continue };
        let key = (a.profile.record_upper.unwrap_or_default(), rho == majority);
        if best.as_ref().map_or(true, |(_, k)| key > *k) {
            best = Some((a, key));
        }
    }
    best.map(|(a, _)| a).ok_or_else(|| crate::Error::HeuristicFailed("no connector-based path in either color".into()))
}

fn overall_case(pairs: &[PairCase]) -> CaseTag {
    pairs.last().map_or(CaseTag::OneA, |p| p.case)
}

#[allow(clippy::too_many_arguments)]
fn build(
    pc: &PrefixColoring,
    iv: &Intervals,
    conns: &[Option<ConnectorWitness>],
    pairs: &[PairCase],
    schedule: &Schedule,
    rho: ColorId,
    opts: &StrongOptions,
    partition: crate::colorings::IntervalPartition,
) -> Result<Option<Assembly>> {
    let t = iv.len();
    let chi: Vec<Option<ColorId>> = conns.iter().map(|c| c.as_ref().map(|c| c.color)).collect();
    let matching = |p: usize| pairs.iter().find(|pc| pc.from == p).is_some_and(|pc| pc.matching);
    let part = |p: usize| VertexSet::new(iv.range(p).collect());
    let mut discarded = Vec::new();
    let mut blocks = Vec::new();
    let mut p = 0;
    while p < t {
        let Some(cp) = chi[p] else {
            discarded.push(format!("interval {p}: no connector"));
            p += 1;
            continue;
        };
        let next = if p + 1 < t { chi[p + 1] } else { None };
        let budget = SearchBudget { seed: opts.budget.seed ^ 0xb0 ^ p as u64, ..opts.budget };
        if cp == rho {
            blocks.push(Block::Conn(p));
            p += 1;
            continue;
        }
        match next {
            Some(cn) if cn == rho => {
                let (x1, x2) = (conns[p].as_ref().unwrap(), conns[p + 1].as_ref().unwrap());
                match bridge_dual(pc, &part(p), &part(p + 1), x1, x2, schedule.eps[p + 1], &budget) {
                    Ok(d) => {
                        let path = d.in_color(rho).unwrap().clone();
                        blocks.push(Block::Fixed { intervals: vec![p, p + 1], source: Source::DualBridge, path, tag: CaseTag::Two });
                        p += 2;
                        continue;
                    }
                    Err(e) => discarded.push(format!("intervals {p},{}: dual bridge failed: {e}", p + 1)),
                }
            }
            Some(cn) if cn == cp && !matching(p) => {
                let (x1, x2) = (conns[p].as_ref().unwrap(), conns[p + 1].as_ref().unwrap());
                match bridge_no_matching(pc, &part(p), &part(p + 1), &x1.x, x2, BridgeSide::First, schedule.eps[p + 1], &budget) {
                    Ok(b) => {
                        blocks.push(Block::Fixed { intervals: vec![p, p + 1], source: Source::Bridge, path: b.path, tag: CaseTag::OneB });
                        p += 2;
                        continue;
                    }
                    Err(e) => discarded.push(format!("intervals {p},{}: bridge failed: {e}", p + 1)),
                }
            }
            _ => discarded.push(format!("interval {p}: connector is {cp}")),
        }
        p += 1;
    }

    let mut st = Stitch::new(pc, rho);
    st.discarded = discarded;
    let block_vertices = |b: &Block| -> Vec<Vertex> {
        match b {
            Block::Conn(p) => conns[*p].as_ref().unwrap().x.members().to_vec(),
            Block::Fixed { path, .. } => path.vertices.clone(),
        }
    };
    for b in &blocks {
        st.reserve(block_vertices(b));
    }
    let starts = |b: &Block| -> Vec<Vertex> {
        match b {
            Block::Conn(p) => conns[*p].as_ref().unwrap().x.members().to_vec(),
            Block::Fixed { path, .. } => vec![path.first(), path.last()],
        }
    };
    let mut used = vec![false; t];
    for (bi, b) in blocks.iter().enumerate() {
        let hi = iv.ends[*b.intervals().iter().max().unwrap()];
        let ahead: Vec<Vertex> = blocks.get(bi + 1).map(starts).unwrap_or_default();
        let mine = block_vertices(b);
        let cands = starts(b);
        let join = if st.end.is_some() {
            let direct: Vec<Vertex> = cands.iter().copied().filter(|&c| st.edge(st.end.unwrap(), c)).collect();
            if direct.is_empty() {
                let few: Vec<Vertex> = cands.iter().copied().take(64).collect();
                st.find_join(&few, &|z| z <= hi).map(|(via, s)| (via, vec![s]))
            } else {
                Some((Vec::new(), direct))
            }
        } else {
            Some((Vec::new(), cands.clone()))
        };
        let Some((via, entry)) = join else {
            st.discarded.push(format!("block at intervals {:?}: no {rho} join", b.intervals()));
            st.release(mine);
            continue;
        };
        let links_ahead = |x: Vertex| ahead.iter().any(|&a| st.edge(x, a));
        let vertices = match b {
            Block::Conn(p) => {
                let conn = conns[*p].as_ref().unwrap();
                let exit = conn.x.iter().find(|&x| (entry.len() > 1 || x != entry[0]) && links_ahead(x));
                let (u, v) = match exit {
                    Some(v) => (*entry.iter().find(|&&u| u != v).unwrap(), v),
                    None => {
                        let u = entry[0];
                        (u, conn.x.iter().find(|&x| x != u).unwrap())
                    }
                };
                connector_path(pc, conn, u, v)?.vertices
            }
            Block::Fixed { path, .. } => {
                let (a, z) = (path.first(), path.last());
                let forward = if entry.len() == 1 { entry[0] == a } else { !links_ahead(a) || links_ahead(z) };
                if forward {
                    path.vertices.clone()
                } else {
                    path.vertices.iter().rev().copied().collect()
                }
            }
        };
        let tag = match b {
            Block::Conn(_) => CaseTag::OneA,
            Block::Fixed { tag, .. } => *tag,
        };
        if st.end.is_some() {
            st.push_join(via, Some(tag));
        }
        let ints = b.intervals();
        for &q in &ints {
            used[q] = true;
        }
        let source = match b {
            Block::Conn(_) => Source::Connector,
            Block::Fixed { source, .. } => *source,
        };
        st.release(mine.iter().copied());
        st.push_artifact(ints, source, vertices);
    }

    if st.pieces.is_empty() {
        return Ok(None);
    }
    let records = (0..t)
        .map(|p| IntervalRecord {
            position: p,
            start: iv.start(p),
            end: iv.ends[p],
            artifact: match &conns[p] {
                Some(c) => ArtifactSummary::Connector {
                    color: c.color,
                    x: c.x.len(),
                    alpha: c.alpha,
                    cycle: c.base_cycle.len(),
                    layers: c.layers.len(),
                    warning: c.warning.clone(),
                },
                None => ArtifactSummary::Missing { reason: "interval below 6 vertices or no cycle".into() },
            },
            used: used[p],
        })
        .collect();
    let trace = AssemblyTrace {
        kind: AssemblyKind::Strong,
        n: pc.order(),
        partition,
        case: overall_case(pairs),
        color: rho,
        intervals: records,
        pairs: pairs.to_vec(),
        separation: None,
        pieces: st.pieces,
        discarded: st.discarded,
        single_forest_record: None,
    };
    let path = validate_trace(pc, &trace)?;
    let seq = VertexSequence::new(path.vertices.clone())?;
    let profile = profile_sequence(&seq, &iv.ends, DensityKind::StrongUpper)?;
    Ok(Some(Assembly { path, trace, profile }))
}

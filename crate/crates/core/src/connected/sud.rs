use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::trichotomy::{components_on, extend_type_ii, trichotomy, TrichotomyCase, TrichotomyCertificate};
use crate::colorings::{materialize, ColoringSpec, EdgeColoring, PrefixColoring};
use crate::density::{geometric_checkpoints, strong_density_connected, DensityProfile, VertexSet};
use crate::error::ensure;
use crate::{ColorId, Error, Result, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "regime")]
pub enum SudRegime {
    /// Majority color among checkpoints whose prefix it connects.
    Spanning,
    /// A case (ii) certificate carried forward vertex by vertex from `from` to `extended_to`.
    TypeII { from: Vertex, extended_to: Vertex },
    /// Only case (iii) in the tail; components of at least half the prefix are followed to `[N]`.
    TypeIII,
}

/// Relation between the tracked components at two consecutive case (iii) checkpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Link {
    pub from: Vertex,
    pub to: Vertex,
    pub color: ColorId,
    /// One of "intersect", "edge", "green-block", "none".
    pub relation: String,
}

/// A monochromatic connected subgraph with its strong-density profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SudTree {
    pub color: ColorId,
    pub component: VertexSet,
    pub profile: DensityProfile,
    pub regime: SudRegime,
    /// Per checkpoint: which colors connect the prefix (two colors) or the trichotomy case (three).
    pub checkpoint_notes: Vec<(Vertex, String)>,
    pub links: Vec<Link>,
}

/// Interval boundaries when the spec has them, otherwise powers of two; `n` is always last.
pub fn default_checkpoints(spec: &ColoringSpec, n: Vertex) -> Result<Vec<Vertex>> {
    let c = materialize(spec, n)?;
    let mut cps = match c.interval_ends() {
        Some(ends) if ends.len() >= 3 => ends,
        _ => geometric_checkpoints(n),
    };
    cps.retain(|&x| x >= 2 && x <= n);
    if cps.last() != Some(&n) {
        cps.push(n);
    }
    cps.dedup();
    Ok(cps)
}

/// Which colors connect `[m]` for every checkpoint `m`, by incremental union–find.
fn connecting_colors<C: EdgeColoring + ?Sized>(c: &C, checkpoints: &[Vertex]) -> Vec<Vec<ColorId>> {
    let r = c.num_colors() as usize;
    let n = *checkpoints.last().unwrap_or(&0) as usize;
    let mut ufs: Vec<UnionFind<usize>> = (0..r).map(|_| UnionFind::new(n + 1)).collect();
    let mut comps = vec![0usize; r];
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = 0;
    for v in 1..=n {
        for col in 0..r {
            comps[col] += 1;
        }
        for u in 1..v {
            let col = c.color(u as Vertex, v as Vertex).index();
            if ufs[col].union(u, v) {
                comps[col] -= 1;
            }
        }
        while next < checkpoints.len() && checkpoints[next] as usize == v {
            out.push((0..r).filter(|&col| comps[col] == 1).map(|col| ColorId(col as u8)).collect());
            next += 1;
        }
    }
    out
}

/// Validated checkpoints with the trivial prefix `[1]` dropped.
fn check_points(checkpoints: &[Vertex], n: Vertex) -> Result<Vec<Vertex>> {
    ensure!(checkpoints.windows(2).all(|w| w[0] < w[1]), Param, "checkpoints must increase");
    ensure!(checkpoints.last().is_some_and(|&l| l <= n), Param, "checkpoints must lie in [1, {n}]");
    let cps: Vec<Vertex> = checkpoints.iter().copied().filter(|&m| m >= 2).collect();
    ensure!(!cps.is_empty(), Param, "need a checkpoint of at least 2");
    Ok(cps)
}

fn component_containing<C: EdgeColoring + ?Sized>(c: &C, color: ColorId, v: Vertex) -> VertexSet {
    let verts: Vec<Vertex> = (1..=c.order()).collect();
    components_on(c, &verts, color).into_iter().find(|s| s.contains(v)).expect("every vertex has a component")
}

fn profile_of<C: EdgeColoring + ?Sized>(c: &C, color: ColorId, set: &VertexSet, checkpoints: &[Vertex]) -> Result<DensityProfile> {
    strong_density_connected(set, |u, v| c.color(u, v) == color, checkpoints)
}

fn spanning_result(c: &PrefixColoring, connects: &[Vec<ColorId>], checkpoints: &[Vertex], tail: usize) -> Result<Option<SudTree>> {
    let r = c.num_colors() as usize;
    let mut counts = vec![0usize; r];
    for cs in &connects[tail..] {
        for col in cs {
            counts[col.index()] += 1;
        }
    }
    let (best, &count) = counts.iter().enumerate().max_by_key(|(i, &k)| (k, std::cmp::Reverse(*i))).expect("colors");
    if count == 0 {
        return Ok(None);
    }
    let color = ColorId(best as u8);
    let component = component_containing(c, color, 1);
    let profile = profile_of(c, color, &component, checkpoints)?;
    let checkpoint_notes = checkpoints.iter().zip(connects).map(|(&m, cs)| (m, cs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("+"))).collect();
    Ok(Some(SudTree { color, component, profile, regime: SudRegime::Spanning, checkpoint_notes, links: Vec::new() }))
}

/// Two colors: at every checkpoint some color connects the prefix; the color doing so most
/// often in the tail gives the tree.
pub fn sud_tree_2col(spec: &ColoringSpec, n: Vertex, checkpoints: &[Vertex]) -> Result<SudTree> {
    ensure!(!spec.directed && spec.num_colors == 2, Param, "need an undirected 2-coloring");
    let checkpoints = &check_points(checkpoints, n)?;
    let c = materialize(spec, n)?;
    let connects = connecting_colors(&c, checkpoints);
    for (m, cs) in checkpoints.iter().zip(&connects) {
        ensure!(!cs.is_empty(), Internal, "no color connects [{m}]");
    }
    spanning_result(&c, &connects, checkpoints, checkpoints.len() / 2)?.ok_or_else(|| Error::Internal("no connecting color".into()))
}

/// Three colors: case (i) checkpoints in the tail give a spanning color; otherwise a case (ii)
/// certificate is extended to `[N]` and its best block is used; otherwise the components of
/// size at least half the prefix at case (iii) checkpoints are followed to `[N]`.
pub fn sud_tree_3col(spec: &ColoringSpec, n: Vertex, checkpoints: &[Vertex]) -> Result<SudTree> {
    ensure!(!spec.directed && spec.num_colors == 3, Param, "need an undirected 3-coloring");
    let checkpoints = &check_points(checkpoints, n)?;
    let c = materialize(spec, n)?;
    let tail = checkpoints.len() / 2;
    let certs: Vec<TrichotomyCertificate> = checkpoints.iter().map(|&m| c.restrict(m).and_then(|p| trichotomy(&p))).collect::<Result<_>>()?;
    let notes: Vec<(Vertex, String)> = certs.iter().map(|t| (t.n, format!("{:?}", t.case).to_lowercase())).collect();
    let connects: Vec<Vec<ColorId>> = certs.iter().map(|t| t.spanning.into_iter().collect()).collect();

    if certs[tail..].iter().any(|t| t.case == TrichotomyCase::I) {
        let mut out = spanning_result(&c, &connects, checkpoints, tail)?.expect("a case (i) checkpoint");
        out.checkpoint_notes = notes;
        return Ok(out);
    }

    if let Some(start) = certs[tail..].iter().find(|t| t.case == TrichotomyCase::II) {
        let mut cur = start.clone();
        while cur.n < n {
            match extend_type_ii(&c, &cur)? {
                Some(next) => cur = next,
                None => break,
            }
        }
        // Each color has two complete bipartite blocks; keep the block with the best record.
        let parts = cur.parts();
        let mut best: Option<SudTree> = None;
        for (p, q) in [(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)] {
            let color = cur.roles[TrichotomyCertificate::type_ii_block_role(p, q)];
            let set: VertexSet = parts[p].iter().chain(parts[q].iter()).collect();
            let profile = profile_of(&c, color, &set, checkpoints)?;
            if best.as_ref().map_or(true, |b| profile.record_upper > b.profile.record_upper) {
                best = Some(SudTree {
                    color,
                    component: set,
                    profile,
                    regime: SudRegime::TypeII { from: start.n, extended_to: cur.n },
                    checkpoint_notes: notes.clone(),
                    links: Vec::new(),
                });
            }
        }
        return Ok(best.expect("six blocks"));
    }

    // Case (iii) throughout the tail.
    let mut links = Vec::new();
    let mut large: Vec<(Vertex, ColorId, VertexSet)> = Vec::new();
    for t in &certs[tail..] {
        let sets = t.type_iii_sets();
        let big: Vec<usize> = (0..3).filter(|&i| 2 * sets[i].len() >= t.n as usize).collect();
        ensure!(big.len() >= 2, Internal, "only {} of the three case (iii) sets reach half of [{}]", big.len(), t.n);
        for i in big {
            large.push((t.n, t.roles[i], sets[i].clone()));
        }
    }
    for color in (0..3).map(ColorId) {
        let seq: Vec<&(Vertex, ColorId, VertexSet)> = large.iter().filter(|e| e.1 == color).collect();
        for w in seq.windows(2) {
            let (a, b) = (&w[0].2, &w[1].2);
            let relation = if a.iter().any(|v| b.contains(v)) {
                "intersect"
            } else if a.iter().any(|u| b.iter().any(|v| c.color(u, v) == color)) {
                "edge"
            } else if a.iter().all(|u| b.iter().all(|v| c.color(u, v) != color)) {
                "green-block"
            } else {
                "none"
            };
            links.push(Link { from: w[0].0, to: w[1].0, color, relation: relation.into() });
        }
    }
    let mut best: Option<SudTree> = None;
    let mut seen: Vec<(ColorId, Vertex)> = Vec::new();
    for (_, color, set) in &large {
        let comp = component_containing(&c, *color, set.members()[0]);
        let key = (*color, comp.members()[0]);
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        let profile = profile_of(&c, *color, &comp, checkpoints)?;
        if best.as_ref().map_or(true, |b| profile.record_upper > b.profile.record_upper) {
            best = Some(SudTree { color: *color, component: comp, profile, regime: SudRegime::TypeIII, checkpoint_notes: notes.clone(), links: Vec::new() });
        }
    }
    let mut out = best.ok_or_else(|| Error::Internal("no case (iii) component recorded".into()))?;
    out.links = links;
    Ok(out)
}

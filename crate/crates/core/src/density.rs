//! Densities of vertex sets and vertex sequences on finite prefixes, as exact ratios.

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::ensure;
use crate::{ratio_f64, Ratio, Result, Vertex};

/// Sorted set of distinct positive integers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new(mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }

    pub fn range(lo: Vertex, hi: Vertex) -> Self {
        VertexSet((lo..=hi).collect())
    }

    pub fn members(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn max(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    /// `|A ∩ [n]|`
    pub fn count_upto(&self, n: Vertex) -> usize {
        self.0.partition_point(|&v| v <= n)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

/// Ordered sequence of distinct positive integers `(a_1, a_2, ...)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSequence(Vec<Vertex>);

impl VertexSequence {
    pub fn new(order: Vec<Vertex>) -> Result<Self> {
        let set = VertexSet::new(order.clone());
        ensure!(set.len() == order.len(), Param, "sequence entries must be distinct");
        ensure!(order.iter().all(|&v| v >= 1), Param, "sequence entries must be positive");
        Ok(VertexSequence(order))
    }

    pub fn order(&self) -> &[Vertex] {
        &self.0
    }

    pub fn to_set(&self) -> VertexSet {
        VertexSet::new(self.0.clone())
    }

    /// `f(n)`: length of the longest initial segment contained in `[n]`.
    pub fn initial_segment_len(&self, n: Vertex) -> usize {
        self.0.iter().position(|&v| v > n).unwrap_or(self.0.len())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityKind {
    Upper,
    Lower,
    StrongUpper,
    StrongLower,
}

impl DensityKind {
    pub fn is_strong(self) -> bool {
        matches!(self, DensityKind::StrongUpper | DensityKind::StrongLower)
    }

    pub fn is_upper(self) -> bool {
        matches!(self, DensityKind::Upper | DensityKind::StrongUpper)
    }
}

/// Density values at increasing checkpoints, with records over a trailing window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityProfile {
    pub kind: DensityKind,
    pub checkpoints: Vec<Vertex>,
    pub values: Vec<Ratio>,
    /// Per-checkpoint eligibility; records only look at flagged entries.
    pub flagged: Vec<bool>,
    /// Index of the first checkpoint in the record window.
    pub tail_start: usize,
    pub record_upper: Option<Ratio>,
    pub record_lower: Option<Ratio>,
}

impl DensityProfile {
    fn build(kind: DensityKind, checkpoints: Vec<Vertex>, values: Vec<Ratio>, flagged: Vec<bool>) -> Self {
        let tail_start = checkpoints.len() / 2;
        let mut p = DensityProfile { kind, checkpoints, values, flagged, tail_start, record_upper: None, record_lower: None };
        p.set_tail(tail_start);
        p
    }

    /// Move the record window to start at checkpoint index `t`.
    pub fn set_tail(&mut self, t: usize) {
        self.tail_start = t.min(self.checkpoints.len().saturating_sub(1));
        self.record_upper = self.record_upper_from(self.tail_start);
        self.record_lower = self.record_lower_from(self.tail_start);
    }

    /// Use the trailing `num/den` fraction of the checkpoints as the record window.
    pub fn set_tail_fraction(&mut self, num: usize, den: usize) {
        let len = self.checkpoints.len();
        self.set_tail(len - (len * num / den.max(1)).clamp(1, len));
    }

    fn flagged_values_from(&self, t: usize) -> impl Iterator<Item = Ratio> + '_ {
        self.values.iter().zip(&self.flagged).skip(t).filter(|(_, &f)| f).map(|(v, _)| *v)
    }

    pub fn record_upper_from(&self, t: usize) -> Option<Ratio> {
        self.flagged_values_from(t).max()
    }

    pub fn record_lower_from(&self, t: usize) -> Option<Ratio> {
        self.flagged_values_from(t).min()
    }

    /// The record matching the profile kind: maximum for upper kinds, minimum for lower kinds.
    pub fn record(&self) -> Option<Ratio> {
        if self.kind.is_upper() {
            self.record_upper
        } else {
            self.record_lower
        }
    }

    /// Checkpoint achieving the upper record.
    pub fn argmax(&self) -> Option<Vertex> {
        let best = self.record_upper?;
        (self.tail_start..self.values.len()).find(|&i| self.flagged[i] && self.values[i] == best).map(|i| self.checkpoints[i])
    }

    /// CSV with columns `checkpoint,value_num,value_den,flagged,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("checkpoint,value_num,value_den,flagged,value\n");
        for ((n, v), f) in self.checkpoints.iter().zip(&self.values).zip(&self.flagged) {
            out.push_str(&format!("{n},{},{},{f},{:.6}\n", v.numer(), v.denom(), ratio_f64(*v)));
        }
        out
    }
}

fn check_checkpoints(checkpoints: &[Vertex]) -> Result<()> {
    ensure!(!checkpoints.is_empty(), Param, "empty checkpoint list");
    ensure!(checkpoints[0] >= 1, Param, "checkpoints must be positive");
    ensure!(checkpoints.windows(2).all(|w| w[0] < w[1]), Param, "checkpoints must be strictly increasing");
    Ok(())
}

/// `|A ∩ [n]| / n`
pub fn density_at(set: &VertexSet, n: Vertex) -> Result<Ratio> {
    ensure!(n >= 1, Param, "density needs n >= 1");
    Ok(Ratio::new(set.count_upto(n) as u64, n as u64))
}

/// `f(n) / n` where `f(n)` is the longest initial segment inside `[n]`.
pub fn strong_density_at(seq: &VertexSequence, n: Vertex) -> Result<Ratio> {
    ensure!(n >= 1, Param, "density needs n >= 1");
    Ok(Ratio::new(seq.initial_segment_len(n) as u64, n as u64))
}

/// Profile of a set (kinds `Upper`/`Lower`).
pub fn profile_set(set: &VertexSet, checkpoints: &[Vertex], kind: DensityKind) -> Result<DensityProfile> {
    check_checkpoints(checkpoints)?;
    ensure!(!kind.is_strong(), Param, "strong densities need a vertex sequence");
    let values = checkpoints.iter().map(|&n| density_at(set, n)).collect::<Result<_>>()?;
    Ok(DensityProfile::build(kind, checkpoints.to_vec(), values, vec![true; checkpoints.len()]))
}

/// Profile of a sequence (kinds `StrongUpper`/`StrongLower`).
pub fn profile_sequence(seq: &VertexSequence, checkpoints: &[Vertex], kind: DensityKind) -> Result<DensityProfile> {
    check_checkpoints(checkpoints)?;
    ensure!(kind.is_strong(), Param, "set densities need a vertex set");
    let values = checkpoints.iter().map(|&n| strong_density_at(seq, n)).collect::<Result<_>>()?;
    Ok(DensityProfile::build(kind, checkpoints.to_vec(), values, vec![true; checkpoints.len()]))
}

/// `|F| / max(F)`
pub fn local_density(f: &VertexSet) -> Result<Ratio> {
    let max = f.max().ok_or_else(|| crate::Error::Param("local density of an empty set".into()))?;
    Ok(Ratio::new(f.len() as u64, max as u64))
}

/// Geometric checkpoints `1, 2, 4, ...` up to `n`, always ending at `n`.
pub fn geometric_checkpoints(n: Vertex) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = (0..32).map(|i| 1u64 << i).take_while(|&c| c < n as u64).map(|c| c as u32).collect();
    out.push(n);
    out
}

/// Union of `base` with `steps` evenly spaced points in `[1, n]`, sorted and deduplicated.
pub fn merged_checkpoints(base: &[Vertex], n: Vertex, steps: u32) -> Vec<Vertex> {
    let step = n.div_ceil(steps.max(1)).max(1);
    let mut out: Vec<Vertex> = base.iter().copied().filter(|&c| c >= 1 && c <= n).collect();
    out.extend((1..=steps).map(|i| (i * step).min(n)));
    out.push(n);
    out.sort_unstable();
    out.dedup();
    out
}

/// Connectivity of `V ∩ [n_k]` at each checkpoint for a connected graph on `V`.
///
/// Values are `|V ∩ [n_k]| / n_k`; a checkpoint is flagged when the induced prefix is
/// connected and nonempty, and records are taken over flagged checkpoints only.
pub fn strong_density_connected<F>(vertices: &VertexSet, adjacent: F, checkpoints: &[Vertex]) -> Result<DensityProfile>
where
    F: Fn(Vertex, Vertex) -> bool,
{
    check_checkpoints(checkpoints)?;
    let vs = vertices.members();
    ensure!(!vs.is_empty(), Contract, "empty vertex set");
    let mut uf = UnionFind::<usize>::new(vs.len());
    let mut components = 0usize;
    let mut connected_upto = Vec::with_capacity(vs.len());
    for (i, &v) in vs.iter().enumerate() {
        components += 1;
        for (j, &w) in vs[..i].iter().enumerate() {
            if adjacent(v, w) && uf.union(i, j) {
                components -= 1;
            }
        }
        connected_upto.push(components == 1);
    }
    ensure!(components == 1, Contract, "graph on the given vertices is disconnected ({components} components)");
    let mut values = Vec::with_capacity(checkpoints.len());
    let mut flagged = Vec::with_capacity(checkpoints.len());
    for &n in checkpoints {
        let c = vertices.count_upto(n);
        values.push(Ratio::new(c as u64, n as u64));
        flagged.push(c > 0 && connected_upto[c - 1]);
    }
    Ok(DensityProfile::build(DensityKind::StrongUpper, checkpoints.to_vec(), values, flagged))
}

/// An ordering of `vertices` whose initial segments at every flagged checkpoint are exactly
/// `V ∩ [n_k]` and whose every initial segment induces a connected graph.
pub fn connected_ordering<F>(vertices: &VertexSet, adjacent: F, flagged_checkpoints: &[Vertex]) -> Result<Vec<Vertex>>
where
    F: Fn(Vertex, Vertex) -> bool,
{
    let mut bounds: Vec<Vertex> = flagged_checkpoints.to_vec();
    bounds.push(vertices.max().unwrap_or(0));
    let mut order: Vec<Vertex> = Vec::with_capacity(vertices.len());
    let mut placed = std::collections::HashSet::new();
    for &b in &bounds {
        let layer: Vec<Vertex> = vertices.iter().filter(|&v| v <= b && !placed.contains(&v)).collect();
        let mut pending = layer;
        if order.is_empty() {
            if let Some(first) = pending.first().copied() {
                order.push(first);
                placed.insert(first);
                pending.retain(|&v| v != first);
            }
        }
        let mut head = 0;
        while !pending.is_empty() {
            ensure!(head < order.len(), Contract, "prefix up to {b} is not connected");
            let u = order[head];
            head += 1;
            let (next, rest): (Vec<Vertex>, Vec<Vertex>) = pending.into_iter().partition(|&w| adjacent(u, w));
            for w in next {
                placed.insert(w);
                order.push(w);
            }
            pending = rest;
        }
    }
    Ok(order)
}

/// Whether every initial segment of `order` induces a connected graph.
pub fn is_prefix_connected<F>(order: &[Vertex], adjacent: F) -> bool
where
    F: Fn(Vertex, Vertex) -> bool,
{
    order.iter().enumerate().skip(1).all(|(i, &v)| order[..i].iter().any(|&u| adjacent(u, v)))
}

/// Exact per-checkpoint value of the connected strong density for small vertex sets:
/// the largest `S ⊆ V ∩ [n]` that begins some prefix-connected ordering of `V`.
pub fn exhaustive_connected_prefix<F>(vertices: &VertexSet, adjacent: F, n: Vertex) -> Result<usize>
where
    F: Fn(Vertex, Vertex) -> bool,
{
    let vs = vertices.members();
    ensure!(vs.len() <= 12, Budget, "exhaustive ordering search is limited to 12 vertices");
    let k = vs.len();
    let adj: Vec<u32> = (0..k)
        .map(|i| (0..k).filter(|&j| j != i && adjacent(vs[i], vs[j])).fold(0u32, |m, j| m | (1 << j)))
        .collect();
    let inside: u32 = (0..k).filter(|&i| vs[i] <= n).fold(0, |m, i| m | (1 << i));
    // reach[mask]: mask is an initial segment of some prefix-connected ordering.
    let mut reach = vec![false; 1 << k];
    let mut best = 0;
    for i in 0..k {
        reach[1 << i] = true;
    }
    for mask in 1u32..(1 << k) {
        if !reach[mask as usize] {
            continue;
        }
        if mask & !inside == 0 {
            best = best.max(mask.count_ones() as usize);
        }
        let frontier = (0..k).filter(|&j| mask & (1 << j) == 0 && adj[j] & mask != 0);
        for j in frontier {
            reach[(mask | (1 << j)) as usize] = true;
        }
    }
    Ok(best)
}

/// Result of the density-one transversal construction on `[N]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transversal {
    pub members: VertexSet,
    /// `n_i` per cell; `None` once no threshold exists inside `[N]`.
    pub thresholds: Vec<Option<Vertex>>,
    /// `|B ∩ A_i|` per cell.
    pub per_cell: Vec<usize>,
    /// Last cell index (1-based) with a threshold.
    pub active: usize,
    pub density: Ratio,
}

/// Build `B = ∪ A_i ∩ [n_i]` for a partition of `[N]` into `cells`.
pub fn density1_transversal(cells: &[VertexSet], eps: &[Ratio], n: Vertex) -> Result<Transversal> {
    ensure!(n >= 1, Param, "prefix must be nonempty");
    let mut cell_of = vec![usize::MAX; n as usize];
    for (i, c) in cells.iter().enumerate() {
        for v in c.iter() {
            ensure!(v >= 1 && v <= n, Contract, "cell {} contains {v} outside [{n}]", i + 1);
            ensure!(cell_of[v as usize - 1] == usize::MAX, Contract, "cells overlap at {v}");
            cell_of[v as usize - 1] = i;
        }
    }
    ensure!(cell_of.iter().all(|&c| c != usize::MAX), Contract, "cells do not cover [{n}]");

    let mut in_union = vec![false; n as usize];
    let mut thresholds = Vec::with_capacity(cells.len());
    let mut prev: Vertex = 1;
    let mut exhausted = false;
    for (i, c) in cells.iter().enumerate() {
        for v in c.iter() {
            in_union[v as usize - 1] = true;
        }
        let e = match eps.get(i) {
            Some(e) if !exhausted => *e,
            _ => {
                exhausted = true;
                thresholds.push(None);
                continue;
            }
        };
        // Least t with |U ∩ [m]| / m < e for every m in [t, N].
        let total: u64 = in_union.iter().filter(|&&b| b).count() as u64;
        let mut count = total;
        let mut t = None;
        for m in (1..=n).rev() {
            if Ratio::new(count, m as u64) >= e {
                break;
            }
            t = Some(m);
            if in_union[m as usize - 1] {
                count -= 1;
            }
        }
        match t {
            Some(t) => {
                prev = prev.max(t);
                thresholds.push(Some(prev));
            }
            None => {
                exhausted = true;
                thresholds.push(None);
            }
        }
    }
    let active = thresholds.iter().take_while(|t| t.is_some()).count();
    ensure!(active > 0, Contract, "no cell meets its density bound inside [{n}]");
    let members: VertexSet = cells
        .iter()
        .zip(&thresholds)
        .flat_map(|(c, t)| {
            let cap = t.unwrap_or(n);
            c.iter().filter(move |&v| v <= cap)
        })
        .collect();
    let per_cell = cells
        .iter()
        .map(|c| c.iter().filter(|&v| members.contains(v)).count())
        .collect();
    let density = density_at(&members, n)?;
    Ok(Transversal { members, thresholds, per_cell, active, density })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: u64, b: u64) -> Ratio {
        Ratio::new(a, b)
    }

    /// A path on `[12]` plus one later vertex: density 8/12, broken after six entries.
    fn figure_path() -> VertexSequence {
        VertexSequence::new(vec![1, 2, 4, 5, 7, 8, 13, 10, 11]).unwrap()
    }

    #[test]
    fn density_examples() {
        let evens: VertexSet = (1..=20).filter(|v| v % 2 == 0).collect();
        assert_eq!(density_at(&evens, 10).unwrap(), r(1, 2));
        let a: VertexSet = (1..=12).filter(|v| v % 3 != 0).collect();
        assert_eq!(density_at(&a, 12).unwrap(), r(8, 12));
        assert_eq!(density_at(&VertexSet::default(), 5).unwrap(), r(0, 1));
        assert!(density_at(&a, 0).is_err());
    }

    #[test]
    fn strong_density_examples() {
        let seq = figure_path();
        assert_eq!(density_at(&seq.to_set(), 12).unwrap(), r(8, 12));
        assert_eq!(strong_density_at(&seq, 12).unwrap(), r(6, 12));
        let id = VertexSequence::new((1..=30).collect()).unwrap();
        assert!((1..=30).all(|n| strong_density_at(&id, n).unwrap() == r(1, 1)));
        let s = VertexSequence::new(vec![2, 1, 5]).unwrap();
        assert_eq!(strong_density_at(&s, 2).unwrap(), r(1, 1));
        assert!(VertexSequence::new(vec![1, 1]).is_err());
    }

    #[test]
    fn local_density_examples() {
        assert_eq!(local_density(&VertexSet::range(1, 9)).unwrap(), r(1, 1));
        assert_eq!(local_density(&VertexSet::new(vec![2, 4])).unwrap(), r(1, 2));
        assert!(local_density(&VertexSet::default()).is_err());
    }

    #[test]
    fn profile_records() {
        let full = VertexSet::range(1, 100);
        let p = profile_set(&full, &[10, 20, 50, 100], DensityKind::Upper).unwrap();
        assert!(p.values.iter().all(|v| *v == r(1, 1)));
        assert_eq!(p.tail_start, 2);
        let evens: VertexSet = (1..=100).filter(|v| v % 2 == 0).collect();
        let p = profile_set(&evens, &[1, 2, 3, 4], DensityKind::Lower).unwrap();
        assert_eq!(p.record(), Some(r(1, 3)));
        assert_eq!(p.record_upper_from(0), Some(r(1, 2)));
        assert!(profile_set(&evens, &[], DensityKind::Upper).is_err());
        assert!(profile_set(&evens, &[3, 2], DensityKind::Upper).is_err());
        assert!(profile_set(&evens, &[3], DensityKind::StrongUpper).is_err());
    }

    #[test]
    fn csv_columns() {
        let p = profile_set(&VertexSet::new(vec![1, 3]), &[2, 4], DensityKind::Upper).unwrap();
        assert_eq!(p.to_csv(), "checkpoint,value_num,value_den,flagged,value\n2,1,2,true,0.500000\n4,1,2,true,0.500000\n");
    }

    #[test]
    fn connected_profiles() {
        let n = 8;
        let all = VertexSet::range(1, n);
        let cps: Vec<u32> = (1..=n).collect();
        let p = strong_density_connected(&all, |_, _| true, &cps).unwrap();
        assert!(p.flagged.iter().all(|&f| f));
        assert_eq!(p.record(), Some(r(1, 1)));

        let star = |u: u32, v: u32| u == n || v == n;
        let p = strong_density_connected(&all, star, &cps).unwrap();
        assert_eq!(p.flagged, (1..=n).map(|c| c == 1 || c == n).collect::<Vec<_>>());

        let path = |u: u32, v: u32| u.abs_diff(v) == 1;
        let p = strong_density_connected(&all, path, &cps).unwrap();
        assert!(p.flagged.iter().all(|&f| f));

        let two = VertexSet::new(vec![1, 2]);
        assert!(strong_density_connected(&two, |_, _| false, &[2]).is_err());
    }

    #[test]
    fn connected_ordering_is_certified() {
        let vs = VertexSet::new(vec![1, 3, 4, 6, 7, 9, 10]);
        let adj = |u: u32, v: u32| (u + v) % 2 == 1 || u.abs_diff(v) == 3;
        let cps = [4, 7, 10];
        let p = strong_density_connected(&vs, adj, &cps).unwrap();
        let flagged: Vec<u32> = cps.iter().zip(&p.flagged).filter(|(_, &f)| f).map(|(&c, _)| c).collect();
        let order = connected_ordering(&vs, adj, &flagged).unwrap();
        assert!(is_prefix_connected(&order, adj));
        for &c in &flagged {
            let k = vs.count_upto(c);
            let mut prefix = order[..k].to_vec();
            prefix.sort_unstable();
            assert_eq!(prefix, vs.iter().filter(|&v| v <= c).collect::<Vec<_>>());
        }
    }

    #[test]
    fn exhaustive_matches_largest_component() {
        // Star at 5 over [5]: below 5 the prefix is edgeless, so only single vertices start orderings.
        let vs = VertexSet::range(1, 5);
        let star = |u: u32, v: u32| u == 5 || v == 5;
        assert_eq!(exhaustive_connected_prefix(&vs, star, 4).unwrap(), 1);
        assert_eq!(exhaustive_connected_prefix(&vs, star, 5).unwrap(), 5);
    }

    fn diagonal_cells(n: u32) -> Vec<VertexSet> {
        // v enumerates pairs (i, j) along antidiagonals; A_i collects column i.
        let mut cells: Vec<Vec<u32>> = Vec::new();
        let mut v = 1;
        let mut d = 1;
        while v <= n {
            for i in 0..d {
                if v > n {
                    break;
                }
                if cells.len() <= i {
                    cells.push(Vec::new());
                }
                cells[i].push(v);
                v += 1;
            }
            d += 1;
        }
        cells.into_iter().map(VertexSet::new).collect()
    }

    #[test]
    fn transversal_on_diagonal_partition() {
        let n = 10_000;
        let cells = diagonal_cells(n);
        let eps: Vec<Ratio> = (1..=cells.len()).map(|i| r(1, 1u64 << i.min(62))).collect();
        let t = density1_transversal(&cells, &eps, n).unwrap();
        let j = t.active;
        assert!(j >= 1);
        assert!(t.density >= r(1, 1) - eps[j - 1]);
        for (i, c) in cells.iter().enumerate() {
            if let Some(ti) = t.thresholds[i] {
                assert!(c.iter().filter(|&v| t.members.contains(v)).all(|v| v <= ti));
            }
        }
        // Each threshold is one past the last failing prefix, via cumulative counts.
        let mut union = vec![false; n as usize + 1];
        let mut prev = 1;
        for i in 0..j {
            for v in cells[i].iter() {
                union[v as usize] = true;
            }
            let mut count = 0u64;
            let mut last_bad = 0;
            for m in 1..=n {
                count += u64::from(union[m as usize]);
                if Ratio::new(count, m as u64) >= eps[i] {
                    last_bad = m;
                }
            }
            prev = prev.max(last_bad + 1);
            assert_eq!(t.thresholds[i], Some(prev), "cell {}", i + 1);
        }
    }

    #[test]
    fn transversal_rejects_single_cell() {
        let n = 100;
        assert!(density1_transversal(&[VertexSet::range(1, n)], &[r(1, 2)], n).is_err());
        assert!(density1_transversal(&[VertexSet::range(1, 50)], &[r(1, 2)], n).is_err());
    }
}

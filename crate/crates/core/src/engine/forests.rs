//! Monochromatic path forests in totally 2-colored complete graphs.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::bipartite::{bipartite_3path_partition, path_defect, BipartiteColoring};
use super::heuristic::SearchBudget;
use super::witness::{validate_forest, ForestWitness, PathWitness};
use crate::colorings::EdgeColoring;
use crate::error::ensure;
use crate::{ColorId, Error, Ratio, Result, Vertex, BLUE, RED};

/// Forests in the two colors. `minor` has the color of the smaller vertex class `R`,
/// `major` the color of `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlpForests {
    pub minor: ForestWitness,
    pub major: ForestWitness,
    /// Wrong-side endpoints of the partition as first found.
    pub initial_defect: usize,
    /// Wrong-side endpoints after exchange descent.
    pub defect: usize,
    pub exchanges: usize,
    pub deleted: Vec<Vertex>,
}

impl GlpForests {
    pub fn total(&self) -> usize {
        self.minor.size() + self.major.size()
    }
}

fn vertex_color<C: EdgeColoring + ?Sized>(c: &C, v: Vertex) -> Result<ColorId> {
    let col = c.vertex_color(v).ok_or_else(|| Error::Contract(format!("vertex {v} has no color; a total coloring is required")))?;
    ensure!(col == RED || col == BLUE, Contract, "vertex {v} has color {col}; a total 2-coloring is required");
    Ok(col)
}

/// Red and blue path forests on `[n]` with `F_R ⊆ R ∪ B'` and `|F_R| + |F_B| ≥ n + |R| − 3`,
/// where `R`, `B` are the red and blue vertices and `|R| ≤ |B|`.
pub fn glp_path_forests<C: EdgeColoring + ?Sized>(coloring: &C, bprime: &[Vertex], budget: &SearchBudget) -> Result<GlpForests> {
    let verts: Vec<Vertex> = (1..=coloring.order()).collect();
    glp_on(coloring, &verts, RED, bprime, budget)
}

/// The same construction on the vertex list `verts`, with `minor` naming the color of `R`.
pub fn glp_on<C: EdgeColoring + ?Sized>(
    coloring: &C,
    verts: &[Vertex],
    minor: ColorId,
    bprime: &[Vertex],
    budget: &SearchBudget,
) -> Result<GlpForests> {
    ensure!(!coloring.is_directed() && coloring.num_colors() == 2, Contract, "an undirected 2-coloring is required");
    let major = minor.flip();
    let mut r = Vec::new();
    let mut b = Vec::new();
    for &v in verts {
        if vertex_color(coloring, v)? == minor {
            r.push(v);
        } else {
            b.push(v);
        }
    }
    ensure!(r.len() <= b.len(), Contract, "|R| = {} exceeds |B| = {}", r.len(), b.len());
    ensure!(bprime.len() == r.len(), Contract, "|B'| = {} but |R| = {}", bprime.len(), r.len());
    let bset: HashSet<Vertex> = b.iter().copied().collect();
    let left: HashSet<Vertex> = bprime.iter().copied().collect();
    ensure!(left.len() == bprime.len() && bprime.iter().all(|v| bset.contains(v)), Contract, "B' must be a set of blue-class vertices");

    let mut paths = if r.is_empty() {
        Vec::new()
    } else {
        let bc = BipartiteColoring::from_host(coloring, bprime.to_vec(), r.clone())?;
        let mut ps = bipartite_3path_partition(&bc, budget)?.paths;
        if minor == BLUE {
            // The partition convention homes red paths on the right; swap to the minor color.
            for p in &mut ps {
                if p.len() == 1 {
                    p.color = if left.contains(&p.first()) { major } else { minor };
                }
            }
        }
        ps
    };
    let is_left = |v: Vertex| left.contains(&v);
    let defect_of = |ps: &[PathWitness]| -> usize { ps.iter().map(|p| path_defect(p, &is_left, minor)).sum() };
    let initial_defect = defect_of(&paths);

    let mut exchanges = 0;
    while let Some((i, x, j, y)) = best_exchange(&paths, &is_left, minor) {
        let before = defect_of(&paths);
        if coloring.color(x, y) == minor {
            detach(&mut paths[j], y);
            attach(&mut paths[i], x, y);
        } else {
            detach(&mut paths[i], x);
            attach(&mut paths[j], y, x);
        }
        for p in &mut paths {
            normalize(p, &is_left, minor);
        }
        exchanges += 1;
        ensure!(defect_of(&paths) + 2 == before, Internal, "exchange did not lower the defect by 2");
    }
    let defect = defect_of(&paths);
    ensure!(defect <= 3, Internal, "defect {defect} after exchange descent exceeds 3");

    let mut deleted = Vec::new();
    for p in &mut paths {
        if p.len() >= 2 {
            let wrong = |v: Vertex| is_left(v) == (p.color == minor);
            if wrong(p.last()) {
                deleted.push(p.vertices.pop().unwrap());
            }
            if wrong(p.first()) {
                deleted.push(p.vertices.remove(0));
            }
        }
        normalize(p, &is_left, minor);
    }
    deleted.sort_unstable();

    let forest = |color: ColorId, class: &[Vertex]| {
        let mut f = ForestWitness { paths: paths.iter().filter(|p| p.color == color).cloned().collect(), color };
        let on: HashSet<Vertex> = f.vertices().collect();
        f.paths.extend(class.iter().filter(|v| !on.contains(v)).map(|&v| PathWitness::new(vec![v], color)));
        f
    };
    let out = GlpForests { minor: forest(minor, &r), major: forest(major, &b), initial_defect, defect, exchanges, deleted };
    validate_forest(coloring, &out.minor)?;
    validate_forest(coloring, &out.major)?;
    ensure!(out.minor.vertices().all(|v| !bset.contains(&v) || left.contains(&v)), Internal, "minor forest leaves R ∪ B'");
    ensure!(
        out.total() + 3 >= verts.len() + r.len(),
        Internal,
        "forest sizes {} + {} fall below n + |R| - 3 = {}",
        out.minor.size(),
        out.major.size(),
        (verts.len() + r.len()).saturating_sub(3)
    );
    Ok(out)
}

/// Lowest `(x, y)` over minor paths with a wrong endpoint `x` and major paths with a wrong endpoint `y`.
fn best_exchange(paths: &[PathWitness], is_left: &dyn Fn(Vertex) -> bool, minor: ColorId) -> Option<(usize, Vertex, usize, Vertex)> {
    let wrong_ends = |p: &PathWitness| -> Vec<Vertex> {
        let mut ends = vec![p.first()];
        if p.len() > 1 {
            ends.push(p.last());
        }
        ends.into_iter().filter(|&v| is_left(v) == (p.color == minor)).collect()
    };
    let mut best = None;
    for (i, p) in paths.iter().enumerate().filter(|(_, p)| p.color == minor) {
        for x in wrong_ends(p) {
            for (j, q) in paths.iter().enumerate().filter(|(_, q)| q.color != minor) {
                for y in wrong_ends(q) {
                    if best.map_or(true, |(_, bx, _, by)| (x, y) < (bx, by)) {
                        best = Some((i, x, j, y));
                    }
                }
            }
        }
    }
    best
}

fn detach(p: &mut PathWitness, v: Vertex) {
    if p.first() == v {
        p.vertices.remove(0);
    } else {
        debug_assert_eq!(p.last(), v);
        p.vertices.pop();
    }
}

fn attach(p: &mut PathWitness, at: Vertex, v: Vertex) {
    if p.first() == at {
        p.vertices.insert(0, v);
    } else {
        p.vertices.push(v);
    }
}

fn normalize(p: &mut PathWitness, is_left: &dyn Fn(Vertex) -> bool, minor: ColorId) {
    if p.len() == 1 {
        p.color = if is_left(p.first()) { minor.flip() } else { minor };
    }
}

/// Counts `(r_i, b_i)` of one descent step; `J_i = [r_i + b_i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncrementState {
    pub r: u32,
    pub b: u32,
}

impl IncrementState {
    pub fn j_len(&self) -> u32 {
        self.r + self.b
    }

    pub fn difference(&self) -> i64 {
        self.b as i64 - self.r as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MpfBranch {
    /// Some `ℓ ≥ k` has equally many vertices of each class in `[ℓ]`.
    EqualCount,
    /// `b_t ≥ 3 r_t`: the major singletons of `J_t`.
    MajorShortcut,
    /// Claim branch (i) at step `i`: a major forest dense in `J_{i-1}`.
    ClaimMajor { i: u32 },
    /// Claim branch (ii) at step `i`: a minor forest dense in `J_i`.
    ClaimMinor { i: u32 },
    /// Every claim step took branch (iii); the forest comes from all of `[n]`.
    Final,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EqualCountChoice {
    First,
    Largest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpfTrace {
    pub minor: ColorId,
    pub states: Vec<IncrementState>,
    pub t: u32,
    pub branch: MpfBranch,
    /// `b_i - r_i` for every `i` passed through branch (iii), then for the stopping index.
    pub differences: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpfResult {
    pub forest: ForestWitness,
    pub ell: u32,
    pub trace: MpfTrace,
}

impl MpfResult {
    pub fn density(&self) -> Ratio {
        Ratio::new(self.forest.count_upto(self.ell) as u64, self.ell as u64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpfOptions {
    pub equal_count: EqualCountChoice,
    /// Preferred forest color when both qualify at the equal-count or final step.
    pub prefer: Option<ColorId>,
    /// Reject `n < 4k/eps`. When off, the density bound is still checked on the output.
    pub enforce_order_bound: bool,
}

impl Default for MpfOptions {
    fn default() -> Self {
        MpfOptions { equal_count: EqualCountChoice::First, prefer: None, enforce_order_bound: true }
    }
}

/// A monochromatic path forest `F` and `ℓ ≥ k` with `|F ∩ [ℓ]| ≥ (3/4 − eps) ℓ`, via the
/// density-increment descent.
pub fn mpf_dense_forest<C: EdgeColoring + ?Sized>(coloring: &C, eps: Ratio, k: u32, budget: &SearchBudget) -> Result<MpfResult> {
    mpf_dense_forest_with(coloring, eps, k, budget, &MpfOptions::default())
}

pub fn mpf_dense_forest_with<C: EdgeColoring + ?Sized>(
    coloring: &C,
    eps: Ratio,
    k: u32,
    budget: &SearchBudget,
    opts: &MpfOptions,
) -> Result<MpfResult> {
    let n = coloring.order();
    let zero = Ratio::from_integer(0);
    ensure!(eps > zero && eps <= Ratio::new(3, 4), Contract, "eps must lie in (0, 3/4]");
    ensure!(Ratio::from_integer(k as u64) * eps >= Ratio::from_integer(3), Contract, "k = {k} is below 3/eps");
    ensure!(
        !opts.enforce_order_bound || Ratio::from_integer(n as u64) * eps >= Ratio::from_integer(4 * k as u64),
        Contract,
        "n = {n} is below 4k/eps"
    );
    ensure!(n >= k, Contract, "n = {n} is below k = {k}");
    let target = Ratio::new(3, 4) - eps;
    let dense = |size: usize, ell: u32| Ratio::new(size as u64, ell as u64) >= target;

    let colors: Vec<ColorId> = (1..=n).map(|v| vertex_color(coloring, v)).collect::<Result<_>>()?;
    let reds = colors.iter().filter(|&&c| c == RED).count();
    let minor = if reds <= n as usize - reds { RED } else { BLUE };
    let is_minor = |v: Vertex| colors[v as usize - 1] == minor;
    let majors: Vec<Vertex> = (1..=n).filter(|&v| !is_minor(v)).collect();
    let first_majors = |count: u32| majors[..count as usize].to_vec();
    let better = |g: &GlpForests, ell: u32| -> ForestWitness {
        let (a, b) = (g.minor.count_upto(ell), g.major.count_upto(ell));
        match opts.prefer {
            Some(c) if c == minor && dense(a, ell) => g.minor.clone(),
            Some(c) if c != minor && dense(b, ell) => g.major.clone(),
            _ if a > b => g.minor.clone(),
            _ => g.major.clone(),
        }
    };
    let mut trace = MpfTrace { minor, states: Vec::new(), t: 0, branch: MpfBranch::Final, differences: Vec::new() };

    // Equal-count prefix.
    let mut balance = 0i64;
    let mut equal = Vec::new();
    for v in 1..=n {
        balance += if is_minor(v) { 1 } else { -1 };
        if v >= k && balance == 0 {
            equal.push(v);
            if opts.equal_count == EqualCountChoice::First {
                break;
            }
        }
    }
    if let Some(&ell) = equal.last() {
        let verts: Vec<Vertex> = (1..=ell).collect();
        let b_in = majors.iter().take_while(|&&v| v <= ell).count() as u32;
        let g = glp_on(coloring, &verts, minor, &first_majors(b_in), budget)?;
        let forest = better(&g, ell);
        ensure!(dense(forest.count_upto(ell), ell), Internal, "equal-count forest misses the 3/4 - eps bound at ℓ = {ell}");
        trace.branch = MpfBranch::EqualCount;
        return Ok(MpfResult { forest, ell, trace });
    }

    // Descent J_0 ⊃ J_1 ⊃ ⋯.
    let mut state = IncrementState { r: (n as usize - majors.len()) as u32, b: majors.len() as u32 };
    trace.states.push(state);
    while state.r > 0 {
        let nth_major = majors[state.r as usize - 1];
        let next = IncrementState { r: nth_major - state.r, b: state.r };
        if next.j_len() < k {
            break;
        }
        ensure!(next.j_len() < state.j_len(), Internal, "interval sizes failed to decrease");
        state = next;
        trace.states.push(state);
    }
    let t = trace.states.len() as u32 - 1;
    trace.t = t;
    if state.b >= 3 * state.r {
        let ell = state.j_len();
        let forest = ForestWitness { paths: majors.iter().take_while(|&&v| v <= ell).map(|&v| PathWitness::new(vec![v], minor.flip())).collect(), color: minor.flip() };
        trace.branch = MpfBranch::MajorShortcut;
        return Ok(MpfResult { forest, ell, trace });
    }

    for i in 1..=t {
        let prev = trace.states[i as usize - 1];
        let cur = trace.states[i as usize];
        let verts: Vec<Vertex> = (1..=prev.j_len()).collect();
        let g = glp_on(coloring, &verts, minor, &first_majors(prev.r), budget)?;
        if dense(g.major.count_upto(prev.j_len()), prev.j_len()) {
            trace.branch = MpfBranch::ClaimMajor { i };
            return Ok(MpfResult { forest: g.major, ell: prev.j_len(), trace });
        }
        if dense(g.minor.count_upto(cur.j_len()), cur.j_len()) {
            trace.branch = MpfBranch::ClaimMinor { i };
            return Ok(MpfResult { forest: g.minor, ell: cur.j_len(), trace });
        }
        ensure!(
            prev.difference() < cur.difference(),
            Internal,
            "claim step {i}: neither forest is dense and b - r fell from {} to {}",
            prev.difference(),
            cur.difference()
        );
        trace.differences.push(prev.difference());
    }
    trace.differences.push(state.difference());

    let verts: Vec<Vertex> = (1..=n).collect();
    let r0 = trace.states[0].r;
    let g = glp_on(coloring, &verts, minor, &first_majors(r0), budget)?;
    let forest = better(&g, n);
    if !dense(forest.count_upto(n), n) {
        let msg = format!("final forest misses the 3/4 - eps bound on [{n}]");
        return Err(if opts.enforce_order_bound { Error::Internal(msg) } else { Error::Witness(msg) });
    }
    trace.branch = MpfBranch::Final;
    Ok(MpfResult { forest, ell: n, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colorings::{gen_constant, gen_seeded_random, materialize, ColorTable};

    #[test]
    fn degenerate_no_red_vertices() {
        let c = materialize(&gen_constant(RED, 2, false).unwrap(), 6).unwrap().with_vertex_colors(vec![BLUE; 6]).unwrap();
        let g = glp_path_forests(&c, &[], &SearchBudget::default()).unwrap();
        assert_eq!(g.minor.size(), 0);
        assert_eq!(g.major.size(), 6);
    }

    #[test]
    fn random_total_colorings_meet_bound() {
        for seed in 0..30u64 {
            let n = 10 + (seed as u32 % 20);
            let c = materialize(&gen_seeded_random(seed, 2, false).unwrap(), n).unwrap();
            let vc: Vec<ColorId> = (1..=n).map(|v| if (v as u64 * 7 + seed) % 3 == 0 { RED } else { BLUE }).collect();
            let c = c.with_vertex_colors(vc.clone()).unwrap();
            let r = vc.iter().filter(|&&x| x == RED).count();
            let bprime: Vec<Vertex> = (1..=n).filter(|&v| vc[v as usize - 1] == BLUE).take(r).collect();
            let g = glp_path_forests(&c, &bprime, &SearchBudget::default()).unwrap();
            assert!(g.total() + 3 >= n as usize + r);
            assert!(g.defect <= 3);
        }
    }

    #[test]
    fn rejects_bad_bprime() {
        let mut t = ColorTable::new(4, 2, false);
        t.set_vertex_colors(vec![RED, BLUE, BLUE, BLUE]);
        assert!(matches!(glp_path_forests(&t, &[1], &SearchBudget::default()), Err(Error::Contract(_))));
        assert!(matches!(glp_path_forests(&t, &[2, 3], &SearchBudget::default()), Err(Error::Contract(_))));
    }

    #[test]
    fn all_blue_gives_whole_prefix() {
        let c = materialize(&gen_constant(BLUE, 2, false).unwrap(), 80).unwrap().with_vertex_colors(vec![BLUE; 80]).unwrap();
        let res = mpf_dense_forest(&c, Ratio::new(1, 5), 15, &SearchBudget::default());
        assert!(matches!(res, Err(Error::Contract(_))));
        let c = materialize(&gen_constant(BLUE, 2, false).unwrap(), 300).unwrap().with_vertex_colors(vec![BLUE; 300]).unwrap();
        let res = mpf_dense_forest(&c, Ratio::new(1, 5), 15, &SearchBudget::default()).unwrap();
        assert_eq!(res.ell, 300);
        assert_eq!(res.forest.count_upto(300), 300);
    }

    #[test]
    fn random_total_colorings_n300() {
        let mut branches = std::collections::BTreeMap::new();
        for seed in 0..24u64 {
            let c = materialize(&gen_seeded_random(seed, 2, false).unwrap(), 300).unwrap();
            // Skewed vertex colors so the descent has room to run.
            let vc: Vec<ColorId> = (1..=300u64).map(|v| if (v * 2654435761 + seed * 97) % 100 < 20 + seed * 2 { RED } else { BLUE }).collect();
            let c = c.with_vertex_colors(vc).unwrap();
            let res = mpf_dense_forest(&c, Ratio::new(1, 5), 15, &SearchBudget::default()).unwrap();
            assert!(res.ell >= 15);
            assert!(res.density() >= Ratio::new(11, 20));
            validate_forest(&c, &res.forest).unwrap();
            assert!(res.trace.states.windows(2).all(|w| w[1].j_len() < w[0].j_len()));
            *branches.entry(format!("{:?}", res.trace.branch)).or_insert(0) += 1;
        }
        eprintln!("{branches:?}");
    }

    #[test]
    fn lagging_minor_class_takes_minor_branch() {
        // Blue prefix of length 15, then alternating: the red class never catches up.
        let vc: Vec<ColorId> = (1..=300u32).map(|v| if v > 15 && v % 2 == 0 { RED } else { BLUE }).collect();
        let c = materialize(&gen_constant(RED, 2, false).unwrap(), 300).unwrap().with_vertex_colors(vc).unwrap();
        let res = mpf_dense_forest(&c, Ratio::new(1, 5), 15, &SearchBudget::default()).unwrap();
        assert_eq!(res.trace.branch, MpfBranch::ClaimMinor { i: 1 });
        assert!(res.trace.t >= 1);
        assert!(res.density() >= Ratio::new(11, 20));
        validate_forest(&c, &res.forest).unwrap();
    }
}

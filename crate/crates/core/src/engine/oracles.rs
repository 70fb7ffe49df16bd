//! Exhaustive and seeded-random certification runs for the finite theorems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bipartite::{bipartite_3path_partition, validate_bipartite_partition, BipartiteColoring};
use super::exact::{MaskGraph, Step};
use super::forests::{glp_on, mpf_dense_forest_with, MpfBranch, MpfOptions};
use super::heuristic::SearchBudget;
use super::lasvergnas::{las_vergnas_condition, las_vergnas_path, BipartiteGraph, LvOutcome};
use super::witness::validate_forest;
use super::components::largest_mono_component;
use crate::colorings::{gen_seeded_random, materialize, ColorTable, ColoringSpec, EdgeColoring, PrefixColoring};
use crate::error::ensure;
use crate::{ColorId, Ratio, Result, Vertex, BLUE, RED};

/// Outcome of one oracle run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub oracle: String,
    pub n: u32,
    pub instances: u64,
    pub symmetry_pruned: bool,
    /// Extremal measured value (minimum unless the oracle says otherwise).
    pub extremal_value: Option<i64>,
    /// An instance attaining the extremal value, in explicit form.
    pub extremal_coloring: Option<ColoringSpec>,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl OracleSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Associative reduction state: extremal `(value, index)` and failure bookkeeping.
#[derive(Debug, Clone, Copy)]
struct Agg {
    count: u64,
    best: Option<(i64, u64)>,
    failures: u64,
    first_failure: Option<u64>,
}

impl Agg {
    fn empty() -> Self {
        Agg { count: 0, best: None, failures: 0, first_failure: None }
    }

    fn merge(self, o: Agg) -> Agg {
        let best = match (self.best, o.best) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let first_failure = match (self.first_failure, o.first_failure) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Agg { count: self.count + o.count, best, failures: self.failures + o.failures, first_failure }
    }
}

/// Evaluate `f(index) -> (value, failed)` over `0..total` in parallel; the reduction keeps the
/// smallest `(value, index)`, so results do not depend on scheduling.
fn exhaust(total: u64, f: impl Fn(u64) -> (i64, bool) + Sync) -> Agg {
    (0..total)
        .into_par_iter()
        .fold(Agg::empty, |acc, i| {
            let (v, failed) = f(i);
            acc.merge(Agg { count: 1, best: Some((v, i)), failures: u64::from(failed), first_failure: failed.then_some(i) })
        })
        .reduce(Agg::empty, Agg::merge)
}

/// Unordered pairs of `0..n` in the order (1,0),(2,0),(2,1),(3,0),...
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|u| (0..u).map(move |v| (u, v))).collect()
}

fn arcs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))).collect()
}

/// Vertex count of a longest path obeying `step` in the graph given by `pred` masks (n ≤ 8).
fn longest_small(out: &[u32], inn: &[u32], step: Step) -> i64 {
    let n = out.len();
    let mut dp = [0u32; 256];
    let mut best = 1;
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    for mask in 3u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let mut ends = 0;
        let mut m = mask;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            let pred = match step {
                Step::F => inn[w],
                Step::B => out[w],
                Step::Any => inn[w] | out[w],
            };
            if dp[(mask ^ (1 << w)) as usize] & pred != 0 {
                ends |= 1 << w;
            }
        }
        dp[mask as usize] = ends;
        if ends != 0 {
            best = best.max(mask.count_ones() as i64);
        }
    }
    best
}

fn undirected_masks(n: usize, ps: &[(usize, usize)], bits: u64, color: u64) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for (e, &(u, v)) in ps.iter().enumerate() {
        if (bits >> e) & 1 == color {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
    }
    adj
}

fn pair_table(n: usize, bits: u64) -> ColorTable {
    ColorTable::from_pair_colors(n as u32, 2, (0..pairs(n).len()).map(|e| ((bits >> e) & 1) as u8))
}

fn summary(oracle: &str, n: u32, pruned: bool, agg: Agg, show: impl Fn(u64) -> ColoringSpec, describe: impl Fn(u64) -> String) -> OracleSummary {
    OracleSummary {
        oracle: oracle.into(),
        n,
        instances: agg.count,
        symmetry_pruned: pruned,
        extremal_value: agg.best.map(|b| b.0),
        extremal_coloring: agg.best.map(|b| show(b.1)),
        failures: agg.failures,
        first_failure: agg.first_failure.map(describe),
    }
}

/// Minimum over all 2-colorings of `K_n` of the longest monochromatic path. The color of
/// `{1,2}` is fixed to red. Failures: colorings below `⌈(2n+1)/3⌉`.
pub fn gg_oracle(n: u32) -> Result<OracleSummary> {
    ensure!((2..=7).contains(&n), Budget, "exhaustive path oracle supports 2 ≤ n ≤ 7");
    let nn = n as usize;
    let ps = pairs(nn);
    let bound = ((2 * n + 1) as i64 + 2) / 3;
    let agg = exhaust(1 << (ps.len() - 1), |j| {
        let bits = j << 1;
        let red = undirected_masks(nn, &ps, bits, 0);
        let blue = undirected_masks(nn, &ps, bits, 1);
        let v = longest_small(&red, &red, Step::Any).max(longest_small(&blue, &blue, Step::Any));
        (v, v < bound)
    });
    Ok(summary("gerencser-gyarfas", n, true, agg, |j| pair_table(nn, j << 1).to_spec(), |j| format!("coloring index {}", j << 1)))
}

/// Minimum over all 2-colorings of the complete symmetric digraph on `n` vertices of the longest
/// consistently oriented monochromatic path. The arc `1 -> 2` is fixed to red. Failures:
/// colorings below `n/2 + 1`.
pub fn raynaud_oracle(n: u32) -> Result<OracleSummary> {
    ensure!((2..=5).contains(&n), Budget, "exhaustive oriented oracle supports 2 ≤ n ≤ 5");
    let nn = n as usize;
    let arcs = arcs(nn);
    let agg = exhaust(1 << (arcs.len() - 1), |j| {
        let bits = j << 1;
        let v = [0u64, 1]
            .iter()
            .map(|&c| {
                let mut out = vec![0u32; nn];
                let mut inn = vec![0u32; nn];
                for (e, &(u, w)) in arcs.iter().enumerate() {
                    if (bits >> e) & 1 == c {
                        out[u] |= 1 << w;
                        inn[w] |= 1 << u;
                    }
                }
                longest_small(&out, &inn, Step::F)
            })
            .max()
            .unwrap();
        (v, 2 * v < n as i64 + 2)
    });
    let show = |j: u64| {
        let bits = j << 1;
        let mut t = ColorTable::new(n, 2, true);
        for (e, &(u, w)) in arcs.iter().enumerate() {
            t.set(u as Vertex + 1, w as Vertex + 1, ColorId(((bits >> e) & 1) as u8));
        }
        t.to_spec()
    };
    Ok(summary("raynaud", n, true, agg, show, |j| format!("coloring index {}", j << 1)))
}

/// Minimum over all `r`-colorings of `K_n` of the largest monochromatic component, with the
/// color of `{1,2}` fixed to 0. Failures: colorings below `n/(r-1)`.
pub fn gyarfas_oracle(n: u32, r: u8) -> Result<OracleSummary> {
    ensure!(r >= 2 && n >= 2, Param, "need r ≥ 2 and n ≥ 2");
    let nn = n as usize;
    let ps = pairs(nn);
    let e = ps.len() as u32;
    let total = (r as u64).checked_pow(e - 1).filter(|&t| t <= 1 << 26);
    ensure!(total.is_some(), Budget, "{r}^{} colorings exceed the exhaustive budget", e - 1);
    let digits = move |j: u64| -> Vec<u8> {
        let mut d = vec![0u8];
        let mut x = j;
        for _ in 1..e {
            d.push((x % r as u64) as u8);
            x /= r as u64;
        }
        d
    };
    let agg = exhaust(total.unwrap(), |j| {
        let t = ColorTable::from_pair_colors(n, r, digits(j));
        let size = largest_mono_component(&t).1.len() as i64;
        (size, size * (r as i64 - 1) < n as i64)
    });
    Ok(summary("gyarfas-components", n, true, agg, |j| ColorTable::from_pair_colors(n, r, digits(j)).to_spec(), |j| format!("coloring index {j}")))
}

fn bipartite_from_bits(m: usize, bits: u64) -> BipartiteColoring {
    let colors = (0..m * m).map(|e| ColorId(((bits >> e) & 1) as u8)).collect();
    BipartiteColoring::new((1..=m as Vertex).collect(), (m as Vertex + 1..=2 * m as Vertex).collect(), colors).expect("valid sides")
}

fn bipartite_spec(bc: &BipartiteColoring) -> ColoringSpec {
    // Same-side pairs are not edges of the host; they are shown as color 0.
    let n = (bc.left().len() + bc.right().len()) as Vertex;
    let mut t = ColorTable::new(n, 2, false);
    for &u in bc.left() {
        for &v in bc.right() {
            t.set(u, v, bc.color(u, v).unwrap());
        }
    }
    t.to_spec()
}

/// Every 2-coloring of `K_{m,m}`: a validated partition into at most three monochromatic paths.
/// The extremal value is the largest number of paths needed (reported negated in the reduction).
pub fn bipartite3_oracle(m: u32) -> Result<OracleSummary> {
    ensure!((1..=4).contains(&m), Budget, "exhaustive bipartite oracle supports m ≤ 4");
    let mm = m as usize;
    let budget = SearchBudget::default();
    let agg = exhaust(1 << (mm * mm), |bits| {
        let bc = bipartite_from_bits(mm, bits);
        match bipartite_3path_partition(&bc, &budget).and_then(|p| validate_bipartite_partition(&bc, &p).map(|_| p)) {
            Ok(p) => (-(p.paths.len() as i64), false),
            Err(_) => (0, true),
        }
    });
    let mut s = summary("bipartite-3-paths", m, false, agg, |b| bipartite_spec(&bipartite_from_bits(mm, b)), |b| format!("coloring bits {b:#x}"));
    s.extremal_value = s.extremal_value.map(|v| -v);
    Ok(s)
}

/// Seeded random 2-colorings of `K_{m,m}`.
pub fn bipartite3_random(m: u32, count: u64, seed: u64) -> Result<OracleSummary> {
    let mm = m as usize;
    let budget = SearchBudget { seed, ..SearchBudget::default() };
    let make = |i: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x2545_f491_4f6c_dd1d));
        let colors = (0..mm * mm).map(|_| ColorId(rng.gen_range(0..2))).collect();
        BipartiteColoring::new((1..=m).collect(), (m + 1..=2 * m).collect(), colors).expect("valid sides")
    };
    let agg = exhaust(count, |i| {
        let bc = make(i);
        match bipartite_3path_partition(&bc, &budget).and_then(|p| validate_bipartite_partition(&bc, &p).map(|_| p)) {
            Ok(p) => (-(p.paths.len() as i64), false),
            Err(_) => (0, true),
        }
    });
    let mut s = summary("bipartite-3-paths-random", m, false, agg, |i| bipartite_spec(&make(i)), |i| format!("instance {i}"));
    s.extremal_value = s.extremal_value.map(|v| -v);
    Ok(s)
}

fn lv_from_bits(m: usize, bits: u64) -> BipartiteGraph {
    BipartiteGraph::new((1..=m as Vertex).collect(), (m as Vertex + 1..=2 * m as Vertex).collect(), (0..m * m).map(|e| (bits >> e) & 1 == 1).collect(), RED)
        .expect("valid adjacency")
}

fn lv_check(g: &BipartiteGraph, budget: &SearchBudget) -> (i64, bool) {
    if !las_vergnas_condition(g).holds {
        return (0, false);
    }
    for &u in &g.left {
        for &v in &g.right {
            match las_vergnas_path(g, u, v, budget) {
                Ok(LvOutcome::Path(p)) if p.first() == u && p.last() == v => {}
                _ => return (1, true),
            }
        }
    }
    (1, false)
}

fn lv_spec(g: &BipartiteGraph) -> ColoringSpec {
    let n = (2 * g.left.len()) as Vertex;
    let mut t = ColorTable::new(n, 2, false);
    for u in 1..=n {
        for v in u + 1..=n {
            t.set(u, v, BLUE);
        }
    }
    for (i, &u) in g.left.iter().enumerate() {
        for (j, &v) in g.right.iter().enumerate() {
            if g.has(i, j) {
                t.set(u, v, RED);
            }
        }
    }
    t.to_spec()
}

/// All bipartite graphs with sides of size `m`: whenever the degree condition holds, a
/// Hamiltonian `u,v`-path for every `u ∈ U`, `v ∈ V`. The value counts condition-holding graphs
/// (reported as a maximum: 1 if any held).
pub fn lasvergnas_oracle(m: u32) -> Result<OracleSummary> {
    ensure!((2..=4).contains(&m), Budget, "exhaustive Las Vergnas oracle supports 2 ≤ m ≤ 4");
    let mm = m as usize;
    let budget = SearchBudget::default();
    let agg = exhaust(1 << (mm * mm), |bits| {
        let (held, failed) = lv_check(&lv_from_bits(mm, bits), &budget);
        (-held, failed)
    });
    let mut s = summary("las-vergnas", m, false, agg, |b| lv_spec(&lv_from_bits(mm, b)), |b| format!("graph bits {b:#x}"));
    s.extremal_value = s.extremal_value.map(|v| -v);
    Ok(s)
}

/// Seeded random dense bipartite graphs with sides of size `m`.
pub fn lasvergnas_random(m: u32, count: u64, seed: u64) -> Result<OracleSummary> {
    let mm = m as usize;
    let budget = SearchBudget { seed, ..SearchBudget::default() };
    let make = |i: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let p: f64 = rng.gen_range(0.6..1.0);
        BipartiteGraph::new((1..=m).collect(), (m + 1..=2 * m).collect(), (0..mm * mm).map(|_| rng.gen_bool(p)).collect(), RED).expect("valid")
    };
    let agg = exhaust(count, |i| {
        let (held, failed) = lv_check(&make(i), &budget);
        (-held, failed)
    });
    let mut s = summary("las-vergnas-random", m, false, agg, |i| lv_spec(&make(i)), |i| format!("instance {i}"));
    s.extremal_value = s.extremal_value.map(|v| -v);
    Ok(s)
}

/// A seeded random total 2-coloring of `K_n`; the red share of the vertices is itself random.
pub fn seeded_total_coloring(seed: u64, n: u32) -> Result<PrefixColoring> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0xbf58_476d_1ce4_e5b9) ^ n as u64);
    let p: f64 = rng.gen_range(0.05..0.95);
    let vc = (0..n).map(|_| if rng.gen_bool(p) { RED } else { BLUE }).collect();
    materialize(&gen_seeded_random(seed, 2, false)?, n)?.with_vertex_colors(vc)
}

/// Largest monochromatic path forest of `color` inside `allowed` (exhaustive, small `n`).
fn max_forest(c: &ColorTable, color: ColorId, allowed: u32) -> usize {
    let n = c.order() as usize;
    let verts: Vec<Vertex> = (1..=n as Vertex).collect();
    let g = MaskGraph::from_coloring(c, &verts, color);
    let good: u32 = (0..n).filter(|&i| c.vertex_color(i as Vertex + 1) == Some(color)).fold(0, |m, i| m | 1 << i);
    let mut pathable = vec![false; 1 << n];
    for s in 0..n {
        if good & (1 << s) == 0 {
            continue;
        }
        // Paths from `s`: restrict the free DP to masks containing `s` by seeding only `s`.
        let mut dp = vec![0u32; 1 << n];
        dp[1 << s] = 1 << s;
        for mask in 1u32..(1 << n) {
            if mask & (1 << s) == 0 || mask.count_ones() < 2 {
                continue;
            }
            let mut ends = 0;
            for w in (0..n).filter(|&w| w != s && mask & (1 << w) != 0) {
                if dp[(mask ^ (1 << w)) as usize] & g.out[w] != 0 {
                    ends |= 1 << w;
                }
            }
            dp[mask as usize] = ends;
        }
        for mask in 1u32..(1 << n) {
            if dp[mask as usize] & good != 0 {
                pathable[mask as usize] = true;
            }
        }
    }
    let mut forest = vec![false; 1 << n];
    forest[0] = true;
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        if mask & !allowed != 0 {
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut sub = rest;
        let ok = loop {
            let block = sub | low;
            if pathable[block as usize] && forest[(mask ^ block) as usize] {
                break true;
            }
            if sub == 0 {
                break false;
            }
            sub = (sub - 1) & rest;
        };
        forest[mask as usize] = ok;
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// All total 2-colorings of `K_n` with `|R| ≤ |B|` and every admissible `B'`: the brute-force
/// optimum and the constructed forests both reach `n + |R| − 3`. The value is the least slack
/// of the constructed forests.
pub fn glp_oracle(n: u32) -> Result<OracleSummary> {
    ensure!((1..=6).contains(&n), Budget, "exhaustive forest oracle supports n ≤ 6");
    let nn = n as usize;
    let e = pairs(nn).len();
    let budget = SearchBudget::default();
    let table = move |idx: u64| {
        let mut t = pair_table(nn, idx >> nn);
        t.set_vertex_colors((0..nn).map(|v| if (idx >> v) & 1 == 0 { RED } else { BLUE }).collect());
        t
    };
    let agg = exhaust(1u64 << (e + nn), |idx| {
        let t = table(idx);
        let r: Vec<Vertex> = (1..=n).filter(|&v| t.vertex_color(v) == Some(RED)).collect();
        let b: Vec<Vertex> = (1..=n).filter(|&v| t.vertex_color(v) == Some(BLUE)).collect();
        if r.len() > b.len() {
            return (i64::MAX, false);
        }
        let need = (nn + r.len()) as i64 - 3;
        let mut slack = i64::MAX;
        for sub in 0u32..(1 << b.len()) {
            if sub.count_ones() as usize != r.len() {
                continue;
            }
            let bprime: Vec<Vertex> = b.iter().enumerate().filter(|(i, _)| sub & (1 << i) != 0).map(|(_, &v)| v).collect();
            let allowed = r.iter().chain(&bprime).fold(0u32, |m, &v| m | 1 << (v - 1));
            let brute = max_forest(&t, RED, allowed) + max_forest(&t, BLUE, (1 << nn) - 1);
            if (brute as i64) < need {
                return (brute as i64 - need, true);
            }
            let verts: Vec<Vertex> = (1..=n).collect();
            match glp_on(&t, &verts, RED, &bprime, &budget) {
                Ok(g) => slack = slack.min(g.total() as i64 - need),
                Err(_) => return (i64::MIN, true),
            }
        }
        (slack, slack < 0)
    });
    Ok(summary("glp-forests", n, false, agg, |i| table(i).to_spec(), |i| format!("total coloring index {i}")))
}

/// Seeded random total colorings with `n` drawn from `min_n..=max_n`; the forest pair for the
/// smaller vertex class and the first `|R|` vertices of the other must reach `n + |R| − 3`.
pub fn glp_random(count: u64, min_n: u32, max_n: u32, seed: u64) -> Result<OracleSummary> {
    ensure!(1 <= min_n && min_n <= max_n, Param, "need 1 ≤ min_n ≤ max_n");
    let budget = SearchBudget { seed, ..SearchBudget::default() };
    let make = |i: u64| {
        let n = min_n + (ChaCha8Rng::seed_from_u64(seed ^ i).gen_range(0..=max_n - min_n));
        seeded_total_coloring(seed.wrapping_add(i), n)
    };
    let agg = exhaust(count, |i| {
        let c = match make(i) {
            Ok(c) => c,
            Err(_) => return (i64::MIN, true),
        };
        let n = c.n();
        let reds: Vec<Vertex> = (1..=n).filter(|&v| c.vertex_color(v) == Some(RED)).collect();
        let blues: Vec<Vertex> = (1..=n).filter(|&v| c.vertex_color(v) == Some(BLUE)).collect();
        let (minor, r, b) = if reds.len() <= blues.len() { (RED, reds, blues) } else { (BLUE, blues, reds) };
        let verts: Vec<Vertex> = (1..=n).collect();
        let need = (n as usize + r.len()) as i64 - 3;
        match glp_on(&c, &verts, minor, &b[..r.len()], &budget) {
            Ok(g) => {
                let valid = validate_forest(&c, &g.minor).is_ok() && validate_forest(&c, &g.major).is_ok();
                let slack = g.total() as i64 - need;
                (slack, slack < 0 || !valid)
            }
            Err(_) => (i64::MIN, true),
        }
    });
    Ok(summary("glp-forests-random", max_n, false, agg, |i| make(i).map(|c| c.to_table().to_spec()).unwrap_or_else(|_| ColorTable::new(1, 2, false).to_spec()), |i| {
        format!("instance {i}")
    }))
}

/// Per-run record of the density-increment search on random total colorings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MpfRunSummary {
    pub summary: OracleSummary,
    pub min_density: Option<Ratio>,
    pub branch_counts: std::collections::BTreeMap<String, u64>,
}

/// Seeded random total colorings of `K_n`: `(F, ℓ)` with `ℓ ≥ k`, `|F ∩ [ℓ]| ≥ (3/4 − eps)ℓ`,
/// valid forests, strictly shrinking intervals and increasing differences on branch (iii).
pub fn mpf_random(count: u64, n: u32, eps: Ratio, k: u32, seed: u64, opts: &MpfOptions) -> Result<MpfRunSummary> {
    let budget = SearchBudget { seed, ..SearchBudget::default() };
    let target = Ratio::new(3, 4) - eps;
    let runs: Vec<(u64, Result<(Ratio, MpfBranch)>)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let res = seeded_total_coloring(seed.wrapping_add(i), n).and_then(|c| {
                let r = mpf_dense_forest_with(&c, eps, k, &budget, opts)?;
                validate_forest(&c, &r.forest)?;
                let shrinking = r.trace.states.windows(2).all(|w| w[1].j_len() < w[0].j_len());
                let increasing = r.trace.differences.windows(2).all(|w| w[0] < w[1]);
                ensure!(r.ell >= k && r.density() >= target && shrinking && increasing, Witness, "trace or bound violated: {:?}", r.trace);
                Ok((r.density(), r.trace.branch))
            });
            (i, res)
        })
        .collect();
    let mut agg = Agg::empty();
    let mut min_density: Option<Ratio> = None;
    let mut branch_counts = std::collections::BTreeMap::new();
    for (i, res) in &runs {
        match res {
            Ok((d, br)) => {
                min_density = Some(min_density.map_or(*d, |m| m.min(*d)));
                let key = match br {
                    MpfBranch::EqualCount => "equal-count",
                    MpfBranch::MajorShortcut => "major-shortcut",
                    MpfBranch::ClaimMajor { .. } => "claim-major",
                    MpfBranch::ClaimMinor { .. } => "claim-minor",
                    MpfBranch::Final => "final",
                };
                *branch_counts.entry(key.to_string()).or_insert(0) += 1;
                agg = agg.merge(Agg { count: 1, best: None, failures: 0, first_failure: None });
            }
            Err(_) => agg = agg.merge(Agg { count: 1, best: None, failures: 1, first_failure: Some(*i) }),
        }
    }
    let first_failure = agg.first_failure.map(|i| format!("instance {i}: {:?}", runs[i as usize].1.as_ref().err()));
    let summary = OracleSummary {
        oracle: "mpf-dense-forest-random".into(),
        n,
        instances: agg.count,
        symmetry_pruned: false,
        extremal_value: None,
        extremal_coloring: None,
        failures: agg.failures,
        first_failure,
    };
    Ok(MpfRunSummary { summary, min_density, branch_counts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gg_small() {
        for n in 2..=5 {
            let s = gg_oracle(n).unwrap();
            assert_eq!(s.extremal_value, Some(((2 * n + 1) as i64 + 2) / 3), "n = {n}");
            assert!(s.passed());
        }
    }

    #[test]
    fn raynaud_small() {
        assert_eq!(raynaud_oracle(3).unwrap().extremal_value, Some(3));
        assert_eq!(raynaud_oracle(4).unwrap().extremal_value, Some(3));
    }

    #[test]
    fn glp_exhaustive_4() {
        let s = glp_oracle(4).unwrap();
        assert!(s.passed(), "{s:?}");
    }

    #[test]
    fn bipartite_exhaustive_3() {
        let s = bipartite3_oracle(3).unwrap();
        assert!(s.passed());
        assert_eq!(s.instances, 512);
    }
}

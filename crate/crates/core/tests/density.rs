use proptest::prelude::*;
use rdl_core::density::*;
use rdl_core::{Ratio, Vertex};

fn induced_connected(set: &[Vertex], adj: &dyn Fn(Vertex, Vertex) -> bool) -> bool {
    if set.is_empty() {
        return false;
    }
    let mut seen = vec![set[0]];
    let mut i = 0;
    while i < seen.len() {
        let u = seen[i];
        for &w in set {
            if !seen.contains(&w) && adj(u, w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    seen.len() == set.len()
}

fn permutations(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn graph(edges: u64) -> impl Fn(Vertex, Vertex) -> bool {
    move |a: Vertex, b: Vertex| {
        let (a, b) = (a.min(b), a.max(b));
        a != b && (edges >> ((a * 7 + b * 3) % 61)) & 1 == 1
    }
}

#[test]
fn profile_records_use_the_tail() {
    let set = VertexSet::new(vec![1, 2, 3, 4, 9, 10]);
    let p = profile_set(&set, &[2, 4, 8, 10], DensityKind::Upper).unwrap();
    assert_eq!(p.values, vec![Ratio::new(1, 1), Ratio::new(1, 1), Ratio::new(1, 2), Ratio::new(3, 5)]);
    assert_eq!(p.tail_start, 2);
    assert_eq!(p.record_upper, Some(Ratio::new(3, 5)));
    assert_eq!(p.record_lower, Some(Ratio::new(1, 2)));
    assert_eq!(p.record_upper_from(0), Some(Ratio::from_integer(1)));
    assert!(profile_set(&set, &[4, 2], DensityKind::Upper).is_err());
    assert!(profile_set(&set, &[2], DensityKind::StrongUpper).is_err());
}

#[test]
fn strong_density_counts_the_initial_run() {
    let seq = VertexSequence::new(vec![2, 1, 7, 3, 4]).unwrap();
    assert_eq!(strong_density_at(&seq, 2).unwrap(), Ratio::from_integer(1));
    assert_eq!(strong_density_at(&seq, 6).unwrap(), Ratio::new(2, 6));
    assert_eq!(strong_density_at(&seq, 7).unwrap(), Ratio::new(5, 7));
    assert!(VertexSequence::new(vec![1, 2, 1]).is_err());
    assert!(VertexSequence::new(vec![0]).is_err());
}

#[test]
fn transversal_of_residue_cells_has_full_density() {
    let n = 5000;
    let cells: Vec<VertexSet> = (0..4).map(|i| (1..=n).filter(|v| v % 4 == i).collect()).collect();
    let eps = vec![Ratio::new(1, 2); 4];
    let t = density1_transversal(&cells, &eps, n).unwrap();
    assert_eq!(t.per_cell.iter().sum::<usize>(), t.members.len());
    for (i, c) in cells.iter().enumerate().take(t.active) {
        let th = t.thresholds[i].unwrap();
        assert_eq!(t.per_cell[i], c.count_upto(th));
    }
    assert_eq!(t.density, density_at(&t.members, n).unwrap());
    assert!(density1_transversal(&cells[..2], &eps, n).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn set_density_matches_counting(members in prop::collection::btree_set(1u32..200, 0..80), n in 1u32..220) {
        let set: VertexSet = members.iter().copied().collect();
        let count = members.iter().filter(|&&v| v <= n).count() as u64;
        prop_assert_eq!(density_at(&set, n).unwrap(), Ratio::new(count, n as u64));
    }

    #[test]
    fn strong_density_matches_counting(order in Just((1u32..60).collect::<Vec<_>>()).prop_shuffle(), n in 1u32..70) {
        let seq = VertexSequence::new(order.clone()).unwrap();
        let run = order.iter().take_while(|&&v| v <= n).count() as u64;
        prop_assert_eq!(strong_density_at(&seq, n).unwrap(), Ratio::new(run, n as u64));
    }

    #[test]
    fn exhaustive_prefix_matches_enumeration(edges in any::<u64>(), members in prop::collection::btree_set(1u32..20, 1..7), n in 1u32..20) {
        let vs: Vec<Vertex> = members.into_iter().collect();
        let adj = graph(edges);
        prop_assume!(induced_connected(&vs, &adj));
        let fast = exhaustive_connected_prefix(&VertexSet::new(vs.clone()), &adj, n).unwrap();
        let mut best = 0;
        for p in permutations(&vs) {
            if is_prefix_connected(&p, &adj) {
                let run = p.iter().take_while(|&&v| v <= n).count();
                let ok = (1..=run).all(|k| induced_connected(&p[..k], &adj));
                prop_assert!(ok);
                best = best.max(run);
            }
        }
        prop_assert_eq!(fast, best);
    }

    #[test]
    fn connected_profile_flags_connected_prefixes(edges in any::<u64>(), members in prop::collection::btree_set(1u32..40, 2..12)) {
        let vs: Vec<Vertex> = members.into_iter().collect();
        let adj = graph(edges | 1 << 60);
        let set = VertexSet::new(vs.clone());
        prop_assume!(induced_connected(&vs, &adj));
        let cps: Vec<Vertex> = (1..=8).map(|i| i * 5).collect();
        let p = strong_density_connected(&set, &adj, &cps).unwrap();
        let mut flagged = Vec::new();
        for (k, &m) in cps.iter().enumerate() {
            let inside: Vec<Vertex> = vs.iter().copied().filter(|&v| v <= m).collect();
            prop_assert_eq!(p.flagged[k], induced_connected(&inside, &adj));
            prop_assert_eq!(p.values[k], Ratio::new(inside.len() as u64, m as u64));
            if p.flagged[k] {
                flagged.push(m);
            }
        }
        let order = connected_ordering(&set, &adj, &flagged).unwrap();
        prop_assert!(is_prefix_connected(&order, &adj));
        prop_assert_eq!(VertexSet::new(order.clone()), set.clone());
        for &m in &flagged {
            let c = set.count_upto(m);
            prop_assert!(order[..c].iter().all(|&v| v <= m));
        }
    }
}

use proptest::prelude::*;
use rdl_core::assembly::*;
use rdl_core::colorings::*;
use rdl_core::density::VertexSet;
use rdl_core::engine::{validate_path, SearchBudget};
use rdl_core::{ColorId, Ratio, Vertex, BLUE, RED};

/// Longest `u,v`-path inside `allowed` in one color, by plain depth-first search.
fn brute_longest_between<C: EdgeColoring>(c: &C, allowed: &[Vertex], color: ColorId, u: Vertex, v: Vertex) -> usize {
    fn go<C: EdgeColoring>(c: &C, allowed: &[Vertex], color: ColorId, at: Vertex, v: Vertex, used: &mut Vec<Vertex>, best: &mut usize) {
        if at == v {
            *best = (*best).max(used.len());
            return;
        }
        for &w in allowed {
            if !used.contains(&w) && c.color(at, w) == color {
                used.push(w);
                go(c, allowed, color, w, v, used, best);
                used.pop();
            }
        }
    }
    let mut best = 0;
    go(c, allowed, color, u, v, &mut vec![u], &mut best);
    best
}

fn table(n: u32, rule: impl Fn(Vertex, Vertex) -> ColorId) -> ColorTable {
    let mut t = ColorTable::new(n, 2, false);
    for u in 1..=n {
        for v in u + 1..=n {
            t.set(u, v, rule(u, v));
        }
    }
    t
}

fn random_table(n: u32, seed: u64) -> ColorTable {
    ColorTable::from_coloring(&materialize(&gen_seeded_random(seed, 2, false).unwrap(), n).unwrap())
}

#[test]
fn all_blue_interval_of_nine_is_a_whole_connector() {
    let c = table(9, |_, _| BLUE);
    let conn = find_alpha_connector(&c, &VertexSet::range(1, 9), &SearchBudget::default()).unwrap();
    assert_eq!(conn.color, BLUE);
    assert_eq!(conn.x.len(), 9);
    assert!(conn.exhaustive);
    assert_eq!(conn.certified_pairs, 36);
    assert!(conn.alpha >= Ratio::new(8, 9), "alpha {}", conn.alpha);
    check_connector(&c, &conn).unwrap();
}

#[test]
fn adjacent_cycle_vertices_route_the_long_way() {
    let c = table(12, |_, _| RED);
    let conn = find_alpha_connector(&c, &VertexSet::range(1, 12), &SearchBudget::default()).unwrap();
    let cyc = &conn.base_cycle.vertices;
    assert_eq!(cyc.len(), 12);
    let p = connector_path(&c, &conn, cyc[0], cyc[1]).unwrap();
    assert_eq!(p.len(), 12);
    assert_eq!((p.first(), p.last()), (cyc[0], cyc[1]));
}

#[test]
fn closure_vertices_descend_to_the_cycle() {
    // Longest red cycle 1,8,7,3,4,5,6; vertex 2 only sees 1 and 3.
    let red_pairs = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (3, 7), (7, 8), (1, 8)];
    let c = table(8, |u, v| if red_pairs.contains(&(u, v)) { RED } else { BLUE });
    let conn = connector_in_color(&c, &VertexSet::range(1, 8), RED, &SearchBudget::default()).unwrap().unwrap();
    check_connector(&c, &conn).unwrap();
    assert_eq!(conn.base_cycle.len(), 7);
    assert_eq!(conn.x.len(), 8);
    assert_eq!(conn.layers[1].members(), &[2]);
    for v in [1, 4, 5, 6, 7, 8] {
        let p = connector_path(&c, &conn, 2, v).unwrap();
        validate_path(&c, &p).unwrap();
        assert_eq!((p.first(), p.last()), (2, v));
        assert!(p.len() <= brute_longest_between(&c, conn.x.members(), RED, 2, v));
    }
}

#[test]
fn connector_path_rejects_outside_vertices() {
    let c = table(8, |u, v| if u <= 6 && v <= 6 { RED } else { BLUE });
    let conn = connector_in_color(&c, &VertexSet::range(1, 8), RED, &SearchBudget::default()).unwrap().unwrap();
    assert!(!conn.x.contains(8));
    assert!(connector_path(&c, &conn, 1, 8).is_err());
    assert!(connector_path(&c, &conn, 1, 1).is_err());
}

#[test]
fn maximality_violation_is_flagged() {
    let c = table(9, |_, _| BLUE);
    let mut conn = find_alpha_connector(&c, &VertexSet::range(1, 9), &SearchBudget::default()).unwrap();
    let dropped = *conn.x.members().last().unwrap();
    conn.x = VertexSet::new(conn.x.iter().filter(|&v| v != dropped).collect());
    for l in conn.layers.iter_mut() {
        *l = VertexSet::new(l.iter().filter(|&v| v != dropped).collect());
    }
    assert!(check_connector(&c, &conn).is_err());
}

#[test]
fn small_connectors_never_overstate_alpha() {
    for seed in 0..25 {
        let c = random_table(9, seed);
        let Ok(conn) = find_alpha_connector(&c, &VertexSet::range(1, 9), &SearchBudget::default()) else { continue };
        check_connector(&c, &conn).unwrap();
        let xs = conn.x.members().to_vec();
        let mut worst = usize::MAX;
        for i in 0..xs.len() {
            for j in i + 1..xs.len() {
                let p = connector_path(&c, &conn, xs[i], xs[j]).unwrap();
                validate_path(&c, &p).unwrap();
                assert!(p.len() <= brute_longest_between(&c, &xs, conn.color, xs[i], xs[j]));
                worst = worst.min(p.len());
            }
        }
        assert_eq!(conn.alpha, Ratio::new(worst as u64, 9), "seed {seed}");
    }
}

#[test]
fn two_colored_small_prefixes_reach_two_thirds_minus_a_tenth() {
    let target = Ratio::new(2, 3) - Ratio::new(1, 10);
    let mut hits = 0;
    for seed in 0..20 {
        let c = random_table(16, seed);
        let conn = find_alpha_connector(&c, &VertexSet::range(1, 16), &SearchBudget::default()).unwrap();
        hits += (conn.alpha >= target) as usize;
    }
    assert!(hits >= 15, "{hits} of 20 prefixes reach 2/3 - 0.1");
}

/// `V1 = 1..=8` blue inside, `V2 = 9..=24` blue inside, every cross edge red.
fn cross_red() -> ColorTable {
    table(24, |u, v| if (u <= 8) != (v <= 8) { RED } else { BLUE })
}

#[test]
fn bridge_without_matching_crosses_in_red() {
    let c = cross_red();
    let (v1, v2) = (VertexSet::range(1, 8), VertexSet::range(9, 24));
    let x2 = connector_in_color(&c, &v2, BLUE, &SearchBudget::default()).unwrap().unwrap();
    assert_eq!(two_matching(&c, &v1, &x2.x, BLUE), None);
    let b = bridge_no_matching(&c, &v1, &v2, &v1, &x2, BridgeSide::First, Ratio::new(1, 10), &SearchBudget::default()).unwrap();
    validate_path(&c, &b.path).unwrap();
    assert_eq!(b.path.color, RED);
    assert!(v1.contains(b.path.first()) && v1.contains(b.path.last()));
    assert!(b.path.vertices.iter().all(|&v| v <= 24));
    assert!(b.missed.len() <= 3, "missed {:?}", b.missed);
    assert_eq!(b.path.len() + b.missed.len(), 8 + b.segment.len());
    assert!(b.meets_bound(), "{} < {}", b.local_density, b.bound);
}

#[test]
fn bridge_rejects_a_present_matching() {
    let c = table(24, |_, _| BLUE);
    let (v1, v2) = (VertexSet::range(1, 8), VertexSet::range(9, 24));
    let x2 = connector_in_color(&c, &v2, BLUE, &SearchBudget::default()).unwrap().unwrap();
    let err = bridge_no_matching(&c, &v1, &v2, &v1, &x2, BridgeSide::First, Ratio::new(1, 10), &SearchBudget::default());
    assert!(err.is_err());
}

#[test]
fn bridge_rejects_degenerate_parts() {
    let c = cross_red();
    let x2 = connector_in_color(&c, &VertexSet::range(9, 24), BLUE, &SearchBudget::default()).unwrap().unwrap();
    let v1 = VertexSet::new(vec![8]);
    let r = bridge_no_matching(&c, &v1, &VertexSet::range(9, 24), &v1, &x2, BridgeSide::First, Ratio::new(1, 10), &SearchBudget::default());
    assert!(r.is_err());
}

#[test]
fn dual_bridge_with_blue_matching() {
    // Red inside V1, blue inside V2, blue across.
    let c = table(20, |u, v| if u <= 8 && v <= 8 { RED } else { BLUE });
    let (v1, v2) = (VertexSet::range(1, 8), VertexSet::range(9, 20));
    let x1 = connector_in_color(&c, &v1, RED, &SearchBudget::default()).unwrap().unwrap();
    let x2 = connector_in_color(&c, &v2, BLUE, &SearchBudget::default()).unwrap().unwrap();
    let d = bridge_dual(&c, &v1, &v2, &x1, &x2, Ratio::new(1, 10), &SearchBudget::default()).unwrap();
    assert_eq!(d.case, DualCase::Matching);
    for p in [&d.first, &d.second] {
        validate_path(&c, p).unwrap();
        assert_eq!((p.first(), p.last()), (d.u, d.v));
    }
    assert_eq!((d.first.color, d.second.color), (RED, BLUE));
    let inner: Vec<Vertex> = d.second.vertices[1..d.second.len() - 1].to_vec();
    assert!(inner.iter().all(|v| !d.first.vertices.contains(v)), "paths share more than their ends");
    assert!(inner.iter().filter(|&&v| v > 8).count() >= x2.base_cycle.len() / 2);
}

#[test]
fn dual_bridge_without_blue_matching() {
    // Red inside V1, blue inside V2, red across.
    let c = table(24, |u, v| if u > 8 && v > 8 { BLUE } else { RED });
    let (v1, v2) = (VertexSet::range(1, 8), VertexSet::range(9, 24));
    let x1 = connector_in_color(&c, &v1, RED, &SearchBudget::default()).unwrap().unwrap();
    let x2 = connector_in_color(&c, &v2, BLUE, &SearchBudget::default()).unwrap().unwrap();
    let d = bridge_dual(&c, &v1, &v2, &x1, &x2, Ratio::new(1, 10), &SearchBudget::default()).unwrap();
    assert_eq!(d.case, DualCase::NoMatching);
    for p in [&d.first, &d.second] {
        validate_path(&c, p).unwrap();
        assert_eq!((p.first(), p.last()), (d.u, d.v));
    }
}

#[test]
fn case_tags_follow_the_pair_facts() {
    assert_eq!(CaseTag::for_pair([RED, BLUE], true), CaseTag::Two);
    assert_eq!(CaseTag::for_pair([BLUE, RED], false), CaseTag::Two);
    assert_eq!(CaseTag::for_pair([BLUE, BLUE], true), CaseTag::OneA);
    assert_eq!(CaseTag::for_pair([RED, RED], false), CaseTag::OneB);
}

#[test]
fn default_schedules() {
    let up = Schedule::upper_default(1000);
    assert_eq!(up.sizes[..4], [192, 300, 432, 588]);
    assert_eq!(up.eps[0], Ratio::new(1, 4));
    assert_eq!(up.k[..2], [12, 15]);
    let st = Schedule::strong_default(10_000);
    assert_eq!(st.sizes, vec![12, 48, 300, 2160, 17640]);
    assert!(Schedule::upper(vec![Ratio::new(1, 2)], vec![5]).is_err());
    assert!(Schedule::strong(vec![Ratio::new(3, 2)], vec![5]).is_err());
}

#[test]
fn all_red_upper_path_is_hamiltonian() {
    let spec = gen_constant(RED, 2, false).unwrap();
    let a = assemble_34_path(&spec, 1200, &Schedule::upper_default(1200), &UpperOptions::default()).unwrap();
    assert_eq!(a.path.len(), 1200);
    assert_eq!(a.path.color, RED);
    assert_eq!(a.profile.record_upper, Some(Ratio::from_integer(1)));
}

#[test]
fn upper_needs_three_complete_intervals() {
    let spec = gen_constant(RED, 2, false).unwrap();
    let r = assemble_34_path(&spec, 600, &Schedule::upper_default(600), &UpperOptions::default());
    assert!(matches!(r, Err(rdl_core::Error::Param(_))));
    let spec = gen_seeded_random(1, 3, false).unwrap();
    assert!(assemble_34_path(&spec, 1200, &Schedule::upper_default(1200), &UpperOptions::default()).is_err());
}

#[test]
fn residue_parity_coloring_is_separated() {
    // Red inside each parity class, blue across: red never joins the two classes.
    let spec = table(1200, |u, v| if u % 2 == v % 2 { RED } else { BLUE }).to_spec();
    let opts = UpperOptions { degree_threshold: Ratio::new(1, 3), ..UpperOptions::default() };
    let a = assemble_34_path(&spec, 1200, &Schedule::upper_default(1200), &opts).unwrap();
    assert_eq!(a.trace.case, CaseTag::One);
    let sep = a.trace.separation.as_ref().unwrap();
    assert_eq!(sep.color, RED);
    assert!(sep.separator.is_empty());
    assert_eq!(a.path.color, BLUE);
    assert_eq!(a.path.len(), 1200);
    validate_trace(&materialize(&spec, 1200).unwrap(), &a.trace).unwrap();
}

#[test]
fn upper_on_the_eight_ninths_spec_stays_below_the_ceiling() {
    let n = 1 << 12;
    let a = assemble_34_path(&gen_eg_upper_8_9(), n, &Schedule::upper_default(n), &UpperOptions::default()).unwrap();
    let rec = a.profile.record_upper.unwrap();
    assert!(rec <= Ratio::new(8, 9) + Ratio::new(1, 100));
    assert!(rec > a.trace.single_forest_record.unwrap(), "stitching must beat every single forest");
}

#[test]
fn all_blue_strong_path_runs_in_order() {
    let spec = gen_constant(BLUE, 2, false).unwrap();
    let n = 2000;
    let a = assemble_23_sud_path(&spec, n, &Schedule::strong_default(n), &StrongOptions::default()).unwrap();
    assert_eq!(a.path.color, BLUE);
    assert_eq!(a.profile.record_upper, Some(Ratio::from_integer(1)));
}

#[test]
fn strong_on_the_two_thirds_spec_stays_below_the_ceiling() {
    let n = 2200;
    let a = assemble_23_sud_path(&gen_eg_strong_2_3(), n, &Schedule::strong_default(n), &StrongOptions::default()).unwrap();
    assert!(a.profile.record_upper.unwrap() <= Ratio::new(2, 3) + Ratio::new(1, 100));
    validate_trace(&materialize(&gen_eg_strong_2_3(), n).unwrap(), &a.trace).unwrap();
}

#[test]
fn strong_rejects_short_prefixes_and_directed_specs() {
    let spec = gen_constant(BLUE, 2, false).unwrap();
    assert!(assemble_23_sud_path(&spec, 15, &Schedule::strong_default(15), &StrongOptions::default()).is_err());
    let d = gen_directed_residue(3).unwrap();
    assert!(assemble_23_sud_path(&d, 500, &Schedule::strong_default(500), &StrongOptions::default()).is_err());
}

#[test]
fn trace_round_trips_and_detects_tampering() {
    let spec = gen_seeded_random(3, 2, false).unwrap();
    let n = 800;
    let a = assemble_23_sud_path(&spec, n, &Schedule::strong_default(n), &StrongOptions::default()).unwrap();
    let pc = materialize(&spec, n).unwrap();
    let back = AssemblyTrace::from_json(&a.trace.to_json()).unwrap();
    assert_eq!(back, a.trace);
    assert_eq!(validate_trace(&pc, &back).unwrap(), a.path);

    let mut dup = a.trace.clone();
    let v = a.path.vertices[0];
    dup.pieces.push(Piece::Join { via: vec![], tag: None });
    dup.pieces.push(Piece::Artifact { intervals: vec![0], source: Source::Connector, vertices: vec![v] });
    assert!(validate_trace(&pc, &dup).is_err());

    let mut wrong_tag = a.trace.clone();
    if let Some(p) = wrong_tag.pairs.first_mut() {
        p.case = if p.case == CaseTag::Two { CaseTag::OneA } else { CaseTag::Two };
        assert!(validate_trace(&pc, &wrong_tag).is_err());
    }

    let mut wrong_n = a.trace.clone();
    wrong_n.n += 1;
    assert!(validate_trace(&pc, &wrong_n).is_err());
}

#[test]
fn assemblies_are_reproducible() {
    let spec = gen_seeded_random(11, 2, false).unwrap();
    let n = 1200;
    let a = assemble_34_path(&spec, n, &Schedule::upper_default(n), &UpperOptions::default()).unwrap();
    let b = assemble_34_path(&spec, n, &Schedule::upper_default(n), &UpperOptions::default()).unwrap();
    assert_eq!(a.trace.to_json(), b.trace.to_json());
    let a = assemble_23_sud_path(&spec, n, &Schedule::strong_default(n), &StrongOptions::default()).unwrap();
    let b = assemble_23_sud_path(&spec, n, &Schedule::strong_default(n), &StrongOptions::default()).unwrap();
    assert_eq!(a.trace.to_json(), b.trace.to_json());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn upper_traces_revalidate(seed in any::<u64>(), n in 1000u32..1600) {
        let spec = gen_seeded_random(seed, 2, false).unwrap();
        let a = assemble_34_path(&spec, n, &Schedule::upper_default(n), &UpperOptions::default()).unwrap();
        let path = validate_trace(&materialize(&spec, n).unwrap(), &a.trace).unwrap();
        prop_assert_eq!(path, a.path);
    }

    #[test]
    fn strong_traces_revalidate(seed in any::<u64>(), n in 100u32..900) {
        let spec = gen_seeded_random(seed, 2, false).unwrap();
        let a = assemble_23_sud_path(&spec, n, &Schedule::strong_default(n), &StrongOptions::default()).unwrap();
        let pc = materialize(&spec, n).unwrap();
        prop_assert_eq!(validate_trace(&pc, &a.trace).unwrap(), a.path);
        for p in &a.trace.pairs {
            prop_assert_eq!(p.case, CaseTag::for_pair(p.chi, p.matching));
        }
    }

    #[test]
    fn sampled_connectors_certify_their_alpha(seed in any::<u64>(), k in 11u32..40) {
        let c = materialize(&gen_seeded_random(seed, 2, false).unwrap(), k).unwrap();
        let conn = find_alpha_connector(&c, &VertexSet::range(1, k), &SearchBudget::default()).unwrap();
        check_connector(&c, &conn).unwrap();
        let xs = conn.x.members();
        for w in xs.windows(2) {
            let p = connector_path(&c, &conn, w[0], w[1]).unwrap();
            validate_path(&c, &p).unwrap();
        }
        if xs.len() > CONNECTOR_EXHAUSTIVE_LIMIT {
            prop_assert_eq!(conn.certified_pairs, CONNECTOR_SAMPLED_PAIRS);
        }
    }
}

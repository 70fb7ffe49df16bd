use proptest::prelude::*;
use rdl_core::colorings::*;
use rdl_core::{ColorId, Vertex, BLUE, RED};

fn dyadic_block(v: Vertex) -> u32 {
    31 - v.leading_zeros()
}

fn all_pairs(n: u32) -> impl Iterator<Item = (Vertex, Vertex)> {
    (1..=n).flat_map(move |u| (1..=n).filter(move |&v| v != u).map(move |v| (u, v)))
}

#[test]
fn residue_example_matches_its_rule() {
    let c = materialize(&gen_eg_strong_2_3(), 90).unwrap();
    for (u, v) in all_pairs(90) {
        let want = if (u % 3 == 0) != (v % 3 == 0) { RED } else { BLUE };
        assert_eq!(c.color(u, v), want, "{u},{v}");
    }
}

#[test]
fn dyadic_example_matches_its_rule() {
    let c = materialize(&gen_eg_upper_8_9(), 130).unwrap();
    for (u, v) in all_pairs(130) {
        let want = if dyadic_block(u.min(v)) % 2 == 0 { RED } else { BLUE };
        assert_eq!(c.color(u, v), want, "{u},{v}");
    }
}

#[test]
fn affine_lines_are_monochromatic_cliques() {
    for q in [2u32, 3, 5, 7] {
        let plane = AffinePlane::new(q).unwrap();
        let lines = plane.lines();
        assert_eq!(lines.len() as u32, q * q + q);
        for (class, pts) in &lines {
            assert_eq!(pts.len() as u32, q);
            for &a in pts {
                for &b in pts {
                    if a != b {
                        assert_eq!(plane.parallel_class(a, b), *class);
                    }
                }
            }
        }
        let mut covered = 0;
        for a in 0..q * q {
            for b in a + 1..q * q {
                let n = lines.iter().filter(|(_, p)| p.contains(&a) && p.contains(&b)).count();
                assert_eq!(n, 1);
                covered += 1;
            }
        }
        assert_eq!(covered, (q * q) * (q * q - 1) / 2);
    }
    assert!(AffinePlane::new(6).is_err());
}

#[test]
fn factorial_partition_sizes() {
    let iv = IntervalPartition::factorial(1).materialize(200).unwrap();
    assert_eq!(iv.ends, vec![1, 3, 9, 33, 153, 200]);
    assert_eq!(iv.complete_ends(), vec![1, 3, 9, 33, 153]);
    assert_eq!(iv.label(10), 4);
    assert!(IntervalPartition::explicit(vec![2, 0], 1).validate().is_err());
    assert!(IntervalPartition::geometric(4, 1, 2, 1).validate().is_err());
}

#[test]
fn fast_growth_detection() {
    assert!(IntervalPartition::factorial(1).is_fast_growing(10_000).unwrap());
    assert!(!IntervalPartition::explicit(vec![1, 1, 1, 1, 1], 1).is_fast_growing(5).unwrap());
}

fn spec_strategy() -> impl Strategy<Value = ColoringSpec> {
    prop_oneof![
        any::<u64>().prop_map(|s| gen_seeded_random(s, 2, false).unwrap()),
        any::<u64>().prop_map(|s| gen_seeded_random(s, 3, true).unwrap()),
        (2u32..6).prop_map(|k| gen_directed_residue(k).unwrap()),
        prop::sample::select(vec![2u32, 3, 5]).prop_map(|q| gen_affine(q).unwrap()),
        (1u64..4).prop_map(|a| gen_directed_growth(IntFn::Linear { a, b: 0 }).unwrap()),
        (1u64..4).prop_map(|a| gen_bounded_independence(IntFn::Linear { a, b: 1 }).unwrap()),
        Just(gen_strong_lower(IntervalPartition::factorial(1)).unwrap()),
        Just(gen_affine_lower3(IntervalPartition::geometric(2, 3, 2, 0)).unwrap()),
        Just(gen_eg_strong_2_3()),
        Just(gen_eg_upper_8_9()),
        (0u8..2).prop_map(|c| gen_constant(ColorId(c), 2, false).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn specs_round_trip_through_json(spec in spec_strategy()) {
        let back = ColoringSpec::from_json(&spec.to_json()).unwrap();
        prop_assert_eq!(&back, &spec);
        let a = materialize(&spec, 40).unwrap();
        let b = materialize(&back, 40).unwrap();
        prop_assert_eq!(ColorTable::from_coloring(&a), ColorTable::from_coloring(&b));
    }

    #[test]
    fn prefixes_agree_and_stay_in_range(spec in spec_strategy(), m in 2u32..40) {
        let big = materialize(&spec, 60).unwrap();
        let small = materialize(&spec, m).unwrap();
        let restricted = big.restrict(m).unwrap();
        for (u, v) in all_pairs(m) {
            let c = small.color(u, v);
            prop_assert!(c.0 < spec.num_colors);
            prop_assert_eq!(c, big.color(u, v));
            prop_assert_eq!(c, restricted.color(u, v));
            if !spec.directed {
                prop_assert_eq!(c, small.color(v, u));
            }
        }
        prop_assert!(small.try_color(m + 1, 1).is_err());
    }

    #[test]
    fn tables_reproduce_their_coloring(spec in spec_strategy(), n in 2u32..25) {
        let c = materialize(&spec, n).unwrap();
        let t = ColorTable::from_coloring(&c);
        let again = materialize(&t.to_spec(), n).unwrap();
        for (u, v) in all_pairs(n) {
            prop_assert_eq!(again.color(u, v), c.color(u, v));
        }
    }

    #[test]
    fn partitions_tile_the_prefix(first in 1u64..6, num in 1u64..5, n in 1u32..500) {
        let p = IntervalPartition::geometric(first, num + 1, num.min(num + 1), 1);
        let iv = p.materialize(n).unwrap();
        prop_assert_eq!(*iv.ends.last().unwrap(), n);
        prop_assert!(iv.ends.windows(2).all(|w| w[0] < w[1]));
        for pos in 0..iv.len() {
            for v in iv.range(pos) {
                prop_assert_eq!(iv.position(v) as usize, pos);
            }
        }
        let complete = iv.complete_ends();
        prop_assert!(complete.iter().all(|e| iv.ends.contains(e)));
        prop_assert!(iv.len() - complete.len() <= 1);
    }
}

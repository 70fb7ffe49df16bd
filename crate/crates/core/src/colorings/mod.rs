//! Coloring constructions as deterministic rules over the naturals.

mod affine;
mod intervals;
mod prefix;
mod spec;

pub use affine::{is_prime, AffinePlane};
pub use intervals::{IntFn, IntervalPartition, Intervals, SizeRule};
pub use prefix::{materialize, ColorTable, EdgeColoring, PrefixColoring, Relabeled, WithVertexColors};
pub use spec::{
    gen_affine, gen_affine_lower3, gen_bounded_independence, gen_constant, gen_directed_growth, gen_directed_residue,
    gen_eg_strong_2_3, gen_eg_upper_8_9, gen_explicit, gen_seeded_random, gen_strong_lower, ColoringSpec, ExplicitRule,
    Scheme,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ColorId, BLUE, GREEN, RED};

    #[test]
    fn eg_strong_examples() {
        let c = materialize(&gen_eg_strong_2_3(), 6).unwrap();
        assert_eq!(c.color(3, 6), BLUE);
        assert_eq!(c.color(3, 4), RED);
        assert_eq!(c.color(1, 2), BLUE);
    }

    #[test]
    fn eg_upper_examples() {
        let c = materialize(&gen_eg_upper_8_9(), 7).unwrap();
        assert_eq!(c.interval_ends().unwrap(), vec![1, 3, 7]);
        for (u, v) in [(1, 4), (1, 7), (4, 5), (6, 7), (1, 2), (1, 3)] {
            assert_eq!(c.color(u, v), RED, "{u},{v}");
        }
        for (u, v) in [(2, 3), (2, 4), (3, 7)] {
            assert_eq!(c.color(u, v), BLUE, "{u},{v}");
        }
    }

    #[test]
    fn constant_fill() {
        let c = materialize(&gen_constant(RED, 2, false).unwrap(), 4).unwrap();
        for u in 1..=4 {
            for v in 1..=4 {
                if u != v {
                    assert_eq!(c.color(u, v), RED);
                }
            }
        }
    }

    #[test]
    fn directed_residue_examples() {
        let c = materialize(&gen_directed_residue(3).unwrap(), 10).unwrap();
        assert_eq!(c.color(1, 4), RED);
        assert_eq!(c.color(4, 1), BLUE);
        let c = materialize(&gen_directed_residue(2).unwrap(), 10).unwrap();
        // 1 is in class 1 and 2 in class 0, so 1 -> 2 goes from the higher class to the lower one.
        assert_eq!(c.color(1, 2), RED);
        assert_eq!(c.color(2, 1), BLUE);
        assert!(c.try_color(3, 3).is_err());
        assert!(gen_directed_residue(1).is_err());
    }

    #[test]
    fn directed_growth_examples() {
        let c = materialize(&gen_directed_growth(IntFn::Linear { a: 1, b: 0 }).unwrap(), 10).unwrap();
        assert_eq!(c.interval_ends().unwrap(), vec![1, 3, 6, 10]);
        assert_eq!(c.color(1, 2), RED);
        assert_eq!(c.color(2, 1), BLUE);
        assert_eq!(c.color(2, 3), GREEN);
        assert_eq!(c.color(3, 2), GREEN);
        let c = materialize(&gen_directed_growth(IntFn::Const { c: 1 }).unwrap(), 3).unwrap();
        assert_eq!(c.interval_ends().unwrap(), vec![1, 2, 3]);
        assert_eq!(c.color(3, 1), BLUE);
        assert!(gen_directed_growth(IntFn::Table { values: vec![2, 1] }).is_err());
    }

    #[test]
    fn affine_examples() {
        assert!(gen_affine(4).is_err());
        let spec = gen_affine(2).unwrap();
        assert_eq!(spec.num_colors, 3);
        let c = materialize(&spec, 12).unwrap();
        assert_eq!(c.color(1, 5), RED);
        assert_eq!(c.color(1, 9), RED);
        let c3 = materialize(&gen_affine(3).unwrap(), 18).unwrap();
        let plane = AffinePlane::new(3).unwrap();
        for a in 1..=9u32 {
            for b in 1..=9u32 {
                if a % 9 != b % 9 {
                    assert_eq!(c3.color(a, b).0 as u32, plane.parallel_class(a % 9, b % 9));
                }
            }
        }
    }

    #[test]
    fn strong_lower_examples() {
        let spec = gen_strong_lower(IntervalPartition::explicit(vec![1, 2, 4], 1)).unwrap();
        let c = materialize(&spec, 7).unwrap();
        assert_eq!(c.color(1, 7), RED);
        assert_eq!(c.color(2, 3), BLUE);
        assert_eq!(c.color(1, 2), BLUE);
        let c = materialize(&gen_strong_lower(IntervalPartition::factorial(1)).unwrap(), 33).unwrap();
        assert_eq!(c.color(1, 1 + 1), BLUE);
        assert_eq!(c.color(4, 9), RED);
        assert!(materialize(&spec, 8).is_err());
    }

    #[test]
    fn affine_lower3_examples() {
        let spec = gen_affine_lower3(IntervalPartition::factorial(0)).unwrap();
        let c = materialize(&spec, 200).unwrap();
        let iv = c.intervals().unwrap().clone();
        let b = |q: u32| (1..=200).find(|&v| iv.label(v) % 4 == q).unwrap();
        assert_eq!(c.color(b(0), b(3)), RED);
        assert_eq!(c.color(b(1), b(2)), RED);
        assert_eq!(c.color(b(0), b(2)), BLUE);
        assert_eq!(c.color(b(1), b(3)), BLUE);
        assert_eq!(c.color(b(0), b(1)), GREEN);
        assert_eq!(c.color(b(2), b(3)), GREEN);
        let inside: Vec<u32> = (1..=200).filter(|&v| iv.label(v) % 4 == 2).take(2).collect();
        assert_eq!(c.color(inside[0], inside[1]), ColorId(0));
    }

    #[test]
    fn bounded_independence_examples() {
        let c = materialize(&gen_bounded_independence(IntFn::Linear { a: 1, b: 0 }).unwrap(), 20).unwrap();
        assert_eq!(c.interval_ends().unwrap(), vec![1, 5, 14, 20]);
        assert_eq!(c.color(2, 3), BLUE);
        assert_eq!(c.color(1, 2), RED);
    }

    #[test]
    fn explicit_matrix_round_trip() {
        let mut t = ColorTable::new(4, 2, false);
        t.set(1, 3, BLUE);
        t.set(2, 4, BLUE);
        let spec = t.to_spec();
        let json = spec.to_json();
        let back = ColoringSpec::from_json(&json).unwrap();
        assert_eq!(back, spec);
        let c = materialize(&back, 4).unwrap();
        assert_eq!(ColorTable::from_coloring(&c), t);
        assert!(materialize(&back, 5).is_err());
    }

    #[test]
    fn json_rejects_bad_params() {
        assert!(ColoringSpec::from_json(r#"{"scheme":"affine","directed":false,"num_colors":5,"params":{"q":4}}"#).is_err());
        assert!(ColoringSpec::from_json(r#"{"scheme":"nope","directed":false,"num_colors":2,"params":{}}"#).is_err());
        assert!(ColoringSpec::from_json(r#"{"scheme":"eg-upper-8-9","directed":true,"num_colors":2,"params":{}}"#).is_err());
        let s = ColoringSpec::from_json(r#"{"scheme":"affine","directed":false,"num_colors":3,"params":{"q":2}}"#).unwrap();
        assert_eq!(s, gen_affine(2).unwrap());
    }

    #[test]
    fn random_is_symmetric_and_deterministic() {
        let spec = gen_seeded_random(7, 3, false).unwrap();
        let a = materialize(&spec, 50).unwrap();
        let b = materialize(&spec, 80).unwrap();
        for u in 1..=50 {
            for v in 1..=50 {
                if u != v {
                    assert_eq!(a.color(u, v), a.color(v, u));
                    assert_eq!(a.color(u, v), b.color(u, v));
                }
            }
        }
    }
}

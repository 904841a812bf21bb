use proptest::prelude::*;

use slabcp::closest_pair::{closest_pair_bruteforce, closest_pair_dnc};
use slabcp::indexes::{build_box_reporter, build_segment_index, QueryBox};
use slabcp::io::{format_points, parse_points};
use slabcp::lowerbound::{dominates, pad_to_size, smallest_integer_above_twice_sum};
use slabcp::partition::{build_slab_partition, SlabPartition};
use slabcp::query::{preprocess, query_bruteforce};
use slabcp::slab_enum::{enumerate_bruteforce, enumerate_dnc, Algo};
use slabcp::wspd::{build_split_tree, build_wspd, verify_separation};
use slabcp::{Mode, PointSet};

/// Integer points with distinct x (a permutation of `0..n`) and other
/// coordinates in `0..range`; small ranges force distance ties.
fn grid_set(max_n: usize, d: usize, range: i64) -> impl Strategy<Value = PointSet> {
    (2..=max_n).prop_flat_map(move |n| {
        let xs = Just((0..n as i64).collect::<Vec<_>>()).prop_shuffle();
        let rest = prop::collection::vec(prop::collection::vec(0..range, d - 1), n);
        (xs, rest).prop_map(move |(xs, rest)| {
            let rows: Vec<Vec<i64>> = xs
                .into_iter()
                .zip(rest)
                .map(|(x, r)| std::iter::once(x).chain(r).collect())
                .collect();
            PointSet::from_ints(d, &rows).unwrap()
        })
    })
}

fn float_set(max_n: usize, d: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(prop::collection::vec(-1e3..1e3f64, d), 2..=max_n)
        .prop_map(move |rows| PointSet::new(d, Mode::Float, &rows).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dnc_closest_pair_matches_scan(s in (1usize..=3).prop_flat_map(|d| grid_set(120, d, 8))) {
        let ids: Vec<usize> = (0..s.len()).collect();
        prop_assert_eq!(closest_pair_dnc(&ids, &s), closest_pair_bruteforce(&ids, &s));
    }

    #[test]
    fn float_closest_pair_matches_scan(s in float_set(80, 2)) {
        let ids: Vec<usize> = (0..s.len()).collect();
        prop_assert_eq!(closest_pair_dnc(&ids, &s), closest_pair_bruteforce(&ids, &s));
    }

    #[test]
    fn enumeration_agrees_under_ties(s in grid_set(60, 2, 5), m_frac in 0.0..1.0f64) {
        let m = 1 + (m_frac * (s.len() - 1) as f64) as usize;
        let p = build_slab_partition(&s, m).unwrap();
        let brute = enumerate_bruteforce(&s, &p);
        let dnc = enumerate_dnc(&s, &p).unwrap();
        prop_assert_eq!(dnc.keys(), brute.keys());
        prop_assert!(brute.count() <= m * (m + 1) / 2);
    }

    #[test]
    fn queries_agree_with_scan(
        s in (1usize..=3).prop_flat_map(|d| grid_set(80, d, 6)),
        slabs in prop::collection::vec((-2.0..82.0f64, 0.0..40.0f64), 1..20),
    ) {
        let m = slabcp::query::default_m(s.len());
        let idx = preprocess(&s, m, Algo::Dnc).unwrap();
        for (a, w) in slabs {
            let b = a + w + 0.5;
            prop_assert_eq!(idx.query(a, b).unwrap(), query_bruteforce(&s, a, b).unwrap());
        }
    }

    #[test]
    fn wspd_covers_each_pair_once(s in float_set(60, 2), sep in 1.0..6.0f64) {
        let w = build_wspd(build_split_tree(&s).unwrap(), sep).unwrap();
        prop_assert!(w.verify_ball_separation());
        prop_assert!(w.verify_unique_coverage(s.len()));
        prop_assert!(verify_separation(&w, &s));
    }

    #[test]
    fn box_reports_match_filter(
        s in float_set(200, 3),
        lo in prop::collection::vec(-1e3..1e3f64, 3),
        ext in prop::collection::vec(0.0..800.0f64, 3),
    ) {
        let rep = build_box_reporter(&s);
        let hi: Vec<f64> = lo.iter().zip(&ext).map(|(l, e)| l + e).collect();
        let q = QueryBox::new(lo, hi).unwrap();
        let expect: Vec<usize> = (0..s.len()).filter(|&i| q.contains(s.coords(i))).collect();
        prop_assert_eq!(rep.report(&q).unwrap(), expect);
    }

    #[test]
    fn segment_index_finds_slab_minimum(s in grid_set(50, 2, 20), a in -1.0..50.0f64, w in 0.1..50.0f64) {
        let p = build_slab_partition(&s, s.len()).unwrap();
        let all = enumerate_bruteforce(&s, &p);
        let segs = all.segments(&s);
        let idx = build_segment_index(segs.clone());
        let b = a + w;
        let expect = segs
            .iter()
            .filter(|g| a <= g.left_x && g.right_x <= b)
            .map(|g| g.pair)
            .min();
        prop_assert_eq!(idx.query(a, b).unwrap().map(|g| g.pair), expect);
    }

    #[test]
    fn point_files_round_trip(s in prop_oneof![float_set(40, 3), grid_set(40, 2, 1_000_000)]) {
        prop_assert_eq!(parse_points(&format_points(&s)).unwrap(), s);
    }

    #[test]
    fn padding_keeps_existing_pairs(s in grid_set(30, 2, 50), extra in 0usize..40) {
        // Spread x so every bucket has free integer slots.
        let rows: Vec<Vec<i64>> = (0..s.len())
            .map(|i| vec![(extra as i64 + 2) * s.x(i) as i64, s.coord(i, 1) as i64])
            .collect();
        let s = PointSet::from_ints(2, &rows).unwrap();
        let p = build_slab_partition(&s, 3.min(s.len())).unwrap();
        let padded = pad_to_size(&s, &p, s.len() + extra).unwrap();
        let q = SlabPartition::from_boundaries(&padded, p.boundaries().to_vec()).unwrap();
        let targets = slabcp::partition::bucket_sizes(s.len() + extra, p.m());
        prop_assert_eq!(q.buckets().map(<[usize]>::len).collect::<Vec<_>>(), targets);
        let before = enumerate_bruteforce(&s, &p);
        let after = enumerate_bruteforce(&padded, &q);
        for ((key, old), (_, new)) in before.per_slab.unwrap().iter().zip(after.per_slab.unwrap().iter()) {
            if old.is_some() {
                prop_assert_eq!(old, new, "slab {:?}", key);
            }
        }
        for id in 0..s.len() {
            prop_assert_eq!(padded.coords(id), s.coords(id));
        }
    }

    #[test]
    fn minimal_integer_dominates(norms in prop::collection::vec(0u128..1_000_000_000, 0..8)) {
        let y = smallest_integer_above_twice_sum(&norms);
        prop_assert!(dominates(y * y, &norms));
        prop_assert!(y == 0 || !dominates((y - 1) * (y - 1), &norms));
    }
}

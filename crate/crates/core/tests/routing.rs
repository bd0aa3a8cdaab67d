use proptest::prelude::*;
use walker_routing::exact::{dag_longest, dag_shortest, dijkstra, dijkstra_hops};
use walker_routing::heuristic::{coin_flip_route, disco_route};
use walker_routing::{min_hop_count, Constellation, ConstellationParams, SatId};

fn case() -> impl Strategy<Value = (ConstellationParams, SatId, SatId, u64)> {
    (
        prop_oneof![Just(40.0), Just(53.0), Just(70.0)],
        3u32..10,
        4u32..14,
        200.0..1500.0,
    )
        .prop_flat_map(|(alpha, p, q, h)| {
            (0..p, (0..p, 0..q), (0..p, 0..q), any::<u64>()).prop_map(move |(f, (o1, i1), (o2, i2), seed)| {
                let params = ConstellationParams::from_degrees(alpha, p, q, f, h).unwrap();
                (params, SatId::new(o1, i1), SatId::new(o2, i2), seed)
            })
        })
}

proptest! {
    #[test]
    fn routers_agree_on_ordering((params, src, dst, seed) in case()) {
        let c = Constellation::new(params);
        let min = min_hop_count(&params, src, dst).min_total;
        let global = dijkstra(&c, src, dst);
        let short = dag_shortest(&c, src, dst);
        let long = dag_longest(&c, src, dst);
        let hops = dijkstra_hops(&c, src, dst);
        for route in [&global, &short, &long, &hops] {
            route.validate(&c).unwrap();
            prop_assert_eq!(route.src(), src);
            prop_assert_eq!(route.dst(), dst);
        }
        prop_assert!(global.hop_count() >= min);
        prop_assert!(global.total_length <= short.total_length * (1.0 + 1e-12));
        prop_assert_eq!(short.hop_count(), min);
        prop_assert_eq!(hops.hop_count(), min);
        prop_assert!((short.total_length - hops.total_length).abs() <= 1e-9 * short.total_length.max(1.0));
        for route in [disco_route(&c, src, dst), coin_flip_route(&c, src, dst, seed)] {
            route.validate(&c).unwrap();
            prop_assert_eq!(route.hop_count(), min);
            prop_assert!(short.total_length <= route.total_length && route.total_length <= long.total_length);
        }
    }

    #[test]
    fn reversed_pairs_have_equal_optimum((params, src, dst, _seed) in case()) {
        let c = Constellation::new(params);
        let forward = dag_shortest(&c, src, dst).total_length;
        let backward = dag_shortest(&c, dst, src).total_length;
        prop_assert!((forward - backward).abs() <= 1e-9 * forward.max(1.0));
    }
}

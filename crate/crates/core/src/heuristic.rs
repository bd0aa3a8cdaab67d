//! On-demand minimum-hop heuristics that touch only `O(hops)` satellites.
//!
//! Both routers first derive the hop counts and directions in closed form and
//! then walk a monotone path through the resulting rectangle.
//! [`coin_flip_route`] picks each step at random. [`disco_route`] places the
//! inter-plane hops as far from the Equator as it can, since those hops get
//! shorter towards the poles while intra-plane hops have constant length.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constellation::{Constellation, SatId};
use crate::hopcount::{min_hop_count, DirectionCombo};
use crate::rectangle::RectangleGrid;
use crate::route::Route;

/// Flying directions of source and destination (A = ascending, D = descending).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RouteCase {
    A2A,
    D2D,
    A2D,
    D2A,
}

impl RouteCase {
    pub fn classify(constellation: &Constellation, src: SatId, dst: SatId) -> Self {
        match (constellation.is_ascending(src), constellation.is_ascending(dst)) {
            (true, true) => RouteCase::A2A,
            (false, false) => RouteCase::D2D,
            (true, false) => RouteCase::A2D,
            (false, true) => RouteCase::D2A,
        }
    }

    /// Same flying direction at both ends.
    pub fn is_uniform(self) -> bool {
        matches!(self, RouteCase::A2A | RouteCase::D2D)
    }
}

/// How DisCoRoute resolves equal rewards at the two ends in the
/// opposite-direction case.
///
/// With zero phase offset both ends look at the very same intra-plane edge on
/// the last step, so the rewards are always equal there and the tie alone
/// decides the row of the inter-plane hops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Extend the end whose current satellite has the lower absolute latitude,
    /// leaving the inter-plane hops on the higher row.
    #[default]
    LowerLatitudeMoves,
    /// Always extend the destination end.
    DestinationMoves,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouteQueryContext {
    pub rectangle: RectangleGrid,
    pub rng_seed: Option<u64>,
    pub case: RouteCase,
}

/// Random monotone walk through one minimizing rectangle. While both
/// dimensions have hops left, each step is a fair coin flip; afterwards the
/// remaining dimension is forced. This is not uniform over lattice paths.
pub fn coin_flip_route(constellation: &Constellation, src: SatId, dst: SatId, seed: u64) -> Route {
    if src == dst {
        return Route::single(src);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hops = min_hop_count(constellation.params(), src, dst);
    let combo = match hops.minimizing_count() {
        1 => hops.nth_minimizing(0),
        n => hops.nth_minimizing(rng.gen_range(0..n)),
    }
    .expect("at least one minimizing combo");
    let ctx = RouteQueryContext {
        rectangle: RectangleGrid::new(constellation.params(), src, combo),
        rng_seed: Some(seed),
        case: RouteCase::classify(constellation, src, dst),
    };

    let grid = &ctx.rectangle;
    let (mut i, mut j) = (0, 0);
    let mut path = Vec::with_capacity(combo.total() as usize + 1);
    path.push(src);
    while i < grid.horizontal_hops || j < grid.vertical_hops {
        let horizontal = if i == grid.horizontal_hops {
            false
        } else if j == grid.vertical_hops {
            true
        } else {
            rng.gen::<bool>()
        };
        if horizontal {
            i += 1;
        } else {
            j += 1;
        }
        path.push(grid.cell(i, j));
    }
    Route::from_hops(constellation, path)
}

/// Latitude-reward router. For each minimizing rectangle it runs the variant
/// matching the flying directions and returns the shortest result.
pub fn disco_route(constellation: &Constellation, src: SatId, dst: SatId) -> Route {
    disco_route_with(constellation, src, dst, TieBreak::default())
}

pub fn disco_route_with(constellation: &Constellation, src: SatId, dst: SatId, ties: TieBreak) -> Route {
    if src == dst {
        return Route::single(src);
    }
    let case = RouteCase::classify(constellation, src, dst);
    let hops = min_hop_count(constellation.params(), src, dst);
    let mut best: Option<Route> = None;
    for combo in hops.minimizing_combos() {
        let route = disco_route_in(constellation, src, combo, case, ties);
        if best.as_ref().is_none_or(|b| route.total_length < b.total_length) {
            best = Some(route);
        }
    }
    best.expect("at least one minimizing combo")
}

/// DisCoRoute restricted to the rectangle of `combo`.
pub fn disco_route_in(
    constellation: &Constellation,
    src: SatId,
    combo: DirectionCombo,
    case: RouteCase,
    ties: TieBreak,
) -> Route {
    let ctx = RouteQueryContext {
        rectangle: RectangleGrid::new(constellation.params(), src, combo),
        rng_seed: None,
        case,
    };
    let path = if ctx.case.is_uniform() {
        inter_plane_at_ends(constellation, &ctx.rectangle)
    } else {
        intra_plane_at_ends(constellation, &ctx.rectangle, ties)
    };
    Route::from_hops(constellation, path)
}

/// Same flying direction at both ends: inter-plane hops are split between the
/// first and last row, intra-plane hops fill the middle column. The end whose
/// next inter-plane hop has the larger latitude sum is extended.
fn inter_plane_at_ends(constellation: &Constellation, grid: &RectangleGrid) -> Vec<SatId> {
    let (hh, hv) = (grid.horizontal_hops, grid.vertical_hops);
    let lat = |i, j| constellation.latitude(grid.cell(i, j));
    let mut head = Vec::with_capacity((hh + hv + 1) as usize);
    let mut tail = vec![grid.cell(hh, hv)];
    head.push(grid.cell(0, 0));
    let (mut i, mut j) = (0, hh);
    for _ in 0..hh {
        let reward_s = (lat(i, 0) + lat(i + 1, 0)).abs();
        let reward_t = (lat(j, hv) + lat(j - 1, hv)).abs();
        if reward_s < reward_t {
            tail.push(grid.cell(j - 1, hv));
            j -= 1;
        } else {
            head.push(grid.cell(i + 1, 0));
            i += 1;
        }
    }
    assert_eq!(i, j, "both partial routes must end on the same orbital plane");
    if hv == 0 {
        tail.pop();
    } else {
        head.extend((1..hv).map(|v| grid.cell(i, v)));
    }
    head.extend(tail.into_iter().rev());
    head
}

/// Opposite flying directions: intra-plane hops are split between the first
/// and last column, inter-plane hops fill the middle row. The end whose next
/// intra-plane hop has the smaller latitude sum is extended.
fn intra_plane_at_ends(constellation: &Constellation, grid: &RectangleGrid, ties: TieBreak) -> Vec<SatId> {
    let (hh, hv) = (grid.horizontal_hops, grid.vertical_hops);
    let lat = |i, j| constellation.latitude(grid.cell(i, j));
    let mut head = Vec::with_capacity((hh + hv + 1) as usize);
    let mut tail = vec![grid.cell(hh, hv)];
    head.push(grid.cell(0, 0));
    let (mut i, mut j) = (0, hv);
    for _ in 0..hv {
        let reward_s = (lat(0, i) + lat(0, i + 1)).abs();
        let reward_t = (lat(hh, j) + lat(hh, j - 1)).abs();
        let extend_source = match ties {
            TieBreak::LowerLatitudeMoves if reward_s == reward_t => lat(0, i).abs() < lat(hh, j).abs(),
            _ => reward_s < reward_t,
        };
        if extend_source {
            head.push(grid.cell(0, i + 1));
            i += 1;
        } else {
            tail.push(grid.cell(hh, j - 1));
            j -= 1;
        }
    }
    assert_eq!(i, j, "both partial routes must end in the same grid row");
    if hh == 0 {
        tail.pop();
    } else {
        head.extend((1..hh).map(|h| grid.cell(h, i)));
    }
    head.extend(tail.into_iter().rev());
    head
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constellation::ConstellationParams;
    use crate::exact::{dag_longest, dag_shortest};

    fn check_pair(c: &Constellation, src: SatId, dst: SatId, seeds: std::ops::Range<u64>) {
        let min = min_hop_count(c.params(), src, dst).min_total;
        let short = dag_shortest(c, src, dst).total_length;
        let long = dag_longest(c, src, dst).total_length;
        let disco = disco_route(c, src, dst);
        disco.validate(c).unwrap();
        assert_eq!(disco.hop_count(), min);
        assert!(short <= disco.total_length && disco.total_length <= long);
        for seed in seeds {
            let coin = coin_flip_route(c, src, dst, seed);
            coin.validate(c).unwrap();
            assert_eq!(coin.hop_count(), min);
            assert_eq!(coin.dst(), dst);
            assert!(short <= coin.total_length && coin.total_length <= long);
        }
    }

    #[test]
    fn trivial_and_forced_routes() {
        let c = Constellation::new(ConstellationParams::from_degrees(60.0, 5, 10, 2, 550.0).unwrap());
        let sat = SatId::new(4, 4);
        assert_eq!(disco_route(&c, sat, sat), Route::single(sat));
        assert_eq!(coin_flip_route(&c, sat, sat, 9), Route::single(sat));

        let (src, dst) = (SatId::new(0, 8), SatId::new(2, 6));
        let expected = [SatId::new(0, 8), SatId::new(4, 6), SatId::new(3, 6), SatId::new(2, 6)];
        for seed in 0..20 {
            assert_eq!(coin_flip_route(&c, src, dst, seed).hops, expected);
        }
        assert_eq!(disco_route(&c, src, dst).hops, expected);
    }

    #[test]
    fn coin_flip_is_deterministic_per_seed() {
        let c = Constellation::new(ConstellationParams::starlink());
        let (src, dst) = (SatId::new(1, 2), SatId::new(30, 15));
        assert_eq!(coin_flip_route(&c, src, dst, 42), coin_flip_route(&c, src, dst, 42));
        let distinct: std::collections::HashSet<_> = (0..20).map(|s| coin_flip_route(&c, src, dst, s).hops).collect();
        assert!(distinct.len() > 1);
    }

    #[test]
    fn hop_minimal_and_sandwiched() {
        let c = Constellation::new(ConstellationParams::from_degrees(53.0, 7, 11, 4, 550.0).unwrap());
        for src in c.params().satellites() {
            for dst in c.params().satellites() {
                check_pair(&c, src, dst, 0..5);
            }
        }
    }

    #[test]
    fn classification() {
        let c = Constellation::new(ConstellationParams::from_degrees(60.0, 5, 10, 2, 550.0).unwrap());
        // (0,8) has u = -72°, (2,6) has u = -115.2°
        assert_eq!(
            RouteCase::classify(&c, SatId::new(0, 8), SatId::new(2, 6)),
            RouteCase::A2D
        );
        assert_eq!(
            RouteCase::classify(&c, SatId::new(2, 6), SatId::new(0, 0)),
            RouteCase::D2A
        );
        assert_eq!(
            RouteCase::classify(&c, SatId::new(0, 0), SatId::new(0, 1)),
            RouteCase::A2A
        );
        assert_eq!(
            RouteCase::classify(&c, SatId::new(0, 4), SatId::new(0, 5)),
            RouteCase::D2D
        );
    }

    fn suboptimal_pairs(c: &Constellation, ties: TieBreak) -> usize {
        let mut bad = 0;
        for src in c.params().satellites() {
            for dst in c.params().satellites() {
                let disco = disco_route_with(c, src, dst, ties).total_length;
                let best = dag_shortest(c, src, dst).total_length;
                if disco - best > 1e-9 * best.max(1.0) {
                    bad += 1;
                }
            }
        }
        bad
    }

    #[test]
    fn exact_without_phase_offset() {
        for (alpha, p, q) in [(53.0, 8, 9), (60.0, 5, 12), (70.0, 6, 7), (40.0, 7, 10), (53.0, 4, 16)] {
            let c = Constellation::new(ConstellationParams::from_degrees(alpha, p, q, 0, 550.0).unwrap());
            assert_eq!(suboptimal_pairs(&c, TieBreak::LowerLatitudeMoves), 0, "{}", c.params());
        }
    }

    #[test]
    fn destination_ties_miss_the_peak_row() {
        let c = Constellation::new(ConstellationParams::from_degrees(53.0, 8, 9, 0, 550.0).unwrap());
        assert!(suboptimal_pairs(&c, TieBreak::DestinationMoves) > 0);
    }
}

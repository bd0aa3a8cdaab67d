//! Closed-form minimum ISL hop count.
//!
//! Every hop is a translation on the constellation torus: an inter-plane hop
//! to the east moves the RAAN by `ΔΩ` and the argument of latitude by `Δf`, an
//! intra-plane hop to the successor moves the argument of latitude by `ΔΦ`.
//! The number of hops in each of the four (horizontal, vertical) direction
//! pairs therefore follows from the angle differences between the two
//! satellites, and the minimum hop count is the smallest of the four sums.

use std::collections::VecDeque;
use std::f64::consts::TAU;

use serde::Serialize;

use crate::constellation::{neighbors, orbital_state, wrap_positive, ConstellationParams, SatId};

/// Quotients that should be integral must be this close to an integer.
const INTEGRALITY_TOLERANCE: f64 = 1e-6;

/// Inter-plane direction. East follows right neighbors, west left neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Horizontal {
    East,
    West,
}

/// Intra-plane direction. North follows successors, south predecessors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Vertical {
    North,
    South,
}

/// One of the four direction pairs with its hop counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DirectionCombo {
    pub horizontal: Horizontal,
    pub vertical: Vertical,
    pub horizontal_hops: u32,
    pub vertical_hops: u32,
}

impl DirectionCombo {
    pub fn total(&self) -> u32 {
        self.horizontal_hops + self.vertical_hops
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HopCountResult {
    pub h_east: u32,
    pub h_west: u32,
    pub v_north_east: u32,
    pub v_south_east: u32,
    pub v_north_west: u32,
    pub v_south_west: u32,
    /// Ordered (east, north), (east, south), (west, north), (west, south).
    pub combos: [DirectionCombo; 4],
    pub min_total: u32,
    minimizing: u8,
}

impl HopCountResult {
    /// The combos reaching `min_total`, in `combos` order. Never empty.
    pub fn minimizing_combos(&self) -> impl Iterator<Item = DirectionCombo> + '_ {
        self.combos
            .iter()
            .enumerate()
            .filter(move |(k, _)| self.minimizing & (1 << k) != 0)
            .map(|(_, c)| *c)
    }

    pub fn minimizing_count(&self) -> usize {
        self.minimizing.count_ones() as usize
    }

    pub fn nth_minimizing(&self, n: usize) -> Option<DirectionCombo> {
        self.minimizing_combos().nth(n)
    }

    pub fn is_minimizing(&self, combo: &DirectionCombo) -> bool {
        self.minimizing_combos().any(|c| c == *combo)
    }
}

/// Round half away from zero.
pub fn commercial_round(x: f64) -> i64 {
    (x.signum() * (x.abs() + 0.5).floor()) as i64
}

fn integral_quotient(numerator: f64, denominator: f64) -> u32 {
    let q = numerator / denominator;
    let k = commercial_round(q);
    assert!(
        (q - k as f64).abs() < INTEGRALITY_TOLERANCE,
        "hop quotient {q} is not integral; constellation parameters are inconsistent"
    );
    k as u32
}

/// Angle difference in `[0, 2π[` that is a multiple of `step`; values that
/// round to a full turn are snapped to zero.
fn snapped_difference(x: f64, step: f64) -> f64 {
    let d = wrap_positive(x);
    if commercial_round(d / step) as f64 * step >= TAU - step / 2.0 {
        0.0
    } else {
        d
    }
}

pub fn min_hop_count(params: &ConstellationParams, src: SatId, dst: SatId) -> HopCountResult {
    let s = orbital_state(params, src).expect("source in range");
    let t = orbital_state(params, dst).expect("destination in range");
    let raan_step = params.raan_spacing();
    let phase_step = params.phase_spacing();
    let offset = params.phase_offset();

    let delta_raan = snapped_difference(t.initial_raan - s.initial_raan, raan_step);
    let h_west = integral_quotient(TAU - delta_raan, raan_step);
    let h_east = integral_quotient(delta_raan, raan_step);
    debug_assert_eq!(h_east + h_west, params.planes());

    let du = t.arg_of_latitude - s.arg_of_latitude;
    let du_east = snapped_difference(du - h_east as f64 * offset, phase_step);
    let du_west = snapped_difference(du + h_west as f64 * offset, phase_step);

    let v_north_west = integral_quotient(du_west, phase_step);
    let v_north_east = integral_quotient(du_east, phase_step);
    let v_south_west = integral_quotient(TAU - du_west, phase_step);
    let v_south_east = integral_quotient(TAU - du_east, phase_step);

    let combo = |horizontal, vertical, horizontal_hops, vertical_hops| DirectionCombo {
        horizontal,
        vertical,
        horizontal_hops,
        vertical_hops,
    };
    let combos = [
        combo(Horizontal::East, Vertical::North, h_east, v_north_east),
        combo(Horizontal::East, Vertical::South, h_east, v_south_east),
        combo(Horizontal::West, Vertical::North, h_west, v_north_west),
        combo(Horizontal::West, Vertical::South, h_west, v_south_west),
    ];
    let min_total = combos.iter().map(DirectionCombo::total).min().unwrap();
    let minimizing = combos
        .iter()
        .enumerate()
        .filter(|(_, c)| c.total() == min_total)
        .fold(0u8, |mask, (k, _)| mask | 1 << k);

    HopCountResult {
        h_east,
        h_west,
        v_north_east,
        v_south_east,
        v_north_west,
        v_south_west,
        combos,
        min_total,
        minimizing,
    }
}

/// Hop count under the older restriction that packets always travel in the
/// horizontal direction needing fewer hops (east when both need `P/2`); only
/// the vertical direction is then optimized.
pub fn min_hop_count_chen(params: &ConstellationParams, src: SatId, dst: SatId) -> u32 {
    let r = min_hop_count(params, src, dst);
    let horizontal = if r.h_east <= r.h_west {
        Horizontal::East
    } else {
        Horizontal::West
    };
    r.combos
        .iter()
        .filter(|c| c.horizontal == horizontal)
        .map(DirectionCombo::total)
        .min()
        .expect("two combos per horizontal direction")
}

/// Unweighted ISL-graph distance from `src` to every satellite, by dense index.
pub fn bfs_hop_distances(params: &ConstellationParams, src: SatId) -> Vec<u32> {
    let mut dist = vec![u32::MAX; params.total_sats()];
    let mut queue = VecDeque::new();
    dist[params.dense_index(src)] = 0;
    queue.push_back(src);
    while let Some(sat) = queue.pop_front() {
        let d = dist[params.dense_index(sat)];
        for next in neighbors(params, sat).as_array() {
            let slot = &mut dist[params.dense_index(next)];
            if *slot == u32::MAX {
                *slot = d + 1;
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Breadth-first search over the 4-neighbor ISL graph.
pub fn bfs_hop_oracle(params: &ConstellationParams, src: SatId, dst: SatId) -> u32 {
    if src == dst {
        return 0;
    }
    let target = params.dense_index(dst);
    let mut dist = vec![u32::MAX; params.total_sats()];
    let mut queue = VecDeque::new();
    dist[params.dense_index(src)] = 0;
    queue.push_back(src);
    while let Some(sat) = queue.pop_front() {
        let d = dist[params.dense_index(sat)];
        for next in neighbors(params, sat).as_array() {
            let k = params.dense_index(next);
            if dist[k] == u32::MAX {
                if k == target {
                    return d + 1;
                }
                dist[k] = d + 1;
                queue.push_back(next);
            }
        }
    }
    unreachable!("ISL graph is connected")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn walker_60_50_5_2() -> ConstellationParams {
        ConstellationParams::from_degrees(60.0, 5, 10, 2, 550.0).unwrap()
    }

    #[test]
    fn commercial_rounding() {
        assert_eq!(commercial_round(0.5), 1);
        assert_eq!(commercial_round(-0.5), -1);
        assert_eq!(commercial_round(2.0), 2);
        assert_eq!(commercial_round(2.4999), 2);
        assert_eq!(commercial_round(-2.5), -3);
        assert_eq!(commercial_round(0.0), 0);
    }

    #[test]
    fn same_satellite_needs_no_hops() {
        let p = walker_60_50_5_2();
        let r = min_hop_count(&p, SatId::new(3, 4), SatId::new(3, 4));
        assert_eq!(r.min_total, 0);
        assert_eq!((r.h_east, r.h_west), (0, 5));
        assert_eq!((r.v_north_east, r.v_south_east), (0, 10));
        assert_eq!(r.minimizing_count(), 1);
    }

    #[test]
    fn right_neighbor_is_one_hop() {
        let p = walker_60_50_5_2();
        for sat in p.satellites() {
            let right = neighbors(&p, sat).right;
            let r = min_hop_count(&p, sat, right);
            assert_eq!(r.min_total, 1);
            assert_eq!(r.nth_minimizing(0).unwrap().horizontal, Horizontal::East);
        }
    }

    #[test]
    fn counterexample_pair_needs_three_hops() {
        let p = walker_60_50_5_2();
        let r = min_hop_count(&p, SatId::new(0, 8), SatId::new(2, 6));
        assert_eq!(r.min_total, 3);
        assert_eq!((r.h_east, r.h_west), (2, 3));
        assert_eq!((r.v_north_east, r.v_south_east), (8, 2));
        assert_eq!((r.v_north_west, r.v_south_west), (0, 10));
        let best: Vec<_> = r.minimizing_combos().collect();
        assert_eq!(best.len(), 1);
        assert_eq!(best[0].horizontal, Horizontal::West);
        assert_eq!(best[0].vertical_hops, 0);

        assert_eq!(min_hop_count_chen(&p, SatId::new(0, 8), SatId::new(2, 6)), 4);
        assert_eq!(bfs_hop_oracle(&p, SatId::new(0, 8), SatId::new(2, 6)), 3);
    }

    #[test]
    fn bfs_basics() {
        let p = walker_60_50_5_2();
        let sat = SatId::new(1, 3);
        assert_eq!(bfs_hop_oracle(&p, sat, sat), 0);
        assert_eq!(bfs_hop_oracle(&p, sat, neighbors(&p, sat).predecessor), 1);
        let all = bfs_hop_distances(&p, sat);
        for other in p.satellites() {
            assert_eq!(all[p.dense_index(other)], bfs_hop_oracle(&p, sat, other));
        }
    }

    #[test]
    fn formula_matches_bfs_on_small_constellations() {
        for (planes, q, f) in [(3, 4, 1), (4, 6, 3), (5, 10, 2), (6, 9, 0), (8, 12, 5)] {
            let p = ConstellationParams::from_degrees(53.0, planes, q, f, 550.0).unwrap();
            for src in p.satellites() {
                let oracle = bfs_hop_distances(&p, src);
                for dst in p.satellites() {
                    let r = min_hop_count(&p, src, dst);
                    assert_eq!(r.min_total, oracle[p.dense_index(dst)], "{src}->{dst} in {p}");
                    assert_eq!(r.h_east + r.h_west, planes);
                    assert!(min_hop_count_chen(&p, src, dst) >= r.min_total);
                }
            }
        }
    }

    fn small_constellation() -> impl Strategy<Value = ConstellationParams> {
        (3u32..9, 4u32..13)
            .prop_flat_map(|(planes, q)| (Just(planes), Just(q), 0..planes))
            .prop_map(|(planes, q, f)| ConstellationParams::from_degrees(53.0, planes, q, f, 550.0).unwrap())
    }

    fn sat_in(p: ConstellationParams) -> impl Strategy<Value = SatId> {
        (0..p.planes(), 0..p.sats_per_plane()).prop_map(|(o, i)| SatId::new(o, i))
    }

    proptest! {
        #[test]
        fn symmetric_and_triangle(
            (p, a, b, c) in small_constellation()
                .prop_flat_map(|p| (Just(p), sat_in(p), sat_in(p), sat_in(p)))
        ) {
            let ab = min_hop_count(&p, a, b).min_total;
            let ba = min_hop_count(&p, b, a).min_total;
            let bc = min_hop_count(&p, b, c).min_total;
            let ac = min_hop_count(&p, a, c).min_total;
            prop_assert_eq!(ab, ba);
            prop_assert!(ac <= ab + bc);
        }

        #[test]
        fn shift_invariant(
            (p, a, b, k) in small_constellation()
                .prop_flat_map(|p| (Just(p), sat_in(p), sat_in(p), 0..p.sats_per_plane()))
        ) {
            let q = p.sats_per_plane();
            let shift = |s: SatId| SatId::new(s.plane, (s.index + k) % q);
            prop_assert_eq!(
                min_hop_count(&p, a, b).min_total,
                min_hop_count(&p, shift(a), shift(b)).min_total
            );
        }
    }
}

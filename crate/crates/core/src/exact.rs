//! Exact routers.
//!
//! [`dijkstra`] finds the globally shortest route by Euclidean length over the
//! full ISL graph. [`dijkstra_hops`] orders the heap by `(hops, length)` and so
//! returns the shortest among the minimum-hop routes. [`dag_shortest`] and
//! [`dag_longest`] answer the same question (and its maximizing twin) by a
//! single topological sweep over each minimizing rectangle.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::marker::PhantomData;

use crate::constellation::{Constellation, SatId};
use crate::hopcount::min_hop_count;
use crate::rectangle::RectangleGrid;
use crate::route::Route;

/// Priority of the generic search. A key is stored on the heap as its length
/// plus its hop count packed next to the node index, so entries stay 16 bytes.
pub trait SearchKey: Copy + PartialOrd {
    const ZERO: Self;
    const UNREACHED: Self;
    /// Whether the hop count is compared before the length.
    const HOPS_FIRST: bool;
    fn extend(self, length: f64) -> Self;
    fn hops(self) -> u32;
    fn length(self) -> f64;
    fn from_parts(hops: u32, length: f64) -> Self;
}

impl SearchKey for f64 {
    const ZERO: Self = 0.0;
    const UNREACHED: Self = f64::INFINITY;
    const HOPS_FIRST: bool = false;

    fn extend(self, length: f64) -> Self {
        self + length
    }

    fn hops(self) -> u32 {
        0
    }

    fn length(self) -> f64 {
        self
    }

    fn from_parts(_: u32, length: f64) -> Self {
        length
    }
}

/// Lexicographic key: fewer hops first, then shorter length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopsThenLength {
    pub hops: u32,
    pub length: f64,
}

impl PartialOrd for HopsThenLength {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hops.cmp(&other.hops) {
            Ordering::Equal => self.length.partial_cmp(&other.length),
            ord => Some(ord),
        }
    }
}

impl SearchKey for HopsThenLength {
    const ZERO: Self = HopsThenLength { hops: 0, length: 0.0 };
    const UNREACHED: Self = HopsThenLength {
        hops: u32::MAX,
        length: f64::INFINITY,
    };
    const HOPS_FIRST: bool = true;

    fn extend(self, length: f64) -> Self {
        HopsThenLength {
            hops: self.hops + 1,
            length: self.length + length,
        }
    }

    fn hops(self) -> u32 {
        self.hops
    }

    fn length(self) -> f64 {
        self.length
    }

    fn from_parts(hops: u32, length: f64) -> Self {
        HopsThenLength { hops, length }
    }
}

struct Entry<K> {
    length: f64,
    /// Hop count in the high half, node index in the low half.
    tag: u64,
    key: PhantomData<K>,
}

impl<K: SearchKey> Entry<K> {
    fn new(key: K, node: u32) -> Self {
        Entry {
            length: key.length(),
            tag: (u64::from(key.hops()) << 32) | u64::from(node),
            key: PhantomData,
        }
    }

    fn key(&self) -> K {
        K::from_parts((self.tag >> 32) as u32, self.length)
    }

    fn node(&self) -> u32 {
        self.tag as u32
    }
}

impl<K: SearchKey> PartialEq for Entry<K> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<K: SearchKey> Eq for Entry<K> {}

impl<K: SearchKey> Ord for Entry<K> {
    fn cmp(&self, other: &Self) -> Ordering {
        // reversed: BinaryHeap is a max-heap
        let hops = if K::HOPS_FIRST {
            (other.tag >> 32).cmp(&(self.tag >> 32))
        } else {
            Ordering::Equal
        };
        hops.then_with(|| other.length.partial_cmp(&self.length).unwrap_or(Ordering::Equal))
            .then_with(|| other.tag.cmp(&self.tag))
    }
}

impl<K: SearchKey> PartialOrd for Entry<K> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Predecessor tree of a (possibly truncated) search from `src`.
#[derive(Debug, Clone)]
pub struct ShortestPathTree<K> {
    src: usize,
    dist: Vec<K>,
    prev: Vec<u32>,
}

impl<K: SearchKey> ShortestPathTree<K> {
    pub fn key(&self, constellation: &Constellation, dst: SatId) -> K {
        self.dist[constellation.index(dst)]
    }

    /// Walks predecessor links back from `dst`.
    pub fn route_to(&self, constellation: &Constellation, dst: SatId) -> Route {
        let mut node = constellation.index(dst);
        let mut path = vec![node];
        while node != self.src {
            node = self.prev[node] as usize;
            assert_ne!(node, u32::MAX as usize, "{dst} was not reached by the search");
            path.push(node);
        }
        path.reverse();
        Route::from_dense(constellation, &path)
    }
}

/// Lazy-deletion Dijkstra. Neighbors are relaxed in the order successor,
/// predecessor, left, right; equal keys keep the first relaxation.
fn search<K: SearchKey>(constellation: &Constellation, src: SatId, target: Option<SatId>) -> ShortestPathTree<K> {
    let n = constellation.len();
    let src = constellation.index(src);
    let target = target.map(|t| constellation.index(t));
    let mut dist = vec![K::UNREACHED; n];
    let mut prev = vec![u32::MAX; n];
    let mut visited = vec![false; n];
    let mut heap = BinaryHeap::new();

    dist[src] = K::ZERO;
    heap.push(Entry::new(K::ZERO, src as u32));
    while let Some(entry) = heap.pop() {
        let (key, node) = (entry.key(), entry.node());
        let u = node as usize;
        if visited[u] {
            continue;
        }
        visited[u] = true;
        if Some(u) == target {
            break;
        }
        for &v in constellation.adjacent(u) {
            let v = v as usize;
            if visited[v] {
                continue;
            }
            let alt = key.extend(constellation.distance_dense(u, v));
            if alt < dist[v] {
                dist[v] = alt;
                prev[v] = node;
                heap.push(Entry::new(alt, v as u32));
            }
        }
    }
    ShortestPathTree { src, dist, prev }
}

/// Globally shortest route by Euclidean length, stopping once `dst` is settled.
pub fn dijkstra(constellation: &Constellation, src: SatId, dst: SatId) -> Route {
    if src == dst {
        return Route::single(src);
    }
    search::<f64>(constellation, src, Some(dst)).route_to(constellation, dst)
}

/// Full single-source search; reusable for every destination.
pub fn dijkstra_tree(constellation: &Constellation, src: SatId) -> ShortestPathTree<f64> {
    search(constellation, src, None)
}

/// Shortest route among those with the minimum number of hops.
pub fn dijkstra_hops(constellation: &Constellation, src: SatId, dst: SatId) -> Route {
    if src == dst {
        return Route::single(src);
    }
    search::<HopsThenLength>(constellation, src, Some(dst)).route_to(constellation, dst)
}

pub fn dijkstra_hops_tree(constellation: &Constellation, src: SatId) -> ShortestPathTree<HopsThenLength> {
    search(constellation, src, None)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Start,
    Horizontal,
    Vertical,
}

/// Extreme-length monotone path through one rectangle. Cells are visited row
/// by row (vertical distance first, then horizontal), a topological order.
fn sweep_rectangle(constellation: &Constellation, grid: &RectangleGrid, longest: bool) -> (f64, Vec<usize>) {
    let (w, h) = (grid.width(), grid.height());
    let mut cells = Vec::with_capacity(w * h);
    for j in 0..h as u32 {
        for i in 0..w as u32 {
            cells.push(constellation.index(grid.cell(i, j)));
        }
    }
    let mut dist = vec![0.0f64; w * h];
    let mut step = vec![Step::Start; w * h];
    for j in 0..h {
        for i in 0..w {
            let k = j * w + i;
            let from_below = (j > 0).then(|| dist[k - w] + constellation.distance_dense(cells[k - w], cells[k]));
            let from_left = (i > 0).then(|| dist[k - 1] + constellation.distance_dense(cells[k - 1], cells[k]));
            let (d, s) = match (from_below, from_left) {
                (None, None) => (0.0, Step::Start),
                (Some(b), None) => (b, Step::Vertical),
                (None, Some(l)) => (l, Step::Horizontal),
                (Some(b), Some(l)) => {
                    let left_wins = if longest { l > b } else { l < b };
                    if left_wins {
                        (l, Step::Horizontal)
                    } else {
                        (b, Step::Vertical)
                    }
                }
            };
            dist[k] = d;
            step[k] = s;
        }
    }
    let mut k = w * h - 1;
    let mut path = vec![cells[k]];
    loop {
        match step[k] {
            Step::Start => break,
            Step::Horizontal => k -= 1,
            Step::Vertical => k -= w,
        }
        path.push(cells[k]);
    }
    path.reverse();
    (dist[w * h - 1], path)
}

fn dag_extreme(constellation: &Constellation, src: SatId, dst: SatId, longest: bool) -> Route {
    if src == dst {
        return Route::single(src);
    }
    let hops = min_hop_count(constellation.params(), src, dst);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for combo in hops.minimizing_combos() {
        let grid = RectangleGrid::new(constellation.params(), src, combo);
        let candidate = sweep_rectangle(constellation, &grid, longest);
        let better = match &best {
            None => true,
            Some((len, _)) if longest => candidate.0 > *len,
            Some((len, _)) => candidate.0 < *len,
        };
        if better {
            best = Some(candidate);
        }
    }
    let (_, path) = best.expect("at least one minimizing combo");
    Route::from_dense(constellation, &path)
}

/// Shortest minimum-hop route, by DAG relaxation over every minimizing rectangle.
pub fn dag_shortest(constellation: &Constellation, src: SatId, dst: SatId) -> Route {
    dag_extreme(constellation, src, dst, false)
}

/// Longest minimum-hop route inside the minimizing rectangles.
pub fn dag_longest(constellation: &Constellation, src: SatId, dst: SatId) -> Route {
    dag_extreme(constellation, src, dst, true)
}

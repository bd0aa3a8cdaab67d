//! Benchmark harness: run-time, route-length and scalability suites plus the
//! hop-count validation report. Records serialize to a fixed CSV schema that
//! the plotting scripts consume.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constellation::{Constellation, ConstellationParams, SatId};
use crate::error::{Error, Result};
use crate::exact::{dag_longest, dag_shortest, dijkstra, dijkstra_hops, dijkstra_hops_tree, dijkstra_tree};
use crate::heuristic::{coin_flip_route, disco_route};
use crate::hopcount::{bfs_hop_distances, min_hop_count, min_hop_count_chen};
use crate::route::Route;

/// Header written ahead of [`BenchRecord`] rows.
pub const CSV_HEADER: &str = "constellation,src_o,src_i,dst_o,dst_i,algorithm,hop_count,total_length_km,relative_diff,elapsed_ns,seed,repetitions";

pub const SCALABILITY_PRESETS: [&str; 4] = [
    "60.0:500/25/5@550",
    "60.0:2000/50/10@550",
    "60.0:8000/100/20@550",
    "60.0:32000/200/40@550",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Algorithm {
    Dijkstra,
    DijkstraHops,
    DagShort,
    DagLong,
    CoinFlip,
    DiscoRoute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Dijkstra,
        Algorithm::DijkstraHops,
        Algorithm::DagShort,
        Algorithm::DagLong,
        Algorithm::CoinFlip,
        Algorithm::DiscoRoute,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Dijkstra => "dijkstra",
            Algorithm::DijkstraHops => "dijkstra-hops",
            Algorithm::DagShort => "dag-short",
            Algorithm::DagLong => "dag-long",
            Algorithm::CoinFlip => "coinflip",
            Algorithm::DiscoRoute => "discoroute",
        }
    }

    pub fn is_seeded(self) -> bool {
        self == Algorithm::CoinFlip
    }

    /// `seed` is ignored by every algorithm except CoinFlipRoute.
    pub fn run(self, constellation: &Constellation, src: SatId, dst: SatId, seed: u64) -> Route {
        match self {
            Algorithm::Dijkstra => dijkstra(constellation, src, dst),
            Algorithm::DijkstraHops => dijkstra_hops(constellation, src, dst),
            Algorithm::DagShort => dag_shortest(constellation, src, dst),
            Algorithm::DagLong => dag_longest(constellation, src, dst),
            Algorithm::CoinFlip => coin_flip_route(constellation, src, dst, seed),
            Algorithm::DiscoRoute => disco_route(constellation, src, dst),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

/// Which unordered pairs of distinct satellites to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairSampler {
    AllPairs,
    /// `count` distinct pairs drawn without replacement.
    Random {
        count: usize,
        seed: u64,
    },
}

impl PairSampler {
    /// Pairs as `(src, dst)` with `src` before `dst` in dense order.
    pub fn pairs(&self, params: &ConstellationParams) -> Result<Vec<(SatId, SatId)>> {
        let n = params.total_sats();
        let total = n * n.saturating_sub(1) / 2;
        let ordered = |a: usize, b: usize| (params.sat_at(a.min(b)), params.sat_at(a.max(b)));
        match *self {
            PairSampler::AllPairs => Ok((0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .map(|(a, b)| ordered(a, b))
                .collect()),
            PairSampler::Random { count, seed } => {
                if count > total {
                    return Err(Error::InvalidParams(format!(
                        "cannot sample {count} distinct pairs from {total}"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                if count * 2 > total {
                    let mut all = PairSampler::AllPairs.pairs(params)?;
                    all.shuffle(&mut rng);
                    all.truncate(count);
                    return Ok(all);
                }
                let mut seen = HashSet::with_capacity(count);
                let mut out = Vec::with_capacity(count);
                while out.len() < count {
                    let a = rng.gen_range(0..n);
                    let b = rng.gen_range(0..n);
                    if a == b {
                        continue;
                    }
                    let pair = ordered(a, b);
                    if seen.insert(pair) {
                        out.push(pair);
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Per-pair seed for randomized algorithms (SplitMix64 finalizer).
pub fn pair_seed(seed: u64, pair_index: usize) -> u64 {
    let mut z = seed ^ (pair_index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One CSV row. Field order and names form the CSV header.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub constellation: String,
    pub src_o: u32,
    pub src_i: u32,
    pub dst_o: u32,
    pub dst_i: u32,
    pub algorithm: &'static str,
    pub hop_count: u32,
    pub total_length_km: f64,
    pub relative_diff: Option<f64>,
    pub elapsed_ns: Option<u64>,
    pub seed: Option<u64>,
    pub repetitions: Option<u32>,
}

impl BenchRecord {
    fn new(constellation: &str, algorithm: Algorithm, route: &Route) -> Self {
        let (src, dst) = (route.src(), route.dst());
        Self {
            constellation: constellation.to_string(),
            src_o: src.plane,
            src_i: src.index,
            dst_o: dst.plane,
            dst_i: dst.index,
            algorithm: algorithm.name(),
            hop_count: route.hop_count(),
            total_length_km: route.total_length,
            relative_diff: None,
            elapsed_ns: None,
            seed: None,
            repetitions: None,
        }
    }
}

pub fn write_csv<W: Write, T: Serialize>(out: W, records: &[T]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for r in records {
        writer.serialize(r)?;
    }
    writer.flush()?;
    Ok(())
}

#[derive(Debug, Clone, Copy)]
pub struct BenchOptions {
    pub repetitions: u32,
    pub seed: u64,
    pub parallel: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            repetitions: 10,
            seed: 0,
            parallel: true,
        }
    }
}

fn checked(constellation: &Constellation, route: Route, src: SatId, dst: SatId) -> Result<Route> {
    route.validate(constellation)?;
    if route.src() != src || route.dst() != dst {
        return Err(Error::Invariant(format!(
            "route runs {} -> {}, requested {src} -> {dst}",
            route.src(),
            route.dst()
        )));
    }
    Ok(route)
}

fn map_pairs<T, F>(pairs: &[(SatId, SatId)], parallel: bool, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, SatId, SatId) -> Result<T> + Sync + Send,
{
    if parallel {
        pairs.par_iter().enumerate().map(|(k, &(s, d))| f(k, s, d)).collect()
    } else {
        pairs.iter().enumerate().map(|(k, &(s, d))| f(k, s, d)).collect()
    }
}

/// Times each algorithm on each pair. One untimed warm-up run precedes the
/// timed repetitions; `elapsed_ns` is their mean.
pub fn bench_time(
    constellation: &Constellation,
    pairs: &[(SatId, SatId)],
    algorithms: &[Algorithm],
    options: BenchOptions,
) -> Result<Vec<BenchRecord>> {
    if options.repetitions == 0 {
        return Err(Error::InvalidParams("repetitions must be at least 1".into()));
    }
    let spec = constellation.params().to_string();
    let per_pair = map_pairs(pairs, options.parallel, |k, src, dst| {
        let seed = pair_seed(options.seed, k);
        let mut rows = Vec::with_capacity(algorithms.len());
        for &alg in algorithms {
            let route = checked(constellation, alg.run(constellation, src, dst, seed), src, dst)?;
            let start = Instant::now();
            for _ in 0..options.repetitions {
                black_box(alg.run(constellation, black_box(src), black_box(dst), seed));
            }
            let elapsed = start.elapsed().as_nanos() / options.repetitions as u128;
            let mut row = BenchRecord::new(&spec, alg, &route);
            row.elapsed_ns = Some((elapsed as u64).max(1));
            row.seed = alg.is_seeded().then_some(seed);
            row.repetitions = Some(options.repetitions);
            rows.push(row);
        }
        Ok(rows)
    })?;
    Ok(per_pair.into_iter().flatten().collect())
}

/// Route lengths relative to the DAGshort baseline. The Dijkstra variants are
/// served from one full single-source search per distinct source.
pub fn bench_length(
    constellation: &Constellation,
    pairs: &[(SatId, SatId)],
    algorithms: &[Algorithm],
    options: BenchOptions,
) -> Result<Vec<BenchRecord>> {
    let spec = constellation.params().to_string();
    let mut algs = vec![Algorithm::DagShort];
    algs.extend(algorithms.iter().copied().filter(|a| *a != Algorithm::DagShort));

    let mut by_source: BTreeMap<SatId, Vec<usize>> = BTreeMap::new();
    for (k, &(src, _)) in pairs.iter().enumerate() {
        by_source.entry(src).or_default().push(k);
    }
    let groups: Vec<(SatId, Vec<usize>)> = by_source.into_iter().collect();

    let run_group = |(src, members): &(SatId, Vec<usize>)| -> Result<Vec<(usize, Vec<BenchRecord>)>> {
        let tree = algs
            .contains(&Algorithm::Dijkstra)
            .then(|| dijkstra_tree(constellation, *src));
        let hop_tree = algs
            .contains(&Algorithm::DijkstraHops)
            .then(|| dijkstra_hops_tree(constellation, *src));
        let mut out = Vec::with_capacity(members.len());
        for &k in members {
            let dst = pairs[k].1;
            let seed = pair_seed(options.seed, k);
            let mut rows = Vec::with_capacity(algs.len());
            let mut baseline = f64::NAN;
            for &alg in &algs {
                let route = match alg {
                    Algorithm::Dijkstra if *src != dst => tree.as_ref().unwrap().route_to(constellation, dst),
                    Algorithm::DijkstraHops if *src != dst => hop_tree.as_ref().unwrap().route_to(constellation, dst),
                    _ => alg.run(constellation, *src, dst, seed),
                };
                let route = checked(constellation, route, *src, dst)?;
                if alg == Algorithm::DagShort {
                    baseline = route.total_length;
                }
                let mut row = BenchRecord::new(&spec, alg, &route);
                row.relative_diff = Some(if alg == Algorithm::DagShort {
                    0.0
                } else if baseline > 0.0 {
                    (route.total_length - baseline) / baseline
                } else {
                    0.0
                });
                row.seed = alg.is_seeded().then_some(seed);
                rows.push(row);
            }
            out.push((k, rows));
        }
        Ok(out)
    };

    let results: Vec<Vec<(usize, Vec<BenchRecord>)>> = if options.parallel {
        groups.par_iter().map(run_group).collect::<Result<_>>()?
    } else {
        groups.iter().map(run_group).collect::<Result<_>>()?
    };
    let mut flat: Vec<(usize, Vec<BenchRecord>)> = results.into_iter().flatten().collect();
    flat.sort_by_key(|(k, _)| *k);
    Ok(flat.into_iter().flat_map(|(_, rows)| rows).collect())
}

/// Mean, minimum and maximum of a per-algorithm column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ColumnStats {
    pub count: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

pub fn column_stats<F>(records: &[BenchRecord], column: F) -> BTreeMap<&'static str, ColumnStats>
where
    F: Fn(&BenchRecord) -> Option<f64>,
{
    let mut acc: BTreeMap<&'static str, (usize, f64, f64, f64)> = BTreeMap::new();
    for r in records {
        if let Some(v) = column(r) {
            let e = acc
                .entry(r.algorithm)
                .or_insert((0, 0.0, f64::INFINITY, f64::NEG_INFINITY));
            e.0 += 1;
            e.1 += v;
            e.2 = e.2.min(v);
            e.3 = e.3.max(v);
        }
    }
    acc.into_iter()
        .map(|(alg, (count, sum, min, max))| {
            (
                alg,
                ColumnStats {
                    count,
                    mean: sum / count as f64,
                    min,
                    max,
                },
            )
        })
        .collect()
}

/// Mean elapsed time of `baseline` divided by that of each algorithm.
pub fn mean_speedups(records: &[BenchRecord], baseline: Algorithm) -> BTreeMap<&'static str, f64> {
    let stats = column_stats(records, |r| r.elapsed_ns.map(|e| e as f64));
    let Some(base) = stats.get(baseline.name()) else {
        return BTreeMap::new();
    };
    stats.iter().map(|(alg, s)| (*alg, base.mean / s.mean)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalabilityRecord {
    pub constellation: String,
    pub algorithm: &'static str,
    pub pairs: usize,
    pub total_elapsed_ns: u64,
    pub mean_elapsed_ns: f64,
    /// Total run time relative to the previous (smaller) constellation.
    pub growth_factor: Option<f64>,
}

pub fn bench_scalability(
    specs: &[ConstellationParams],
    algorithms: &[Algorithm],
    sample_size: usize,
    options: BenchOptions,
) -> Result<Vec<ScalabilityRecord>> {
    let mut out = Vec::new();
    let mut previous: BTreeMap<&'static str, u64> = BTreeMap::new();
    for params in specs {
        let constellation = Constellation::new(*params);
        let pairs = PairSampler::Random {
            count: sample_size,
            seed: options.seed,
        }
        .pairs(params)?;
        let records = bench_time(&constellation, &pairs, algorithms, options)?;
        for &alg in algorithms {
            let total: u64 = records
                .iter()
                .filter(|r| r.algorithm == alg.name())
                .filter_map(|r| r.elapsed_ns)
                .sum();
            let growth_factor = previous.get(alg.name()).map(|&p| total as f64 / p as f64);
            previous.insert(alg.name(), total);
            out.push(ScalabilityRecord {
                constellation: params.to_string(),
                algorithm: alg.name(),
                pairs: pairs.len(),
                total_elapsed_ns: total,
                mean_elapsed_ns: total as f64 / pairs.len() as f64,
                growth_factor,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub constellation: String,
    pub pairs: u64,
    /// Pairs where the closed-form count differs from breadth-first search.
    pub oracle_mismatches: u64,
    pub oracle_agreement_rate: f64,
    pub chen_excess_pairs: u64,
    pub chen_excess_fraction: f64,
    /// Extra hops of the restricted-direction count → number of pairs.
    pub chen_excess_histogram: BTreeMap<u32, u64>,
    pub dijkstra_extra_hop_pairs: u64,
    pub dijkstra_extra_hop_fraction: f64,
    pub dijkstra_extra_hop_histogram: BTreeMap<u32, u64>,
    /// Pairs where the Dijkstra route has more hops and the restricted count
    /// equals the closed-form count.
    pub dijkstra_extra_hop_chen_agrees: u64,
    /// Largest `(dijkstra_hops - dijkstra) / dijkstra` over all pairs.
    pub max_relative_gap: f64,
    pub max_relative_gap_pair: Option<(SatId, SatId)>,
    /// Absolute difference at the pair with the largest relative gap.
    pub max_relative_gap_km: f64,
    /// Minimum-hop route length at that pair.
    pub max_relative_gap_route_km: f64,
    pub max_absolute_gap_km: f64,
    pub method: &'static str,
}

struct PairOutcome {
    src: SatId,
    dst: SatId,
    formula: u32,
    oracle: u32,
    chen: u32,
    dijkstra_hops: u32,
    dijkstra_km: f64,
    min_hop_km: f64,
}

/// Hop-count validation over `pairs`: closed form against breadth-first
/// search, restricted-direction excess, and the extra hops of length-optimal
/// routes. Searches run once per distinct source.
pub fn validate(constellation: &Constellation, pairs: &[(SatId, SatId)], parallel: bool) -> Result<ValidationReport> {
    let params = constellation.params();
    let mut by_source: BTreeMap<SatId, Vec<SatId>> = BTreeMap::new();
    for &(src, dst) in pairs {
        by_source.entry(src).or_default().push(dst);
    }
    let groups: Vec<(SatId, Vec<SatId>)> = by_source.into_iter().collect();
    let run_group = |(src, dsts): &(SatId, Vec<SatId>)| -> Vec<PairOutcome> {
        let bfs = bfs_hop_distances(params, *src);
        let tree = dijkstra_tree(constellation, *src);
        let hop_tree = dijkstra_hops_tree(constellation, *src);
        dsts.iter()
            .map(|&dst| PairOutcome {
                src: *src,
                dst,
                formula: min_hop_count(params, *src, dst).min_total,
                oracle: bfs[params.dense_index(dst)],
                chen: min_hop_count_chen(params, *src, dst),
                dijkstra_hops: tree.route_to(constellation, dst).hop_count(),
                dijkstra_km: tree.key(constellation, dst),
                min_hop_km: hop_tree.key(constellation, dst).length,
            })
            .collect()
    };
    let outcomes: Vec<PairOutcome> = if parallel {
        groups.par_iter().flat_map_iter(run_group).collect()
    } else {
        groups.iter().flat_map(run_group).collect()
    };

    let n = outcomes.len() as u64;
    let mut report = ValidationReport {
        constellation: params.to_string(),
        pairs: n,
        oracle_mismatches: 0,
        oracle_agreement_rate: 0.0,
        chen_excess_pairs: 0,
        chen_excess_fraction: 0.0,
        chen_excess_histogram: BTreeMap::new(),
        dijkstra_extra_hop_pairs: 0,
        dijkstra_extra_hop_fraction: 0.0,
        dijkstra_extra_hop_histogram: BTreeMap::new(),
        dijkstra_extra_hop_chen_agrees: 0,
        max_relative_gap: 0.0,
        max_relative_gap_pair: None,
        max_relative_gap_km: 0.0,
        max_relative_gap_route_km: 0.0,
        max_absolute_gap_km: 0.0,
        method: "per-source breadth-first search and full Dijkstra trees; unordered distinct pairs",
    };
    for o in &outcomes {
        if o.formula != o.oracle {
            report.oracle_mismatches += 1;
        }
        if o.chen > o.formula {
            report.chen_excess_pairs += 1;
            *report.chen_excess_histogram.entry(o.chen - o.formula).or_default() += 1;
        }
        if o.dijkstra_hops > o.formula {
            report.dijkstra_extra_hop_pairs += 1;
            *report
                .dijkstra_extra_hop_histogram
                .entry(o.dijkstra_hops - o.formula)
                .or_default() += 1;
            if o.chen == o.formula {
                report.dijkstra_extra_hop_chen_agrees += 1;
            }
        }
        if o.dijkstra_km > 0.0 {
            let gap = o.min_hop_km - o.dijkstra_km;
            let rel = gap / o.dijkstra_km;
            if rel > report.max_relative_gap {
                report.max_relative_gap = rel;
                report.max_relative_gap_pair = Some((o.src, o.dst));
                report.max_relative_gap_km = gap;
                report.max_relative_gap_route_km = o.min_hop_km;
            }
            report.max_absolute_gap_km = report.max_absolute_gap_km.max(gap);
        }
    }
    if n > 0 {
        report.oracle_agreement_rate = (n - report.oracle_mismatches) as f64 / n as f64;
        report.chen_excess_fraction = report.chen_excess_pairs as f64 / n as f64;
        report.dijkstra_extra_hop_fraction = report.dijkstra_extra_hop_pairs as f64 / n as f64;
    }
    Ok(report)
}

//! `walker-route`: hop counts, single routes, benchmarks and validation for
//! Walker Delta constellations.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 bad input (including a malformed
//! constellation spec), 3 internal invariant violation.

use std::fs::File;
use std::io::{self, Write};
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use walker_routing::bench::{
    bench_length, bench_scalability, bench_time, column_stats, mean_speedups, validate, write_csv, Algorithm,
    BenchOptions, PairSampler, SCALABILITY_PRESETS,
};
use walker_routing::geometry::{scan_horizontal_extrema, DEFAULT_SCAN_RESOLUTION};
use walker_routing::hopcount::min_hop_count_chen;
use walker_routing::{min_hop_count, Constellation, ConstellationParams, Error, SatId};

const DEFAULT_SPEC: &str = "53.0:1584/72/39@550";

#[derive(Parser)]
#[command(
    name = "walker-route",
    version,
    about = "Minimum-hop routing in Walker Delta constellations"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Constellation as "<inclination_deg>:<PQ>/<P>/<F>@<altitude_km>"
    #[arg(long, global = true, default_value = DEFAULT_SPEC)]
    spec: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of random unordered pairs to evaluate
    #[arg(long, global = true, conflicts_with = "all_pairs")]
    sample: Option<usize>,
    /// Evaluate every unordered pair of distinct satellites
    #[arg(long, global = true)]
    all_pairs: bool,
    /// Write CSV records to this file
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print a JSON summary instead of CSV on stdout
    #[arg(long, global = true)]
    json: bool,
    /// Run on a single thread
    #[arg(long, global = true)]
    no_parallel: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form minimum hop count between two satellites
    Hopcount {
        constellation: String,
        src: String,
        dst: String,
    },
    /// Compute one route
    Route {
        constellation: String,
        src: String,
        dst: String,
        #[arg(long, default_value = "discoroute")]
        alg: Algorithm,
    },
    /// Benchmark suites writing CSV records
    Bench {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Compare the closed-form hop count with search-based references
    Validate,
    /// Locate the longest and shortest inter-plane link
    ScanExtrema {
        constellation: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SCAN_RESOLUTION)]
        resolution: usize,
    },
}

#[derive(Subcommand)]
enum Suite {
    /// Mean run time per algorithm and pair
    Time {
        #[arg(long, value_delimiter = ',')]
        algs: Option<Vec<Algorithm>>,
        #[arg(long, default_value_t = 10)]
        repetitions: u32,
    },
    /// Route lengths relative to the shortest minimum-hop route
    Length {
        #[arg(long, value_delimiter = ',')]
        algs: Option<Vec<Algorithm>>,
    },
    /// Total run time over growing constellations
    Scalability {
        #[arg(long, value_delimiter = ',')]
        algs: Option<Vec<Algorithm>>,
        /// Constellations to run, smallest first
        #[arg(long = "preset")]
        presets: Option<Vec<String>>,
        #[arg(long, default_value_t = 10)]
        repetitions: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    panic::set_hook(Box::new(|info| eprintln!("internal error: {info}")));
    match panic::catch_unwind(AssertUnwindSafe(|| run(cli))) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(err)) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
        Err(_) => ExitCode::from(3),
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } | Error::InvalidParams(_) | Error::SatOutOfRange { .. } | Error::NonZeroPhaseOffset(_) => 2,
        Error::NotMinimizing | Error::Invariant(_) => 3,
        Error::Io(_) => 1,
    }
}

fn run(cli: Cli) -> walker_routing::Result<()> {
    let g = &cli.global;
    match &cli.command {
        Command::Hopcount {
            constellation,
            src,
            dst,
        } => {
            let params: ConstellationParams = constellation.parse()?;
            let (src, dst) = (parse_sat(&params, src)?, parse_sat(&params, dst)?);
            let h = min_hop_count(&params, src, dst);
            let combos: Vec<Value> = h
                .minimizing_combos()
                .map(|c| {
                    json!({
                        "horizontal": c.horizontal,
                        "vertical": c.vertical,
                        "horizontal_hops": c.horizontal_hops,
                        "vertical_hops": c.vertical_hops,
                    })
                })
                .collect();
            print_json(&json!({
                "constellation": params.to_string(),
                "src": src,
                "dst": dst,
                "h_east": h.h_east,
                "h_west": h.h_west,
                "v_north_east": h.v_north_east,
                "v_south_east": h.v_south_east,
                "v_north_west": h.v_north_west,
                "v_south_west": h.v_south_west,
                "min_total": h.min_total,
                "minimizing_combos": combos,
                "chen_count": min_hop_count_chen(&params, src, dst),
            }))
        }
        Command::Route {
            constellation,
            src,
            dst,
            alg,
        } => {
            let params: ConstellationParams = constellation.parse()?;
            let (src, dst) = (parse_sat(&params, src)?, parse_sat(&params, dst)?);
            let c = Constellation::new(params);
            let start = Instant::now();
            let route = alg.run(&c, src, dst, g.seed);
            let elapsed = start.elapsed();
            route.validate(&c)?;
            print_json(&json!({
                "constellation": params.to_string(),
                "algorithm": alg.name(),
                "seed": alg.is_seeded().then_some(g.seed),
                "hops": route.hops.iter().map(|s| [s.plane, s.index]).collect::<Vec<_>>(),
                "per_hop_km": route.per_hop_lengths,
                "total_km": route.total_length,
                "hop_count": route.hop_count(),
                "elapsed_ns": elapsed.as_nanos() as u64,
            }))
        }
        Command::Bench { suite } => run_bench(g, suite),
        Command::Validate => {
            let params: ConstellationParams = g.spec.parse()?;
            let c = Constellation::new(params);
            let pairs = sampler(g, 10_000).pairs(&params)?;
            let report = validate(&c, &pairs, !g.no_parallel)?;
            print_json(&serde_json::to_value(&report).expect("report serializes"))
        }
        Command::ScanExtrema {
            constellation,
            resolution,
        } => {
            let params: ConstellationParams = constellation.as_deref().unwrap_or(&g.spec).parse()?;
            if *resolution == 0 {
                return Err(Error::InvalidParams("resolution must be positive".into()));
            }
            let scan = scan_horizontal_extrema(&params, *resolution);
            let mut value = serde_json::to_value(scan).expect("scan serializes");
            value["constellation"] = json!(params.to_string());
            value["matches_expected"] = json!(scan.matches_expected());
            print_json(&value)
        }
    }
}

fn run_bench(g: &Global, suite: &Suite) -> walker_routing::Result<()> {
    let options = |repetitions| BenchOptions {
        repetitions,
        seed: g.seed,
        parallel: !g.no_parallel,
    };
    let algs = |a: &Option<Vec<Algorithm>>| a.clone().unwrap_or_else(|| Algorithm::ALL.to_vec());
    match suite {
        Suite::Time { algs: a, repetitions } => {
            let params: ConstellationParams = g.spec.parse()?;
            let c = Constellation::new(params);
            let pairs = sampler(g, 10_000).pairs(&params)?;
            let records = bench_time(&c, &pairs, &algs(a), options(*repetitions))?;
            let summary = json!({
                "constellation": params.to_string(),
                "pairs": pairs.len(),
                "elapsed_ns": column_stats(&records, |r| r.elapsed_ns.map(|e| e as f64)),
                "speedup_over_dijkstra": mean_speedups(&records, Algorithm::Dijkstra),
            });
            emit(g, &records, &summary)
        }
        Suite::Length { algs: a } => {
            let params: ConstellationParams = g.spec.parse()?;
            let c = Constellation::new(params);
            let pairs = sampler(g, 10_000).pairs(&params)?;
            let records = bench_length(&c, &pairs, &algs(a), options(1))?;
            let summary = json!({
                "constellation": params.to_string(),
                "pairs": pairs.len(),
                "relative_diff": column_stats(&records, |r| r.relative_diff),
            });
            emit(g, &records, &summary)
        }
        Suite::Scalability {
            algs: a,
            presets,
            repetitions,
        } => {
            let specs = match presets {
                Some(list) => list.iter().map(|s| s.parse()).collect::<Result<Vec<_>, _>>()?,
                None => SCALABILITY_PRESETS
                    .iter()
                    .map(|s| s.parse())
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let sample = if g.all_pairs {
                return Err(Error::InvalidParams("scalability runs on sampled pairs only".into()));
            } else {
                g.sample.unwrap_or(1_000)
            };
            let records = bench_scalability(&specs, &algs(a), sample, options(*repetitions))?;
            let summary = serde_json::to_value(&records).expect("records serialize");
            emit(g, &records, &summary)
        }
    }
}

fn sampler(g: &Global, default_count: usize) -> PairSampler {
    if g.all_pairs {
        PairSampler::AllPairs
    } else {
        PairSampler::Random {
            count: g.sample.unwrap_or(default_count),
            seed: g.seed,
        }
    }
}

/// CSV goes to `--output` when given. Stdout gets the JSON summary with
/// `--json`, otherwise the CSV unless it already went to a file.
fn emit<T: serde::Serialize>(g: &Global, records: &[T], summary: &Value) -> walker_routing::Result<()> {
    if let Some(path) = &g.output {
        write_csv(File::create(path)?, records)?;
    }
    if g.json {
        print_json(summary)
    } else if g.output.is_none() {
        write_csv(io::stdout().lock(), records)
    } else {
        Ok(())
    }
}

fn parse_sat(params: &ConstellationParams, text: &str) -> walker_routing::Result<SatId> {
    let sat: SatId = text.parse()?;
    params.check(sat)?;
    Ok(sat)
}

fn print_json(value: &Value) -> walker_routing::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

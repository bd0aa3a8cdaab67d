//! Minimum-hop routing for Walker Delta satellite constellations.
//!
//! - [`constellation`]: orbital model, coordinates and the 4-neighbor ISL topology.
//! - [`hopcount`]: closed-form minimum hop count and a breadth-first oracle.
//! - [`exact`]: Dijkstra variants and DAG sweeps over the minimum-hop rectangle.
//! - [`heuristic`]: CoinFlipRoute and DisCoRoute.
//! - [`geometry`]: hop-length formulas and the inter-plane extrema scan.
//! - [`bench`]: benchmark suites and CSV output.

pub mod bench;
pub mod constellation;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod heuristic;
pub mod hopcount;
pub mod rectangle;
pub mod route;

pub use constellation::{Constellation, ConstellationParams, SatId};
pub use error::{Error, Result};
pub use hopcount::{min_hop_count, HopCountResult};
pub use route::Route;

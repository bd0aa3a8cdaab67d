//! ISL hop lengths.
//!
//! In-plane links are sides of a regular `Q`-gon inscribed in the orbit, so
//! they all have length `2r·sin(π/Q)`. With zero phase offset, horizontal
//! neighbors share a latitude and an inter-plane link is a side of a regular
//! `P`-gon on the parallel at that latitude, `2r·cos φ·sin(π/P)`. For non-zero
//! offsets there is no closed form; [`scan_horizontal_extrema`] locates the
//! longest and shortest inter-plane links numerically.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::constellation::{is_ascending, to_ecef, to_geodetic, ConstellationParams, OrbitalState};
use crate::error::{Error, Result};

pub const DEFAULT_SCAN_RESOLUTION: usize = 1_000_000;

pub fn intra_plane_hop_length(params: &ConstellationParams) -> f64 {
    2.0 * params.radius() * (PI / params.sats_per_plane() as f64).sin()
}

/// Inter-plane hop length at latitude `latitude`; only defined for `F = 0`.
pub fn inter_plane_hop_length_zero_offset(params: &ConstellationParams, latitude: f64) -> Result<f64> {
    if params.phasing() != 0 {
        return Err(Error::NonZeroPhaseOffset(params.phasing()));
    }
    Ok(2.0 * params.radius() * latitude.cos() * (PI / params.planes() as f64).sin())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

/// Inter-plane hop where the link length is extremal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopExtremum {
    pub kind: ExtremumKind,
    /// Argument of latitude of the western satellite.
    pub u1: f64,
    /// Argument of latitude of its eastern neighbor, `u1 + Δf`.
    pub u2: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremaScan {
    pub max: HopExtremum,
    pub min: HopExtremum,
    /// Grid step of the scan in radians.
    pub step: f64,
    /// Expected location of the maximum, `-Δf/2` (mod π).
    pub expected_max_u1: f64,
    /// Expected location of the minimum, `π/2 - Δf/2` (mod π).
    pub expected_min_u1: f64,
    /// Distance of the found maximum from its expected location, modulo π.
    pub max_deviation: f64,
    pub min_deviation: f64,
}

impl ExtremaScan {
    /// Both extrema within one grid step of the expected phase angles.
    pub fn matches_expected(&self) -> bool {
        self.max_deviation <= self.step && self.min_deviation <= self.step
    }
}

/// Distance of `x` from the nearest multiple of π.
fn deviation_mod_pi(x: f64) -> f64 {
    let r = x.rem_euclid(PI);
    r.min(PI - r)
}

/// Length of the link between a satellite at argument of latitude `u` on the
/// plane with RAAN 0 and its right neighbor.
fn horizontal_link_length(params: &ConstellationParams, u: f64) -> f64 {
    let state = |raan, u: f64| OrbitalState {
        initial_raan: raan,
        arg_of_latitude: u,
        ascending: is_ascending(u),
    };
    let a = to_ecef(&to_geodetic(params, &state(0.0, u), 0.0));
    let b = to_ecef(&to_geodetic(
        params,
        &state(params.raan_spacing(), u + params.phase_offset()),
        0.0,
    ));
    a.distance(&b)
}

/// Sweeps `u` over `[-π, π[` in `resolution` steps and returns the longest and
/// shortest inter-plane link.
pub fn scan_horizontal_extrema(params: &ConstellationParams, resolution: usize) -> ExtremaScan {
    assert!(resolution >= 1, "resolution must be positive");
    let step = TAU / resolution as f64;
    let sample = |k: usize| {
        let u = -PI + k as f64 * step;
        (horizontal_link_length(params, u), k)
    };
    let pick = |a: (f64, usize), b: (f64, usize), better: fn(f64, f64) -> bool| {
        if better(b.0, a.0) || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    let (max, min) = (0..resolution)
        .into_par_iter()
        .map(|k| {
            let s = sample(k);
            (s, s)
        })
        .reduce(
            || ((f64::NEG_INFINITY, usize::MAX), (f64::INFINITY, usize::MAX)),
            |(max_a, min_a), (max_b, min_b)| (pick(max_a, max_b, |x, y| x > y), pick(min_a, min_b, |x, y| x < y)),
        );

    let offset = params.phase_offset();
    let extremum = |kind, (distance, k): (f64, usize)| {
        let u1 = -PI + k as f64 * step;
        HopExtremum {
            kind,
            u1,
            u2: u1 + offset,
            distance,
        }
    };
    let max = extremum(ExtremumKind::Max, max);
    let min = extremum(ExtremumKind::Min, min);
    let expected_max_u1 = -offset / 2.0;
    let expected_min_u1 = FRAC_PI_2 - offset / 2.0;
    ExtremaScan {
        max,
        min,
        step,
        expected_max_u1,
        expected_min_u1,
        max_deviation: deviation_mod_pi(max.u1 - expected_max_u1),
        min_deviation: deviation_mod_pi(min.u1 - expected_min_u1),
    }
}

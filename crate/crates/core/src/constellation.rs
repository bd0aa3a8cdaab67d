//! Walker Delta constellation model.
//!
//! A constellation `α:PQ/P/F` places `P` circular orbital planes, evenly spaced
//! in right ascension, each holding `Q` evenly spaced satellites. Satellite
//! `(o, i)` sits on plane `o` at argument of latitude `o·Δf + i·ΔΦ`. Positions
//! are derived on a spherical Earth; every satellite links to its in-plane
//! successor and predecessor and to the neighbors in the left and right plane.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// WGS84 semi-major axis, used as the radius of a spherical Earth.
pub const EARTH_RADIUS_KM: f64 = 6378.137;

/// WGS84 angular speed of Earth's rotation.
pub const EARTH_ROTATION_RAD_S: f64 = 7.292115e-5;

/// Wraps an angle into `[-π, π[` using a Euclidean (non-negative) modulo.
pub fn normalize(x: f64) -> f64 {
    let mut r = (x + PI).rem_euclid(TAU);
    // rem_euclid may round up to exactly TAU for tiny negative inputs.
    if r >= TAU {
        r = 0.0;
    }
    r - PI
}

/// Wraps an angle into `[0, 2π[`.
pub(crate) fn wrap_positive(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Walker Delta descriptor `α:PQ/P/F` at altitude `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstellationParams {
    inclination: f64,
    planes: u32,
    sats_per_plane: u32,
    phasing: u32,
    altitude_km: f64,
    earth_rotation: f64,
}

impl ConstellationParams {
    /// `inclination` is in radians.
    pub fn new(inclination: f64, planes: u32, sats_per_plane: u32, phasing: u32, altitude_km: f64) -> Result<Self> {
        if planes == 0 || sats_per_plane == 0 {
            return Err(Error::InvalidParams(format!(
                "need at least one plane and one satellite per plane, got P = {planes}, Q = {sats_per_plane}"
            )));
        }
        if phasing >= planes {
            return Err(Error::InvalidParams(format!(
                "phasing factor F = {phasing} must be below P = {planes}"
            )));
        }
        if !inclination.is_finite() || !(0.0..=PI).contains(&inclination) {
            return Err(Error::InvalidParams(format!(
                "inclination {inclination} rad is outside [0, π]"
            )));
        }
        if !altitude_km.is_finite() || altitude_km <= -EARTH_RADIUS_KM {
            return Err(Error::InvalidParams(format!(
                "altitude {altitude_km} km gives a non-positive orbit radius"
            )));
        }
        Ok(Self {
            inclination,
            planes,
            sats_per_plane,
            phasing,
            altitude_km,
            earth_rotation: EARTH_ROTATION_RAD_S,
        })
    }

    /// Same as [`ConstellationParams::new`] with the inclination in degrees.
    pub fn from_degrees(
        inclination_deg: f64,
        planes: u32,
        sats_per_plane: u32,
        phasing: u32,
        altitude_km: f64,
    ) -> Result<Self> {
        Self::new(
            inclination_deg.to_radians(),
            planes,
            sats_per_plane,
            phasing,
            altitude_km,
        )
    }

    pub fn with_earth_rotation(mut self, rad_per_s: f64) -> Self {
        self.earth_rotation = rad_per_s;
        self
    }

    /// The first Starlink shell, `53.0:1584/72/39@550`.
    pub fn starlink() -> Self {
        Self::from_degrees(53.0, 72, 22, 39, 550.0).expect("valid preset")
    }

    pub fn inclination(&self) -> f64 {
        self.inclination
    }

    pub fn planes(&self) -> u32 {
        self.planes
    }

    pub fn sats_per_plane(&self) -> u32 {
        self.sats_per_plane
    }

    pub fn phasing(&self) -> u32 {
        self.phasing
    }

    pub fn altitude_km(&self) -> f64 {
        self.altitude_km
    }

    pub fn earth_rotation(&self) -> f64 {
        self.earth_rotation
    }

    pub fn total_sats(&self) -> usize {
        self.planes as usize * self.sats_per_plane as usize
    }

    /// Orbit radius measured from the Earth's center.
    pub fn radius(&self) -> f64 {
        EARTH_RADIUS_KM + self.altitude_km
    }

    /// RAAN difference between adjacent planes, `ΔΩ = 2π/P`.
    pub fn raan_spacing(&self) -> f64 {
        TAU / self.planes as f64
    }

    /// Argument-of-latitude difference between in-plane neighbors, `ΔΦ = 2π/Q`.
    pub fn phase_spacing(&self) -> f64 {
        TAU / self.sats_per_plane as f64
    }

    /// Argument-of-latitude difference between horizontal neighbors, `Δf = 2πF/(PQ)`.
    pub fn phase_offset(&self) -> f64 {
        TAU * self.phasing as f64 / (self.planes as f64 * self.sats_per_plane as f64)
    }

    pub fn contains(&self, sat: SatId) -> bool {
        sat.plane < self.planes && sat.index < self.sats_per_plane
    }

    pub fn check(&self, sat: SatId) -> Result<()> {
        if self.contains(sat) {
            Ok(())
        } else {
            Err(Error::SatOutOfRange {
                sat,
                planes: self.planes,
                per_plane: self.sats_per_plane,
            })
        }
    }

    /// Dense index `o·Q + i`.
    pub fn dense_index(&self, sat: SatId) -> usize {
        sat.plane as usize * self.sats_per_plane as usize + sat.index as usize
    }

    pub fn sat_at(&self, dense: usize) -> SatId {
        let q = self.sats_per_plane as usize;
        SatId::new((dense / q) as u32, (dense % q) as u32)
    }

    pub fn satellites(&self) -> impl Iterator<Item = SatId> + '_ {
        (0..self.total_sats()).map(move |d| self.sat_at(d))
    }
}

impl fmt::Display for ConstellationParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Round away the degree/radian conversion noise; Debug keeps the ".0".
        let inclination_deg = (self.inclination.to_degrees() * 1e9).round() / 1e9;
        write!(
            f,
            "{:?}:{}/{}/{}@{}",
            inclination_deg,
            self.total_sats(),
            self.planes,
            self.phasing,
            self.altitude_km
        )
    }
}

impl FromStr for ConstellationParams {
    type Err = Error;

    /// Parses `<inclination_deg>:<PQ>/<P>/<F>@<altitude_km>`, e.g. `53.0:1584/72/39@550`.
    fn from_str(s: &str) -> Result<Self> {
        let err = |position: usize, message: String| Error::Parse { position, message };

        let colon = s
            .find(':')
            .ok_or_else(|| err(s.len(), "expected ':' after the inclination".into()))?;
        let at = s
            .rfind('@')
            .ok_or_else(|| err(s.len(), "expected '@<altitude_km>'".into()))?;
        if at < colon {
            return Err(err(at, "'@' must follow the PQ/P/F block".into()));
        }

        let inclination_deg: f64 = s[..colon]
            .trim()
            .parse()
            .map_err(|_| err(0, format!("bad inclination {:?}", &s[..colon])))?;

        let mut fields = [0u32; 3];
        let mut start = colon + 1;
        let block = &s[colon + 1..at];
        let parts: Vec<&str> = block.split('/').collect();
        if parts.len() != 3 {
            return Err(err(colon + 1, format!("expected PQ/P/F, got {block:?}")));
        }
        for (slot, part) in fields.iter_mut().zip(&parts) {
            *slot = part
                .trim()
                .parse()
                .map_err(|_| err(start, format!("bad integer {part:?}")))?;
            start += part.len() + 1;
        }
        let [total, planes, phasing] = fields;

        let altitude_km: f64 = s[at + 1..]
            .trim()
            .parse()
            .map_err(|_| err(at + 1, format!("bad altitude {:?}", &s[at + 1..])))?;

        let p_pos = colon + 1 + parts[0].len() + 1;
        if planes == 0 {
            return Err(err(p_pos, "P must be positive".into()));
        }
        if total == 0 || total % planes != 0 {
            return Err(err(
                colon + 1,
                format!("PQ = {total} is not a positive multiple of P = {planes}"),
            ));
        }
        if phasing >= planes {
            return Err(err(
                p_pos + parts[1].len() + 1,
                format!("F = {phasing} must be below P = {planes}"),
            ));
        }
        Self::from_degrees(inclination_deg, planes, total / planes, phasing, altitude_km)
            .map_err(|e| err(0, e.to_string()))
    }
}

/// Satellite `(o, i)`: the `i`-th satellite of orbital plane `o`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SatId {
    pub plane: u32,
    pub index: u32,
}

impl SatId {
    pub const fn new(plane: u32, index: u32) -> Self {
        Self { plane, index }
    }
}

impl fmt::Display for SatId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.plane, self.index)
    }
}

impl FromStr for SatId {
    type Err = Error;

    /// Parses `o,i`.
    fn from_str(s: &str) -> Result<Self> {
        let (o, i) = s.split_once(',').ok_or_else(|| Error::Parse {
            position: 0,
            message: format!("expected '<plane>,<index>', got {s:?}"),
        })?;
        let parse = |part: &str, position| {
            part.trim().parse::<u32>().map_err(|_| Error::Parse {
                position,
                message: format!("bad satellite coordinate {part:?}"),
            })
        };
        Ok(SatId::new(parse(o, 0)?, parse(i, o.len() + 1)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitalState {
    /// RAAN at epoch, in `[-π, π[`.
    pub initial_raan: f64,
    /// Argument of latitude, in `[-π, π[`.
    pub arg_of_latitude: f64,
    pub ascending: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodeticCoord {
    pub latitude: f64,
    pub longitude: f64,
    pub height_km: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EcefCoord {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl EcefCoord {
    pub fn distance(&self, other: &EcefCoord) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Ascending means flying north-east, `u ∈ [-π/2, π/2]` with both ends closed.
pub fn is_ascending(arg_of_latitude: f64) -> bool {
    (-FRAC_PI_2..=FRAC_PI_2).contains(&arg_of_latitude)
}

pub fn orbital_state(params: &ConstellationParams, sat: SatId) -> Result<OrbitalState> {
    params.check(sat)?;
    let initial_raan = normalize(sat.plane as f64 * params.raan_spacing());
    let arg_of_latitude =
        normalize(sat.plane as f64 * params.phase_offset() + sat.index as f64 * params.phase_spacing());
    Ok(OrbitalState {
        initial_raan,
        arg_of_latitude,
        ascending: is_ascending(arg_of_latitude),
    })
}

/// Sub-satellite point at `t` seconds after epoch.
pub fn to_geodetic(params: &ConstellationParams, state: &OrbitalState, t: f64) -> GeodeticCoord {
    let u = state.arg_of_latitude;
    let (sin_a, cos_a) = params.inclination.sin_cos();
    let (sin_u, cos_u) = u.sin_cos();
    let latitude = (sin_a * sin_u).clamp(-1.0, 1.0).asin();
    // atan2 picks up the extra half turn on the descending segment.
    let node_offset = (cos_a * sin_u).atan2(cos_u);
    let longitude = normalize(state.initial_raan - params.earth_rotation * t + node_offset);
    GeodeticCoord {
        latitude,
        longitude,
        height_km: params.altitude_km,
    }
}

/// Spherical-Earth conversion.
pub fn to_ecef(geo: &GeodeticCoord) -> EcefCoord {
    let r = EARTH_RADIUS_KM + geo.height_km;
    let (sin_phi, cos_phi) = geo.latitude.sin_cos();
    let (sin_lambda, cos_lambda) = geo.longitude.sin_cos();
    EcefCoord {
        x: r * cos_phi * cos_lambda,
        y: r * cos_phi * sin_lambda,
        z: r * sin_phi,
    }
}

pub fn position(params: &ConstellationParams, sat: SatId, t: f64) -> Result<EcefCoord> {
    let state = orbital_state(params, sat)?;
    Ok(to_ecef(&to_geodetic(params, &state, t)))
}

/// Straight-line distance between two satellites at time `t`.
pub fn isl_distance(params: &ConstellationParams, a: SatId, b: SatId, t: f64) -> Result<f64> {
    if a == b {
        params.check(a)?;
        return Ok(0.0);
    }
    Ok(position(params, a, t)?.distance(&position(params, b, t)?))
}

/// The four ISL partners of a satellite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Neighbors {
    pub successor: SatId,
    pub predecessor: SatId,
    pub left: SatId,
    pub right: SatId,
}

impl Neighbors {
    /// Fixed exploration order: successor, predecessor, left, right.
    pub fn as_array(&self) -> [SatId; 4] {
        [self.successor, self.predecessor, self.left, self.right]
    }
}

pub fn neighbors(params: &ConstellationParams, sat: SatId) -> Neighbors {
    let p = params.planes;
    let q = params.sats_per_plane as i64;
    let f = params.phasing as i64;
    let i = sat.index as i64;
    let wrap = |x: i64| x.rem_euclid(q) as u32;
    Neighbors {
        successor: SatId::new(sat.plane, wrap(i + 1)),
        predecessor: SatId::new(sat.plane, wrap(i - 1)),
        left: if sat.plane != 0 {
            SatId::new(sat.plane - 1, sat.index)
        } else {
            SatId::new(p - 1, wrap(i - f))
        },
        right: if sat.plane != p - 1 {
            SatId::new(sat.plane + 1, sat.index)
        } else {
            SatId::new(0, wrap(i + f))
        },
    }
}

/// A constellation with positions, latitudes and ISL adjacency tabulated at
/// one time snapshot. Routing queries run against this.
#[derive(Debug, Clone)]
pub struct Constellation {
    params: ConstellationParams,
    time: f64,
    positions: Vec<EcefCoord>,
    latitudes: Vec<f64>,
    ascending: Vec<bool>,
    adjacency: Vec<[u32; 4]>,
}

impl Constellation {
    /// Snapshot at epoch.
    pub fn new(params: ConstellationParams) -> Self {
        Self::at_time(params, 0.0)
    }

    pub fn at_time(params: ConstellationParams, time: f64) -> Self {
        let n = params.total_sats();
        let mut positions = Vec::with_capacity(n);
        let mut latitudes = Vec::with_capacity(n);
        let mut ascending = Vec::with_capacity(n);
        let mut adjacency = Vec::with_capacity(n);
        for sat in params.satellites() {
            let state = orbital_state(&params, sat).expect("enumerated satellite is in range");
            let geo = to_geodetic(&params, &state, time);
            positions.push(to_ecef(&geo));
            latitudes.push(geo.latitude);
            ascending.push(state.ascending);
            adjacency.push(neighbors(&params, sat).as_array().map(|s| params.dense_index(s) as u32));
        }
        Self {
            params,
            time,
            positions,
            latitudes,
            ascending,
            adjacency,
        }
    }

    pub fn params(&self) -> &ConstellationParams {
        &self.params
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn index(&self, sat: SatId) -> usize {
        self.params.dense_index(sat)
    }

    pub fn sat(&self, dense: usize) -> SatId {
        self.params.sat_at(dense)
    }

    pub fn position(&self, sat: SatId) -> EcefCoord {
        self.positions[self.index(sat)]
    }

    pub fn latitude(&self, sat: SatId) -> f64 {
        self.latitudes[self.index(sat)]
    }

    pub fn is_ascending(&self, sat: SatId) -> bool {
        self.ascending[self.index(sat)]
    }

    /// Dense neighbor indices in the order successor, predecessor, left, right.
    pub fn adjacent(&self, dense: usize) -> &[u32; 4] {
        &self.adjacency[dense]
    }

    pub fn distance(&self, a: SatId, b: SatId) -> f64 {
        self.distance_dense(self.index(a), self.index(b))
    }

    pub fn distance_dense(&self, a: usize, b: usize) -> f64 {
        self.positions[a].distance(&self.positions[b])
    }

    pub fn are_adjacent(&self, a: SatId, b: SatId) -> bool {
        let b = self.index(b) as u32;
        self.adjacency[self.index(a)].contains(&b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EPS: f64 = 1e-9;

    fn walker_60_50_5_2() -> ConstellationParams {
        ConstellationParams::from_degrees(60.0, 5, 10, 2, 550.0).unwrap()
    }

    #[test]
    fn normalize_wraps_into_half_open_interval() {
        assert_eq!(normalize(0.0), 0.0);
        assert!((normalize(3.0 * PI / 2.0) + FRAC_PI_2).abs() < EPS);
        assert_eq!(normalize(-PI), -PI);
        assert!((normalize(PI) + PI).abs() < EPS);
        for x in [-1e-18, -7.0 * PI, 5.0 * PI, TAU, -TAU + 1e-15] {
            let y = normalize(x);
            assert!((-PI..PI).contains(&y), "{x} -> {y}");
        }
    }

    #[test]
    fn orbital_state_examples() {
        let p = walker_60_50_5_2();
        let s = orbital_state(&p, SatId::new(0, 0)).unwrap();
        assert_eq!((s.initial_raan, s.arg_of_latitude, s.ascending), (0.0, 0.0, true));

        let s = orbital_state(&p, SatId::new(0, 8)).unwrap();
        assert!((s.arg_of_latitude - (-72f64).to_radians()).abs() < EPS);
        assert!(s.ascending);

        let s = orbital_state(&p, SatId::new(2, 6)).unwrap();
        assert!((s.initial_raan - 144f64.to_radians()).abs() < EPS);
        assert!((s.arg_of_latitude - (-115.2f64).to_radians()).abs() < EPS);
        assert!(!s.ascending);
    }

    #[test]
    fn orbital_state_rejects_out_of_range() {
        let p = walker_60_50_5_2();
        assert!(matches!(
            orbital_state(&p, SatId::new(5, 0)),
            Err(Error::SatOutOfRange { .. })
        ));
        assert!(orbital_state(&p, SatId::new(0, 10)).is_err());
    }

    #[test]
    fn ascending_interval_is_closed() {
        assert!(is_ascending(-FRAC_PI_2));
        assert!(is_ascending(FRAC_PI_2));
        assert!(!is_ascending(FRAC_PI_2 + 1e-12));
        assert!(!is_ascending(-PI));
    }

    #[test]
    fn geodetic_examples() {
        let p = ConstellationParams::from_degrees(53.0, 4, 4, 0, 550.0).unwrap();
        let state = |u: f64| OrbitalState {
            initial_raan: 0.0,
            arg_of_latitude: u,
            ascending: is_ascending(u),
        };
        let g = to_geodetic(&p, &state(0.0), 0.0);
        assert_eq!((g.latitude, g.longitude), (0.0, 0.0));

        let g = to_geodetic(&p, &state(FRAC_PI_2), 0.0);
        assert!((g.latitude - p.inclination()).abs() < EPS);
        assert!((g.longitude - FRAC_PI_2).abs() < EPS);

        let g = to_geodetic(&p, &state(PI), 0.0);
        assert!(g.latitude.abs() < EPS);
        assert!((g.longitude + PI).abs() < EPS);
        assert_eq!(g.height_km, 550.0);
    }

    #[test]
    fn geodetic_matches_arctangent_form_on_both_segments() {
        let p = ConstellationParams::from_degrees(53.0, 4, 4, 0, 550.0).unwrap();
        let alpha = p.inclination();
        for k in -40..40 {
            let u = k as f64 * 0.0785 + 0.01;
            if (u.abs() - FRAC_PI_2).abs() < 1e-6 || !(-PI..PI).contains(&u) {
                continue;
            }
            let half_turn = if is_ascending(u) { 0.0 } else { PI };
            let zeta = (alpha.cos() * u.tan()).atan() + half_turn;
            let state = OrbitalState {
                initial_raan: 0.3,
                arg_of_latitude: u,
                ascending: is_ascending(u),
            };
            let g = to_geodetic(&p, &state, 0.0);
            let expected = normalize(0.3 + zeta);
            let diff = normalize(g.longitude - expected);
            assert!(diff.abs() < 1e-12, "u = {u}: {} vs {expected}", g.longitude);
        }
    }

    #[test]
    fn ecef_examples() {
        let geo = |lat: f64, lon: f64, h| GeodeticCoord {
            latitude: lat.to_radians(),
            longitude: lon.to_radians(),
            height_km: h,
        };
        let e = to_ecef(&geo(0.0, 0.0, 550.0));
        assert!((e.x - 6928.137).abs() < EPS && e.y.abs() < EPS && e.z.abs() < EPS);
        let e = to_ecef(&geo(90.0, 37.0, 0.0));
        assert!(e.x.abs() < EPS && e.y.abs() < EPS && (e.z - EARTH_RADIUS_KM).abs() < EPS);
        let e = to_ecef(&geo(0.0, 90.0, 0.0));
        assert!(e.x.abs() < EPS && (e.y - EARTH_RADIUS_KM).abs() < EPS && e.z.abs() < EPS);
    }

    #[test]
    fn neighbor_examples() {
        let p = walker_60_50_5_2();
        let n = neighbors(&p, SatId::new(0, 0));
        assert_eq!(n.left, SatId::new(4, 8));
        assert_eq!(n.right, SatId::new(1, 0));
        assert_eq!(neighbors(&p, SatId::new(4, 0)).right, SatId::new(0, 2));
        assert_eq!(neighbors(&p, SatId::new(2, 9)).successor, SatId::new(2, 0));
        assert_eq!(neighbors(&p, SatId::new(2, 0)).predecessor, SatId::new(2, 9));
    }

    #[test]
    fn horizontal_neighbor_advances_phase_by_offset() {
        let p = ConstellationParams::starlink();
        for sat in p.satellites() {
            let u = orbital_state(&p, sat).unwrap().arg_of_latitude;
            let right = neighbors(&p, sat).right;
            let u_right = orbital_state(&p, right).unwrap().arg_of_latitude;
            assert!(normalize(u_right - u - p.phase_offset()).abs() < 1e-9);
        }
    }

    #[test]
    fn neighbor_relation_is_symmetric_with_four_distinct() {
        for (planes, q, f) in [(3, 3, 1), (5, 10, 2), (72, 22, 39), (4, 7, 3)] {
            let p = ConstellationParams::from_degrees(53.0, planes, q, f, 550.0).unwrap();
            for sat in p.satellites() {
                let n = neighbors(&p, sat);
                assert_eq!(neighbors(&p, n.successor).predecessor, sat);
                assert_eq!(neighbors(&p, n.predecessor).successor, sat);
                assert_eq!(neighbors(&p, n.left).right, sat);
                assert_eq!(neighbors(&p, n.right).left, sat);
                let mut all = n.as_array().to_vec();
                all.sort();
                all.dedup();
                assert_eq!(all.len(), 4, "{sat} in {p}");
            }
        }
    }

    #[test]
    fn starlink_intra_plane_distance() {
        let p = ConstellationParams::starlink();
        let d = isl_distance(&p, SatId::new(0, 0), SatId::new(0, 1), 0.0).unwrap();
        let expected = 2.0 * p.radius() * (PI / 22.0).sin();
        assert!((d - expected).abs() / expected < 1e-9);
        assert_eq!(isl_distance(&p, SatId::new(3, 3), SatId::new(3, 3), 0.0).unwrap(), 0.0);
    }

    #[test]
    fn distance_is_time_invariant() {
        let p = ConstellationParams::starlink();
        let (a, b) = (SatId::new(3, 4), SatId::new(40, 17));
        let d0 = isl_distance(&p, a, b, 0.0).unwrap();
        for t in [1.0, 600.0, 86_400.0, 1.0e6] {
            let dt = isl_distance(&p, a, b, t).unwrap();
            assert!((d0 - dt).abs() / d0 < 1e-9);
        }
    }

    #[test]
    fn positions_lie_on_orbit_sphere_below_inclination() {
        let p = ConstellationParams::from_degrees(70.0, 20, 15, 7, 1200.0).unwrap();
        for t in [0.0, 1234.5] {
            let c = Constellation::at_time(p, t);
            for sat in p.satellites() {
                let pos = c.position(sat);
                assert!((pos.norm() - p.radius()).abs() / p.radius() < 1e-9);
                assert!(c.latitude(sat).abs() <= p.inclination() + 1e-12);
            }
        }
    }

    #[test]
    fn parses_spec_strings() {
        let p: ConstellationParams = "53.0:1584/72/39@550".parse().unwrap();
        assert_eq!(p, ConstellationParams::starlink());
        assert_eq!(p.sats_per_plane(), 22);
        let back: ConstellationParams = p.to_string().parse().unwrap();
        assert_eq!(back.planes(), 72);
        assert_eq!(back.phasing(), 39);
    }

    #[test]
    fn rejects_bad_spec_strings() {
        let pos = |s: &str| match s.parse::<ConstellationParams>() {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("{s}: expected parse error, got {other:?}"),
        };
        assert_eq!(pos("53.0:1585/72/39@550"), 5);
        assert_eq!(pos("53.0:1584/72/72@550"), 13);
        assert_eq!(pos("53.0:1584/72@550"), 5);
        assert_eq!(pos("abc:1584/72/39@550"), 0);
        assert_eq!(pos("53.0:1584/x/39@550"), 10);
        assert_eq!(pos("53.0:1584/72/39@"), 16);
        assert_eq!(pos("53.0:1584/72/39"), 15);
        assert_eq!(pos("53.0"), 4);
    }

    #[test]
    fn sat_id_parsing() {
        assert_eq!("2,6".parse::<SatId>().unwrap(), SatId::new(2, 6));
        assert!("2;6".parse::<SatId>().is_err());
        assert!("2,-1".parse::<SatId>().is_err());
    }
}

//! The minimum-hop search region.
//!
//! For a hop-minimizing direction pair, every monotone route that takes the
//! horizontal hops in one direction and the vertical hops in the other has the
//! same length in hops. Those routes span a grid whose corners are the source
//! and the destination. Cells are computed arithmetically, so heuristics that
//! touch only a few cells never pay for the whole grid.

use crate::constellation::{ConstellationParams, SatId};
use crate::error::{Error, Result};
use crate::hopcount::{min_hop_count, DirectionCombo, Horizontal, Vertical};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RectangleGrid {
    pub origin: SatId,
    pub horizontal: Horizontal,
    pub vertical: Vertical,
    pub horizontal_hops: u32,
    pub vertical_hops: u32,
    planes: u32,
    per_plane: u32,
    phasing: u32,
}

impl RectangleGrid {
    /// Grid anchored at `origin` for `combo`, without checking minimality.
    pub fn new(params: &ConstellationParams, origin: SatId, combo: DirectionCombo) -> Self {
        Self {
            origin,
            horizontal: combo.horizontal,
            vertical: combo.vertical,
            horizontal_hops: combo.horizontal_hops,
            vertical_hops: combo.vertical_hops,
            planes: params.planes(),
            per_plane: params.sats_per_plane(),
            phasing: params.phasing(),
        }
    }

    /// Satellite `i` horizontal and `j` vertical hops away from the origin.
    pub fn cell(&self, i: u32, j: u32) -> SatId {
        debug_assert!(i <= self.horizontal_hops && j <= self.vertical_hops);
        let p = self.planes as i64;
        let q = self.per_plane as i64;
        let f = self.phasing as i64;
        let plane = self.origin.plane as i64;
        let (plane, seam_crossings) = match self.horizontal {
            Horizontal::East => {
                let o = plane + i as i64;
                (o.rem_euclid(p), o.div_euclid(p))
            }
            Horizontal::West => {
                let o = plane - i as i64;
                (o.rem_euclid(p), o.div_euclid(p))
            }
        };
        let vertical = match self.vertical {
            Vertical::North => j as i64,
            Vertical::South => -(j as i64),
        };
        let index = (self.origin.index as i64 + seam_crossings * f + vertical).rem_euclid(q);
        SatId::new(plane as u32, index as u32)
    }

    pub fn destination(&self) -> SatId {
        self.cell(self.horizontal_hops, self.vertical_hops)
    }

    pub fn width(&self) -> usize {
        self.horizontal_hops as usize + 1
    }

    pub fn height(&self) -> usize {
        self.vertical_hops as usize + 1
    }
}

/// Grid for a combo that must be one of the pair's minimizing combos.
pub fn build_rectangle(
    params: &ConstellationParams,
    src: SatId,
    dst: SatId,
    combo: DirectionCombo,
) -> Result<RectangleGrid> {
    params.check(src)?;
    params.check(dst)?;
    if !min_hop_count(params, src, dst).is_minimizing(&combo) {
        return Err(Error::NotMinimizing);
    }
    let grid = RectangleGrid::new(params, src, combo);
    debug_assert_eq!(grid.destination(), dst);
    Ok(grid)
}

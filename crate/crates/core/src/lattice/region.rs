use serde::Serialize;

use crate::arith::{DerivedInvariants, SurgeryParams};
use crate::error::{Error, Result};

use super::{Lattice, Point};

/// The union of the column `{anchor + (0, s) : 0 <= s <= 2g}` translated by
/// `n (1, -k2) + n' (0, p)` over all integers `n, n'`. Each value of `n'`
/// selects one region translate; `n` walks along its staircase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonZeroRegion {
    pub params: SurgeryParams,
    pub k2: i64,
    pub genus: i64,
    pub anchor: Point,
}

/// Position of a lattice point inside the region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RegionCell {
    /// Staircase step `n`: the point lies in column `anchor.0 + n`.
    pub step: i64,
    /// Vertical period `n'` identifying the region translate.
    pub translate: i64,
    /// Height `s` within the column; the box carries `α_s`.
    pub height: i64,
}

impl NonZeroRegion {
    pub(super) fn new(lattice: &Lattice) -> Result<Self> {
        let params = lattice.params();
        let inv = lattice.invariants();
        let genus = lattice.genus();
        Ok(NonZeroRegion {
            params,
            k2: inv.k2,
            genus,
            anchor: region_anchor(params, inv, genus)?,
        })
    }

    pub fn locate(&self, (i, j): Point) -> Option<RegionCell> {
        let p = self.params.p();
        let step = i - self.anchor.0;
        let t = j - self.anchor.1 + self.k2 * step;
        let height = t.rem_euclid(p);
        (height <= 2 * self.genus).then(|| RegionCell {
            step,
            translate: t.div_euclid(p),
            height,
        })
    }

    pub fn contains(&self, point: Point) -> bool {
        self.locate(point).is_some()
    }
}

/// The point `(i*, 0)` with `0 <= i* < p` and `k2 (i* - c) ≡ -g (mod p)`,
/// which carries `α_0 = a_{-g}`.
pub fn region_anchor(params: SurgeryParams, inv: &DerivedInvariants, genus: i64) -> Result<Point> {
    if genus == 0 {
        return Err(Error::NoRegion {
            p: params.p(),
            k: params.k(),
        });
    }
    // k2⁻¹ ≡ e k because k k2 ≡ e and e² = 1.
    let p = params.p();
    let i_star = (inv.c - genus * inv.e * params.k()).rem_euclid(p);
    Ok((i_star, 0))
}

pub fn region_contains(region: &NonZeroRegion, point: Point) -> bool {
    region.contains(point)
}

//! The A-matrix `A_{i,j} = ā_{k2 (i + j e k - c)}` and its horizontal
//! difference `dA_{i,j} = A_{i,j} - A_{i-1,j}` on the integer lattice,
//! together with non-zero regions, non-zero curves and renderers.

mod curves;
mod lemma;
mod region;
mod render;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::{mul_mod, reduce_mod, DerivedInvariants, SignedInterval, SurgeryParams};
use crate::error::{Error, Result};
use crate::poly::{generate, PeriodicCoefficients, SymmetricLaurentPolynomial};

pub use curves::{
    check_regions, next_arrow, trace_curves, Arrow, CurveDefect, NonZeroCurve, RegionCheck,
};
pub use lemma::{check_lemma, LemmaReport};
pub use region::{region_anchor, region_contains, NonZeroRegion, RegionCell};
pub use render::{render, RenderFormat};

/// A lattice point `(i, j)`.
pub type Point = (i64, i64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MatrixKind {
    A,
    #[serde(rename = "dA")]
    DA,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::A => "A",
            MatrixKind::DA => "dA",
        })
    }
}

impl FromStr for MatrixKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "A" | "a" => Ok(MatrixKind::A),
            "dA" | "da" | "DA" => Ok(MatrixKind::DA),
            other => Err(format!("unknown matrix kind `{other}` (expected A or dA)")),
        }
    }
}

/// Inclusive rectangle `i0..=i1` by `j0..=j1`. Empty when either range is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Window {
    pub i0: i64,
    pub i1: i64,
    pub j0: i64,
    pub j1: i64,
}

impl Window {
    pub fn new(i0: i64, i1: i64, j0: i64, j1: i64) -> Self {
        Window { i0, i1, j0, j1 }
    }

    pub fn is_empty(&self) -> bool {
        self.i1 < self.i0 || self.j1 < self.j0
    }

    pub fn width(&self) -> usize {
        (self.i1 - self.i0 + 1).max(0) as usize
    }

    pub fn height(&self) -> usize {
        (self.j1 - self.j0 + 1).max(0) as usize
    }

    pub fn contains(&self, (i, j): Point) -> bool {
        self.i0 <= i && i <= self.i1 && self.j0 <= j && j <= self.j1
    }

    pub fn padded(&self, di: i64, dj: i64) -> Window {
        Window::new(self.i0 - di, self.i1 + di, self.j0 - dj, self.j1 + dj)
    }

    /// Points in row-major order, `j` ascending then `i` ascending.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (self.j0..=self.j1).flat_map(move |j| (self.i0..=self.i1).map(move |i| (i, j)))
    }
}

/// `A_{i,j}` for the polynomial `poly` generated by `params`.
pub fn a_entry(
    params: SurgeryParams,
    inv: &DerivedInvariants,
    poly: &SymmetricLaurentPolynomial,
    i: i64,
    j: i64,
) -> i64 {
    let p = params.p();
    let shift = i + mul_mod(j, inv.e * params.k(), p) - inv.c.rem_euclid(p);
    poly.coefficient(reduce_mod(mul_mod(inv.k2, shift, p), p))
}

/// `dA_{i,j}` by the three-case split on `r = [q2 i + k2 j]_p`:
/// `+1` for `r ∈ I_{-k2}`, `-1` for `r ∈ I_{k2}`, `0` otherwise.
pub fn da_entry(params: SurgeryParams, inv: &DerivedInvariants, i: i64, j: i64) -> i64 {
    let p = params.p();
    let r = reduce_mod(mul_mod(inv.q2, i, p) + mul_mod(inv.k2, j, p), p);
    let k2 = inv.k2;
    if SignedInterval::new(-k2).expect("k2 > 0").contains(r) {
        1
    } else if SignedInterval::new(k2).expect("k2 > 0").contains(r) {
        -1
    } else {
        0
    }
}

/// Everything needed to evaluate A and dA for one parameter.
#[derive(Debug, Clone)]
pub struct Lattice {
    params: SurgeryParams,
    inv: DerivedInvariants,
    periodic: PeriodicCoefficients,
}

impl Lattice {
    pub fn new(params: SurgeryParams) -> Result<Self> {
        let poly = generate(params)?;
        Ok(Lattice {
            params,
            inv: params.invariants(),
            periodic: PeriodicCoefficients::new(poly, params.p()),
        })
    }

    pub fn params(&self) -> SurgeryParams {
        self.params
    }

    pub fn invariants(&self) -> &DerivedInvariants {
        &self.inv
    }

    pub fn polynomial(&self) -> &SymmetricLaurentPolynomial {
        self.periodic.base()
    }

    pub fn genus(&self) -> i64 {
        self.polynomial().genus() as i64
    }

    #[inline]
    pub fn a(&self, i: i64, j: i64) -> i64 {
        a_entry(self.params, &self.inv, self.periodic.base(), i, j)
    }

    #[inline]
    pub fn da(&self, i: i64, j: i64) -> i64 {
        da_entry(self.params, &self.inv, i, j)
    }

    /// `dA_{i,j}` from the case split, cross-checked against
    /// `A_{i,j} - A_{i-1,j}`.
    pub fn da_checked(&self, i: i64, j: i64) -> Result<i64> {
        let split = self.da(i, j);
        let difference = self.a(i, j) - self.a(i - 1, j);
        if split != difference {
            return Err(Error::Integrity {
                p: self.params.p(),
                k: self.params.k(),
                index: i,
                detail: format!(
                    "dA({i},{j}) = {split} by cases but A({i},{j}) - A({},{j}) = {difference}",
                    i - 1
                ),
            });
        }
        Ok(split)
    }

    pub fn view(&self, kind: MatrixKind, window: Window) -> Result<LatticeView> {
        LatticeView::build(self, kind, window)
    }

    pub fn region(&self) -> Result<NonZeroRegion> {
        NonZeroRegion::new(self)
    }

    /// Default window: `i ∈ [-1, k2 + 1]` and `j` within one period of the
    /// region anchor.
    pub fn fundamental_window(&self) -> Window {
        let anchor_j = 0;
        let p = self.params.p();
        Window::new(-1, self.inv.k2 + 1, anchor_j - p, anchor_j + p)
    }
}

/// A rectangular snapshot of A or dA entries. `rows[r][c]` holds the entry
/// at `(i0 + c, j0 + r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeView {
    pub params: SurgeryParams,
    pub inv: DerivedInvariants,
    pub kind: MatrixKind,
    pub window: Window,
    pub rows: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct ViewJson<'a> {
    kind: MatrixKind,
    i0: i64,
    j0: i64,
    rows: &'a [Vec<i64>],
}

impl LatticeView {
    fn build(lattice: &Lattice, kind: MatrixKind, window: Window) -> Result<Self> {
        let flat = lattice.polynomial().is_flat();
        let mut rows = Vec::with_capacity(window.height());
        let j_last = if window.is_empty() {
            window.j0 - 1
        } else {
            window.j1
        };
        for j in window.j0..=j_last {
            let mut row = Vec::with_capacity(window.width());
            for i in window.i0..=window.i1 {
                let value = match kind {
                    MatrixKind::A => lattice.a(i, j),
                    MatrixKind::DA => lattice.da_checked(i, j)?,
                };
                if (kind == MatrixKind::DA || flat) && value.abs() > 1 {
                    return Err(Error::Integrity {
                        p: lattice.params.p(),
                        k: lattice.params.k(),
                        index: i,
                        detail: format!("{kind}({i},{j}) = {value} is outside {{-1, 0, 1}}"),
                    });
                }
                row.push(value);
            }
            rows.push(row);
        }
        Ok(LatticeView {
            params: lattice.params,
            inv: lattice.inv,
            kind,
            window,
            rows,
        })
    }

    pub fn get(&self, (i, j): Point) -> Option<i64> {
        self.window
            .contains((i, j))
            .then(|| self.rows[(j - self.window.j0) as usize][(i - self.window.i0) as usize])
    }

    /// `{"kind":"dA","i0":…,"j0":…,"rows":[[…]]}` with rows by increasing `j`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ViewJson {
            kind: self.kind,
            i0: self.window.i0,
            j0: self.window.j0,
            rows: &self.rows,
        })
        .expect("view serializes")
    }
}

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{Lattice, Point, Window};

/// A horizontal arrow on a nonzero entry of A, pointing in the `+i`
/// direction when `sign = 1` and `-i` when `sign = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Arrow {
    pub i: i64,
    pub j: i64,
    pub sign: i64,
}

/// One connected component of arrows, listed with `j` non-increasing (ties
/// broken by increasing `i`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonZeroCurve {
    pub id: usize,
    /// The region translate `n'` shared by all arrows, or `None` if the
    /// component touches several translates or leaves the region.
    pub translate: Option<i64>,
    pub arrows: Vec<Arrow>,
}

struct DisjointSets(Vec<usize>);

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// The arrow whose tail meets the tip of the arrow at `(i, j)`.
///
/// The tip of an arrow with sign `σ` sits at `x = i + σ/2`. If the next cell
/// in that direction carries the same sign the curve continues
/// horizontally. Otherwise it drops straight down through empty rows until
/// it meets an arrow starting at `x`: either `(i + σ, j')` with sign `σ` or
/// `(i, j')` with sign `-σ`. Returns `None` at a zero entry, when the drop is
/// blocked by an arrow ending at `x`, or after a full period without a
/// match.
pub fn next_arrow(lattice: &Lattice, (i, j): Point) -> Option<Arrow> {
    let sign = lattice.a(i, j);
    if sign == 0 {
        return None;
    }
    if lattice.a(i + sign, j) == sign {
        return Some(Arrow {
            i: i + sign,
            j,
            sign,
        });
    }
    for below in (j - lattice.params().p()..j).rev() {
        let ahead = lattice.a(i + sign, below);
        let under = lattice.a(i, below);
        if ahead == sign {
            return Some(Arrow {
                i: i + sign,
                j: below,
                sign,
            });
        }
        if under == -sign {
            return Some(Arrow {
                i,
                j: below,
                sign: -sign,
            });
        }
        if ahead != 0 || under != 0 {
            return None;
        }
    }
    None
}

/// Places an arrow on every nonzero A entry in `window` and joins each
/// arrow to its successor (see [`next_arrow`]) when both lie in the window.
///
/// Each component is listed in the order the curve runs through it, so `j`
/// never increases along `arrows`. Components come back ordered by region
/// translate, then from the top.
pub fn trace_curves(lattice: &Lattice, window: Window) -> Vec<NonZeroCurve> {
    let Ok(region) = lattice.region() else {
        return Vec::new();
    };
    if window.is_empty() {
        return Vec::new();
    }

    let arrows: Vec<Arrow> = window
        .points()
        .filter_map(|(i, j)| {
            let sign = lattice.a(i, j);
            (sign != 0).then_some(Arrow { i, j, sign })
        })
        .collect();
    let index: HashMap<Point, usize> = arrows
        .iter()
        .enumerate()
        .map(|(n, a)| ((a.i, a.j), n))
        .collect();

    let mut successor = vec![None; arrows.len()];
    let mut has_predecessor = vec![false; arrows.len()];
    let mut sets = DisjointSets::new(arrows.len());
    for (n, arrow) in arrows.iter().enumerate() {
        let Some(next) = next_arrow(lattice, (arrow.i, arrow.j)) else {
            continue;
        };
        if let Some(&m) = index.get(&(next.i, next.j)) {
            successor[n] = Some(m);
            has_predecessor[m] = true;
            sets.union(n, m);
        }
    }

    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for n in 0..arrows.len() {
        groups.entry(sets.find(n)).or_default().push(n);
    }
    let mut curves: Vec<NonZeroCurve> = groups
        .into_values()
        .map(|members| {
            let translates: BTreeSet<Option<i64>> = members
                .iter()
                .map(|&n| {
                    region
                        .locate((arrows[n].i, arrows[n].j))
                        .map(|c| c.translate)
                })
                .collect();
            let translate = match translates.into_iter().collect::<Vec<_>>()[..] {
                [single] => single,
                _ => None,
            };
            let start = members
                .iter()
                .copied()
                .find(|&n| !has_predecessor[n])
                .unwrap_or(members[0]);
            let mut ordered = Vec::with_capacity(members.len());
            let mut visited = BTreeSet::new();
            let mut cursor = Some(start);
            while let Some(n) = cursor.filter(|n| visited.insert(*n)) {
                ordered.push(arrows[n]);
                cursor = successor[n];
            }
            NonZeroCurve {
                id: 0,
                translate,
                arrows: ordered,
            }
        })
        .collect();
    curves.sort_by_key(|c| {
        (
            c.translate.is_none(),
            c.translate,
            -c.arrows[0].j,
            c.arrows[0].i,
        )
    });
    for (id, curve) in curves.iter_mut().enumerate() {
        curve.id = id;
    }
    curves
}

/// Why the curves of a region failed to form properly embedded lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveDefect {
    /// An arrow with no successor.
    DeadEnd(Point),
    /// A successor outside the non-zero region.
    LeavesRegion(Point),
    /// A successor in a different region translate.
    CrossesTranslate(Point),
    /// Two arrows share a successor.
    Merge(Point),
    /// A curve closes up into a loop.
    ClosedLoop(Point),
}

/// Outcome of checking the non-zero curves against the non-zero region.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RegionCheck {
    /// Nonzero A entries in the window that lie outside every translate.
    pub outside: Vec<Point>,
    /// Number of curve components in each region translate. Every translate
    /// is a vertical shift of every other, so one count covers them all.
    pub components_per_translate: usize,
    pub defect: Option<CurveDefect>,
}

impl RegionCheck {
    pub fn contained(&self) -> bool {
        self.outside.is_empty()
    }

    pub fn single_curves(&self) -> bool {
        self.defect.is_none() && self.components_per_translate == 1
    }
}

/// Checks that every nonzero entry in `window` lies in the non-zero region
/// and counts the curve components of a region translate.
///
/// The count is exact for the infinite translate, not just its part in the
/// window. Every arrow of the translate is the shift of an arrow of the
/// anchor column by a multiple of `v = (1, -k2)`. Following successors
/// induces a permutation of the column arrows, and each cycle of it
/// advances by some net number `N` of shifts. That cycle accounts for `|N|`
/// distinct components.
pub fn check_regions(lattice: &Lattice, window: Window) -> RegionCheck {
    let Ok(region) = lattice.region() else {
        return RegionCheck::default();
    };
    let mut check = RegionCheck {
        outside: window
            .points()
            .filter(|&pt| lattice.a(pt.0, pt.1) != 0 && !region.contains(pt))
            .collect(),
        ..RegionCheck::default()
    };

    let (ai, aj) = region.anchor;
    let column: Vec<i64> = (0..=2 * region.genus)
        .filter(|&s| lattice.a(ai, aj + s) != 0)
        .collect();
    // successor height and staircase step for each column arrow
    let mut successor: BTreeMap<i64, (i64, i64)> = BTreeMap::new();
    for &s in &column {
        let from = (ai, aj + s);
        let Some(next) = next_arrow(lattice, from) else {
            check.defect = Some(CurveDefect::DeadEnd(from));
            return check;
        };
        let Some(cell) = region.locate((next.i, next.j)) else {
            check.defect = Some(CurveDefect::LeavesRegion((next.i, next.j)));
            return check;
        };
        if cell.translate != 0 {
            check.defect = Some(CurveDefect::CrossesTranslate((next.i, next.j)));
            return check;
        }
        successor.insert(s, (cell.height, cell.step));
    }
    let targets: BTreeSet<i64> = successor.values().map(|&(h, _)| h).collect();
    if targets.len() != column.len() {
        let from = column
            .iter()
            .find(|s| !targets.contains(s))
            .copied()
            .unwrap_or(0);
        check.defect = Some(CurveDefect::Merge((ai, aj + from)));
        return check;
    }

    let mut seen = BTreeSet::new();
    for &start in &column {
        if seen.contains(&start) {
            continue;
        }
        let (mut cursor, mut net) = (start, 0i64);
        while seen.insert(cursor) {
            let (height, step) = successor[&cursor];
            net += step;
            cursor = height;
        }
        if net == 0 {
            check.defect = Some(CurveDefect::ClosedLoop((ai, aj + start)));
            return check;
        }
        check.components_per_translate += net.unsigned_abs() as usize;
    }
    check
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::SurgeryParams;

    fn lattice(p: i64, k: i64) -> Lattice {
        Lattice::new(SurgeryParams::new(p, k).unwrap()).unwrap()
    }

    #[test]
    fn eleven_two_window() {
        let l = lattice(11, 2);
        let window = Window::new(-1, 6, -6, 5);
        let region = l.region().unwrap();
        let curves = trace_curves(&l, window);
        assert!(!curves.is_empty());
        for curve in &curves {
            for a in &curve.arrows {
                assert!(region.contains((a.i, a.j)));
            }
            assert!(curve.arrows.windows(2).all(|w| w[0].j >= w[1].j));
        }
        let translate_zero: Vec<_> = curves.iter().filter(|c| c.translate == Some(0)).collect();
        assert_eq!(translate_zero.len(), 1);
        assert_eq!(
            translate_zero[0].arrows.first().map(|a| (a.i, a.j)),
            Some((-1, 5))
        );
        assert_eq!(
            translate_zero[0].arrows.last().map(|a| (a.i, a.j)),
            Some((2, -6))
        );
        let check = check_regions(&l, window);
        assert!(check.contained() && check.single_curves(), "{check:?}");
    }

    #[test]
    fn pretzel_fundamental_window() {
        let l = lattice(19, 7);
        let check = check_regions(&l, l.fundamental_window());
        assert!(check.contained(), "{check:?}");
        assert!(check.single_curves(), "{check:?}");
        let curves = trace_curves(&l, l.fundamental_window());
        assert!(curves.iter().all(|c| c.translate.is_some()));
    }

    #[test]
    fn successor_steps() {
        let l = lattice(11, 2);
        // Column [1, -1, 1, -1, 1] at i = 0: top + drops onto the - below.
        assert_eq!(
            next_arrow(&l, (0, 4)),
            Some(Arrow {
                i: 0,
                j: 3,
                sign: -1
            })
        );
        assert_eq!(
            next_arrow(&l, (0, 3)),
            Some(Arrow {
                i: 0,
                j: 2,
                sign: 1
            })
        );
        // Bottom + continues at the top of the next staircase column.
        assert_eq!(
            next_arrow(&l, (0, 0)),
            Some(Arrow {
                i: 1,
                j: -1,
                sign: 1
            })
        );
        assert_eq!(next_arrow(&l, (-1, 0)), None);
    }

    #[test]
    fn torus_knot_with_long_runs() {
        // T(6, 7) surgery: runs of five arrows and gaps of four zeros.
        let l = lattice(41, 6);
        let check = check_regions(&l, l.fundamental_window());
        assert!(check.contained() && check.single_curves(), "{check:?}");
    }

    #[test]
    fn non_flat_output_is_rejected() {
        let l = lattice(15, 4);
        assert!(!l.polynomial().is_flat());
        assert!(check_regions(&l, l.fundamental_window()).defect.is_some());
    }

    #[test]
    fn trivial_and_empty_windows() {
        assert!(trace_curves(&lattice(13, 1), Window::new(-5, 5, -5, 5)).is_empty());
        assert!(trace_curves(&lattice(11, 2), Window::new(0, -1, 0, 5)).is_empty());
    }
}

use serde::Serialize;

use crate::arith::SurgeryParams;

use super::{da_entry, Point};

/// Result of scanning the dA columns for the `(-1, +1)` vertical pattern
/// and for adjacent zeros.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    /// Some `(i0, j0)` with `dA(i0, j0) = -1` and `dA(i0, j0 + 1) = +1`.
    pub hypothesis_found: bool,
    pub witness: Option<Point>,
    /// `p < 3 k2`, required whenever the hypothesis holds (vacuously true
    /// otherwise).
    pub bound_ok: bool,
    /// No `s` with `dA(i, s) = dA(i, s + 1) = 0`, required whenever the
    /// hypothesis holds (vacuously true otherwise).
    pub no_adjacent_zeros: bool,
    /// First adjacent zero pair found, whether or not the hypothesis holds.
    pub adjacent_zero: Option<Point>,
}

impl LemmaReport {
    /// The implication `hypothesis ⇒ (p < 3 k2 ∧ no adjacent zeros)`.
    pub fn holds(&self) -> bool {
        self.bound_ok && self.no_adjacent_zeros
    }
}

/// Scans one full period of the columns `i = 0` and `i = 1`; every other
/// column of dA is a shifted copy of these.
pub fn check_lemma(params: SurgeryParams) -> LemmaReport {
    let inv = params.invariants();
    let p = params.p();
    let mut witness = None;
    let mut adjacent_zero = None;
    for i in 0..=1 {
        let mut below = da_entry(params, &inv, i, 0);
        for s in 0..p {
            let above = da_entry(params, &inv, i, s + 1);
            if witness.is_none() && below == -1 && above == 1 {
                witness = Some((i, s));
            }
            if adjacent_zero.is_none() && below == 0 && above == 0 {
                adjacent_zero = Some((i, s));
            }
            below = above;
        }
    }
    let hypothesis_found = witness.is_some();
    LemmaReport {
        hypothesis_found,
        witness,
        bound_ok: !hypothesis_found || p < 3 * inv.k2,
        no_adjacent_zeros: !hypothesis_found || adjacent_zero.is_none(),
        adjacent_zero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gcd;

    #[test]
    fn small_examples() {
        let report = check_lemma(SurgeryParams::new(11, 2).unwrap());
        assert!(report.hypothesis_found && report.bound_ok && report.no_adjacent_zeros);
        assert_eq!(report.adjacent_zero, None);
        let report = check_lemma(SurgeryParams::new(7, 2).unwrap());
        assert!(report.hypothesis_found && report.bound_ok);
    }

    #[test]
    fn without_hypothesis_the_implication_is_vacuous() {
        // k2 = 1: residues 0 -> +1, 1 -> -1, the rest 0, stepping by 1.
        let report = check_lemma(SurgeryParams::new(9, 1).unwrap());
        assert!(!report.hypothesis_found);
        assert!(report.holds());
        assert!(report.adjacent_zero.is_some());
    }

    // Every column, every row of a full period: the pattern and the zero
    // pairs seen in two columns are exactly those seen anywhere.
    #[test]
    fn two_columns_represent_all() {
        for p in 2..70i64 {
            for k in 1..=p / 2 {
                if gcd(p, k) != 1 {
                    continue;
                }
                let Ok(params) = SurgeryParams::new(p, k) else {
                    continue;
                };
                let inv = params.invariants();
                let mut any_hyp = false;
                let mut any_zero = false;
                for i in 0..p {
                    for s in 0..p {
                        let (lo, hi) = (
                            da_entry(params, &inv, i, s),
                            da_entry(params, &inv, i, s + 1),
                        );
                        any_hyp |= lo == -1 && hi == 1;
                        any_zero |= lo == 0 && hi == 0;
                    }
                }
                let report = check_lemma(params);
                assert_eq!(report.hypothesis_found, any_hyp, "({p},{k})");
                assert_eq!(report.adjacent_zero.is_some(), any_zero, "({p},{k})");
                assert!(report.holds(), "({p},{k})");
            }
        }
    }
}

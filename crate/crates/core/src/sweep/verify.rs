use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

use super::record::{records_for_p, SweepRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Top pattern present but the polynomial is not `Δ_{T(2,2g+1)}`.
    NotTorus,
    /// Top pattern present with `k != 2`.
    KNotTwo,
    /// Top pattern present with `p` outside `{4g+1, 4g+3}`.
    ModulusNotTorusFamily,
    /// `k = 2` without the top pattern.
    MissingPattern,
    /// `k = 2` with a polynomial other than `Δ_{T(2,2g+1)}`.
    ReverseNotTorus,
    /// The `(-1, +1)` pattern in dA without `p < 3 k2` and no adjacent zeros.
    Lemma,
}

/// A parameter contradicting one of the checked implications.
///
/// `admissible` marks polynomials that are flat and alternating. Every
/// genuine lens surgery polynomial is; the others come from parameters that
/// are not lens surgeries at all.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub p: i64,
    pub k: i64,
    pub g: i64,
    pub kind: ViolationKind,
    pub admissible: bool,
}

impl Violation {
    fn new(r: &SweepRecord, kind: ViolationKind) -> Self {
        Violation {
            p: r.p,
            k: r.k,
            g: r.g,
            kind,
            admissible: r.admissible(),
        }
    }
}

/// All sweep records for `p <= max_p`, computed in parallel on the current
/// rayon pool and returned in `(p, k)` order.
pub fn sweep_records(max_p: i64) -> Result<Vec<SweepRecord>> {
    let per_p: Vec<Vec<SweepRecord>> = (2..=max_p)
        .into_par_iter()
        .map(records_for_p)
        .collect::<Result<_>>()?;
    Ok(per_p.into_iter().flatten().collect())
}

/// Pattern `1, -1, nonzero` at the top forces `Δ_{T(2,2g+1)}` and `k = 2`.
pub fn theorem_violations(records: &[SweepRecord]) -> Vec<Violation> {
    let mut out = Vec::new();
    for r in records.iter().filter(|r| r.has_top_pattern()) {
        if !r.torus2_match {
            out.push(Violation::new(r, ViolationKind::NotTorus));
        }
        if r.k != 2 {
            out.push(Violation::new(r, ViolationKind::KNotTwo));
        }
    }
    out
}

/// The pattern holds exactly when `k = 2` and `p ∈ {4g+1, 4g+3}`.
///
/// The forward direction repeats [`theorem_violations`] and adds the
/// modulus condition. The reverse direction asks every `(p, 2)` for the
/// pattern and for `Δ_{T(2,2g+1)}` with `g = ⌊(p-1)/4⌋`.
pub fn corollary_violations(records: &[SweepRecord]) -> Vec<Violation> {
    let mut out = theorem_violations(records);
    for r in records {
        let torus_family = r.p == 4 * r.g + 1 || r.p == 4 * r.g + 3;
        if r.has_top_pattern() && r.k == 2 && !torus_family {
            out.push(Violation::new(r, ViolationKind::ModulusNotTorusFamily));
        }
        if r.k == 2 {
            if !r.has_top_pattern() {
                out.push(Violation::new(r, ViolationKind::MissingPattern));
            }
            if !r.torus2_match || r.g != (r.p - 1) / 4 {
                out.push(Violation::new(r, ViolationKind::ReverseNotTorus));
            }
        }
    }
    out.sort_by_key(|v| (v.p, v.k));
    out
}

pub fn lemma_violations(records: &[SweepRecord]) -> Vec<Violation> {
    records
        .iter()
        .filter(|r| !r.lemma_holds())
        .map(|r| Violation::new(r, ViolationKind::Lemma))
        .collect()
}

pub fn verify_theorem(max_p: i64) -> Result<Vec<Violation>> {
    Ok(theorem_violations(&sweep_records(max_p)?))
}

pub fn verify_corollary(max_p: i64) -> Result<Vec<Violation>> {
    Ok(corollary_violations(&sweep_records(max_p)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::compute_record;
    use crate::SurgeryParams;

    fn record(p: i64, k: i64) -> SweepRecord {
        compute_record(SurgeryParams::new(p, k).unwrap()).unwrap()
    }

    #[test]
    fn small_examples_are_consistent() {
        let rs = [record(7, 2), record(11, 2), record(19, 7)];
        assert!(rs[0].has_top_pattern() && rs[1].has_top_pattern());
        assert!(!rs[2].has_top_pattern());
        assert!(corollary_violations(&rs).is_empty());
        assert!(lemma_violations(&rs).is_empty());
    }

    #[test]
    fn every_k_two_is_a_torus_knot() {
        let records = sweep_records(150).unwrap();
        let reverse: Vec<_> = records.iter().filter(|r| r.k == 2).collect();
        assert!(reverse.len() > 60);
        assert!(reverse
            .iter()
            .all(|r| r.has_top_pattern() && r.torus2_match));
    }

    #[test]
    fn admissible_records_satisfy_the_theorem() {
        let records = sweep_records(150).unwrap();
        assert!(theorem_violations(&records).iter().all(|v| !v.admissible));
        assert!(corollary_violations(&records).iter().all(|v| !v.admissible));
        assert!(lemma_violations(&records).is_empty());
    }

    #[test]
    fn synthetic_violations_are_reported() {
        let mut r = record(11, 2);
        r.k = 3;
        r.torus2_match = false;
        let kinds: Vec<_> = theorem_violations(&[r])
            .into_iter()
            .map(|v| v.kind)
            .collect();
        assert_eq!(kinds, [ViolationKind::NotTorus, ViolationKind::KNotTwo]);
        let mut r = record(11, 2);
        r.lemma_hypothesis = true;
        r.lemma_bound_ok = false;
        assert_eq!(lemma_violations(&[r])[0].kind, ViolationKind::Lemma);
    }
}

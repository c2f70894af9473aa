//! Exhaustive sweeps over canonical surgery parameters.

mod record;
mod runner;
mod verify;

pub use record::{compute_record, records_for_p, ReportFormat, SweepRecord, CSV_HEADER};
pub use runner::{run_sweep, Checkpoint, SweepConfig, SweepSummary};
pub use verify::{
    corollary_violations, lemma_violations, sweep_records, theorem_violations, verify_corollary,
    verify_theorem, Violation, ViolationKind,
};

use crate::arith::SurgeryParams;

/// Canonical parameters with modulus `p`, in increasing `k`.
pub fn params_for_p(p: i64) -> Vec<SurgeryParams> {
    (1..=(p / 2).max(1))
        .filter_map(|k| SurgeryParams::new(p, k).ok())
        .collect()
}

/// Every canonical `(p, k)` with `2 <= p <= max_p`, one per orbit
/// `{k, k2}`, sorted by `(p, k)`.
pub fn enumerate_params(max_p: i64) -> Vec<SurgeryParams> {
    (2..=max_p).flat_map(params_for_p).collect()
}

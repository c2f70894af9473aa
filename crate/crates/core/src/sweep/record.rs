use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::arith::SurgeryParams;
use crate::error::{Error, Result};
use crate::lattice::check_lemma;
use crate::poly::{generate, torus_polynomial, SymmetricLaurentPolynomial};

pub const CSV_HEADER: &str = "p,k,k2,e,m,g,alpha1,alpha2,trivial,flat,alternating,torus2_match,top_sign_ok,lemma_hypothesis,lemma_bound_ok,lemma_zeros_ok";

/// One row of a sweep report.
///
/// `alpha1` and `alpha2` are the second and third coefficients from the
/// top, `a_{g-1}` and `a_{g-2}`. `elapsed_us` is wall-clock time and never
/// appears in the report itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub p: i64,
    pub k: i64,
    pub k2: i64,
    pub e: i64,
    pub m: i64,
    pub g: i64,
    pub alpha1: i64,
    pub alpha2: i64,
    pub trivial: bool,
    pub flat: bool,
    pub alternating: bool,
    pub torus2_match: bool,
    pub top_sign_ok: bool,
    pub lemma_hypothesis: bool,
    pub lemma_bound_ok: bool,
    pub lemma_zeros_ok: bool,
    #[serde(skip)]
    pub elapsed_us: u64,
}

impl SweepRecord {
    /// Leading coefficients `1, -1, nonzero`.
    pub fn has_top_pattern(&self) -> bool {
        !self.trivial && self.top_sign_ok && self.alpha2 != 0
    }

    /// Flat and alternating, the shape every genuine lens surgery
    /// polynomial has.
    pub fn admissible(&self) -> bool {
        self.flat && self.alternating
    }

    pub fn lemma_holds(&self) -> bool {
        !self.lemma_hypothesis || (self.lemma_bound_ok && self.lemma_zeros_ok)
    }

    pub fn to_csv_row(&self) -> String {
        let b = |x: bool| u8::from(x);
        let mut row = String::with_capacity(48);
        let _ = write!(
            row,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.p,
            self.k,
            self.k2,
            self.e,
            self.m,
            self.g,
            self.alpha1,
            self.alpha2,
            b(self.trivial),
            b(self.flat),
            b(self.alternating),
            b(self.torus2_match),
            b(self.top_sign_ok),
            b(self.lemma_hypothesis),
            b(self.lemma_bound_ok),
            b(self.lemma_zeros_ok),
        );
        row
    }

    pub fn from_csv_row(row: &str) -> Option<Self> {
        let fields: Vec<&str> = row.trim_end().split(',').collect();
        if fields.len() != 16 {
            return None;
        }
        let int = |n: usize| fields[n].parse::<i64>().ok();
        let flag = |n: usize| match fields[n] {
            "0" => Some(false),
            "1" => Some(true),
            _ => None,
        };
        Some(SweepRecord {
            p: int(0)?,
            k: int(1)?,
            k2: int(2)?,
            e: int(3)?,
            m: int(4)?,
            g: int(5)?,
            alpha1: int(6)?,
            alpha2: int(7)?,
            trivial: flag(8)?,
            flat: flag(9)?,
            alternating: flag(10)?,
            torus2_match: flag(11)?,
            top_sign_ok: flag(12)?,
            lemma_hypothesis: flag(13)?,
            lemma_bound_ok: flag(14)?,
            lemma_zeros_ok: flag(15)?,
            elapsed_us: 0,
        })
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }
}

/// Report encodings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Jsonl,
}

impl ReportFormat {
    pub fn header(self) -> Option<&'static str> {
        match self {
            ReportFormat::Csv => Some(CSV_HEADER),
            ReportFormat::Jsonl => None,
        }
    }

    pub fn encode(self, record: &SweepRecord) -> String {
        match self {
            ReportFormat::Csv => record.to_csv_row(),
            ReportFormat::Jsonl => record.to_json_line(),
        }
    }

    pub fn decode(self, line: &str) -> Option<SweepRecord> {
        match self {
            ReportFormat::Csv => SweepRecord::from_csv_row(line),
            ReportFormat::Jsonl => serde_json::from_str(line).ok(),
        }
    }
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "jsonl" => Ok(ReportFormat::Jsonl),
            other => Err(Error::Config(format!(
                "unknown report format `{other}` (expected csv or jsonl)"
            ))),
        }
    }
}

/// `Δ_{T(2, 2g+1)}`, whose coefficients are `a_i = (-1)^(g-i)`. The closed
/// form only screens candidates; a match is confirmed by polynomial
/// division.
fn is_two_bridge_torus(poly: &SymmetricLaurentPolynomial) -> Result<bool> {
    let g = poly.genus() as i64;
    if g == 0 {
        return Ok(true);
    }
    let screened = (-g..=g).all(|i| poly.coefficient(i) == if (g - i) % 2 == 0 { 1 } else { -1 });
    Ok(screened && torus_polynomial(2, 2 * g + 1)? == *poly)
}

pub fn compute_record(params: SurgeryParams) -> Result<SweepRecord> {
    let start = Instant::now();
    let inv = params.invariants();
    let poly = generate(params)?;
    let lemma = check_lemma(params);
    Ok(SweepRecord {
        p: params.p(),
        k: params.k(),
        k2: inv.k2,
        e: inv.e,
        m: inv.m,
        g: poly.genus() as i64,
        alpha1: poly.top_coefficient(1),
        alpha2: poly.top_coefficient(2),
        trivial: poly.is_trivial(),
        flat: poly.is_flat(),
        alternating: poly.is_alternating(),
        torus2_match: is_two_bridge_torus(&poly)?,
        top_sign_ok: poly.has_standard_top(),
        lemma_hypothesis: lemma.hypothesis_found,
        lemma_bound_ok: lemma.bound_ok,
        lemma_zeros_ok: lemma.no_adjacent_zeros,
        elapsed_us: start.elapsed().as_micros() as u64,
    })
}

/// Records for every canonical parameter with modulus `p`, sorted by `k`.
pub fn records_for_p(p: i64) -> Result<Vec<SweepRecord>> {
    super::params_for_p(p)
        .into_iter()
        .map(compute_record)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(p: i64, k: i64) -> SweepRecord {
        compute_record(SurgeryParams::new(p, k).unwrap()).unwrap()
    }

    #[test]
    fn eleven_two() {
        let r = record(11, 2);
        assert_eq!(
            (r.k2, r.e, r.m, r.g, r.alpha1, r.alpha2),
            (5, -1, 1, 2, -1, 1)
        );
        assert!(r.torus2_match && r.top_sign_ok && r.flat && r.alternating && !r.trivial);
        assert!(r.has_top_pattern());
        assert_eq!(r.to_csv_row(), "11,2,5,-1,1,2,-1,1,0,1,1,1,1,1,1,1");
    }

    #[test]
    fn pretzel_and_trivial() {
        let r = record(19, 7);
        assert_eq!((r.g, r.alpha1, r.alpha2), (5, -1, 0));
        assert!(!r.torus2_match && !r.has_top_pattern());
        let t = record(9, 1);
        assert!(t.trivial && t.torus2_match && t.top_sign_ok && !t.has_top_pattern());
    }

    #[test]
    fn row_round_trips() {
        for p in 2..60 {
            for r in records_for_p(p).unwrap() {
                let mut back = SweepRecord::from_csv_row(&r.to_csv_row()).unwrap();
                back.elapsed_us = r.elapsed_us;
                assert_eq!(back, r);
                let mut back = ReportFormat::Jsonl.decode(&r.to_json_line()).unwrap();
                back.elapsed_us = r.elapsed_us;
                assert_eq!(back, r);
            }
        }
        assert!(!record(7, 2).to_json_line().contains("elapsed"));
        assert_eq!(CSV_HEADER.split(',').count(), 16);
        assert!(SweepRecord::from_csv_row("1,2,3").is_none());
        assert!(SweepRecord::from_csv_row("7,2,3,1,1,1,-1,1,0,1,1,1,1,1,1,2").is_none());
    }
}

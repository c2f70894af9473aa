use crate::arith::{mul_mod, DerivedInvariants, SignedInterval, SurgeryParams};
use crate::error::{Error, Result};

use super::SymmetricLaurentPolynomial;

/// Evaluates the counting formula
///
/// `a_i = -e (m - #{ j ∈ I_k : [q2 (j + k i + c)]_p ∈ I_{e k2} })`
///
/// for `|i| <= p/2`. The residues `q2 (j + k i + c)` for consecutive `j`
/// form an arithmetic progression, so the inner loop only adds.
#[derive(Debug, Clone)]
pub struct CoefficientCounter {
    p: i64,
    k: i64,
    e: i64,
    m: i64,
    c: i64,
    step: i64,
    target: SignedInterval,
}

impl CoefficientCounter {
    pub fn new(params: SurgeryParams, inv: &DerivedInvariants) -> Self {
        let p = params.p();
        CoefficientCounter {
            p,
            k: params.k(),
            e: inv.e,
            m: inv.m,
            c: inv.c,
            step: inv.q2.rem_euclid(p),
            target: SignedInterval::new(inv.e * inv.k2).expect("k2 is positive"),
        }
    }

    /// `#{ j ∈ I_k : [q2 (j + k i + c)]_p ∈ I_{e k2} }`.
    pub fn count(&self, i: i64) -> i64 {
        let p = self.p;
        let offset = (1 + mul_mod(self.k, i, p) + self.c).rem_euclid(p);
        let mut r = mul_mod(self.step, offset, p);
        let mut hits = 0;
        for _ in 0..self.k {
            let centered = if 2 * r > p { r - p } else { r };
            if self.target.contains(centered) {
                hits += 1;
            }
            r += self.step;
            if r >= p {
                r -= p;
            }
        }
        hits
    }

    pub fn coefficient(&self, i: i64) -> Result<i64> {
        if 2 * i.abs() > self.p {
            return Err(Error::IndexOutOfRange { p: self.p, i });
        }
        Ok(self.coefficient_unchecked(i))
    }

    fn coefficient_unchecked(&self, i: i64) -> i64 {
        -self.e * (self.m - self.count(i))
    }
}

/// The coefficient `a_i` of the lens surgery polynomial for `(p, k)`.
pub fn coefficient(params: SurgeryParams, inv: &DerivedInvariants, i: i64) -> Result<i64> {
    CoefficientCounter::new(params, inv).coefficient(i)
}

/// Assembles the symmetrized polynomial from the coefficients
/// `a_0, ..., a_{⌊p/2⌋}`, accepting any valid parameter.
///
/// Each `a_{-i}` is evaluated independently and compared with `a_i`, and the
/// coefficients over one full period `(-p/2, p/2]` must sum to 1. These are
/// identities of the counting formula, so a failure is an implementation
/// defect and is reported as [`Error::Integrity`].
///
/// For even `p` with `a_{p/2} != 0` the residue class `p/2` is mirrored to
/// both ends, so the result has genus `p/2` and `Δ(1) = 1 + a_{p/2}`; see
/// [`polynomial`] for the checked variant.
pub fn generate(params: SurgeryParams) -> Result<SymmetricLaurentPolynomial> {
    let p = params.p();
    let inv = params.invariants();
    let counter = CoefficientCounter::new(params, &inv);
    let half_period = p / 2;

    let mut half = Vec::with_capacity(half_period as usize + 1);
    for i in 0..=half_period {
        let a = counter.coefficient_unchecked(i);
        if i > 0 {
            let mirror = counter.coefficient_unchecked(-i);
            if mirror != a {
                return Err(integrity(
                    params,
                    i,
                    format!("a_{i} = {a} but a_-{i} = {mirror}"),
                ));
            }
        }
        half.push(a);
    }

    // For even p the index p/2 is a single residue class and is counted once.
    let period_sum: i64 = half
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            if i == 0 || (p % 2 == 0 && i as i64 == half_period) {
                a
            } else {
                2 * a
            }
        })
        .sum();
    if period_sum != 1 {
        return Err(integrity(
            params,
            0,
            format!("coefficients sum to {period_sum} over one period, expected 1"),
        ));
    }

    Ok(SymmetricLaurentPolynomial::from_nonnegative(&half))
}

/// The lens surgery polynomial for `(p, k)`, with `Δ(1) = 1` enforced on the
/// Laurent polynomial itself.
///
/// Fails with [`Error::Integrity`] when the generated genus reaches `p/2`
/// and the mirrored class `p/2` breaks the normalization; such parameters
/// lie outside the range where the periodic coefficients determine a
/// Laurent polynomial.
pub fn polynomial(params: SurgeryParams) -> Result<SymmetricLaurentPolynomial> {
    let poly = generate(params)?;
    let value = poly.evaluate_at_one();
    if value != 1 {
        return Err(integrity(
            params,
            poly.genus() as i64,
            format!(
                "Δ(1) = {value}, expected 1 (genus {} reaches p/2)",
                poly.genus()
            ),
        ));
    }
    Ok(poly)
}

fn integrity(params: SurgeryParams, index: i64, detail: String) -> Error {
    Error::Integrity {
        p: params.p(),
        k: params.k(),
        index,
        detail,
    }
}

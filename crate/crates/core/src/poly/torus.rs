use crate::arith::gcd;
use crate::error::{Error, Result};

use super::SymmetricLaurentPolynomial;

/// Dense integer polynomial, coefficients listed from degree 0 upward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly(Vec<i64>);

impl DensePoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        DensePoly(coeffs)
    }

    /// `t^n - 1`.
    pub fn binomial(n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = -1;
        coeffs[n] += 1;
        DensePoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0]
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::new(out)
    }

    /// Exact division by a polynomial with leading coefficient `±1`.
    /// Returns `None` if the divisor is zero, not monic up to sign, or does
    /// not divide `self`.
    pub fn div_exact(&self, divisor: &DensePoly) -> Option<DensePoly> {
        let lead = *divisor.0.last()?;
        if divisor.is_zero() || lead.abs() != 1 {
            return None;
        }
        if self.is_zero() {
            return Some(DensePoly::new(vec![0]));
        }
        let dd = divisor.degree();
        if self.degree() < dd {
            return None;
        }
        // Only the nonzero terms of the divisor take part in the reduction;
        // for the sparse binomials used here this keeps division linear.
        let terms: Vec<(usize, i64)> = divisor.0[..dd]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let mut rem = self.0.clone();
        let mut quot = vec![0i64; self.degree() - dd + 1];
        for shift in (0..quot.len()).rev() {
            let c = rem[shift + dd] * lead;
            if c == 0 {
                continue;
            }
            quot[shift] = c;
            rem[shift + dd] = 0;
            for &(i, d) in &terms {
                rem[shift + i] -= c * d;
            }
        }
        rem.iter().all(|&r| r == 0).then(|| DensePoly::new(quot))
    }
}

/// Alexander polynomial of the `(a, b)` torus knot,
/// `(t^{ab} - 1)(t - 1) / ((t^a - 1)(t^b - 1))`, recentred by `t^{-g}` with
/// `g = (a - 1)(b - 1) / 2`.
pub fn torus_polynomial(a: i64, b: i64) -> Result<SymmetricLaurentPolynomial> {
    if a < 2 || b < 2 || gcd(a, b) != 1 {
        return Err(Error::InvalidTorus { a, b });
    }
    let (ua, ub) = (a as usize, b as usize);
    let numerator = DensePoly::binomial(ua * ub).mul(&DensePoly::binomial(1));
    let quotient = numerator
        .div_exact(&DensePoly::binomial(ua))
        .and_then(|q| q.div_exact(&DensePoly::binomial(ub)))
        .expect("cyclotomic factors of t^a - 1 and t^b - 1 divide the numerator");
    debug_assert_eq!(quotient.degree(), (ua - 1) * (ub - 1));
    Ok(SymmetricLaurentPolynomial::from_coeffs(quotient.0)
        .expect("torus knot polynomials are palindromic"))
}

//! Symmetrized Laurent polynomials and the lens surgery coefficient
//! generator.

mod generator;
mod torus;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::reduce_mod;

pub use generator::{coefficient, generate, polynomial, CoefficientCounter};
pub use torus::{torus_polynomial, DensePoly};

/// A Laurent polynomial `Σ_{i=-g}^{g} a_i t^i` with `a_i = a_{-i}`.
///
/// Coefficients are stored from index `-g` up to `g`. The leading
/// coefficient `a_g` is nonzero unless `g = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PolyRepr", into = "PolyRepr")]
pub struct SymmetricLaurentPolynomial {
    coeffs: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    g: usize,
    coeffs: Vec<i64>,
}

impl TryFrom<PolyRepr> for SymmetricLaurentPolynomial {
    type Error = String;

    fn try_from(repr: PolyRepr) -> Result<Self, String> {
        if repr.coeffs.len() != 2 * repr.g + 1 {
            return Err(format!(
                "expected {} coefficients for g={}, got {}",
                2 * repr.g + 1,
                repr.g,
                repr.coeffs.len()
            ));
        }
        SymmetricLaurentPolynomial::from_coeffs(repr.coeffs)
            .ok_or_else(|| "coefficients are not symmetric or not trimmed".to_string())
    }
}

impl From<SymmetricLaurentPolynomial> for PolyRepr {
    fn from(poly: SymmetricLaurentPolynomial) -> Self {
        PolyRepr {
            g: poly.genus(),
            coeffs: poly.coeffs,
        }
    }
}

impl SymmetricLaurentPolynomial {
    /// The polynomial `1`.
    pub fn trivial() -> Self {
        SymmetricLaurentPolynomial { coeffs: vec![1] }
    }

    /// Builds a polynomial from coefficients listed from `a_{-g}` to `a_g`.
    /// Returns `None` unless the list has odd length, is symmetric, and has
    /// nonzero end coefficients (or is a single constant).
    pub fn from_coeffs(coeffs: Vec<i64>) -> Option<Self> {
        let n = coeffs.len();
        if n.is_multiple_of(2) || (n > 1 && coeffs[0] == 0) {
            return None;
        }
        if coeffs.iter().ne(coeffs.iter().rev()) {
            return None;
        }
        Some(SymmetricLaurentPolynomial { coeffs })
    }

    /// Builds a polynomial from `a_0, a_1, ..., a_h`, mirroring to negative
    /// indices and trimming trailing zeros.
    ///
    /// # Panics
    ///
    /// Panics if `half` is empty.
    pub fn from_nonnegative(half: &[i64]) -> Self {
        let g = half.iter().rposition(|&a| a != 0).unwrap_or(0);
        let coeffs = half[..=g]
            .iter()
            .rev()
            .chain(half[1..=g].iter())
            .copied()
            .collect();
        SymmetricLaurentPolynomial { coeffs }
    }

    pub fn genus(&self) -> usize {
        self.coeffs.len() / 2
    }

    /// Coefficients from `a_{-g}` to `a_g`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `a_i`, zero outside `[-g, g]`.
    pub fn coefficient(&self, i: i64) -> i64 {
        let g = self.genus() as i64;
        if i.abs() > g {
            0
        } else {
            self.coeffs[(i + g) as usize]
        }
    }

    /// The `n`-th coefficient counted from the top, `a_{g-n}`.
    pub fn top_coefficient(&self, n: usize) -> i64 {
        self.coefficient(self.genus() as i64 - n as i64)
    }

    pub fn evaluate_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_flat(&self) -> bool {
        self.coeffs.iter().all(|a| a.abs() <= 1)
    }

    pub fn is_alternating(&self) -> bool {
        let mut signs = self.coeffs.iter().filter(|&&a| a != 0).map(|a| a.signum());
        let Some(mut prev) = signs.next() else {
            return true;
        };
        for s in signs {
            if s == prev {
                return false;
            }
            prev = s;
        }
        true
    }

    /// Leading terms `t^g - t^(g-1) + ...`, or the trivial polynomial.
    pub fn has_standard_top(&self) -> bool {
        self.is_trivial() || (self.top_coefficient(0) == 1 && self.top_coefficient(1) == -1)
    }
}

impl fmt::Display for SymmetricLaurentPolynomial {
    /// Renders as `t^2 - t + 1 - t^-1 + t^-2`, highest exponent first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.genus() as i64;
        let mut first = true;
        for exp in (-g..=g).rev() {
            let a = self.coefficient(exp);
            if a == 0 {
                continue;
            }
            let mag = a.unsigned_abs();
            match (first, a < 0) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            match (exp, mag) {
                (0, _) => write!(f, "{mag}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{mag}t")?,
                (_, 1) => write!(f, "t^{exp}")?,
                (_, _) => write!(f, "{mag}t^{exp}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The periodic extension `ā_i = a_{[i]_p}` of a coefficient sequence.
#[derive(Debug, Clone)]
pub struct PeriodicCoefficients {
    base: SymmetricLaurentPolynomial,
    p: i64,
}

impl PeriodicCoefficients {
    pub fn new(base: SymmetricLaurentPolynomial, p: i64) -> Self {
        assert!(p >= 1);
        PeriodicCoefficients { base, p }
    }

    pub fn base(&self) -> &SymmetricLaurentPolynomial {
        &self.base
    }

    pub fn period(&self) -> i64 {
        self.p
    }

    #[inline]
    pub fn entry(&self, i: i64) -> i64 {
        self.base.coefficient(reduce_mod(i, self.p))
    }
}

/// `ā_i` for the periodic extension `pc`.
pub fn periodic_coefficient(pc: &PeriodicCoefficients, i: i64) -> i64 {
    pc.entry(i)
}

//! Residue arithmetic and the auxiliary quantities attached to a surgery
//! parameter `(p, k)`.
//!
//! Everything here is exact `i64` arithmetic. Arguments are reduced modulo
//! `p` before they are multiplied, so intermediate magnitudes stay below
//! `p²`; with `p <= MAX_P` that leaves a wide margin inside 64 bits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest surgery coefficient accepted by [`SurgeryParams`].
pub const MAX_P: i64 = 1_000_000;

/// The centered residue `[i]_p`: the representative of `i mod p` lying in
/// the half-open interval `(-p/2, p/2]`.
///
/// # Panics
///
/// Panics if `p < 1`.
#[inline]
pub fn reduce_mod(i: i64, p: i64) -> i64 {
    assert!(p >= 1, "modulus must be positive, got {p}");
    let r = i.rem_euclid(p);
    if 2 * r > p {
        r - p
    } else {
        r
    }
}

/// `(a * b) mod p` in `[0, p)`, reducing both factors first.
#[inline]
pub fn mul_mod(a: i64, b: i64, p: i64) -> i64 {
    let (a, b) = (a.rem_euclid(p), b.rem_euclid(p));
    a.checked_mul(b)
        .expect("residue product overflowed i64")
        .rem_euclid(p)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `p` in `[0, p)` by the extended Euclidean algorithm,
/// or `None` when `gcd(a, p) != 1`.
pub fn mod_inverse(a: i64, p: i64) -> Option<i64> {
    if p == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a.rem_euclid(p), p);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(p))
}

/// The signed interval `I_ell`: `{1, ..., ell}` for `ell > 0` and
/// `{ell + 1, ..., 0}` for `ell < 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedInterval(i64);

impl SignedInterval {
    pub fn new(ell: i64) -> Result<Self> {
        if ell == 0 {
            return Err(Error::EmptyInterval);
        }
        Ok(SignedInterval(ell))
    }

    pub fn ell(self) -> i64 {
        self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(self) -> u64 {
        self.0.unsigned_abs()
    }

    #[inline]
    pub fn contains(self, x: i64) -> bool {
        if self.0 > 0 {
            1 <= x && x <= self.0
        } else {
            self.0 < x && x <= 0
        }
    }
}

/// Membership test `x ∈ I_ell`; rejects `ell = 0`.
pub fn interval_contains(ell: i64, x: i64) -> Result<bool> {
    Ok(SignedInterval::new(ell)?.contains(x))
}

/// A coprime pair `(p, k)` with `k` the minimal representative of its dual
/// class orbit `{±k, ±k⁻¹}` in `(0, p/2)`. The only parameter with `p = 2`
/// is `(2, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SurgeryParams {
    p: i64,
    k: i64,
}

impl SurgeryParams {
    /// Accepts `(p, k)` only if it is already canonical.
    pub fn new(p: i64, k: i64) -> Result<Self> {
        let canonical = canonicalize_dual_class(p, k)?;
        if canonical.k != k {
            return Err(Error::InvalidParameter {
                p,
                k,
                reason: "k is not the minimal representative of its dual class",
            });
        }
        Ok(canonical)
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn invariants(&self) -> DerivedInvariants {
        derive_invariants(*self)
    }
}

impl fmt::Display for SurgeryParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.k)
    }
}

/// Reduce an arbitrary dual class `k0` to its canonical representative.
pub fn canonicalize_dual_class(p: i64, k0: i64) -> Result<SurgeryParams> {
    if p < 2 {
        return Err(Error::InvalidParameter {
            p,
            k: k0,
            reason: "p must be at least 2",
        });
    }
    if p > MAX_P {
        return Err(Error::InvalidParameter {
            p,
            k: k0,
            reason: "p exceeds the supported range (10^6)",
        });
    }
    let inverse = mod_inverse(k0, p).ok_or(Error::InvalidParameter {
        p,
        k: k0,
        reason: "p and k are not coprime",
    })?;
    let direct = reduce_mod(k0, p).abs();
    let dual = reduce_mod(inverse, p).abs();
    Ok(SurgeryParams {
        p,
        k: direct.min(dual),
    })
}

/// Quantities derived from `(p, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedInvariants {
    /// Second dual class `|[k⁻¹]_p|`.
    pub k2: i64,
    /// `k * k2 ≡ e (mod p)`.
    pub e: i64,
    /// `(k * k2 - e) / p`.
    pub m: i64,
    /// `[k²]_p`.
    pub q: i64,
    /// `[k2²]_p`.
    pub q2: i64,
    /// `(k - 1)(k + 1 - p) / 2`.
    pub c: i64,
}

pub fn derive_invariants(params: SurgeryParams) -> DerivedInvariants {
    let SurgeryParams { p, k } = params;
    let inverse = mod_inverse(k, p).expect("SurgeryParams are coprime");
    let centered = reduce_mod(inverse, p);
    let k2 = centered.abs();
    // k * centered ≡ 1, so k * |centered| ≡ sign(centered).
    let e = centered.signum();
    let m = (k * k2 - e) / p;
    debug_assert_eq!(m * p, k * k2 - e);
    DerivedInvariants {
        k2,
        e,
        m,
        q: reduce_mod(mul_mod(k, k, p), p),
        q2: reduce_mod(mul_mod(k2, k2, p), p),
        c: (k - 1) * (k + 1 - p) / 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn centered_residues() {
        assert_eq!(reduce_mod(6, 11), -5);
        assert_eq!(reduce_mod(-9, 11), 2);
        assert_eq!(reduce_mod(5, 10), 5);
        assert_eq!(reduce_mod(-5, 10), 5);
        assert_eq!(reduce_mod(0, 1), 0);
    }

    #[test]
    fn signed_intervals() {
        assert!(interval_contains(-5, 0).unwrap());
        assert!(!interval_contains(-5, -5).unwrap());
        assert!(interval_contains(5, 3).unwrap());
        assert!(!interval_contains(5, 0).unwrap());
        assert!(matches!(interval_contains(0, 0), Err(Error::EmptyInterval)));
        assert_eq!(SignedInterval::new(-7).unwrap().len(), 7);
    }

    // Orbit enumeration by brute force: every k in (0, p/2) whose class is
    // ±k0 or ±k0⁻¹, searched without any inverse routine.
    fn brute_canonical(p: i64, k0: i64) -> i64 {
        (1..=p / 2)
            .filter(|&k| {
                let kk = k0.rem_euclid(p);
                let same = (k - kk).rem_euclid(p) == 0 || (k + kk).rem_euclid(p) == 0;
                let dual = (k * kk).rem_euclid(p) == 1 % p || (k * kk + 1).rem_euclid(p) == 0;
                same || dual
            })
            .min()
            .unwrap()
    }

    #[test]
    fn canonical_dual_classes() {
        assert_eq!(canonicalize_dual_class(19, 8).unwrap().k(), 7);
        assert_eq!(canonicalize_dual_class(11, 6).unwrap().k(), 2);
        assert_eq!(canonicalize_dual_class(7, 2).unwrap().k(), 2);
        assert_eq!(canonicalize_dual_class(2, 1).unwrap().k(), 1);
        assert_eq!(canonicalize_dual_class(2, -3).unwrap().k(), 1);
        assert!(canonicalize_dual_class(12, 4).is_err());
        assert!(canonicalize_dual_class(1, 1).is_err());
        assert!(SurgeryParams::new(7, 3).is_err());
        for p in 2..60 {
            for k0 in -p..2 * p {
                if gcd(p, k0) == 1 {
                    assert_eq!(
                        canonicalize_dual_class(p, k0).unwrap().k(),
                        brute_canonical(p, k0)
                    );
                }
            }
        }
    }

    #[test]
    fn invariant_examples() {
        let inv = |p, k| derive_invariants(SurgeryParams::new(p, k).unwrap());
        let expect = |k2, e, m, q, q2, c| DerivedInvariants { k2, e, m, q, q2, c };
        assert_eq!(inv(7, 2), expect(3, -1, 1, -3, 2, -2));
        assert_eq!(inv(11, 2), expect(5, -1, 1, 4, 3, -4));
        assert_eq!(inv(19, 7), expect(8, -1, 3, -8, 7, -33));
        assert_eq!(inv(2, 1), expect(1, 1, 0, 1, 1, 0));
        assert_eq!(inv(9, 1), expect(1, 1, 0, 1, 1, 0));
    }

    fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
        (2i64..2000, any::<i64>()).prop_filter_map("coprime", |(p, seed)| {
            let k = seed.rem_euclid(p);
            (gcd(p, k) == 1).then_some((p, k))
        })
    }

    proptest! {
        #[test]
        fn reduce_mod_is_centered(i in -1_000_000_000i64..1_000_000_000, p in 1i64..1_000_000) {
            let r = reduce_mod(i, p);
            prop_assert_eq!((i - r).rem_euclid(p), 0);
            prop_assert!(-p < 2 * r && 2 * r <= p);
        }

        #[test]
        fn invariants_hold((p, k0) in coprime_pair()) {
            let params = canonicalize_dual_class(p, k0).unwrap();
            let k = params.k();
            let inv = params.invariants();
            prop_assert!(inv.e == 1 || inv.e == -1);
            prop_assert_eq!((k * inv.k2 - inv.e).rem_euclid(p), 0);
            prop_assert_eq!(inv.m * p, k * inv.k2 - inv.e);
            prop_assert!(inv.m >= 0);
            prop_assert!(0 < inv.k2 && (2 * inv.k2 < p || p == 2));
            prop_assert_eq!(((k - 1) * (k + 1 - p)).rem_euclid(2), 0);
            prop_assert_eq!((inv.q - k * k).rem_euclid(p), 0);
            prop_assert_eq!((inv.q2 - inv.k2 * inv.k2).rem_euclid(p), 0);
        }

        #[test]
        fn canonical_form_is_idempotent_and_orbit_closed((p, k0) in coprime_pair()) {
            let params = canonicalize_dual_class(p, k0).unwrap();
            prop_assert_eq!(canonicalize_dual_class(p, params.k()).unwrap(), params);
            let k2 = params.invariants().k2;
            prop_assert_eq!(canonicalize_dual_class(p, k2).unwrap(), params);
        }
    }
}

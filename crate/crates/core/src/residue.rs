//! Residue classes modulo N, basic representatives, the hat map, Bézout
//! coefficients and the two-factor Chinese remainder decomposition.
//!
//! A [`Residue`] carries its modulus at runtime. Combining residues with
//! different moduli is always an error: the checked methods return
//! [`Error::ModulusMismatch`] and the operator impls panic.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

fn check_modulus(n: i64) -> Result<()> {
    if n < 1 {
        Err(Error::InvalidModulus(n))
    } else {
        Ok(())
    }
}

/// The basic representative of `alpha` in `{0, …, n-1}`, i.e.
/// `alpha - floor(alpha / n) * n` with the floor rounding toward −∞.
pub fn basic_rep(alpha: i64, n: i64) -> Result<i64> {
    check_modulus(n)?;
    Ok(alpha.rem_euclid(n))
}

/// The hat map `α ↦ α + floor(α/2)·n`, applied to the basic representative
/// of `alpha`.
///
/// For `n = 2(2k+1)` the result is independent of the representative modulo
/// `2n`; for other `n` it is still defined but only meaningful as an integer.
pub fn hat(alpha: i64, n: i64) -> Result<i64> {
    let a = basic_rep(alpha, n)?;
    Ok(a + a.div_euclid(2) * n)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b)`.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// An integer class `[value]_modulus` with `0 <= value < modulus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: i64,
    modulus: i64,
}

impl Residue {
    pub fn new(alpha: i64, modulus: i64) -> Result<Self> {
        Ok(Self {
            value: basic_rep(alpha, modulus)?,
            modulus,
        })
    }

    /// Same as [`Residue::new`] for a modulus already known to be valid.
    pub(crate) fn of(alpha: i64, modulus: i64) -> Self {
        debug_assert!(modulus >= 1);
        Self {
            value: alpha.rem_euclid(modulus),
            modulus,
        }
    }

    pub fn zero(modulus: i64) -> Result<Self> {
        Self::new(0, modulus)
    }

    pub fn one(modulus: i64) -> Result<Self> {
        Self::new(1, modulus)
    }

    /// The basic representative.
    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            })
        } else {
            Ok(())
        }
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        self.same_modulus(&other)?;
        Ok(Self::of(self.value + other.value, self.modulus))
    }

    pub fn checked_sub(self, other: Self) -> Result<Self> {
        self.same_modulus(&other)?;
        Ok(Self::of(self.value - other.value, self.modulus))
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        self.same_modulus(&other)?;
        Ok(Self::of(self.value * other.value, self.modulus))
    }

    pub fn scale(self, k: i64) -> Self {
        Self::of(self.value * k.rem_euclid(self.modulus), self.modulus)
    }

    /// `[α]_M ↦ [α]_m` for `m | M`.
    pub fn reduce(self, m: i64) -> Result<Self> {
        check_modulus(m)?;
        if self.modulus % m != 0 {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: m,
            });
        }
        Ok(Self::of(self.value, m))
    }

    /// Multiplicative inverse, if the class is a unit.
    pub fn inverse(self) -> Option<Self> {
        let (g, x, _) = extended_gcd(self.value, self.modulus);
        (g == 1).then(|| Self::of(x, self.modulus))
    }

    pub fn hat(self) -> i64 {
        self.value + self.value.div_euclid(2) * self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.value, self.modulus)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Residue {
            type Output = Residue;

            fn $method(self, rhs: Residue) -> Residue {
                match self.$checked(rhs) {
                    Ok(r) => r,
                    Err(e) => panic!("{e}"),
                }
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);

impl Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        Residue::of(-self.value, self.modulus)
    }
}

/// Integers with `mu1·d2 − mu2·d1 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutPair {
    pub mu1: i64,
    pub mu2: i64,
    pub d1: i64,
    pub d2: i64,
}

/// Bézout coefficients for coprime `d1, d2`.
///
/// `mu1` is the inverse of `d2` modulo `d1` taken from `(-d1/2, d1/2]`,
/// which yields `(1, k)` for `(2, 2k+1)`, `(-1, -l)` for `(4, 4l-1)` and
/// `(1, l)` for `(4, 4l+1)`.
pub fn bezout(d1: i64, d2: i64) -> Result<BezoutPair> {
    check_modulus(d1)?;
    check_modulus(d2)?;
    let (g, _, y) = extended_gcd(d1, d2);
    if g != 1 {
        return Err(Error::NotCoprime(d1, d2));
    }
    // y·d2 ≡ 1 (mod d1)
    let mut mu1 = y.rem_euclid(d1);
    if 2 * mu1 > d1 {
        mu1 -= d1;
    }
    let mu2 = (mu1 * d2 - 1) / d1;
    debug_assert_eq!(mu1 * d2 - mu2 * d1, 1);
    Ok(BezoutPair { mu1, mu2, d1, d2 })
}

/// `[α]_{d1 d2} ↦ ([α]_{d1}, [α]_{d2})`.
pub fn crt_decompose(r: Residue, d1: i64, d2: i64) -> Result<(Residue, Residue)> {
    check_modulus(d1)?;
    check_modulus(d2)?;
    if gcd(d1, d2) != 1 {
        return Err(Error::NotCoprime(d1, d2));
    }
    if r.modulus() != d1 * d2 {
        return Err(Error::ModulusMismatch {
            left: r.modulus(),
            right: d1 * d2,
        });
    }
    Ok((r.reduce(d1)?, r.reduce(d2)?))
}

/// Inverse of [`crt_decompose`]: `[a·mu1·d2 − b·mu2·d1]_{d1 d2}` on basic
/// representatives.
pub fn crt_compose(a: Residue, b: Residue) -> Result<Residue> {
    let (d1, d2) = (a.modulus(), b.modulus());
    let bz = bezout(d1, d2)?;
    Ok(Residue::of(
        a.value() * bz.mu1 * d2 - b.value() * bz.mu2 * d1,
        d1 * d2,
    ))
}

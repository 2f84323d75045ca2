//! Center-preserving automorphisms of `E_N`.
//!
//! An automorphism is stored as `(S, ξ_Q, ξ_P)` with `S = (α β; γ δ) ∈ Sp_N`:
//!
//! ```text
//! T(Q) = ω̌^{ε_Q} ω^{−ξ_Q} Q^δ P^{−β}
//! T(P) = ω̌^{ε_P} ω^{−ξ_P} Q^{−γ} P^α
//! ```
//!
//! where `ε_Q = 1` exactly when N is even and `δ, β` are both odd (likewise
//! `ε_P` for `γ, α`). The ω̌ prefactor is therefore implied, never stored.

mod cocycle;
mod splitting;

pub use cocycle::{
    coboundary_from_splitting, cocycle_identity_holds, obstruction_check, section_defect,
    simple_section, simple_section_cocycle, Coboundary, CocycleValue, ObstructionReport,
    SectionCocycle,
};
pub use splitting::{
    primed_section, semidirect_compose, splitting, splitting_even, splitting_odd, tilde_t,
    SemidirectElement,
};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::heisenberg::HeisElement;
use crate::residue::Residue;
use crate::symplectic::{Mat2, SpElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Automorphism {
    s: SpElement,
    xi_q: Residue,
    xi_p: Residue,
}

/// `1` if N is even and both exponents are odd.
fn prefactor(n: i64, x: i64, y: i64) -> i64 {
    i64::from(n % 2 == 0 && x % 2 != 0 && y % 2 != 0)
}

impl Automorphism {
    pub fn new(s: SpElement, xi_q: Residue, xi_p: Residue) -> Result<Self> {
        let n = s.modulus();
        for m in [xi_q.modulus(), xi_p.modulus()] {
            if m != n {
                return Err(Error::ModulusMismatch { left: n, right: m });
            }
        }
        Ok(Self { s, xi_q, xi_p })
    }

    pub(crate) fn of(s: SpElement, xi_q: i64, xi_p: i64) -> Self {
        let n = s.modulus();
        Self {
            s,
            xi_q: Residue::of(xi_q, n),
            xi_p: Residue::of(xi_p, n),
        }
    }

    pub fn identity(n: i64) -> Result<Self> {
        Ok(Self::of(SpElement::identity(n)?, 0, 0))
    }

    /// Recovers the encoding from the images of `Q` and `P`, checking that
    /// they define an automorphism fixing the center.
    pub fn from_images(tq: HeisElement, tp: HeisElement) -> Result<Self> {
        let n = tq.n();
        if tp.n() != n {
            return Err(Error::ModulusMismatch {
                left: n,
                right: tp.n(),
            });
        }
        let bad =
            |why: &str| Error::InvalidAutomorphism(format!("{why}: T(Q) = {tq}, T(P) = {tp}"));
        if !tq.pow(n).is_identity() || !tp.pow(n).is_identity() {
            return Err(bad("images do not have order dividing N"));
        }
        let omega = HeisElement::of(2, 0, 0, n);
        if tp.mul_unchecked(&tq) != omega.mul_unchecked(&tq.mul_unchecked(&tp)) {
            return Err(bad("T(P)T(Q) != ω T(Q)T(P)"));
        }
        let delta = tq.qpow().value();
        let beta = (-tq.ppow()).value();
        let gamma = (-tp.qpow()).value();
        let alpha = tp.ppow().value();
        let s = SpElement::new(Mat2::of([alpha, beta, gamma, delta], n))?;
        let xi = |phase: Residue, eps: i64| -> Result<i64> {
            let r = (phase.value() - eps).rem_euclid(2 * n);
            if r % 2 != 0 {
                return Err(bad("phase is not of the general form"));
            }
            Ok(-(r / 2))
        };
        let xi_q = xi(tq.phase(), prefactor(n, delta, beta))?;
        let xi_p = xi(tp.phase(), prefactor(n, gamma, alpha))?;
        Ok(Self::of(s, xi_q, xi_p))
    }

    pub fn n(&self) -> i64 {
        self.s.modulus()
    }

    pub fn matrix(&self) -> &SpElement {
        &self.s
    }

    pub fn xi_q(&self) -> Residue {
        self.xi_q
    }

    pub fn xi_p(&self) -> Residue {
        self.xi_p
    }

    pub fn image_q(&self) -> HeisElement {
        let n = self.n();
        let [_, b, _, d] = self.s.entries();
        let e = prefactor(n, d, b) - 2 * self.xi_q.value();
        HeisElement::of(e, d, -b, n)
    }

    pub fn image_p(&self) -> HeisElement {
        let n = self.n();
        let [a, _, c, _] = self.s.entries();
        let e = prefactor(n, c, a) - 2 * self.xi_p.value();
        HeisElement::of(e, -c, a, n)
    }

    /// `T(ω̌^e Q^n P^p) = ω̌^e T(Q)^n T(P)^p`.
    pub fn apply(&self, x: &HeisElement) -> Result<HeisElement> {
        if x.n() != self.n() {
            return Err(Error::ModulusMismatch {
                left: self.n(),
                right: x.n(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &HeisElement) -> HeisElement {
        let n = self.n();
        let a = self.image_q().pow(x.qpow().value());
        let b = self.image_p().pow(x.ppow().value());
        HeisElement::of(x.phase().value(), 0, 0, n)
            .mul_unchecked(&a)
            .mul_unchecked(&b)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::ModulusMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        let tq = self.apply_unchecked(&other.image_q());
        let tp = self.apply_unchecked(&other.image_p());
        Self::from_images(tq, tp).expect("composition of automorphisms is an automorphism")
    }

    pub fn inverse(&self) -> Self {
        // U has matrix S⁻¹ and no phase shift, so T∘U is a pure kernel element K
        let u = Self::of(self.s.inverse(), 0, 0);
        let k = self.compose_unchecked(&u);
        u.compose_unchecked(&Self::of(k.s, -k.xi_q.value(), -k.xi_p.value()))
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self::of(SpElement::identity(self.n()).expect("valid modulus"), 0, 0);
        for _ in 0..k {
            acc = acc.compose_unchecked(self);
        }
        acc
    }

    /// `Π(T) = S`.
    pub fn project(&self) -> SpElement {
        self.s
    }

    pub fn is_identity(&self) -> bool {
        self.s.is_identity() && self.xi_q.is_zero() && self.xi_p.is_zero()
    }

    /// The kernel element this automorphism is, if `Π(T) = I`.
    pub fn as_kernel(&self) -> Option<KernelElement> {
        self.s.is_identity().then_some(KernelElement {
            xi_q: self.xi_q,
            xi_p: self.xi_p,
        })
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q -> {}, P -> {}", self.image_q(), self.image_p())
    }
}

pub fn apply(t: &Automorphism, x: &HeisElement) -> Result<HeisElement> {
    t.apply(x)
}

pub fn compose(t1: &Automorphism, t2: &Automorphism) -> Result<Automorphism> {
    t1.compose(t2)
}

pub fn project(t: &Automorphism) -> SpElement {
    t.project()
}

/// An element of `Γ_N = Ker Π`: `Q ↦ ω^{−ξ_Q} Q`, `P ↦ ω^{−ξ_P} P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KernelElement {
    pub xi_q: Residue,
    pub xi_p: Residue,
}

impl KernelElement {
    pub fn new(xi_q: i64, xi_p: i64, n: i64) -> Result<Self> {
        Ok(Self {
            xi_q: Residue::new(xi_q, n)?,
            xi_p: Residue::new(xi_p, n)?,
        })
    }

    pub fn identity(n: i64) -> Result<Self> {
        Self::new(0, 0, n)
    }

    pub fn n(&self) -> i64 {
        self.xi_q.modulus()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            xi_q: self.xi_q.checked_add(other.xi_q)?,
            xi_p: self.xi_p.checked_add(other.xi_p)?,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            xi_q: -self.xi_q,
            xi_p: -self.xi_p,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.xi_q.is_zero() && self.xi_p.is_zero()
    }

    pub fn is_two_torsion(&self) -> bool {
        self.add(self).expect("same modulus").is_identity()
    }

    pub fn to_automorphism(&self) -> Automorphism {
        Automorphism::of(
            SpElement::identity(self.n()).expect("valid modulus"),
            self.xi_q.value(),
            self.xi_p.value(),
        )
    }

    /// The action of `Sp_N` by conjugation through any preimage:
    /// `T K_ξ T⁻¹ = K_{g·ξ}` with `g·ξ = ξ·ᵗg` for `Π(T) = g`.
    pub fn act(&self, g: &SpElement) -> Result<Self> {
        if g.modulus() != self.n() {
            return Err(Error::ModulusMismatch {
                left: self.n(),
                right: g.modulus(),
            });
        }
        let [a, b, c, d] = g.entries();
        let (x, y) = (self.xi_q.value(), self.xi_p.value());
        let n = self.n();
        Ok(Self {
            xi_q: Residue::of(x * a + y * b, n),
            xi_p: Residue::of(x * c + y * d, n),
        })
    }
}

impl fmt::Display for KernelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "xi = ({}, {}) mod {}",
            self.xi_q.value(),
            self.xi_p.value(),
            self.n()
        )
    }
}

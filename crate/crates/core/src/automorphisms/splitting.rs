//! Homomorphic sections `Sp_N → Tp_N` and the semidirect product law.

use serde::{Deserialize, Serialize};

use super::{Automorphism, KernelElement};
use crate::error::{Error, Result};
use crate::heisenberg::HeisElement;
use crate::symplectic::{stg, Mat2, SpElement, SpTildeElement};

/// `Σ` for odd N:
/// `T(Q) = ω̌^{−δβ+δβN} Q^δ P^{−β}`, `T(P) = ω̌^{−γα+γαN} Q^{−γ} P^α`.
pub fn splitting_odd(s: &SpElement) -> Result<Automorphism> {
    let n = s.modulus();
    if n % 2 == 0 {
        return Err(Error::WrongParity(n));
    }
    let [a, b, c, d] = s.entries();
    let tq = HeisElement::of(-d * b + d * b * n, d, -b, n);
    let tp = HeisElement::of(-c * a + c * a * n, -c, a, n);
    Automorphism::from_images(tq, tp)
}

/// `Σ` for `N = 2(2k+1)`, written on the hats `x̂ = x + ⌊x/2⌋N` of the basic
/// representatives.
pub fn splitting_even(s: &SpElement) -> Result<Automorphism> {
    let n = s.modulus();
    if n % 4 != 2 {
        return Err(Error::WrongShape {
            n,
            expected: "N = 2(2k+1)",
        });
    }
    let h = s.mat().hats();
    let [a, b, c, d] = h;
    let st = stg(&SpTildeElement::new(Mat2::of(h, 2 * n), n)?);
    let tq = HeisElement::of(-d * b + c * a * n + st * n, d, -b, n);
    let tp = HeisElement::of(-c * a + d * b * n + st * n, -c, a, n);
    Automorphism::from_images(tq, tp)
}

/// `Σ`, dispatched on N.
pub fn splitting(s: &SpElement) -> Result<Automorphism> {
    let n = s.modulus();
    match n % 4 {
        2 => splitting_even(s),
        0 => Err(Error::NoSplitting(n)),
        _ => splitting_odd(s),
    }
}

/// `T̃` on `S̃p_2N` for even N:
/// `T̃(Q) = ω̌^{−δ̃β̃+stg·N} Q^δ̃ P^{−β̃}`, `T̃(P) = ω̌^{−γ̃α̃+stg·N} Q^{−γ̃} P^α̃`.
pub fn tilde_t(st: &SpTildeElement) -> Result<Automorphism> {
    let n = st.base_n();
    if n % 2 != 0 {
        return Err(Error::WrongParity(n));
    }
    let [a, b, c, d] = st.mat().entries();
    let g = stg(st);
    let tq = HeisElement::of(-d * b + g * n, d, -b, n);
    let tp = HeisElement::of(-c * a + g * n, -c, a, n);
    Automorphism::from_images(tq, tp)
}

/// The alternative odd-N section
/// `T'(Q) = ω̌^{αβ−αβN} Q^α P^β`, `T'(P) = ω̌^{γδ−γδN} Q^γ P^δ`.
/// It reverses products, and `Σ(S) = T'(S⁻¹)`.
pub fn primed_section(s: &SpElement) -> Result<Automorphism> {
    let n = s.modulus();
    if n % 2 == 0 {
        return Err(Error::WrongParity(n));
    }
    let [a, b, c, d] = s.entries();
    let tq = HeisElement::of(a * b - a * b * n, a, b, n);
    let tp = HeisElement::of(c * d - c * d * n, c, d, n);
    Automorphism::from_images(tq, tp)
}

/// A pair `(ξ, g) ∈ Γ_N ⋊ Sp_N`, standing for `K_ξ ∘ Σ(g)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemidirectElement {
    pub kernel: KernelElement,
    pub sp: SpElement,
}

impl SemidirectElement {
    pub fn new(kernel: KernelElement, sp: SpElement) -> Result<Self> {
        if kernel.n() != sp.modulus() {
            return Err(Error::ModulusMismatch {
                left: kernel.n(),
                right: sp.modulus(),
            });
        }
        Ok(Self { kernel, sp })
    }

    /// `K_ξ ∘ Σ(g)`.
    pub fn to_automorphism(&self) -> Result<Automorphism> {
        Ok(self
            .kernel
            .to_automorphism()
            .compose_unchecked(&splitting(&self.sp)?))
    }

    /// Inverse of [`Self::to_automorphism`].
    pub fn from_automorphism(t: &Automorphism) -> Result<Self> {
        let sigma = splitting(&t.project())?;
        let k = t
            .compose_unchecked(&sigma.inverse())
            .as_kernel()
            .expect("T Σ(ΠT)⁻¹ lies in the kernel");
        Ok(Self {
            kernel: k,
            sp: t.project(),
        })
    }
}

/// `(a, g)(a′, g′) = (a + g·a′, gg′)`.
pub fn semidirect_compose(
    x: &SemidirectElement,
    y: &SemidirectElement,
) -> Result<SemidirectElement> {
    let n = x.sp.modulus();
    if n % 4 == 0 {
        return Err(Error::NoSplitting(n));
    }
    Ok(SemidirectElement {
        kernel: x.kernel.add(&y.kernel.act(&x.sp)?)?,
        sp: x.sp.mul(&y.sp)?,
    })
}

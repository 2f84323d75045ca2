//! The simple section `S ↦ T̃([S_(N)]_2N)`, its 2-cocycle, the coboundary
//! that trivializes it when a splitting exists, and the obstruction for 4 | N.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::splitting::{splitting, tilde_t};
use super::{Automorphism, KernelElement};
use crate::error::{Error, Result};
use crate::symplectic::{enumerate_sp, Mat2, SpElement, SpTildeElement};

/// `T_{c1,c2}: (Q, P) ↦ (c1 Q, c2 P)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CocycleValue {
    pub c1: i8,
    pub c2: i8,
}

impl CocycleValue {
    pub const TRIVIAL: Self = Self { c1: 1, c2: 1 };

    pub fn mul(&self, other: &Self) -> Self {
        Self {
            c1: self.c1 * other.c1,
            c2: self.c2 * other.c2,
        }
    }

    /// The kernel element with `ξ ∈ {0, N/2}`; requires even N.
    pub fn to_kernel(&self, n: i64) -> Result<KernelElement> {
        if n % 2 != 0 {
            return Err(Error::WrongShape {
                n,
                expected: "even N",
            });
        }
        let x = |c: i8| if c < 0 { n / 2 } else { 0 };
        KernelElement::new(x(self.c1), x(self.c2), n)
    }

    pub fn from_kernel(k: &KernelElement) -> Option<Self> {
        let n = k.n();
        let sign = |x: i64| match x {
            0 => Some(1),
            x if n % 2 == 0 && x == n / 2 => Some(-1),
            _ => None,
        };
        Some(Self {
            c1: sign(k.xi_q.value())?,
            c2: sign(k.xi_p.value())?,
        })
    }
}

impl fmt::Display for CocycleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |c: i8| if c < 0 { "-1" } else { "+1" };
        write!(f, "({}, {})", s(self.c1), s(self.c2))
    }
}

/// `S ↦ T̃([S_(N)]_2N)` for even N: lift the basic representatives to Z_2N.
pub fn simple_section(s: &SpElement) -> Result<Automorphism> {
    let n = s.modulus();
    tilde_t(&SpTildeElement::new(Mat2::of(s.entries(), 2 * n), n)?)
}

/// `T_{S1S2}⁻¹ T_{S1} T_{S2}` for the simple section, computed by composing.
pub fn section_defect(s1: &SpElement, s2: &SpElement) -> Result<KernelElement> {
    let prod = s1.mul(s2)?;
    let lhs = simple_section(s1)?.compose_unchecked(&simple_section(s2)?);
    let d = simple_section(&prod)?.inverse().compose_unchecked(&lhs);
    Ok(d.as_kernel()
        .expect("section defect projects to the identity"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionCocycle {
    pub value: CocycleValue,
    /// Set for odd N, where the value is the trivial placeholder.
    pub odd_n_trivial: bool,
}

/// `(S1)_(N) (S2)_(N)` over the integers, without reduction.
pub(crate) fn integer_product(s1: &SpElement, s2: &SpElement) -> [i64; 4] {
    let [a1, b1, c1, d1] = s1.entries();
    let [a2, b2, c2, d2] = s2.entries();
    [
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
    ]
}

/// Closed form of the simple-section cocycle for even N, read off the
/// integer product `S′ = (S1)_(N) (S2)_(N)`:
/// `c1 = (−1)^{⟦δ′,β′⟧+⟦α′,δ′⟧+⟦β′,γ′⟧}`, `c2 = (−1)^{⟦γ′,α′⟧+⟦α′,δ′⟧+⟦β′,γ′⟧}`
/// with `⟦x,y⟧ = ⟨x⟩y + x⟨y⟩` and `⟨x⟩ = (x_(2N) − x_(N))/N`.
pub fn simple_section_cocycle(s1: &SpElement, s2: &SpElement) -> Result<SectionCocycle> {
    let n = s1.modulus();
    if s2.modulus() != n {
        return Err(Error::ModulusMismatch {
            left: n,
            right: s2.modulus(),
        });
    }
    if n % 2 != 0 {
        return Ok(SectionCocycle {
            value: CocycleValue::TRIVIAL,
            odd_n_trivial: true,
        });
    }
    let [a, b, c, d] = integer_product(s1, s2);
    let angle = |x: i64| (x.rem_euclid(2 * n) - x.rem_euclid(n)) / n;
    let br = |x: i64, y: i64| angle(x) * y + x * angle(y);
    let common = br(a, d) + br(b, c);
    let sign = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
    Ok(SectionCocycle {
        value: CocycleValue {
            c1: sign(br(d, b) + common),
            c2: sign(br(c, a) + common),
        },
        odd_n_trivial: false,
    })
}

fn closed_form_kernel(g: &SpElement, h: &SpElement) -> Result<KernelElement> {
    simple_section_cocycle(g, h)?.value.to_kernel(g.modulus())
}

/// The cocycle identity for `T_g T_h = T_{gh} C(g, h)`:
/// `C(gh, k) + k⁻¹·C(g, h) = C(g, hk) + C(h, k)`.
pub fn cocycle_identity_holds(g: &SpElement, h: &SpElement, k: &SpElement) -> Result<bool> {
    let gh = g.mul(h)?;
    let hk = h.mul(k)?;
    let lhs = closed_form_kernel(&gh, k)?.add(&closed_form_kernel(g, h)?.act(&k.inverse())?)?;
    let rhs = closed_form_kernel(g, &hk)?.add(&closed_form_kernel(h, k)?)?;
    Ok(lhs == rhs)
}

/// `b(S) = T_S Σ(S)⁻¹` over all of `Sp_N`, where `T_S` is the simple section.
#[derive(Clone, Debug)]
pub struct Coboundary {
    pub n: i64,
    pub elements: Vec<SpElement>,
    pub values: Vec<KernelElement>,
    index: HashMap<SpElement, usize>,
}

impl Coboundary {
    pub fn get(&self, s: &SpElement) -> Option<KernelElement> {
        self.index.get(s).map(|&i| self.values[i])
    }

    /// `(gh)⁻¹·[b(g) + g·b(h) − b(gh)]`, which must equal `C(g, h)`.
    pub fn delta(&self, g: &SpElement, h: &SpElement) -> Result<KernelElement> {
        let gh = g.mul(h)?;
        let missing = || Error::Construction(format!("element outside Sp_{}", self.n));
        let bg = self.get(g).ok_or_else(missing)?;
        let bh = self.get(h).ok_or_else(missing)?;
        let bgh = self.get(&gh).ok_or_else(missing)?;
        bg.add(&bh.act(g)?)?.add(&bgh.neg())?.act(&gh.inverse())
    }
}

pub fn coboundary_from_splitting(n: i64) -> Result<Coboundary> {
    if n % 4 != 2 {
        return Err(if n % 4 == 0 {
            Error::NoSplitting(n)
        } else {
            Error::WrongShape {
                n,
                expected: "N = 2(2k+1)",
            }
        });
    }
    let elements = enumerate_sp(n)?;
    let mut values = Vec::with_capacity(elements.len());
    for s in &elements {
        let t = simple_section(s)?.compose_unchecked(&splitting(s)?.inverse());
        values.push(t.as_kernel().ok_or_else(|| {
            Error::Construction(format!("T_S Σ(S)^-1 is not in the kernel at S = {s}"))
        })?);
    }
    let index = elements.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    Ok(Coboundary {
        n,
        elements,
        values,
        index,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub n: i64,
    /// Tuples `(a, b, c, d)` examined.
    pub candidates: u64,
    /// `(a, b)` with `T_{h_Q}^N = I`.
    pub power_ok: u64,
    /// `(a, b, c, d)` with `T_{h_Q} T_{h_J}² = T_{h_J}² T_{h_Q}`.
    pub commute_ok: u64,
    /// Tuples satisfying both.
    pub both_ok: u64,
    pub satisfiable: bool,
    /// Distinct `b` over all satisfying tuples, ascending.
    pub b_values: Vec<i64>,
}

/// Runs through every `T_{h_Q}: Q ↦ ω̌ ω^a Q P^{−1}, P ↦ ω^b P` and
/// `T_{h_J}: Q ↦ ω^c P^{−1}, P ↦ ω^d Q` and tests the two relations any
/// splitting must satisfy.
pub fn obstruction_check(n: i64) -> Result<ObstructionReport> {
    let hq = SpElement::h_q(n)?;
    let hj = SpElement::h_j(n)?;
    let id = Automorphism::identity(n)?;
    let mut report = ObstructionReport {
        n,
        candidates: 0,
        power_ok: 0,
        commute_ok: 0,
        both_ok: 0,
        satisfiable: false,
        b_values: Vec::new(),
    };
    let tjs: Vec<Automorphism> = (0..n * n)
        .map(|i| Automorphism::of(hj, -(i / n), -(i % n)))
        .collect();
    let tj2: Vec<Automorphism> = tjs.iter().map(|t| t.compose_unchecked(t)).collect();
    for a in 0..n {
        for b in 0..n {
            let tq = Automorphism::of(hq, -a, -b);
            let power = tq.pow(n as u64) == id;
            report.power_ok += u64::from(power);
            for j2 in &tj2 {
                report.candidates += 1;
                let commute = tq.compose_unchecked(j2) == j2.compose_unchecked(&tq);
                report.commute_ok += u64::from(commute);
                if power && commute {
                    report.both_ok += 1;
                    if !report.b_values.contains(&b) {
                        report.b_values.push(b);
                    }
                }
            }
        }
    }
    report.b_values.sort_unstable();
    report.satisfiable = report.both_ok > 0;
    Ok(report)
}

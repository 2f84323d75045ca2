//! 2×2 matrix groups over Z_N: `Sp_N` (determinant 1), the tilde group
//! `S̃p_2N` (determinant 1 or 1+N mod 2N), their CRT factorizations and the
//! maps between them used to build the even-N splitting.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cayley::CayleyTree;
use crate::error::{Error, Result};
use crate::residue::{bezout, Residue};

/// Largest N accepted by [`enumerate_sp`].
pub const DEFAULT_ENUM_BOUND: i64 = 24;

/// For `n = 2(2k+1)` returns `k`.
pub fn twice_odd_k(n: i64) -> Result<i64> {
    if n >= 2 && n % 4 == 2 {
        Ok((n / 2 - 1) / 2)
    } else {
        Err(Error::WrongShape {
            n,
            expected: "N = 2(2k+1)",
        })
    }
}

/// A 2×2 matrix `(a b; c d)` over Z_N, entries stored as basic
/// representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    entries: [i64; 4],
    modulus: i64,
}

impl Mat2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64, modulus: i64) -> Result<Self> {
        if modulus < 1 {
            return Err(Error::InvalidModulus(modulus));
        }
        Ok(Self::of([a, b, c, d], modulus))
    }

    pub(crate) fn of(e: [i64; 4], modulus: i64) -> Self {
        Self {
            entries: e.map(|x| x.rem_euclid(modulus)),
            modulus,
        }
    }

    pub fn from_residues(a: Residue, b: Residue, c: Residue, d: Residue) -> Result<Self> {
        let n = a.modulus();
        for x in [b, c, d] {
            if x.modulus() != n {
                return Err(Error::ModulusMismatch {
                    left: n,
                    right: x.modulus(),
                });
            }
        }
        Ok(Self::of([a.value(), b.value(), c.value(), d.value()], n))
    }

    pub fn identity(modulus: i64) -> Result<Self> {
        Self::new(1, 0, 0, 1, modulus)
    }

    /// Basic representatives `[α, β, γ, δ]`.
    pub fn entries(&self) -> [i64; 4] {
        self.entries
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn alpha(&self) -> Residue {
        Residue::of(self.entries[0], self.modulus)
    }

    pub fn beta(&self) -> Residue {
        Residue::of(self.entries[1], self.modulus)
    }

    pub fn gamma(&self) -> Residue {
        Residue::of(self.entries[2], self.modulus)
    }

    pub fn delta(&self) -> Residue {
        Residue::of(self.entries[3], self.modulus)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let [a, b, c, d] = self.entries;
        let [e, f, g, h] = other.entries;
        Self::of(
            [a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h],
            self.modulus,
        )
    }

    pub fn det(&self) -> Residue {
        let [a, b, c, d] = self.entries;
        Residue::of(a * d - b * c, self.modulus)
    }

    /// Entry-wise `[·]_m` for `m | N`.
    pub fn reduce(&self, m: i64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidModulus(m));
        }
        if self.modulus % m != 0 {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: m,
            });
        }
        Ok(Self::of(self.entries, m))
    }

    /// Entry-wise hat map, as integers.
    pub fn hats(&self) -> [i64; 4] {
        self.entries.map(|x| x + x.div_euclid(2) * self.modulus)
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]]_{}", self.modulus)
    }
}

pub fn is_sp(x: &Mat2) -> bool {
    x.det().value() == 1 % x.modulus()
}

/// Membership in `S̃p_2N` for a matrix over Z_2N.
pub fn is_sp_tilde(x: &Mat2, n: i64) -> bool {
    if x.modulus() != 2 * n || n < 1 {
        return false;
    }
    let d = x.det().value();
    d == 1 % (2 * n) || d == (1 + n) % (2 * n)
}

/// An element of `Sp_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpElement(Mat2);

impl SpElement {
    pub fn new(mat: Mat2) -> Result<Self> {
        if is_sp(&mat) {
            Ok(Self(mat))
        } else {
            Err(Error::NotSymplectic(mat.to_string()))
        }
    }

    pub fn from_entries(a: i64, b: i64, c: i64, d: i64, n: i64) -> Result<Self> {
        Self::new(Mat2::new(a, b, c, d, n)?)
    }

    pub fn identity(n: i64) -> Result<Self> {
        Self::from_entries(1, 0, 0, 1, n)
    }

    /// `h_Q = (1 1; 0 1)`.
    pub fn h_q(n: i64) -> Result<Self> {
        Self::from_entries(1, 1, 0, 1, n)
    }

    /// `h_P = (1 0; 1 1)`.
    pub fn h_p(n: i64) -> Result<Self> {
        Self::from_entries(1, 0, 1, 1, n)
    }

    /// `h_J = (0 1; -1 0)`.
    pub fn h_j(n: i64) -> Result<Self> {
        Self::from_entries(0, 1, -1, 0, n)
    }

    pub fn mat(&self) -> &Mat2 {
        &self.0
    }

    pub fn modulus(&self) -> i64 {
        self.0.modulus
    }

    pub fn entries(&self) -> [i64; 4] {
        self.0.entries
    }

    pub fn is_identity(&self) -> bool {
        self.0.entries == Mat2::of([1, 0, 0, 1], self.0.modulus).entries
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(Self(self.0.mul(&other.0)?))
    }

    /// `(α β; γ δ)⁻¹ = (δ −β; −γ α)`.
    pub fn inverse(&self) -> Self {
        let [a, b, c, d] = self.0.entries;
        Self(Mat2::of([d, -b, -c, a], self.0.modulus))
    }

    pub fn transpose(&self) -> Self {
        let [a, b, c, d] = self.0.entries;
        Self(Mat2::of([a, c, b, d], self.0.modulus))
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = Self(Mat2::of([1, 0, 0, 1], self.0.modulus));
        for _ in 0..k {
            acc = Self(acc.0.mul_unchecked(&self.0));
        }
        acc
    }

    pub fn reduce(&self, m: i64) -> Result<Self> {
        Self::new(self.0.reduce(m)?)
    }
}

impl fmt::Display for SpElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Matrix inverse for the plumbing API: requires determinant 1.
pub fn mat_inv(x: &Mat2) -> Result<SpElement> {
    if !is_sp(x) {
        return Err(Error::NonUnitDeterminant {
            det: x.det().value(),
            modulus: x.modulus(),
        });
    }
    Ok(SpElement(*x).inverse())
}

/// An element of `S̃p_2N`, stored over Z_2N together with N.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpTildeElement {
    mat: Mat2,
    base_n: i64,
}

impl SpTildeElement {
    pub fn new(mat: Mat2, base_n: i64) -> Result<Self> {
        if is_sp_tilde(&mat, base_n) {
            Ok(Self { mat, base_n })
        } else {
            Err(Error::NotSymplectic(format!("{mat} (tilde, N = {base_n})")))
        }
    }

    pub fn identity(base_n: i64) -> Result<Self> {
        Self::new(Mat2::identity(2 * base_n)?, base_n)
    }

    pub fn mat(&self) -> &Mat2 {
        &self.mat
    }

    pub fn base_n(&self) -> i64 {
        self.base_n
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.base_n != other.base_n {
            return Err(Error::ModulusMismatch {
                left: self.base_n,
                right: other.base_n,
            });
        }
        Ok(Self {
            mat: self.mat.mul_unchecked(&other.mat),
            base_n: self.base_n,
        })
    }

    /// `[S̃]_N ∈ Sp_N`.
    pub fn project(&self) -> SpElement {
        SpElement(Mat2::of(self.mat.entries, self.base_n))
    }

    /// Staggered factor `((det S̃ − 1)/N)_{(2)}`.
    pub fn stg(&self) -> i64 {
        stg(self)
    }
}

impl fmt::Display for SpTildeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.mat.fmt(f)
    }
}

/// Staggered factor `((det S̃ − 1)/N)_{(2)} ∈ {0, 1}`.
pub fn stg(s: &SpTildeElement) -> i64 {
    let n = s.base_n;
    let d = s.mat.det().value();
    // d − 1 ∈ {0, N} mod 2N
    ((d - 1).rem_euclid(2 * n) / n).rem_euclid(2)
}

/// Every element of `Sp_n` in lexicographic order of `(α, β, γ, δ)`.
pub fn enumerate_sp(n: i64) -> Result<Vec<SpElement>> {
    enumerate_sp_bounded(n, DEFAULT_ENUM_BOUND)
}

pub fn enumerate_sp_bounded(n: i64, bound: i64) -> Result<Vec<SpElement>> {
    if n < 1 {
        return Err(Error::InvalidModulus(n));
    }
    if n > bound {
        return Err(Error::SizeBound {
            what: "N",
            value: n,
            bound,
        });
    }
    let one = 1 % n;
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if (a * d - b * c).rem_euclid(n) == one {
                        out.push(SpElement(Mat2::of([a, b, c, d], n)));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Closure of `{h_Q, h_P}` in `Sp_n`, breadth first.
pub fn sp_cayley_tree(n: i64) -> Result<CayleyTree<SpElement>> {
    let gens = [SpElement::h_q(n)?, SpElement::h_p(n)?];
    Ok(CayleyTree::build(SpElement::identity(n)?, &gens, |a, b| {
        SpElement(a.0.mul_unchecked(&b.0))
    }))
}

/// The injective homomorphism `Sp_2 → S̃p_4`, `S ↦ [S_(2) + 2ΔS]_4` with
/// `ΔS = (α+γ−1, 1−δ; 1−α, δ+β−1)` on basic representatives.
pub fn sp2_embed(s: &SpElement) -> Result<SpTildeElement> {
    if s.modulus() != 2 {
        return Err(Error::WrongShape {
            n: s.modulus(),
            expected: "an element of Sp_2",
        });
    }
    let [a, b, c, d] = s.entries();
    let delta = [a + c - 1, 1 - d, 1 - a, d + b - 1];
    let e = [
        a + 2 * delta[0],
        b + 2 * delta[1],
        c + 2 * delta[2],
        d + 2 * delta[3],
    ];
    SpTildeElement::new(Mat2::of(e, 4), 2)
}

/// Entry-wise CRT split `Sp_{2(2k+1)} → Sp_2 × Sp_{2k+1}`.
pub fn crt_split_sp(s: &SpElement) -> Result<(SpElement, SpElement)> {
    let n = s.modulus();
    let k = twice_odd_k(n)?;
    Ok((s.reduce(2)?, s.reduce(2 * k + 1)?))
}

fn crt_join_entries(x: &Mat2, y: &Mat2) -> Result<Mat2> {
    let mut e = [0i64; 4];
    let (d1, d2) = (x.modulus(), y.modulus());
    let bz = bezout(d1, d2)?;
    for (i, slot) in e.iter_mut().enumerate() {
        *slot = x.entries[i] * bz.mu1 * d2 - y.entries[i] * bz.mu2 * d1;
    }
    Ok(Mat2::of(e, d1 * d2))
}

/// Inverse of [`crt_split_sp`].
pub fn crt_join_sp(two: &SpElement, odd: &SpElement) -> Result<SpElement> {
    if two.modulus() != 2 || odd.modulus() % 2 == 0 {
        return Err(Error::WrongShape {
            n: two.modulus() * odd.modulus(),
            expected: "a pair in Sp_2 × Sp_{2k+1}",
        });
    }
    SpElement::new(crt_join_entries(two.mat(), odd.mat())?)
}

/// `S̃p_{4(2k+1)} → S̃p_4 × Sp_{2k+1}`.
pub fn crt_split_sp_tilde(st: &SpTildeElement) -> Result<(SpTildeElement, SpElement)> {
    let k = twice_odd_k(st.base_n)?;
    let four = SpTildeElement::new(st.mat.reduce(4)?, 2)?;
    let odd = SpElement::new(st.mat.reduce(2 * k + 1)?)?;
    Ok((four, odd))
}

/// Inverse of [`crt_split_sp_tilde`].
pub fn crt_join_sp_tilde(four: &SpTildeElement, odd: &SpElement) -> Result<SpTildeElement> {
    if four.base_n != 2 || odd.modulus() % 2 == 0 {
        return Err(Error::WrongShape {
            n: 2 * odd.modulus(),
            expected: "a pair in S̃p_4 × Sp_{2k+1}",
        });
    }
    SpTildeElement::new(crt_join_entries(&four.mat, odd.mat())?, 2 * odd.modulus())
}

/// `Φ: Sp_{2(2k+1)} → S̃p_{4(2k+1)}`, `S ↦ [Ŝ + C·N]_2N` with
/// `C = (α̂−1+γ̂, 1−δ̂; 1−α̂, δ̂−1+β̂)`.
pub fn phi_big(s: &SpElement) -> Result<SpTildeElement> {
    let n = s.modulus();
    twice_odd_k(n)?;
    let [a, b, c, d] = s.mat().hats();
    let corr = [a - 1 + c, 1 - d, 1 - a, d - 1 + b];
    let e = [
        a + corr[0] * n,
        b + corr[1] * n,
        c + corr[2] * n,
        d + corr[3] * n,
    ];
    SpTildeElement::new(Mat2::of(e, 2 * n), n)
}

/// The twisted isomorphism `λ = (λ_2, λ_{2k+1})`:
/// `λ_2(S) = [S]_2`, `λ_{2k+1}(S) = [α, −kβ; 2γ, δ]_{2k+1}`.
pub fn lambda_split(s: &SpElement) -> Result<(SpElement, SpElement)> {
    let n = s.modulus();
    let k = twice_odd_k(n)?;
    let odd = 2 * k + 1;
    let [a, b, c, d] = s.entries();
    let two = s.reduce(2)?;
    let twisted = SpElement::new(Mat2::of([a, -k * b, 2 * c, d], odd))?;
    Ok((two, twisted))
}

/// A homomorphic section of `S̃p_4 → Sp_2` (reduction mod 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sp2Splitting {
    pub image_hq: SpTildeElement,
    pub image_hp: SpTildeElement,
    /// `(S, f(S))` for every `S ∈ Sp_2`, in breadth-first order.
    pub table: Vec<(SpElement, SpTildeElement)>,
}

impl Sp2Splitting {
    pub fn apply(&self, s: &SpElement) -> Option<SpTildeElement> {
        self.table.iter().find(|(x, _)| x == s).map(|(_, y)| *y)
    }
}

fn tilde_pow(x: &SpTildeElement, k: u32) -> SpTildeElement {
    let mut acc = SpTildeElement {
        mat: Mat2::of([1, 0, 0, 1], 4),
        base_n: 2,
    };
    for _ in 0..k {
        acc = acc.mul(x).expect("same base");
    }
    acc
}

/// Every lift of `s ∈ Sp_2` into `S̃p_4` (reduces to `s` mod 2).
fn sp_tilde4_lifts(s: &SpElement) -> Vec<SpTildeElement> {
    let e = s.entries();
    let mut out = Vec::new();
    for bits in 0..16u32 {
        let lifted: [i64; 4] = std::array::from_fn(|i| e[i] + 2 * ((bits >> i) & 1) as i64);
        if let Ok(t) = SpTildeElement::new(Mat2::of(lifted, 4), 2) {
            out.push(t);
        }
    }
    out
}

/// Exhaustive search for the homomorphic sections `Sp_2 → S̃p_4`.
///
/// Images of `h_Q` and `h_P` are restricted to lifts of order 2 (the order
/// of both generators in `Sp_2`); each candidate pair is extended along the
/// Cayley tree and kept only if it is multiplicative on all 36 pairs.
pub fn find_sp2_splittings() -> Result<Vec<Sp2Splitting>> {
    let tree = sp_cayley_tree(2)?;
    let hq = SpElement::h_q(2)?;
    let hp = SpElement::h_p(2)?;
    let id4 = SpTildeElement::identity(2)?;
    let order_two = |x: &SpTildeElement| tilde_pow(x, 2) == id4;
    let cand_q: Vec<_> = sp_tilde4_lifts(&hq).into_iter().filter(order_two).collect();
    let cand_p: Vec<_> = sp_tilde4_lifts(&hp).into_iter().filter(order_two).collect();

    let mut found = Vec::new();
    for aq in &cand_q {
        for ap in &cand_p {
            let images = tree.extend(id4, &[*aq, *ap], |x, y| x.mul(y).expect("same base"));
            let hom = (0..tree.len()).all(|i| {
                (0..tree.len()).all(|j| {
                    let prod = tree.elements[i]
                        .mul(&tree.elements[j])
                        .expect("same modulus");
                    let k = tree.index_of(&prod).expect("closed");
                    images[k] == images[i].mul(&images[j]).expect("same base")
                })
            });
            if hom {
                found.push(Sp2Splitting {
                    image_hq: *aq,
                    image_hp: *ap,
                    table: tree.elements.iter().copied().zip(images).collect(),
                });
            }
        }
    }
    Ok(found)
}

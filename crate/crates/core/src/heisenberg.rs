//! The finite Heisenberg group `E_N` with phases restricted to powers of
//! `ω̌ = exp(2πi / 2N)`, and its Schrödinger representation.
//!
//! Elements are kept in the normal form `ω̌^e Q^n P^p` with `e` mod 2N and
//! `n, p` mod N. Reordering uses `PQ = ωQP`.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::residue::Residue;

pub type CMatrix = DMatrix<Complex64>;

/// `exp(2πi · k / m)`.
pub fn root_of_unity(k: i64, m: i64) -> Complex64 {
    let k = k.rem_euclid(m);
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / m as f64)
}

/// `ω̌^phase · Q^qpow · P^ppow`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HeisElement {
    phase: Residue,
    qpow: Residue,
    ppow: Residue,
}

impl HeisElement {
    pub fn new(phase: i64, qpow: i64, ppow: i64, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidModulus(n));
        }
        Ok(Self::of(phase, qpow, ppow, n))
    }

    pub(crate) fn of(phase: i64, qpow: i64, ppow: i64, n: i64) -> Self {
        Self {
            phase: Residue::of(phase, 2 * n),
            qpow: Residue::of(qpow, n),
            ppow: Residue::of(ppow, n),
        }
    }

    pub fn from_residues(phase: Residue, qpow: Residue, ppow: Residue) -> Result<Self> {
        let n = qpow.modulus();
        if ppow.modulus() != n || phase.modulus() != 2 * n {
            return Err(Error::ModulusMismatch {
                left: n,
                right: if ppow.modulus() != n {
                    ppow.modulus()
                } else {
                    phase.modulus()
                },
            });
        }
        Ok(Self { phase, qpow, ppow })
    }

    pub fn identity(n: i64) -> Result<Self> {
        Self::new(0, 0, 0, n)
    }

    pub fn q(n: i64) -> Result<Self> {
        Self::new(0, 1, 0, n)
    }

    pub fn p(n: i64) -> Result<Self> {
        Self::new(0, 0, 1, n)
    }

    /// The central element `ω̌^e`.
    pub fn central(e: i64, n: i64) -> Result<Self> {
        Self::new(e, 0, 0, n)
    }

    pub fn n(&self) -> i64 {
        self.qpow.modulus()
    }

    /// Exponent of `ω̌`, mod 2N.
    pub fn phase(&self) -> Residue {
        self.phase
    }

    pub fn qpow(&self) -> Residue {
        self.qpow
    }

    pub fn ppow(&self) -> Residue {
        self.ppow
    }

    pub fn is_central(&self) -> bool {
        self.qpow.is_zero() && self.ppow.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.is_central() && self.phase.is_zero()
    }

    /// Normal-form product: `P^p Q^{n'} = ω^{p n'} Q^{n'} P^p`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::ModulusMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.n();
        let e =
            self.phase.value() + other.phase.value() + 2 * self.ppow.value() * other.qpow.value();
        Self::of(
            e,
            self.qpow.value() + other.qpow.value(),
            self.ppow.value() + other.ppow.value(),
            n,
        )
    }

    /// `x^c` for any integer `c`, via
    /// `(ω̌^e Q^n P^p)^c = ω̌^{ec + pn·c(c−1)} Q^{nc} P^{pc}`.
    pub fn pow(&self, c: i64) -> Self {
        let n = self.n();
        let m = 2 * n;
        let (e, q, p) = (self.phase.value(), self.qpow.value(), self.ppow.value());
        let cm = c.rem_euclid(m);
        // c(c−1) mod 2N is even and depends only on c mod 2N
        let tri = (cm * (cm - 1)).rem_euclid(m);
        let phase = e * cm + (p * q).rem_euclid(n) * tri;
        Self::of(phase, q * c.rem_euclid(n), p * c.rem_euclid(n), n)
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// The matrix `ω̌^e Q^n P^p` in the Schrödinger representation.
    pub fn to_matrix(&self) -> CMatrix {
        let n = self.n();
        let mut out = CMatrix::zeros(n as usize, n as usize);
        let scale = root_of_unity(self.phase.value(), 2 * n);
        let (q, p) = (self.qpow.value(), self.ppow.value());
        // ω̌^e Q^q P^p |j⟩ = ω̌^e ω^{q(j−p)} |j−p⟩
        for j in 0..n {
            let row = (j - p).rem_euclid(n);
            out[(row as usize, j as usize)] = scale * root_of_unity(q * row, n);
        }
        out
    }
}

impl fmt::Display for HeisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ω̌^{} Q^{} P^{} (N = {})",
            self.phase.value(),
            self.qpow.value(),
            self.ppow.value(),
            self.n()
        )
    }
}

/// Clock and shift matrices of the Schrödinger representation.
#[derive(Clone, Debug, PartialEq)]
pub struct SchrodingerPair {
    pub qmat: CMatrix,
    pub pmat: CMatrix,
}

/// `P = Σ|i−1⟩⟨i|`, `Q = Σ|i⟩ω^i⟨i|`.
pub fn schrodinger(n: i64) -> Result<SchrodingerPair> {
    if n < 1 {
        return Err(Error::InvalidModulus(n));
    }
    let dim = n as usize;
    let mut qmat = CMatrix::zeros(dim, dim);
    let mut pmat = CMatrix::zeros(dim, dim);
    for i in 0..n {
        qmat[(i as usize, i as usize)] = root_of_unity(i, n);
        pmat[((i - 1).rem_euclid(n) as usize, i as usize)] = Complex64::new(1.0, 0.0);
    }
    Ok(SchrodingerPair { qmat, pmat })
}

pub fn to_matrix(x: &HeisElement) -> CMatrix {
    x.to_matrix()
}

/// Largest entry-wise modulus of `a − b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Every element of `E_N` with phase exponent in `I_{2N}`.
pub fn enumerate_heis(n: i64) -> Result<Vec<HeisElement>> {
    if n < 1 {
        return Err(Error::InvalidModulus(n));
    }
    let mut out = Vec::with_capacity((2 * n * n * n) as usize);
    for e in 0..2 * n {
        for q in 0..n {
            for p in 0..n {
                out.push(HeisElement::of(e, q, p, n));
            }
        }
    }
    Ok(out)
}

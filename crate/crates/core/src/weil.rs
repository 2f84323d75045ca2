//! Unitaries realizing automorphisms on the Schrödinger representation, and
//! linear lifts of the resulting projective Weil representation.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphisms::{splitting, splitting_odd, Automorphism};
use crate::cayley::CayleyTree;
use crate::error::{Error, Result};
use crate::heisenberg::{max_abs_diff, root_of_unity, schrodinger, CMatrix, HeisElement};
use crate::residue::bezout;
use crate::symplectic::{lambda_split, sp_cayley_tree, twice_odd_k, SpElement, DEFAULT_ENUM_BOUND};

/// Tolerance for group-level comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

/// A unitary matrix together with the tolerance it was checked against.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilUnitary {
    pub mat: CMatrix,
    pub tol: f64,
}

impl WeilUnitary {
    pub fn new(mat: CMatrix, tol: f64) -> Result<Self> {
        let dev = unitarity_deviation(&mat);
        if dev > tol {
            return Err(Error::Construction(format!(
                "matrix is not unitary (deviation {dev:e})"
            )));
        }
        Ok(Self { mat, tol })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }
}

/// `‖U Uᴴ − I‖_max`.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    let n = u.nrows();
    max_abs_diff(&(u * u.adjoint()), &CMatrix::identity(n, n))
}

/// The matrix as rows of `[re, im]` pairs.
pub fn export_pairs(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                .collect()
        })
        .collect()
}

/// If `a = z·b` for a unit scalar `z`, returns `z`.
pub fn phase_relation(a: &CMatrix, b: &CMatrix, tol: f64) -> Option<Complex64> {
    if a.shape() != b.shape() {
        return None;
    }
    let (idx, _) = b.iter().enumerate().fold((0, -1.0), |acc, (i, x)| {
        if x.norm() > acc.1 {
            (i, x.norm())
        } else {
            acc
        }
    });
    let z = a.as_slice()[idx] / b.as_slice()[idx];
    ((z.norm() - 1.0).abs() <= tol && max_abs_diff(a, &(b * z)) <= tol).then_some(z)
}

/// Rescales so the first entry (row-major) of largest modulus is real positive.
fn canonicalize_phase(m: &mut CMatrix) {
    let max = m.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut pivot = Complex64::new(1.0, 0.0);
    'rows: for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if m[(i, j)].norm() >= max - 1e-9 {
                pivot = m[(i, j)];
                break 'rows;
            }
        }
    }
    let z = pivot.conj() / pivot.norm();
    *m *= z;
}

/// The unitary `U` with `U Q Uᴴ = T(Q)` and `U P Uᴴ = T(P)`, unique up to a
/// phase; returned with the phase fixed by [`canonicalize_phase`].
pub fn solve_intertwiner(t: &Automorphism) -> Result<WeilUnitary> {
    solve_intertwiner_with(t, DEFAULT_TOL, DEFAULT_ENUM_BOUND)
}

pub fn solve_intertwiner_with(t: &Automorphism, tol: f64, bound: i64) -> Result<WeilUnitary> {
    let n = t.n();
    if n > bound {
        return Err(Error::SizeBound {
            what: "N",
            value: n,
            bound,
        });
    }
    let dim = n as usize;
    // Averaging X ↦ Σ T(W) X W⁻¹ over the Weyl basis W projects onto the
    // intertwiners: the result is N·tr(Uᴴ X)·U.
    let mut terms = Vec::with_capacity(dim * dim);
    for q in 0..n {
        for p in 0..n {
            let w = HeisElement::new(0, q, p, n)?;
            terms.push((t.apply(&w)?.to_matrix(), w.inverse().to_matrix()));
        }
    }
    let mut best = CMatrix::zeros(dim, dim);
    let mut best_norm = -1.0;
    for j in 0..dim {
        let mut acc = CMatrix::zeros(dim, dim);
        for (a, winv) in &terms {
            // a · E_{0j} · winv = (column 0 of a) ⊗ (row j of winv)
            acc += a.column(0) * winv.row(j);
        }
        let norm = acc.norm();
        if norm > best_norm {
            best_norm = norm;
            best = acc;
        }
    }
    if best_norm <= f64::EPSILON {
        return Err(Error::InconsistentAutomorphism { tol, residual: 1.0 });
    }
    let mut u = best * Complex64::from(((dim as f64).sqrt()) / best_norm);
    canonicalize_phase(&mut u);
    let residual = intertwining_residual(&u, t);
    if residual > tol {
        return Err(Error::InconsistentAutomorphism { tol, residual });
    }
    WeilUnitary::new(u, tol)
}

/// `max(‖U Q Uᴴ − T(Q)‖, ‖U P Uᴴ − T(P)‖)`.
pub fn intertwining_residual(u: &CMatrix, t: &Automorphism) -> f64 {
    let sp = schrodinger(t.n()).expect("valid modulus");
    let uq = u * &sp.qmat * u.adjoint();
    let up = u * &sp.pmat * u.adjoint();
    max_abs_diff(&uq, &t.image_q().to_matrix()).max(max_abs_diff(&up, &t.image_p().to_matrix()))
}

/// The basis change `V` on `C^N`, `N = 2(2k+1)`, with
/// `V (Q, P) Vᴴ = (Q₂ ⊗ Q_{2k+1}, P₂ ⊗ P_{2k+1}^{−k})`.
pub fn build_v(k: i64) -> Result<WeilUnitary> {
    if k < 0 {
        return Err(Error::WrongShape {
            n: 2 * (2 * k + 1),
            expected: "k >= 0",
        });
    }
    let odd = 2 * k + 1;
    let n = 2 * odd;
    let dim = n as usize;
    // 1/N = μ1/2 − μ2/(2k+1), so ω_N^i = ω_2^{μ1 i} ω_{2k+1}^{−μ2 i}
    let bz = bezout(2, odd)?;
    let mut v = CMatrix::zeros(dim, dim);
    for i in 0..n {
        let (a, b) = v_index(i, k, bz.mu1, bz.mu2);
        v[((a * odd + b) as usize, i as usize)] = Complex64::new(1.0, 0.0);
    }
    let big = schrodinger(n)?;
    let two = schrodinger(2)?;
    let small = schrodinger(odd)?;
    let p_odd = HeisElement::new(0, 0, -k, odd)?.to_matrix();
    let q_target = two.qmat.kronecker(&small.qmat);
    let p_target = two.pmat.kronecker(&p_odd);
    let dev = max_abs_diff(&(&v * &big.qmat * v.adjoint()), &q_target)
        .max(max_abs_diff(&(&v * &big.pmat * v.adjoint()), &p_target));
    if dev > 1e-12 {
        return Err(Error::Construction(format!(
            "V fails the tensor relation (deviation {dev:e})"
        )));
    }
    WeilUnitary::new(v, DEFAULT_TOL)
}

/// `i ↦ (μ1 i mod 2, −μ2 i mod 2k+1)`.
pub fn v_index(i: i64, k: i64, mu1: i64, mu2: i64) -> (i64, i64) {
    ((mu1 * i).rem_euclid(2), (-mu2 * i).rem_euclid(2 * k + 1))
}

/// The four sign choices `τ_Q τ_P` for `Sp_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum U2Variant {
    PlusPlus,
    MinusMinus,
    PlusMinus,
    MinusPlus,
}

impl U2Variant {
    pub const ALL: [Self; 4] = [
        Self::PlusPlus,
        Self::MinusMinus,
        Self::PlusMinus,
        Self::MinusPlus,
    ];

    pub fn signs(self) -> (i64, i64) {
        match self {
            Self::PlusPlus => (1, 1),
            Self::MinusMinus => (-1, -1),
            Self::PlusMinus => (1, -1),
            Self::MinusPlus => (-1, 1),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::PlusPlus => "++",
            Self::MinusMinus => "--",
            Self::PlusMinus => "+-",
            Self::MinusPlus => "-+",
        }
    }

    /// `++` for odd k, `−−` for even k.
    pub fn for_k(k: i64) -> Self {
        if k % 2 != 0 {
            Self::PlusPlus
        } else {
            Self::MinusMinus
        }
    }
}

impl std::str::FromStr for U2Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|v| v.label() == s)
            .ok_or_else(|| Error::Construction(format!("unknown variant {s:?}")))
    }
}

/// `ū₂(h_Q)` and `ū₂(h_P)` for the given variant. For `−−` the `h_P` matrix
/// is `(1/√2)((0, 1−i), (1+i, 0))`, the one realizing `P ↦ −i QP`.
pub fn u2_generators(v: U2Variant) -> (CMatrix, CMatrix) {
    let c = |re: f64, im: f64| Complex64::new(re, im) / std::f64::consts::SQRT_2;
    let m = |e: [Complex64; 4]| CMatrix::from_row_slice(2, 2, &e);
    let z = Complex64::new(0.0, 0.0);
    let hq_plus = m([c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(-1.0, 0.0)]);
    let hq_minus = m([c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)]);
    let hp_a = m([z, c(-1.0, -1.0), c(-1.0, 1.0), z]);
    let hp_c = m([z, c(1.0, -1.0), c(1.0, 1.0), z]);
    match v {
        U2Variant::PlusPlus => (hq_plus, hp_a),
        U2Variant::MinusMinus => (hq_minus, hp_c),
        U2Variant::PlusMinus => (hq_plus, hp_c),
        U2Variant::MinusPlus => (hq_minus, hp_a),
    }
}

/// The automorphisms `t₂^{τ_Q τ_P}` of `E_2` on the generators:
/// `h_Q ↦ (τ_Q i QP, −P)`, `h_P ↦ (−Q, τ_P i QP)`.
pub fn t2_generators(v: U2Variant) -> Result<(Automorphism, Automorphism)> {
    let (tq, tp) = v.signs();
    // i = ω̌ at N = 2
    let iqp = |tau: i64| HeisElement::new(if tau > 0 { 1 } else { 3 }, 1, 1, 2);
    let hq = Automorphism::from_images(iqp(tq)?, HeisElement::new(2, 0, 1, 2)?)?;
    let hp = Automorphism::from_images(HeisElement::new(2, 1, 0, 2)?, iqp(tp)?)?;
    Ok((hq, hp))
}

/// `t₂^{τ_Q τ_P}` extended along the Cayley tree of `Sp_2`.
pub fn t2_table(v: U2Variant) -> Result<Vec<(SpElement, Automorphism)>> {
    let tree = sp_cayley_tree(2)?;
    let (hq, hp) = t2_generators(v)?;
    let imgs = tree.extend(Automorphism::identity(2)?, &[hq, hp], |a, b| {
        a.compose(b).expect("same modulus")
    });
    Ok(tree.elements.into_iter().zip(imgs).collect())
}

/// A unitary for every element of `Sp_N`, keyed by the element.
#[derive(Clone, Debug)]
pub struct LinearRep {
    pub n: i64,
    pub elements: Vec<SpElement>,
    pub table: Vec<WeilUnitary>,
    index: HashMap<SpElement, usize>,
}

impl LinearRep {
    pub fn new(elements: Vec<SpElement>, table: Vec<WeilUnitary>) -> Result<Self> {
        let n = elements.first().map(|s| s.modulus()).unwrap_or(1);
        if elements.len() != table.len() {
            return Err(Error::Construction("table length mismatch".into()));
        }
        let index = elements.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        Ok(Self {
            n,
            elements,
            table,
            index,
        })
    }

    fn from_tree(tree: &CayleyTree<SpElement>, mats: Vec<CMatrix>, tol: f64) -> Result<Self> {
        let table = mats
            .into_iter()
            .map(|m| WeilUnitary::new(m, tol))
            .collect::<Result<Vec<_>>>()?;
        Self::new(tree.elements.clone(), table)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, s: &SpElement) -> Option<&WeilUnitary> {
        self.index.get(s).map(|&i| &self.table[i])
    }

    pub fn index_of(&self, s: &SpElement) -> Option<usize> {
        self.index.get(s).copied()
    }
}

/// `ū₂^{τ_Q τ_P}` extended from the generators along the Cayley tree of `Sp_2`.
pub fn u2_table(v: U2Variant) -> Result<LinearRep> {
    let tree = sp_cayley_tree(2)?;
    let (hq, hp) = u2_generators(v);
    let mats = tree.extend(CMatrix::identity(2, 2), &[hq, hp], |a, b| a * b);
    LinearRep::from_tree(&tree, mats, DEFAULT_TOL)
}

/// First failing pair `(i, j)` of `table[i]·table[j] = table[ij]`, scanning
/// in order.
fn first_multiplicative_failure(
    elements: &[SpElement],
    index: &HashMap<SpElement, usize>,
    mats: &[CMatrix],
    tol: f64,
) -> Option<(usize, usize)> {
    for (i, si) in elements.iter().enumerate() {
        for (j, sj) in elements.iter().enumerate() {
            let k = index[&si.mul(sj).expect("same modulus")];
            if max_abs_diff(&(&mats[i] * &mats[j]), &mats[k]) > tol {
                return Some((i, j));
            }
        }
    }
    None
}

/// A linear lift of the Weil representation for odd N, intertwining `Σ`.
pub fn lift_odd(n: i64) -> Result<LinearRep> {
    lift_odd_with(n, DEFAULT_TOL)
}

pub fn lift_odd_with(n: i64, tol: f64) -> Result<LinearRep> {
    if n % 2 == 0 || n < 1 {
        return Err(Error::WrongParity(n));
    }
    if n > DEFAULT_ENUM_BOUND {
        return Err(Error::SizeBound {
            what: "N",
            value: n,
            bound: DEFAULT_ENUM_BOUND,
        });
    }
    let tree = sp_cayley_tree(n)?;
    let dim = n as usize;
    if n == 1 {
        return LinearRep::from_tree(&tree, vec![CMatrix::identity(1, 1)], tol);
    }
    let gens = [SpElement::h_q(n)?, SpElement::h_p(n)?];
    // Each generator has order N, so its lifted matrix must satisfy U^N = I.
    // U0^N is a scalar c; the admissible rescalings are the N-th roots of 1/c.
    let mut candidates: Vec<Vec<CMatrix>> = Vec::new();
    for g in &gens {
        let u0 = solve_intertwiner_with(&splitting_odd(g)?, tol, DEFAULT_ENUM_BOUND)?.mat;
        let c = u0.pow(n as u32)[(0, 0)];
        let base = Complex64::from_polar(1.0, -c.arg() / n as f64);
        candidates.push((0..n).map(|j| &u0 * (base * root_of_unity(j, n))).collect());
    }
    let index: HashMap<SpElement, usize> = tree
        .elements
        .iter()
        .enumerate()
        .map(|(i, s)| (*s, i))
        .collect();
    for uq in &candidates[0] {
        for up in &candidates[1] {
            let mats = tree.extend(
                CMatrix::identity(dim, dim),
                &[uq.clone(), up.clone()],
                |a, b| a * b,
            );
            if first_multiplicative_failure(&tree.elements, &index, &mats, tol).is_none() {
                return LinearRep::from_tree(&tree, mats, tol);
            }
        }
    }
    Err(Error::LiftNotFound(n))
}

/// The linear lift for `N = 2(2k+1)`:
/// `S ↦ Vᴴ (ū₂(λ₂ S) ⊗ ū_{2k+1}(λ_{2k+1} S)) V`.
pub fn lift_even(k: i64) -> Result<LinearRep> {
    lift_even_variant(k, U2Variant::for_k(k))
}

/// [`lift_even`] with an explicit `ū₂` variant.
pub fn lift_even_variant(k: i64, variant: U2Variant) -> Result<LinearRep> {
    if k < 0 {
        return Err(Error::WrongShape {
            n: 2 * (2 * k + 1),
            expected: "k >= 0",
        });
    }
    let n = 2 * (2 * k + 1);
    if n > DEFAULT_ENUM_BOUND {
        return Err(Error::SizeBound {
            what: "N",
            value: n,
            bound: DEFAULT_ENUM_BOUND,
        });
    }
    let v = build_v(k)?.mat;
    let u2 = u2_table(variant)?;
    let uodd = lift_odd(2 * k + 1)?;
    let tree = sp_cayley_tree(n)?;
    let mut mats = Vec::with_capacity(tree.len());
    for s in &tree.elements {
        let (s2, sodd) = lambda_split(s)?;
        let a = &u2.get(&s2).expect("Sp_2 is complete").mat;
        let b = &uodd.get(&sodd).expect("Sp_{2k+1} is complete").mat;
        mats.push(v.adjoint() * a.kronecker(b) * &v);
    }
    LinearRep::from_tree(&tree, mats, DEFAULT_TOL)
}

/// Results of [`verify_linear_rep`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepReport {
    pub n: i64,
    pub elements: usize,
    pub pairs_checked: u64,
    pub unitarity_max_dev: f64,
    /// `None` when no splitting exists for N.
    pub intertwining_max_dev: Option<f64>,
    pub multiplicativity_max_dev: f64,
    /// First failing pair in row-major order over the element list.
    pub first_failure: Option<(SpElement, SpElement)>,
    pub tol: f64,
    pub passed: bool,
}

impl RepReport {
    pub fn max_deviation(&self) -> f64 {
        self.unitarity_max_dev
            .max(self.intertwining_max_dev.unwrap_or(0.0))
            .max(self.multiplicativity_max_dev)
    }
}

/// Checks unitarity, intertwining against `Σ` and multiplicativity over all
/// pairs, with the tolerance of the table's entries.
pub fn verify_linear_rep(rep: &LinearRep) -> RepReport {
    let tol = rep.table.iter().map(|u| u.tol).fold(DEFAULT_TOL, f64::min);
    let mats: Vec<&CMatrix> = rep.table.iter().map(|u| &u.mat).collect();
    let unitarity = mats
        .par_iter()
        .map(|m| unitarity_deviation(m))
        .reduce(|| 0.0, f64::max);
    let intertwining = rep
        .elements
        .par_iter()
        .zip(mats.par_iter())
        .map(|(s, m)| splitting(s).map(|t| intertwining_residual(m, &t)).ok())
        .collect::<Vec<_>>()
        .into_iter()
        .try_fold(0.0, |acc, x| x.map(|v| f64::max(acc, v)));
    let rows: Vec<(f64, Option<usize>)> = (0..rep.len())
        .into_par_iter()
        .map(|i| {
            let mut worst = 0.0f64;
            let mut first = None;
            for j in 0..rep.len() {
                let prod = rep.elements[i].mul(&rep.elements[j]).expect("same modulus");
                let k = rep.index[&prod];
                let d = max_abs_diff(&(mats[i] * mats[j]), mats[k]);
                worst = worst.max(d);
                if first.is_none() && d > tol {
                    first = Some(j);
                }
            }
            (worst, first)
        })
        .collect();
    let multiplicativity = rows.iter().map(|r| r.0).fold(0.0, f64::max);
    let first_failure = rows
        .iter()
        .enumerate()
        .find_map(|(i, r)| r.1.map(|j| (rep.elements[i], rep.elements[j])));
    let passed =
        unitarity <= tol && intertwining.is_none_or(|d| d <= tol) && first_failure.is_none();
    RepReport {
        n: rep.n,
        elements: rep.len(),
        pairs_checked: (rep.len() * rep.len()) as u64,
        unitarity_max_dev: unitarity,
        intertwining_max_dev: intertwining,
        multiplicativity_max_dev: multiplicativity,
        first_failure,
        tol,
        passed,
    }
}

/// Checks `V Σ(S)(Q, P) Vᴴ = (Q₂′ ⊗ Q′, P₂′ ⊗ P′^{−k})` for every S, where
/// `(Q₂′, P₂′) = t₂^v(λ₂ S)(Q₂, P₂)` and `(Q′, P′) = Σ(λ_{2k+1} S)(Q, P)`.
/// Returns the largest deviation.
pub fn tensor_decomposition_deviation(k: i64, variant: U2Variant) -> Result<f64> {
    let n = 2 * (2 * k + 1);
    let odd = 2 * k + 1;
    let v = build_v(k)?.mat;
    let t2: HashMap<SpElement, Automorphism> = t2_table(variant)?.into_iter().collect();
    let tree = sp_cayley_tree(n)?;
    let mut worst = 0.0f64;
    for s in &tree.elements {
        let sigma = splitting(s)?;
        let (s2, sodd) = lambda_split(s)?;
        let a2 = &t2[&s2];
        let aodd = splitting_odd(&sodd)?;
        let lhs_q = &v * sigma.image_q().to_matrix() * v.adjoint();
        let lhs_p = &v * sigma.image_p().to_matrix() * v.adjoint();
        let rhs_q = a2
            .image_q()
            .to_matrix()
            .kronecker(&aodd.image_q().to_matrix());
        let p_odd = aodd.image_p().pow(-k);
        debug_assert_eq!(p_odd.n(), odd);
        let rhs_p = a2.image_p().to_matrix().kronecker(&p_odd.to_matrix());
        worst = worst
            .max(max_abs_diff(&lhs_q, &rhs_q))
            .max(max_abs_diff(&lhs_p, &rhs_p));
    }
    Ok(worst)
}

/// Shorthand used by the CLI: the `N = 2(2k+1)` or odd lift for N.
pub fn lift_for(n: i64) -> Result<LinearRep> {
    if n % 2 != 0 {
        lift_odd(n)
    } else if n % 4 == 2 {
        lift_even(twice_odd_k(n)?)
    } else {
        Err(Error::NoSplitting(n))
    }
}

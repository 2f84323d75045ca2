//! End-to-end acceptance checks. Each test prints one PASS/FAIL line; run with
//! `cargo test -p tpn-core --test acceptance -- --nocapture --test-threads=1`.
//!
//! Wherever practical the expected side is recomputed here from the defining
//! formulas with plain integer arithmetic, rather than through the library.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use tpn_core::automorphisms::{
    coboundary_from_splitting, obstruction_check, simple_section_cocycle, splitting, tilde_t,
};
use tpn_core::heisenberg::HeisElement;
use tpn_core::residue::{bezout, crt_compose, gcd, hat, Residue};
use tpn_core::symplectic::{enumerate_sp, find_sp2_splittings, phi_big, sp_cayley_tree, SpElement};
use tpn_core::weil::{
    lift_even, lift_odd, t2_generators, u2_generators, u2_table, verify_linear_rep, LinearRep,
    U2Variant,
};

type M = [i64; 4];

fn verdict(id: u32, what: &str, ok: bool, detail: &str, start: Instant, limit: Option<f64>) {
    let secs = start.elapsed().as_secs_f64();
    let in_time = limit.is_none_or(|l| secs < l);
    let status = if ok && in_time { "PASS" } else { "FAIL" };
    let budget = limit.map(|l| format!(", limit {l} s")).unwrap_or_default();
    println!("{status} [{id}] {what}: {detail} ({secs:.2} s{budget})");
    assert!(ok, "[{id}] {what}: {detail}");
    assert!(in_time, "[{id}] {what}: took {secs:.2} s{budget}");
}

fn mmul(x: M, y: M, n: i64) -> M {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    [
        (a * e + b * g).rem_euclid(n),
        (a * f + b * h).rem_euclid(n),
        (c * e + d * g).rem_euclid(n),
        (c * f + d * h).rem_euclid(n),
    ]
}

fn det_one_count(n: i64) -> usize {
    let mut count = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    count += usize::from((a * d - b * c - 1).rem_euclid(n) == 0);
                }
            }
        }
    }
    count
}

/// Closure of `{1}` under right multiplication by `[[1,1],[0,1]]` and
/// `[[0,-1],[1,0]]`, which generate `SL(2, Z)` and hence every `Sp_N`.
fn bfs_closure(n: i64) -> BTreeSet<M> {
    let gens = [[1, 1, 0, 1], [0, n - 1, 1, 0]].map(|g: M| g.map(|x| x.rem_euclid(n)));
    let id = [1, 0, 0, 1].map(|x: i64| x.rem_euclid(n));
    let mut seen = BTreeSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mmul(x, g, n);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

#[test]
fn order_checks() {
    let start = Instant::now();
    let mut ok = enumerate_sp(2).unwrap().len() == 6;
    let mut detail = String::from("|Sp_2| = 6");
    for n in 1..=10 {
        let listed: BTreeSet<M> = enumerate_sp(n)
            .unwrap()
            .iter()
            .map(|s| s.entries())
            .collect();
        let tree: BTreeSet<M> = sp_cayley_tree(n)
            .unwrap()
            .elements
            .iter()
            .map(|s| s.entries())
            .collect();
        let here = bfs_closure(n);
        let same = listed == here && tree == here && listed.len() == det_one_count(n);
        ok &= same;
        if n >= 6 {
            detail.push_str(&format!(", |Sp_{n}| = {}", listed.len()));
        }
    }
    verdict(
        1,
        "Sp_N orders and generator closure, N <= 10",
        ok,
        &detail,
        start,
        Some(1.0),
    );
}

/// `ω̌^e Q^a P^b ↦ ω̌^e T(Q)^a T(P)^b`, from the images alone.
fn apply_images(tq: &HeisElement, tp: &HeisElement, x: &HeisElement) -> HeisElement {
    let n = x.n();
    let central = HeisElement::new(x.phase().value(), 0, 0, n).unwrap();
    central
        .mul(&tq.pow(x.qpow().value()))
        .unwrap()
        .mul(&tp.pow(x.ppow().value()))
        .unwrap()
}

fn heis(e: i64, q: i64, p: i64, n: i64) -> HeisElement {
    HeisElement::new(e, q, p, n).unwrap()
}

/// `(det − 1)/N mod 2` for integer entries with `det ≡ 1 mod N`.
fn staggered(m: M, n: i64) -> i64 {
    let [a, b, c, d] = m;
    let det = a * d - b * c;
    assert_eq!((det - 1).rem_euclid(n), 0);
    ((det - 1) / n).rem_euclid(2)
}

/// Images of Q and P under the splitting, straight from its defining formulas.
fn sigma_formula(s: &SpElement) -> (HeisElement, HeisElement) {
    let n = s.modulus();
    if n % 2 == 1 {
        let [a, b, c, d] = s.entries();
        (
            heis(-d * b + d * b * n, d, -b, n),
            heis(-c * a + c * a * n, -c, a, n),
        )
    } else {
        let h = s.entries().map(|x| x + x / 2 * n);
        let [a, b, c, d] = h;
        let st = staggered(h, n);
        (
            heis(-d * b + c * a * n + st * n, d, -b, n),
            heis(-c * a + d * b * n + st * n, -c, a, n),
        )
    }
}

#[test]
fn splitting_is_exact_homomorphism() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [2, 3, 5, 6, 7, 9, 10] {
        let group = enumerate_sp(n).unwrap();
        let images: Vec<(HeisElement, HeisElement)> = group.iter().map(sigma_formula).collect();
        let index: HashMap<SpElement, usize> =
            group.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        for (s, (tq, tp)) in group.iter().zip(&images) {
            let t = splitting(s).unwrap();
            ok &= t.image_q() == *tq && t.image_p() == *tp && t.project() == *s;
        }
        let (q, p) = (heis(0, 1, 0, n), heis(0, 0, 1, n));
        let mut failures = 0u64;
        for (i, s1) in group.iter().enumerate() {
            let (aq, ap) = &images[i];
            for (j, s2) in group.iter().enumerate() {
                let (bq, bp) = &images[j];
                let (cq, cp) = &images[index[&s1.mul(s2).unwrap()]];
                let lq = apply_images(aq, ap, &apply_images(bq, bp, &q));
                let lp = apply_images(aq, ap, &apply_images(bq, bp, &p));
                failures += u64::from(lq != *cq || lp != *cp);
            }
        }
        ok &= failures == 0;
        detail.push(format!("N={n}: {} pairs", group.len().pow(2)));
    }
    verdict(
        2,
        "Σ(S1)∘Σ(S2) = Σ(S1S2) and Π∘Σ = id, exact",
        ok,
        &detail.join(", "),
        start,
        Some(30.0),
    );
}

/// Every homomorphism `Sp_2 → S̃p_4` that reduces to the identity mod 2,
/// by backtracking over all `16^6` assignments of lifts.
fn count_sp2_splittings() -> usize {
    let group: Vec<M> = bfs_closure(2).into_iter().collect();
    let lifts: Vec<Vec<M>> = group
        .iter()
        .map(|s| {
            (0..16)
                .map(|bits| std::array::from_fn(|i| s[i] + 2 * ((bits >> i) & 1)))
                .collect()
        })
        .collect();
    let pos = |m: M| group.iter().position(|g| *g == m).unwrap();
    let prod: Vec<Vec<usize>> = group
        .iter()
        .map(|x| group.iter().map(|y| pos(mmul(*x, *y, 2))).collect())
        .collect();
    fn search(k: usize, f: &mut Vec<M>, lifts: &[Vec<M>], prod: &[Vec<usize>], count: &mut usize) {
        if k == lifts.len() {
            *count += 1;
            return;
        }
        for cand in &lifts[k] {
            f.push(*cand);
            let consistent = (0..=k).all(|i| {
                (0..=k).all(|j| {
                    let t = prod[i][j];
                    t > k || mmul(f[i], f[j], 4) == f[t]
                })
            });
            if consistent {
                search(k + 1, f, lifts, prod, count);
            }
            f.pop();
        }
    }
    let mut count = 0;
    search(0, &mut Vec::new(), &lifts, &prod, &mut count);
    count
}

#[test]
fn eight_splittings_of_sp2() {
    let start = Instant::now();
    let found = find_sp2_splittings().unwrap();
    let distinct: BTreeSet<(M, M)> = found
        .iter()
        .map(|s| (s.image_hq.mat().entries(), s.image_hp.mat().entries()))
        .collect();
    let brute = count_sp2_splittings();
    let ok = found.len() == 8 && distinct.len() == 8 && brute == 8;
    let detail = format!(
        "library search {} ({} distinct), independent backtracking {brute}",
        found.len(),
        distinct.len()
    );
    verdict(3, "splittings Sp_2 -> S̃p_4", ok, &detail, start, Some(1.0));
}

#[test]
fn tilde_t_on_image_of_phi() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [6, 10] {
        let group = enumerate_sp(n).unwrap();
        let phis: Vec<_> = group.iter().map(|s| phi_big(s).unwrap()).collect();
        let ts: Vec<_> = phis.iter().map(|x| tilde_t(x).unwrap()).collect();
        for (s, t) in group.iter().zip(&ts) {
            ok &= *t == splitting(s).unwrap();
        }
        let mut failures = 0u64;
        for i in 0..group.len() {
            let (aq, ap) = (ts[i].image_q(), ts[i].image_p());
            for j in 0..group.len() {
                let (bq, bp) = (ts[j].image_q(), ts[j].image_p());
                let c = tilde_t(&phis[i].mul(&phis[j]).unwrap()).unwrap();
                let lq = apply_images(&aq, &ap, &bq);
                let lp = apply_images(&aq, &ap, &bp);
                failures += u64::from(lq != c.image_q() || lp != c.image_p());
            }
        }
        ok &= failures == 0;
        detail.push(format!(
            "N={n}: {} elements, {} pairs",
            group.len(),
            group.len().pow(2)
        ));
    }
    verdict(
        4,
        "T̃ multiplicative on Im Φ and T̃∘Φ = Σ",
        ok,
        &detail.join(", "),
        start,
        Some(10.0),
    );
}

#[test]
fn obstruction_for_multiples_of_four() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [4, 8, 12] {
        let r = obstruction_check(n).unwrap();
        ok &= !r.satisfiable && r.both_ok == 0;
        detail.push(format!("N={n}: unsatisfiable={}", !r.satisfiable));
    }
    for (k, n) in [(0, 2), (1, 6), (2, 10)] {
        let r = obstruction_check(n).unwrap();
        ok &= r.satisfiable && r.b_values == vec![(2 * k + 1) % n];
        detail.push(format!("N={n}: b in {:?}", r.b_values));
    }
    verdict(
        5,
        "h_Q/h_J relations",
        ok,
        &detail.join(", "),
        start,
        Some(1.0),
    );
}

/// `T_{[S_(N)]_2N}` from the formula for `T̃` on basic representatives.
fn simple_section_formula(s: &SpElement) -> (HeisElement, HeisElement) {
    let n = s.modulus();
    let m = s.entries();
    let [a, b, c, d] = m;
    let st = staggered(m, n);
    (
        heis(-d * b + st * n, d, -b, n),
        heis(-c * a + st * n, -c, a, n),
    )
}

/// `(c1, c2)` with `T_{S1} T_{S2} = T_{S1S2} ∘ (Q, P) ↦ (c1 Q, c2 P)`,
/// encoded as phases in `{0, N/2}` for the kernel action.
fn defect(s1: &SpElement, s2: &SpElement) -> (i64, i64) {
    let n = s1.modulus();
    let (aq, ap) = simple_section_formula(s1);
    let (bq, bp) = simple_section_formula(s2);
    let (cq, cp) = simple_section_formula(&s1.mul(s2).unwrap());
    let lq = apply_images(&aq, &ap, &bq);
    let lp = apply_images(&aq, &ap, &bp);
    let sign = |l: &HeisElement, r: &HeisElement| {
        assert_eq!((l.qpow(), l.ppow()), (r.qpow(), r.ppow()));
        match (l.phase().value() - r.phase().value()).rem_euclid(2 * n) {
            0 => 0,
            x if x == n => n / 2,
            x => panic!("defect phase {x} is not a sign"),
        }
    };
    (sign(&lq, &cq), sign(&lp, &cp))
}

/// `g·ξ = ξ ᵗg` on the kernel.
fn act(g: &SpElement, x: (i64, i64)) -> (i64, i64) {
    let n = g.modulus();
    let [a, b, c, d] = g.entries();
    (
        (x.0 * a + x.1 * b).rem_euclid(n),
        (x.0 * c + x.1 * d).rem_euclid(n),
    )
}

fn add(x: (i64, i64), y: (i64, i64), n: i64) -> (i64, i64) {
    ((x.0 + y.0).rem_euclid(n), (x.1 + y.1).rem_euclid(n))
}

#[test]
fn cocycle_closed_form_and_identity() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [4, 8] {
        let group = enumerate_sp(n).unwrap();
        let mut mismatches = 0u64;
        for s1 in &group {
            for s2 in &group {
                let c = simple_section_cocycle(s1, s2).unwrap().value;
                let x = |c: i8| if c < 0 { n / 2 } else { 0 };
                mismatches += u64::from((x(c.c1), x(c.c2)) != defect(s1, s2));
            }
        }
        ok &= mismatches == 0;
        detail.push(format!(
            "Sp_{n}: {} pairs, {mismatches} mismatches",
            group.len().pow(2)
        ));
    }

    let n = 4;
    let group = enumerate_sp(n).unwrap();
    let index: HashMap<SpElement, usize> = group.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let len = group.len();
    let mut table = vec![(0, 0); len * len];
    for (i, g) in group.iter().enumerate() {
        for (j, h) in group.iter().enumerate() {
            table[i * len + j] = defect(g, h);
        }
    }
    let c = |i: usize, j: usize| table[i * len + j];
    let prod: Vec<Vec<usize>> = group
        .iter()
        .map(|g| group.iter().map(|h| index[&g.mul(h).unwrap()]).collect())
        .collect();
    // C_L(g, h) = gh·C(g, h) is the same defect normalized on the left.
    let cl = |i: usize, j: usize| act(&group[prod[i][j]], c(i, j));
    let (mut right_ok, mut left_ok) = (0u64, 0u64);
    for i in 0..len {
        for (j, row_j) in prod.iter().enumerate() {
            let ij = prod[i][j];
            for (k, &jk) in row_j.iter().enumerate() {
                let kinv = group[k].inverse();
                let lhs = add(c(ij, k), act(&kinv, c(i, j)), n);
                let rhs = add(c(i, jk), c(j, k), n);
                right_ok += u64::from(lhs == rhs);
                let lhs = add(cl(i, j), cl(ij, k), n);
                let rhs = add(act(&group[i], cl(j, k)), cl(i, jk), n);
                left_ok += u64::from(lhs == rhs);
            }
        }
    }
    let triples = (len as u64).pow(3);
    ok &= right_ok == triples && left_ok == triples && triples == 110_592;
    detail.push(format!(
        "Sp_4 triples: {right_ok}/{triples} (right-normalized), {left_ok}/{triples} (left-normalized)"
    ));
    verdict(
        6,
        "closed-form cocycle and cocycle identity",
        ok,
        &detail.join("; "),
        start,
        Some(10.0),
    );
}

#[test]
fn coboundary_reproduces_cocycle() {
    let start = Instant::now();
    let n = 6;
    let b = coboundary_from_splitting(n).unwrap();
    let mut mismatches = 0u64;
    for g in &b.elements {
        for h in &b.elements {
            let d = b.delta(g, h).unwrap();
            mismatches += u64::from((d.xi_q.value(), d.xi_p.value()) != defect(g, h));
        }
    }
    let pairs = b.elements.len().pow(2);
    let ok = mismatches == 0 && pairs == 144 * 144;
    let detail = format!("N=6: {pairs} pairs, {mismatches} mismatches against the section defect");
    verdict(7, "δb = C", ok, &detail, start, Some(5.0));
}

fn clock_shift(n: i64) -> (DMatrix<Complex64>, DMatrix<Complex64>) {
    let dim = n as usize;
    let w = |k: i64| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
    let mut q = DMatrix::zeros(dim, dim);
    let mut p = DMatrix::zeros(dim, dim);
    for i in 0..n {
        q[(i as usize, i as usize)] = w(i);
        p[((i - 1).rem_euclid(n) as usize, i as usize)] = Complex64::new(1.0, 0.0);
    }
    (q, p)
}

fn max_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `ω̌^e Q^a P^b` from clock and shift.
fn monomial(x: &HeisElement) -> DMatrix<Complex64> {
    let n = x.n();
    let (q, p) = clock_shift(n);
    let pw = |m: &DMatrix<Complex64>, k: i64| {
        (0..k).fold(DMatrix::identity(n as usize, n as usize), |acc, _| acc * m)
    };
    let phase = Complex64::from_polar(
        1.0,
        std::f64::consts::PI * x.phase().value() as f64 / n as f64,
    );
    pw(&q, x.qpow().value()) * pw(&p, x.ppow().value()) * phase
}

/// Unitarity, intertwining with Σ and multiplicativity, recomputed here.
fn independent_rep_deviation(rep: &LinearRep) -> f64 {
    let n = rep.n;
    let (q, p) = clock_shift(n);
    let mut worst = 0.0f64;
    for (s, u) in rep.elements.iter().zip(&rep.table) {
        let u = &u.mat;
        let id = DMatrix::identity(n as usize, n as usize);
        worst = worst.max(max_diff(&(u * u.adjoint()), &id));
        let (tq, tp) = sigma_formula(s);
        worst = worst.max(max_diff(&(u * &q * u.adjoint()), &monomial(&tq)));
        worst = worst.max(max_diff(&(u * &p * u.adjoint()), &monomial(&tp)));
    }
    for (i, a) in rep.elements.iter().enumerate() {
        for (j, b) in rep.elements.iter().enumerate() {
            let k = rep.index_of(&a.mul(b).unwrap()).unwrap();
            let prod = &rep.table[i].mat * &rep.table[j].mat;
            worst = worst.max(max_diff(&prod, &rep.table[k].mat));
        }
    }
    worst
}

#[test]
fn weil_lifts_are_linear() {
    let start = Instant::now();
    let tol = 1e-9;
    let mut ok = true;
    let mut detail = Vec::new();
    let reps = [
        ("lift_odd(3)", lift_odd(3).unwrap()),
        ("lift_odd(5)", lift_odd(5).unwrap()),
        ("lift_even(1)", lift_even(1).unwrap()),
    ];
    for (name, rep) in &reps {
        let r = verify_linear_rep(rep);
        let here = independent_rep_deviation(rep);
        ok &= r.passed && r.max_deviation() < tol && here < tol;
        ok &= r.pairs_checked == (rep.len() as u64).pow(2);
        detail.push(format!(
            "{name}: N={} {} pairs, max dev {:.1e} (recomputed {:.1e})",
            rep.n,
            r.pairs_checked,
            r.max_deviation(),
            here
        ));
    }
    ok &= reps[2].1.len() == 144;
    verdict(
        8,
        "linear Weil lifts",
        ok,
        &detail.join("; "),
        start,
        Some(60.0),
    );
}

fn c2(entries: [(f64, f64); 4], scale: f64) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(2, 2, &entries.map(|(r, i)| Complex64::new(r, i) * scale))
}

/// 0, or an eighth root of unity times 1 or 1/√2.
fn allowed_entry(z: Complex64) -> bool {
    if z.norm() < 1e-12 {
        return true;
    }
    let r = z.norm();
    let radius_ok = (r - 1.0).abs() < 1e-12 || (r - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12;
    let octant = z.arg() / (std::f64::consts::PI / 4.0);
    radius_ok && (octant - octant.round()).abs() < 1e-12
}

#[test]
fn u2_generators_and_tables() {
    let start = Instant::now();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let hq_plus = c2([(1., 0.), (0., 1.), (0., -1.), (-1., 0.)], s);
    let hq_minus = c2([(-1., 0.), (0., 1.), (0., -1.), (1., 0.)], s);
    let hp_plus = c2([(0., 0.), (-1., -1.), (-1., 1.), (0., 0.)], s);
    // τ_P = −, shared by −− and +−.
    let hp_minus = c2([(0., 0.), (1., -1.), (1., 1.), (0., 0.)], s);
    let expected = [
        (U2Variant::PlusPlus, &hq_plus, &hp_plus),
        (U2Variant::MinusMinus, &hq_minus, &hp_minus),
        (U2Variant::PlusMinus, &hq_plus, &hp_minus),
        (U2Variant::MinusPlus, &hq_minus, &hp_plus),
    ];
    let (q, p) = clock_shift(2);
    let i = Complex64::new(0.0, 1.0);
    let qp = &q * &p;
    let mut ok = true;
    let mut detail = Vec::new();
    for (v, want_q, want_p) in expected {
        let (uq, up) = u2_generators(v);
        let entries_ok = max_diff(&uq, want_q) < 1e-12 && max_diff(&up, want_p) < 1e-12;
        let (tq, tp) = v.signs();
        // h_Q: (Q, P) ↦ (τ_Q i QP, −P); h_P: (Q, P) ↦ (−Q, τ_P i QP).
        let targets = [&qp * (i * tq as f64), -&p, -&q, &qp * (i * tp as f64)];
        let action_ok = max_diff(&(&uq * &q * uq.adjoint()), &targets[0]) < 1e-12
            && max_diff(&(&uq * &p * uq.adjoint()), &targets[1]) < 1e-12
            && max_diff(&(&up * &q * up.adjoint()), &targets[2]) < 1e-12
            && max_diff(&(&up * &p * up.adjoint()), &targets[3]) < 1e-12;
        let (aq, ap) = t2_generators(v).unwrap();
        let library_images = [aq.image_q(), aq.image_p(), ap.image_q(), ap.image_p()];
        let library_ok = library_images
            .iter()
            .zip(&targets)
            .all(|(x, t)| max_diff(&monomial(x), t) < 1e-12);
        let table = u2_table(v).unwrap();
        let table_entries_ok = table
            .table
            .iter()
            .all(|u| u.mat.iter().all(|z| allowed_entry(*z)));
        let r = verify_linear_rep(&table);
        let linear = r.pairs_checked == 36 && r.multiplicativity_max_dev < 1e-12;
        ok &= entries_ok && action_ok && library_ok && table_entries_ok;
        if matches!(v, U2Variant::PlusPlus | U2Variant::MinusMinus) {
            ok &= linear;
        }
        detail.push(format!(
            "{}: entries {}, action {}, linear on 36 pairs {}",
            v.label(),
            entries_ok && table_entries_ok,
            action_ok,
            linear
        ));
    }
    verdict(
        9,
        "ū₂ generators and Sp_2 tables",
        ok,
        &detail.join("; "),
        start,
        None,
    );
}

fn root(k: i64, m: i64) -> Complex64 {
    Complex64::from_polar(
        1.0,
        2.0 * std::f64::consts::PI * k.rem_euclid(m) as f64 / m as f64,
    )
}

#[test]
fn residue_and_root_of_unity_identities() {
    let start = Instant::now();
    let mut ok = true;
    let mut checked = 0u64;
    for k in 0..=10i64 {
        let n = 2 * (2 * k + 1);
        let odd = 2 * k + 1;
        for alpha in 0..n {
            let a2 = alpha.rem_euclid(2);
            let h = alpha + alpha / 2 * n;
            ok &= hat(alpha, n).unwrap().rem_euclid(2 * n) == h.rem_euclid(2 * n);
            let r = |x: i64, m: i64| Residue::new(x, m).unwrap();
            let lhs = crt_compose(r(a2, 4), r(alpha, odd)).unwrap();
            ok &= lhs.value() == h.rem_euclid(2 * n);
            let lhs = crt_compose(r(2 * a2, 4), r(0, odd)).unwrap();
            ok &= lhs.value() == (h * n).rem_euclid(2 * n);
            checked += 2;
        }
        let bz = bezout(4, odd).unwrap();
        ok &= bz.mu1 * odd - bz.mu2 * 4 == 1 && (bz.mu2 + k * k).rem_euclid(odd) == 0;
        checked += 1;
        for a in 0..n {
            for b in 0..n {
                let ha = (a + a / 2 * n).rem_euclid(4);
                let hb = (b + b / 2 * n).rem_euclid(4);
                ok &= (root(ha * hb, 4) - root((a % 2) * (b % 2), 4)).norm() < 1e-12;
                checked += 1;
            }
        }
    }
    for d1 in 1..=12i64 {
        for d2 in 1..=12i64 {
            if gcd(d1, d2) != 1 {
                continue;
            }
            let bz = bezout(d1, d2).unwrap();
            ok &= bz.mu1 * d2 - bz.mu2 * d1 == 1;
            let n = d1 * d2;
            for a in 0..n {
                for b in 0..n {
                    let lhs = root(a * b, n);
                    let rhs = root((a % d1) * (b % d1) * bz.mu1, d1)
                        * root(-(a % d2) * (b % d2) * bz.mu2, d2);
                    ok &= (lhs - rhs).norm() < 1e-12;
                    checked += 1;
                }
            }
        }
    }
    let detail = format!("{checked} instances: hat/CRT bridges and quarter roots for k <= 10, factorization for coprime d1, d2 <= 12, μ₂ + k² ≡ 0");
    verdict(
        10,
        "residue and root-of-unity identities",
        ok,
        &detail,
        start,
        None,
    );
}

use std::fmt::Write as _;

use serde_json::{json, Value};
use tpn_core::automorphisms::{simple_section_cocycle, splitting, Automorphism};
use tpn_core::checks::{self, Coverage, SweepReport};
use tpn_core::residue::{self, Residue};
use tpn_core::symplectic::{enumerate_sp, is_sp, is_sp_tilde, Mat2, SpElement};
use tpn_core::weil::{export_pairs, lift_for, verify_linear_rep};
use tpn_core::Error;

use crate::output::{Failure, Report, EXIT_FAILED};
use crate::{Global, Target};

/// Exhaustive sweeps run without `--max-pairs` only up to these N.
pub const PAIR_CAP_N: i64 = 10;
pub const TRIPLE_CAP_N: i64 = 6;

fn sp_element(n: i64, m: [i64; 4]) -> Result<SpElement, Failure> {
    let [a, b, c, d] = m;
    SpElement::from_entries(a, b, c, d, n).map_err(|_| {
        Failure::usage(format!(
            "[[{a},{b}],[{c},{d}]] does not have determinant 1 mod {n}"
        ))
    })
}

fn entries_json(s: &SpElement) -> Value {
    let [a, b, c, d] = s.entries();
    json!([[a, b], [c, d]])
}

pub fn sp_list(n: i64) -> Result<Report, Failure> {
    let group = enumerate_sp(n)?;
    let mut text = String::new();
    for s in &group {
        let [a, b, c, d] = s.entries();
        writeln!(text, "{a} {b} {c} {d}").unwrap();
    }
    let rows: Vec<Value> = group.iter().map(entries_json).collect();
    let result = json!({ "order": group.len(), "elements": rows });
    Ok(Report::new(n, "sp list", result, text))
}

pub fn sp_check(n: i64, m: [i64; 4]) -> Result<Report, Failure> {
    let [a, b, c, d] = m;
    let in_sp = is_sp(&Mat2::new(a, b, c, d, n)?);
    let in_tilde = is_sp_tilde(&Mat2::new(a, b, c, d, 2 * n)?, n);
    let verdict = |x: bool| if x { "member" } else { "non-member" };
    let text = format!(
        "Sp_{n}: {}\nSp~_{}: {}\n",
        verdict(in_sp),
        2 * n,
        verdict(in_tilde)
    );
    let result = json!({ "sp": in_sp, "sp_tilde": in_tilde });
    let mut report = Report::new(n, "sp check", result, text);
    if !in_sp {
        report.exit_code = EXIT_FAILED;
    }
    Ok(report)
}

/// `T(Q) = ω̌^e Q^δ P^{−β}` and `T(P) = ω̌^e Q^{−γ} P^α`, exponents of Q and
/// P written with the signs of the formula on basic representatives.
fn images_json(t: &Automorphism) -> (Value, Value) {
    let [a, b, c, d] = t.matrix().entries();
    (
        json!({ "phase_exp": t.image_q().phase().value(), "q": d, "p": -b }),
        json!({ "phase_exp": t.image_p().phase().value(), "q": -c, "p": a }),
    )
}

pub fn split(n: i64, m: [i64; 4]) -> Result<Report, Failure> {
    let s = sp_element(n, m)?;
    let t = splitting(&s)?;
    let (tq, tp) = images_json(&t);
    let text = format!(
        "S = {s}\nT(Q) = w^{} Q^{} P^{}\nT(P) = w^{} Q^{} P^{}\n(w = exp(2 pi i / {}))\n",
        tq["phase_exp"],
        tq["q"],
        tq["p"],
        tp["phase_exp"],
        tp["q"],
        tp["p"],
        2 * n
    );
    let result = json!({ "matrix": entries_json(&s), "tq": tq, "tp": tp });
    Ok(Report::new(n, "split", result, text))
}

pub fn cocycle(n: i64, m1: [i64; 4], m2: [i64; 4]) -> Result<Report, Failure> {
    let (s1, s2) = (sp_element(n, m1)?, sp_element(n, m2)?);
    let c = simple_section_cocycle(&s1, &s2)?;
    if c.odd_n_trivial {
        eprintln!("note: N = {n} is odd; the simple section is a splitting and C is trivial");
    }
    let result = json!({
        "s1": entries_json(&s1),
        "s2": entries_json(&s2),
        "c1": c.value.c1,
        "c2": c.value.c2,
    });
    Ok(Report::new(n, "cocycle", result, format!("{}\n", c.value)))
}

fn format_complex(re: f64, im: f64) -> String {
    // Avoid printing -0.000000.
    let clean = |x: f64| if x.abs() < 5e-7 { 0.0 } else { x };
    format!("{:+.6}{:+.6}i", clean(re), clean(im))
}

pub fn weil(n: i64, m: [i64; 4], g: &Global) -> Result<Report, Failure> {
    let s = sp_element(n, m)?;
    let rep = lift_for(n)?;
    let u = rep
        .get(&s)
        .ok_or_else(|| Failure::from(Error::Construction(format!("{s} missing from the lift"))))?;
    let pairs = export_pairs(&u.mat);
    let mut text = String::new();
    for row in &pairs {
        let cells: Vec<String> = row
            .iter()
            .map(|[re, im]| format_complex(*re, *im))
            .collect();
        writeln!(text, "{}", cells.join("  ")).unwrap();
    }
    let residual = tpn_core::weil::intertwining_residual(&u.mat, &splitting(&s)?);
    let result = json!({
        "matrix": entries_json(&s),
        "dim": u.dim(),
        "unitary": pairs,
        "intertwining_residual": residual,
    });
    let mut report = Report::new(n, "weil", result, text);
    report.max_deviation = Some(residual);
    if residual > g.tol {
        report.exit_code = EXIT_FAILED;
    }
    Ok(report)
}

pub fn crt_decompose(n: i64, value: i64, d1: Option<i64>) -> Result<Report, Failure> {
    let d1 = d1.unwrap_or(1 << n.trailing_zeros());
    if n % d1 != 0 {
        return Err(Failure::usage(format!("d1 = {d1} does not divide N = {n}")));
    }
    let d2 = n / d1;
    let (a, b) = residue::crt_decompose(Residue::new(value, n)?, d1, d2)?;
    let text = format!("({} mod {d1}, {} mod {d2})\n", a.value(), b.value());
    let result = json!({
        "value": Residue::new(value, n)?.value(),
        "residues": [[a.value(), d1], [b.value(), d2]],
    });
    Ok(Report::new(n, "crt decompose", result, text))
}

pub fn crt_compose(d1: i64, d2: i64, r1: i64, r2: i64) -> Result<Report, Failure> {
    let r = residue::crt_compose(Residue::new(r1, d1)?, Residue::new(r2, d2)?)?;
    let n = d1 * d2;
    let text = format!("{} mod {n}\n", r.value());
    let result = json!({
        "value": r.value(),
        "residues": [[r1.rem_euclid(d1), d1], [r2.rem_euclid(d2), d2]],
    });
    Ok(Report::new(n, "crt compose", result, text))
}

/// Coverage for a sweep over `count` tuples, or why it is refused.
fn coverage(count: u64, n: i64, cap_n: i64, g: &Global, what: &str) -> Result<Coverage, Failure> {
    if let Some(k) = g.sample {
        return Ok(Coverage::Sample {
            count: k,
            seed: g.seed,
        });
    }
    let allowed = match g.max_pairs {
        Some(m) => count <= m,
        None => n <= cap_n,
    };
    if allowed {
        Ok(Coverage::All)
    } else {
        Err(Failure::usage(format!(
            "an exhaustive {what} sweep at N = {n} visits {count} tuples; \
             raise --max-pairs or pass --sample"
        )))
    }
}

fn sweep_json(r: &SweepReport) -> Value {
    json!({
        "checked": r.checked,
        "failures": r.failures,
        "first_failure": r.first_failure,
    })
}

fn sweep_text(label: &str, r: &SweepReport) -> String {
    let mut s = format!(
        "{label}: {} checked, {} failures: {}\n",
        r.checked,
        r.failures,
        if r.passed() { "PASS" } else { "FAIL" }
    );
    if let Some(f) = &r.first_failure {
        writeln!(s, "  first failure: {f}").unwrap();
    }
    s
}

pub fn verify(target: Target, n: i64, g: &Global) -> Result<Report, Failure> {
    let report = match target {
        Target::Splitting => {
            if n % 4 == 0 {
                return Err(Error::NoSplitting(n).into());
            }
            let cov = coverage(checks::pairs_in(n)?, n, PAIR_CAP_N, g, "pair")?;
            let r = checks::splitting_sweep(n, cov)?;
            let mut rep = Report::new(
                n,
                "verify splitting",
                json!({ "passed": r.passed(), "pairs": sweep_json(&r) }),
                sweep_text("pairs", &r),
            );
            rep.pairs_checked = Some(r.checked);
            if !r.passed() {
                rep.exit_code = EXIT_FAILED;
            }
            rep
        }
        Target::Cocycle => {
            if n % 2 != 0 {
                return Err(Failure::usage(format!(
                    "the simple-section cocycle is only defined for even N, got {n}"
                )));
            }
            let pcov = coverage(checks::pairs_in(n)?, n, PAIR_CAP_N, g, "pair")?;
            let pairs = checks::cocycle_pair_sweep(n, pcov)?;
            let mut text = sweep_text("pairs (closed form vs defect)", &pairs);
            let triple_count = checks::triples_in(n)?;
            let triples = match coverage(triple_count, n, TRIPLE_CAP_N, g, "triple") {
                Ok(cov) => Some(checks::cocycle_triple_sweep(n, cov)?),
                Err(f) => {
                    eprintln!("note: cocycle identity skipped: {}", f.message);
                    None
                }
            };
            match &triples {
                Some(t) => text.push_str(&sweep_text("triples (cocycle identity)", t)),
                None => text.push_str("triples (cocycle identity): skipped\n"),
            }
            let passed = pairs.passed() && triples.as_ref().is_none_or(SweepReport::passed);
            let mut rep = Report::new(
                n,
                "verify cocycle",
                json!({
                    "passed": passed,
                    "pairs": sweep_json(&pairs),
                    "triples": triples.as_ref().map(sweep_json),
                }),
                text,
            );
            rep.pairs_checked = Some(pairs.checked);
            if !passed {
                rep.exit_code = EXIT_FAILED;
            }
            rep
        }
        Target::Weil => {
            if n % 4 == 0 {
                return Err(Error::NoSplitting(n).into());
            }
            // The representation check always covers every pair.
            let count = checks::pairs_in(n)?;
            let allowed = match g.max_pairs {
                Some(m) => count <= m,
                None => n <= PAIR_CAP_N,
            };
            if !allowed {
                return Err(Failure::usage(format!(
                    "verifying the lift at N = {n} multiplies {count} pairs; raise --max-pairs"
                )));
            }
            let rep_table = lift_for(n)?;
            let r = verify_linear_rep(&rep_table);
            let dev = r.max_deviation();
            let passed = dev <= g.tol;
            let mut text = format!(
                "elements: {}\npairs: {}\nunitarity: {:.3e}\nintertwining: {}\nmultiplicativity: {:.3e}\n",
                r.elements,
                r.pairs_checked,
                r.unitarity_max_dev,
                r.intertwining_max_dev
                    .map_or("n/a".to_string(), |d| format!("{d:.3e}")),
                r.multiplicativity_max_dev,
            );
            writeln!(
                text,
                "max deviation {dev:.3e} vs tol {:e}: {}",
                g.tol,
                if passed { "PASS" } else { "FAIL" }
            )
            .unwrap();
            let mut rep = Report::new(
                n,
                "verify weil",
                json!({
                    "passed": passed,
                    "elements": r.elements,
                    "unitarity_max_dev": r.unitarity_max_dev,
                    "intertwining_max_dev": r.intertwining_max_dev,
                    "multiplicativity_max_dev": r.multiplicativity_max_dev,
                    "tol": g.tol,
                }),
                text,
            );
            rep.max_deviation = Some(dev);
            rep.pairs_checked = Some(r.pairs_checked);
            if !passed {
                rep.exit_code = EXIT_FAILED;
            }
            rep
        }
        Target::Crt => {
            let r = checks::crt_sweep(n)?;
            let mut rep = Report::new(
                n,
                "verify crt",
                json!({ "passed": r.passed(), "round_trips": sweep_json(&r) }),
                sweep_text("round trips", &r),
            );
            if !r.passed() {
                rep.exit_code = EXIT_FAILED;
            }
            rep
        }
    };
    Ok(report)
}

//! Exhaustive or sampled verification sweeps, shared by the command-line
//! front end. Results are reduced in index order so they are deterministic
//! regardless of thread count.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::automorphisms::{
    cocycle_identity_holds, section_defect, simple_section_cocycle, splitting, Automorphism,
    CocycleValue,
};
use crate::error::{Error, Result};
use crate::residue::{crt_compose, crt_decompose, gcd, Residue};
use crate::symplectic::{crt_join_sp, crt_split_sp, enumerate_sp, SpElement, DEFAULT_ENUM_BOUND};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub checked: u64,
    pub failures: u64,
    pub first_failure: Option<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn merge(parts: Vec<SweepReport>) -> Self {
        let mut out = SweepReport {
            checked: 0,
            failures: 0,
            first_failure: None,
        };
        for p in parts {
            out.checked += p.checked;
            out.failures += p.failures;
            if out.first_failure.is_none() {
                out.first_failure = p.first_failure;
            }
        }
        out
    }
}

/// Which index tuples a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coverage {
    All,
    /// This many uniformly random tuples from a seeded generator.
    Sample {
        count: u64,
        seed: u64,
    },
}

/// The tuples a sweep visits, decoded lazily from a flat position.
struct Work {
    len: usize,
    arity: u32,
    samples: Option<Vec<usize>>,
    total: u64,
}

impl Work {
    fn new(len: usize, arity: u32, coverage: Coverage) -> Self {
        match coverage {
            Coverage::All => Self {
                len,
                arity,
                samples: None,
                total: (len as u64).pow(arity),
            },
            Coverage::Sample { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let total = (len as u64).pow(arity);
                let samples = (0..count)
                    .map(|_| rng.random_range(0..total) as usize)
                    .collect();
                Self {
                    len,
                    arity,
                    samples: Some(samples),
                    total: count,
                }
            }
        }
    }

    fn tuple(&self, pos: u64) -> Vec<usize> {
        let mut x = match &self.samples {
            Some(s) => s[pos as usize],
            None => pos as usize,
        };
        let mut t = vec![0; self.arity as usize];
        for slot in t.iter_mut().rev() {
            *slot = x % self.len;
            x /= self.len;
        }
        t
    }
}

const CHUNK: u64 = 4096;

fn sweep<F>(work: Work, check: F) -> SweepReport
where
    F: Fn(&[usize]) -> std::result::Result<(), String> + Sync,
{
    let chunks = work.total.div_ceil(CHUNK);
    let parts: Vec<SweepReport> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut r = SweepReport {
                checked: 0,
                failures: 0,
                first_failure: None,
            };
            for pos in c * CHUNK..((c + 1) * CHUNK).min(work.total) {
                r.checked += 1;
                if let Err(msg) = check(&work.tuple(pos)) {
                    r.failures += 1;
                    if r.first_failure.is_none() {
                        r.first_failure = Some(msg);
                    }
                }
            }
            r
        })
        .collect();
    SweepReport::merge(parts)
}

fn index(group: &[SpElement]) -> HashMap<SpElement, usize> {
    group.iter().enumerate().map(|(i, s)| (*s, i)).collect()
}

/// `Σ(S1)∘Σ(S2) = Σ(S1S2)` and `Π∘Σ = id` on `Sp_N`.
pub fn splitting_sweep(n: i64, coverage: Coverage) -> Result<SweepReport> {
    let group = enumerate_sp(n)?;
    let sig: Vec<Automorphism> = group.iter().map(splitting).collect::<Result<_>>()?;
    for (s, t) in group.iter().zip(&sig) {
        if t.project() != *s {
            return Err(Error::Construction(format!("Π(Σ({s})) != {s}")));
        }
    }
    let idx = index(&group);
    Ok(sweep(Work::new(group.len(), 2, coverage), |t| {
        let (i, j) = (t[0], t[1]);
        let k = idx[&group[i].mul(&group[j]).expect("same modulus")];
        if sig[i].compose(&sig[j]).expect("same modulus") == sig[k] {
            Ok(())
        } else {
            Err(format!("Σ({})Σ({}) != Σ(product)", group[i], group[j]))
        }
    }))
}

/// Closed-form cocycle against the composed defect on pairs.
pub fn cocycle_pair_sweep(n: i64, coverage: Coverage) -> Result<SweepReport> {
    if n % 2 != 0 {
        return Err(Error::WrongParity(n));
    }
    let group = enumerate_sp(n)?;
    Ok(sweep(Work::new(group.len(), 2, coverage), |t| {
        let (a, b) = (&group[t[0]], &group[t[1]]);
        let closed = simple_section_cocycle(a, b)
            .map_err(|e| e.to_string())?
            .value;
        let direct = section_defect(a, b).map_err(|e| e.to_string())?;
        match CocycleValue::from_kernel(&direct) {
            Some(v) if v == closed => Ok(()),
            _ => Err(format!("C({a}, {b}): closed {closed}, direct {direct}")),
        }
    }))
}

/// The 2-cocycle identity over triples.
pub fn cocycle_triple_sweep(n: i64, coverage: Coverage) -> Result<SweepReport> {
    if n % 2 != 0 {
        return Err(Error::WrongParity(n));
    }
    let group = enumerate_sp(n)?;
    Ok(sweep(Work::new(group.len(), 3, coverage), |t| {
        let (g, h, k) = (&group[t[0]], &group[t[1]], &group[t[2]]);
        match cocycle_identity_holds(g, h, k) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!("cocycle identity fails at ({g}, {h}, {k})")),
            Err(e) => Err(e.to_string()),
        }
    }))
}

/// CRT round trips for every coprime factorization `N = d1·d2`, plus the
/// matrix-level split for `N = 2(2k+1)` when `Sp_N` is small enough to list.
pub fn crt_sweep(n: i64) -> Result<SweepReport> {
    let mut parts = Vec::new();
    for d1 in 1..=n {
        if n % d1 != 0 || gcd(d1, n / d1) != 1 {
            continue;
        }
        let d2 = n / d1;
        parts.push(sweep(Work::new(n as usize, 1, Coverage::All), |t| {
            let r = Residue::new(t[0] as i64, n).expect("n >= 1");
            let (a, b) = crt_decompose(r, d1, d2).map_err(|e| e.to_string())?;
            let back = crt_compose(a, b).map_err(|e| e.to_string())?;
            if back == r && a.value() == r.value() % d1 && b.value() == r.value() % d2 {
                Ok(())
            } else {
                Err(format!("round trip of {r} via ({d1}, {d2}) gave {back}"))
            }
        }));
    }
    if n % 4 == 2 && n <= DEFAULT_ENUM_BOUND {
        let group = enumerate_sp(n)?;
        parts.push(sweep(Work::new(group.len(), 1, Coverage::All), |t| {
            let s = group[t[0]];
            let (a, b) = crt_split_sp(&s).map_err(|e| e.to_string())?;
            match crt_join_sp(&a, &b) {
                Ok(back) if back == s => Ok(()),
                _ => Err(format!("matrix round trip fails at {s}")),
            }
        }));
    }
    Ok(SweepReport::merge(parts))
}

pub fn pairs_in(n: i64) -> Result<u64> {
    Ok((enumerate_sp(n)?.len() as u64).pow(2))
}

pub fn triples_in(n: i64) -> Result<u64> {
    Ok((enumerate_sp(n)?.len() as u64).pow(3))
}

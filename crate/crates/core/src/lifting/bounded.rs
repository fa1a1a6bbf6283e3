use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bn1::relator_product;
use super::{LiftError, LiftProblem, PeripheralTarget};
use crate::braid::{
    abelianize, identity_matrix, reduced_burau, reduced_burau_complex, splittable_check, AbelianizedBraidElement, BraidWord,
    SplittableVerdict, MAX_AB_STRANDS,
};
use crate::braid::ring::FiniteField;
use crate::perm::Permutation;

/// Modular Burau specializations `(p, k)` used for certification.
const BURAU_MOD: [(u32, u32); 2] = [(5, 4), (7, 3)];
/// Angle of the numeric Burau check.
const BURAU_THETA: f64 = 1.0;
const BURAU_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundedOptions {
    /// Maximum length of each handle word.
    pub len_max: usize,
    /// Maximum number of candidate assignments examined.
    pub node_budget: u64,
}

impl Default for BoundedOptions {
    fn default() -> Self {
        BoundedOptions {
            len_max: 6,
            node_budget: 5_000_000,
        }
    }
}

/// Which quotients of `B_n` the relator was checked in.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftCertificate {
    pub quotients: Vec<String>,
    /// The relator word freely reduces to the empty word, so it is trivial in `B_n` itself.
    pub freely_trivial: bool,
    pub total_length: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BraidLift {
    pub handles: Vec<BraidWord>,
    pub certificate: LiftCertificate,
}

/// Letters ordered `1, −1, 2, −2, …`.
fn letters(n: usize) -> Vec<i32> {
    (1..n as i32).flat_map(|i| [i, -i]).collect()
}

/// Freely reduced words up to `len`, grouped by permutation then by length,
/// each group in enumeration order (length first, then letter order).
fn words_by_permutation(n: usize, len: usize) -> HashMap<Permutation, Vec<Vec<BraidWord>>> {
    let mut out: HashMap<Permutation, Vec<Vec<BraidWord>>> = HashMap::new();
    let ls = letters(n);
    let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
    for l in 0..=len {
        for w in &layer {
            let bw = BraidWord::new(n, w.clone()).expect("valid letters");
            let slot = out.entry(bw.underlying_permutation()).or_insert_with(|| vec![Vec::new(); len + 1]);
            slot[l].push(bw);
        }
        if l == len {
            break;
        }
        let mut next = Vec::new();
        for w in &layer {
            for &x in &ls {
                if w.last() == Some(&-x) {
                    continue;
                }
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        layer = next;
    }
    out
}

/// Compositions of `total` into `parts` entries, each at most `cap`, in
/// lexicographic order.
fn compositions(total: usize, parts: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in 0..=cap.min(total) {
            if total - v > cap * (parts - 1) {
                continue;
            }
            cur.push(v);
            rec(total - v, parts - 1, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, cap, &mut Vec::new(), &mut out);
    out
}

fn burau_mod_identity(w: &BraidWord, p: u32, k: u32) -> Result<bool, LiftError> {
    let (field, root) = FiniteField::with_root_of_unity(p, k)
        .ok_or_else(|| LiftError::Malformed(format!("no root of unity for p={p}, k={k}")))?;
    let m = reduced_burau(&field, w, &root)?;
    Ok(m == identity_matrix(&field, w.strands() - 1))
}

fn burau_numeric_identity(w: &BraidWord) -> Result<bool, LiftError> {
    let m = reduced_burau_complex(w, num_complex::Complex64::from_polar(1.0, BURAU_THETA))?;
    let n = m.nrows();
    Ok((m - nalgebra::DMatrix::identity(n, n)).norm() < BURAU_TOL)
}

/// Checks the relator word in every available quotient; `None` if one fails.
fn certify(word: &BraidWord, ab_checked: bool) -> Result<Option<LiftCertificate>, LiftError> {
    let n = word.strands();
    if !word.underlying_permutation().is_identity() {
        return Ok(None);
    }
    let mut quotients = vec!["sym".to_string()];
    if ab_checked {
        quotients.push("bn1".to_string());
    }
    let freely_trivial = word.free_reduce().is_empty();
    if !freely_trivial && n >= 2 {
        for (p, k) in BURAU_MOD {
            if !burau_mod_identity(word, p, k)? {
                return Ok(None);
            }
        }
        if !burau_numeric_identity(word)? {
            return Ok(None);
        }
    }
    if n >= 2 {
        quotients.extend(BURAU_MOD.iter().map(|(p, k)| format!("burau:p={p},k={k}")));
        quotients.push(format!("burau:theta={BURAU_THETA}"));
    }
    if freely_trivial {
        quotients.push("free".to_string());
    }
    Ok(Some(LiftCertificate {
        quotients,
        freely_trivial,
        total_length: 0,
    }))
}

fn peripheral_words(p: &LiftProblem) -> Result<Vec<BraidWord>, LiftError> {
    let n = p.strands()?;
    p.peripheral
        .iter()
        .enumerate()
        .map(|(j, t)| match t {
            PeripheralTarget::Word(w) if w.strands() == n => {
                match splittable_check(w, None) {
                    Err(e) => Err(LiftError::PeripheralNotSplittable {
                        puncture: j,
                        reason: e.to_string(),
                    }),
                    Ok(SplittableVerdict::InvariantFail(f)) => Err(LiftError::PeripheralNotSplittable {
                        puncture: j,
                        reason: format!("{f:?}"),
                    }),
                    Ok(_) => Ok(w.clone()),
                }
            }
            PeripheralTarget::Word(_) => Err(LiftError::Malformed(format!("peripheral word {j} has wrong strand count"))),
            PeripheralTarget::Element(_) => Err(LiftError::Malformed(
                "bounded braid lifts need peripheral braid words".into(),
            )),
        })
        .collect()
}

/// Iterative deepening over the total length of the handle words.
///
/// Candidates are filtered in `S_n` by construction and in `B_n^{(1)}` before any
/// Burau evaluation; the first hit in (total length, composition, letter) order
/// is returned.
pub fn lift_to_bn_bounded(p: &LiftProblem, opts: &BoundedOptions) -> Result<BraidLift, LiftError> {
    let n = p.strands()?;
    p.peripheral_elements()?;
    let periph = peripheral_words(p)?;
    let mut tail = BraidWord::identity(n);
    for w in &periph {
        tail = tail.concat(w)?;
    }
    let use_ab = n <= MAX_AB_STRANDS;
    let tail_ab: Vec<AbelianizedBraidElement> = if use_ab { vec![abelianize(&tail)] } else { Vec::new() };

    let perms = p.permutations()?;
    let t = &p.monodromy;
    let targets: Vec<Permutation> = t.entries()[..2 * t.genus()].iter().map(|&x| perms[x].clone()).collect();
    let table = words_by_permutation(n, opts.len_max);
    let empty: Vec<Vec<BraidWord>> = vec![Vec::new(); opts.len_max + 1];
    let cands: Vec<&Vec<Vec<BraidWord>>> = targets.iter().map(|s| table.get(s).unwrap_or(&empty)).collect();
    let ab_cache: HashMap<&BraidWord, AbelianizedBraidElement> = if use_ab {
        cands
            .iter()
            .flat_map(|c| c.iter().flatten())
            .map(|w| (w, abelianize(w)))
            .collect()
    } else {
        HashMap::new()
    };

    let parts = targets.len();
    let mut explored: u64 = 0;
    for total in 0..=parts * opts.len_max {
        for comp in compositions(total, parts, opts.len_max) {
            let lists: Vec<&Vec<BraidWord>> = (0..parts).map(|k| &cands[k][comp[k]]).collect();
            let size: u64 = lists.iter().map(|l| l.len() as u64).product();
            if size == 0 {
                continue;
            }
            if explored + size > opts.node_budget {
                return Err(LiftError::NotFoundWithinBound {
                    explored,
                    exhausted: false,
                });
            }
            explored += size;
            let decode = |mut idx: u64| -> Vec<&BraidWord> {
                let mut out = Vec::with_capacity(parts);
                for l in &lists {
                    out.push(&l[(idx % l.len() as u64) as usize]);
                    idx /= l.len() as u64;
                }
                out
            };
            let attempt = |idx: u64| -> Result<Option<(Vec<BraidWord>, LiftCertificate)>, LiftError> {
                let ws = decode(idx);
                if use_ab {
                    let hs: Vec<AbelianizedBraidElement> = ws.iter().map(|w| ab_cache[*w].clone()).collect();
                    if !relator_product(&hs, &tail_ab, n)?.is_identity() {
                        return Ok(None);
                    }
                }
                let mut rel = BraidWord::identity(n);
                for pair in ws.chunks(2) {
                    let c = pair[0]
                        .concat(pair[1])?
                        .concat(&pair[0].inverse())?
                        .concat(&pair[1].inverse())?;
                    rel = rel.concat(&c)?;
                }
                rel = rel.concat(&tail)?;
                Ok(certify(&rel, use_ab)?.map(|mut c| {
                    c.total_length = total;
                    (ws.into_iter().cloned().collect(), c)
                }))
            };
            let hit = (0..size)
                .into_par_iter()
                .find_first(|&idx| !matches!(attempt(idx), Ok(None)));
            if let Some(idx) = hit {
                if let Some((handles, certificate)) = attempt(idx)? {
                    return Ok(BraidLift { handles, certificate });
                }
            }
        }
    }
    Err(LiftError::NotFoundWithinBound {
        explored,
        exhausted: true,
    })
}

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::word::{pair_index, pairs};
use super::{BraidError, BraidWord};
use crate::perm::Permutation;

/// Largest strand count supported by the cached factor set.
pub const MAX_AB_STRANDS: usize = 6;

/// An element of `B_n^{(1)} = B_n / [P_n, P_n]`.
///
/// Written as `sec(perm) · a(lk)`, where `sec` is the positive permutation braid and
/// `a(lk)` is the pure class with linking vector `lk` (indexed by pairs `i < j` of
/// strand positions, see [`pair_index`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AbelianizedBraidElement {
    pub perm: Permutation,
    pub lk: Vec<i64>,
}

impl AbelianizedBraidElement {
    pub fn identity(n: usize) -> Self {
        AbelianizedBraidElement {
            perm: Permutation::identity(n),
            lk: vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    /// The section lift of `p`, with zero linking vector.
    pub fn from_permutation(p: Permutation) -> Self {
        let n = p.degree();
        AbelianizedBraidElement {
            perm: p,
            lk: vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    pub fn strands(&self) -> usize {
        self.perm.degree()
    }

    pub fn is_pure(&self) -> bool {
        self.perm.is_identity()
    }

    pub fn is_identity(&self) -> bool {
        self.is_pure() && self.lk.iter().all(|&v| v == 0)
    }

    pub fn inverse(&self) -> Result<Self, BraidError> {
        // (s,u)(s⁻¹,v) = (1, u^{s⁻¹} + v + κ(s,s⁻¹)) = id
        let sinv = self.perm.inverse();
        let k = kappa(&self.perm, &sinv)?;
        let moved = act(&self.lk, &sinv);
        let lk = moved.iter().zip(&k).map(|(a, b)| -a - b).collect();
        Ok(AbelianizedBraidElement { perm: sinv, lk })
    }
}

/// Pair action `(u^t)_{t(i) t(j)} = u_{ij}`.
pub fn act(u: &[i64], t: &Permutation) -> Vec<i64> {
    let n = t.degree();
    let mut out = vec![0i64; u.len()];
    for (k, (i, j)) in pairs(n).into_iter().enumerate() {
        let (a, b) = (t.apply(i), t.apply(j));
        out[pair_index(n, a.min(b), a.max(b))] = u[k];
    }
    out
}

/// Linking vector of a pure word: half the signed crossings between each pair of strands.
pub fn pure_linking(w: &BraidWord) -> Result<Vec<i64>, BraidError> {
    if !w.underlying_permutation().is_identity() {
        return Err(BraidError::NotPure);
    }
    Ok(w.crossing_counts().into_iter().map(|c| c / 2).collect())
}

/// Image of `w` in `B_n^{(1)}`: `(s, lk(sec(s)⁻¹ · w))`.
pub fn abelianize(w: &BraidWord) -> AbelianizedBraidElement {
    let s = w.underlying_permutation();
    let pure = BraidWord::section(&s)
        .inverse()
        .concat(w)
        .expect("same strand count");
    let lk = pure_linking(&pure).expect("pure by construction");
    AbelianizedBraidElement { perm: s, lk }
}

/// Product in `B_n^{(1)}`: `(s,u)(t,v) = (st, u^t + v + κ(s,t))`, where
/// `κ(s,t) = lk(sec(st)⁻¹ · sec(s) · sec(t))`.
pub fn ab_product(
    x: &AbelianizedBraidElement,
    y: &AbelianizedBraidElement,
) -> Result<AbelianizedBraidElement, BraidError> {
    if x.strands() != y.strands() {
        return Err(BraidError::StrandMismatch {
            left: x.strands(),
            right: y.strands(),
        });
    }
    let k = kappa(&x.perm, &y.perm)?;
    let moved = act(&x.lk, &y.perm);
    let lk = moved
        .iter()
        .zip(&y.lk)
        .zip(&k)
        .map(|((a, b), c)| a + b + c)
        .collect();
    Ok(AbelianizedBraidElement {
        perm: x.perm.then(&y.perm),
        lk,
    })
}

struct KappaTable {
    pairs: usize,
    order: usize,
    data: Vec<i8>,
}

static KAPPA: [OnceLock<KappaTable>; MAX_AB_STRANDS + 1] = [const { OnceLock::new() }; MAX_AB_STRANDS + 1];

fn kappa_table(n: usize) -> &'static KappaTable {
    KAPPA[n].get_or_init(|| {
        let perms = Permutation::all(n);
        let secs: Vec<BraidWord> = perms.iter().map(BraidWord::section).collect();
        let order = perms.len();
        let np = n * n.saturating_sub(1) / 2;
        let mut data = vec![0i8; order * order * np];
        for (a, s) in perms.iter().enumerate() {
            for (b, t) in perms.iter().enumerate() {
                let st = s.then(t);
                let w = secs[st.lex_rank()]
                    .inverse()
                    .concat(&secs[a])
                    .and_then(|w| w.concat(&secs[b]))
                    .expect("same strand count");
                let lk = pure_linking(&w).expect("pure by construction");
                let base = (a * order + b) * np;
                for (k, v) in lk.into_iter().enumerate() {
                    data[base + k] = v as i8;
                }
            }
        }
        KappaTable {
            pairs: np,
            order,
            data,
        }
    })
}

/// The factor set `κ(s,t)` of the positive-permutation-braid section.
pub fn kappa(s: &Permutation, t: &Permutation) -> Result<Vec<i64>, BraidError> {
    let n = s.degree();
    if n != t.degree() {
        return Err(BraidError::StrandMismatch {
            left: n,
            right: t.degree(),
        });
    }
    if n > MAX_AB_STRANDS {
        return Err(BraidError::BadStrandCount(n));
    }
    let table = kappa_table(n);
    let base = (s.lex_rank() * table.order + t.lex_rank()) * table.pairs;
    Ok(table.data[base..base + table.pairs]
        .iter()
        .map(|&v| v as i64)
        .collect())
}

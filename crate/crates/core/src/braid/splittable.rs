use serde::{Deserialize, Serialize};

use super::burau::alexander_polynomial;
use super::word::pair_index;
use super::{BraidError, BraidWord};

/// One rewriting step on a braid word. Positions are 0-based letter offsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum WordMove {
    /// Insert `σ_g σ_g⁻¹` before position `pos`.
    FreeInsert { pos: usize, generator: i32 },
    /// Delete the inverse pair at `pos, pos+1`.
    FreeCancel { pos: usize },
    /// Swap letters at `pos, pos+1` whose generators are at distance ≥ 2.
    FarCommute { pos: usize },
    /// Replace `a b a` by `b a b` at `pos` (adjacent generators, equal signs).
    BraidRelation { pos: usize },
    /// Cancel all adjacent inverse pairs.
    FreeReduce,
    /// Move the first letter to the end (conjugation; closure-preserving only).
    Rotate,
    /// Remove the only occurrence of the top generator, `u σ v ↦ v u` on one strand fewer
    /// (Markov destabilization; closure-preserving only).
    Destabilize,
}

impl WordMove {
    /// True for moves that preserve the braid itself, not only its closure.
    pub fn is_braid_move(&self) -> bool {
        !matches!(self, WordMove::Rotate | WordMove::Destabilize)
    }

    pub fn apply(&self, w: &BraidWord) -> Result<BraidWord, BraidError> {
        let bad = |why: &str| BraidError::Certificate(format!("{self:?}: {why}"));
        let l = w.letters();
        let n = w.strands();
        let out = match *self {
            WordMove::FreeInsert { pos, generator } => {
                if pos > l.len() || generator == 0 || generator.unsigned_abs() as usize >= n {
                    return Err(bad("out of range"));
                }
                let mut v = l.to_vec();
                v.splice(pos..pos, [generator, -generator]);
                BraidWord::new(n, v)?
            }
            WordMove::FreeCancel { pos } => {
                if pos + 1 >= l.len() || l[pos] != -l[pos + 1] {
                    return Err(bad("not an inverse pair"));
                }
                let mut v = l.to_vec();
                v.drain(pos..pos + 2);
                BraidWord::new(n, v)?
            }
            WordMove::FarCommute { pos } => {
                if pos + 1 >= l.len() || (l[pos].abs() - l[pos + 1].abs()).abs() < 2 {
                    return Err(bad("generators not far apart"));
                }
                let mut v = l.to_vec();
                v.swap(pos, pos + 1);
                BraidWord::new(n, v)?
            }
            WordMove::BraidRelation { pos } => {
                if pos + 2 >= l.len() {
                    return Err(bad("out of range"));
                }
                let (a, b, c) = (l[pos], l[pos + 1], l[pos + 2]);
                if a != c || a.signum() != b.signum() || (a.abs() - b.abs()).abs() != 1 {
                    return Err(bad("not a braid-relation pattern"));
                }
                let mut v = l.to_vec();
                v[pos..pos + 3].copy_from_slice(&[b, a, b]);
                BraidWord::new(n, v)?
            }
            WordMove::FreeReduce => w.free_reduce(),
            WordMove::Rotate => {
                let mut v = l.to_vec();
                if !v.is_empty() {
                    v.rotate_left(1);
                }
                BraidWord::new(n, v)?
            }
            WordMove::Destabilize => {
                if n < 2 {
                    return Err(bad("one strand"));
                }
                let top = (n - 1) as i32;
                let hits: Vec<usize> = (0..l.len()).filter(|&i| l[i].abs() == top).collect();
                if hits.len() != 1 {
                    return Err(bad("top generator must occur exactly once"));
                }
                let k = hits[0];
                let mut v = l[k + 1..].to_vec();
                v.extend_from_slice(&l[..k]);
                BraidWord::new(n - 1, v)?
            }
        };
        Ok(out)
    }
}

/// Evidence that a braid is completely splittable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitCertificate {
    /// Braid moves turning the (free-reduced) input into `conjugator · β · conjugator⁻¹`.
    pub rewrite: Vec<WordMove>,
    /// Consecutive 1-based strand intervals `[lo, hi]` partitioning `1..=n`.
    pub blocks: Vec<(usize, usize)>,
    pub conjugator: Vec<i32>,
    /// Per-block words in block-local generator numbering; `β` is their juxtaposition.
    pub block_words: Vec<Vec<i32>>,
    /// Per-block closure-preserving moves reducing the block word to the empty word on
    /// one strand.
    pub unknot_witness: Vec<Vec<WordMove>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "detail")]
pub enum SplittableVerdict {
    CertifiedYes(SplitCertificate),
    InvariantFail(InvariantFailure),
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantFailure {
    /// Two closure components (given by starting strands) link nontrivially.
    Linking {
        component_a: Vec<usize>,
        component_b: Vec<usize>,
        linking_number: i64,
    },
    /// A component's closure has nontrivial Alexander polynomial.
    Alexander { component: Vec<usize>, polynomial: String },
    /// Bennequin bound: an unknotted closed `k`-braid has `|self-writhe| ≤ k − 1`.
    SelfWrithe { component: Vec<usize>, writhe: i64 },
}

impl SplitCertificate {
    /// Checks every claim of the certificate against `w`.
    pub fn verify(&self, w: &BraidWord) -> Result<(), BraidError> {
        let bad = |why: String| BraidError::Certificate(why);
        let n = w.strands();
        let mut cur = w.free_reduce();
        for m in &self.rewrite {
            if !m.is_braid_move() {
                return Err(bad(format!("{m:?} is not a braid move")));
            }
            cur = m.apply(&cur)?;
        }
        // blocks partition 1..=n into consecutive intervals
        let mut next = 1;
        for &(lo, hi) in &self.blocks {
            if lo != next || hi < lo || hi > n {
                return Err(bad(format!("block [{lo},{hi}] breaks the partition")));
            }
            next = hi + 1;
        }
        if next != n + 1 {
            return Err(bad("blocks do not cover all strands".into()));
        }
        if self.block_words.len() != self.blocks.len() || self.unknot_witness.len() != self.blocks.len() {
            return Err(bad("one word and one witness per block required".into()));
        }
        let mut beta = Vec::new();
        for (&(lo, hi), word) in self.blocks.iter().zip(&self.block_words) {
            let k = hi - lo + 1;
            let local = BraidWord::new(k, word.clone())?;
            beta.extend(local.letters().iter().map(|&l| l.signum() * (l.abs() + lo as i32 - 1)));
        }
        let beta = BraidWord::new(n, beta)?;
        let c = BraidWord::new(n, self.conjugator.clone())?;
        let target = beta.conjugate_by(&c)?.free_reduce();
        if cur.free_reduce() != target {
            return Err(bad("rewritten word differs from conjugated split braid".into()));
        }
        for (i, ((&(lo, hi), word), witness)) in self
            .blocks
            .iter()
            .zip(&self.block_words)
            .zip(&self.unknot_witness)
            .enumerate()
        {
            let mut b = BraidWord::new(hi - lo + 1, word.clone())?;
            for m in witness {
                b = m.apply(&b)?;
            }
            if b.strands() != 1 || !b.is_empty() {
                return Err(bad(format!("block {i} witness does not end at the one-strand unknot")));
            }
        }
        Ok(())
    }
}

/// Strand cycles of the closure (0-based starting positions).
pub fn closure_components(w: &BraidWord) -> Vec<Vec<usize>> {
    w.underlying_permutation().cycles()
}

/// Semi-decision for membership in the completely splittable set.
///
/// Invariant filters run first, so a failing invariant always wins over any certificate.
pub fn splittable_check(
    w: &BraidWord,
    certificate: Option<&SplitCertificate>,
) -> Result<SplittableVerdict, BraidError> {
    let reduced = w.free_reduce();
    if reduced.is_empty() {
        return Err(BraidError::IdentityBraid);
    }
    if let Some(fail) = invariant_failure(&reduced)? {
        return Ok(SplittableVerdict::InvariantFail(fail));
    }
    if let Some(cert) = certificate {
        return Ok(match cert.verify(w) {
            Ok(()) => SplittableVerdict::CertifiedYes(cert.clone()),
            Err(_) => SplittableVerdict::Unknown,
        });
    }
    match builtin_certificate(w) {
        Some(cert) if cert.verify(w).is_ok() => Ok(SplittableVerdict::CertifiedYes(cert)),
        _ => Ok(SplittableVerdict::Unknown),
    }
}

fn invariant_failure(w: &BraidWord) -> Result<Option<InvariantFailure>, BraidError> {
    let n = w.strands();
    let comps = closure_components(w);
    let counts = w.crossing_counts();
    let count = |i: usize, j: usize| counts[pair_index(n, i.min(j), i.max(j))];
    for (a, ca) in comps.iter().enumerate() {
        for cb in &comps[a + 1..] {
            let total: i64 = ca.iter().flat_map(|&i| cb.iter().map(move |&j| (i, j))).map(|(i, j)| count(i, j)).sum();
            if total != 0 {
                return Ok(Some(InvariantFailure::Linking {
                    component_a: ca.iter().map(|i| i + 1).collect(),
                    component_b: cb.iter().map(|i| i + 1).collect(),
                    linking_number: total / 2,
                }));
            }
        }
    }
    for comp in &comps {
        let sub = w.restrict_to(comp);
        let k = comp.len() as i64;
        let writhe = sub.writhe();
        if writhe.abs() >= k {
            return Ok(Some(InvariantFailure::SelfWrithe {
                component: comp.iter().map(|i| i + 1).collect(),
                writhe,
            }));
        }
        let poly = alexander_polynomial(&sub)?;
        if poly.coeffs != [1] {
            return Ok(Some(InvariantFailure::Alexander {
                component: comp.iter().map(|i| i + 1).collect(),
                polynomial: poly.to_string(),
            }));
        }
    }
    Ok(None)
}

/// Certificate for words of the form `u · m · u⁻¹` (after free reduction) in which
/// every generator occurs at most once in `m`; this covers the band generators.
pub fn builtin_certificate(w: &BraidWord) -> Option<SplitCertificate> {
    let n = w.strands();
    let r = w.free_reduce();
    let l = r.letters();
    let mut split = None;
    for k in (0..=l.len() / 2).rev() {
        let prefix_ok = (0..k).all(|i| l[i] == -l[l.len() - 1 - i]);
        if !prefix_ok {
            continue;
        }
        let middle = &l[k..l.len() - k];
        let mut used = vec![false; n];
        if middle.iter().all(|&x| !std::mem::replace(&mut used[x.unsigned_abs() as usize], true)) {
            split = Some(k);
            break;
        }
    }
    let k = split?;
    let middle = l[k..l.len() - k].to_vec();
    let mut used = vec![false; n];
    for &x in &middle {
        used[x.unsigned_abs() as usize] = true;
    }
    // strands j and j+1 (1-based) share a block iff σ_j is used
    let mut blocks = Vec::new();
    let mut lo = 1;
    for j in 1..n {
        if !used[j] {
            blocks.push((lo, j));
            lo = j + 1;
        }
    }
    blocks.push((lo, n));
    let block_of = |x: i32| blocks.iter().position(|&(a, b)| (x.unsigned_abs() as usize) >= a && (x.unsigned_abs() as usize) < b).expect("used generator lies in a block");
    // sort the middle by block with far commutations (stable bubble sort)
    let mut cur = middle.clone();
    let mut rewrite = Vec::new();
    let mut swapped = true;
    while swapped {
        swapped = false;
        for i in 0..cur.len().saturating_sub(1) {
            if block_of(cur[i]) > block_of(cur[i + 1]) {
                cur.swap(i, i + 1);
                rewrite.push(WordMove::FarCommute { pos: k + i });
                swapped = true;
            }
        }
    }
    let mut block_words = vec![Vec::new(); blocks.len()];
    for &x in &cur {
        let b = block_of(x);
        let lo = blocks[b].0 as i32;
        block_words[b].push(x.signum() * (x.abs() - lo + 1));
    }
    let unknot_witness = blocks
        .iter()
        .zip(&block_words)
        .map(|(&(lo, hi), word)| unknot_moves(hi - lo + 1, word))
        .collect();
    Some(SplitCertificate {
        rewrite,
        blocks,
        conjugator: l[..k].to_vec(),
        block_words,
        unknot_witness,
    })
}

/// Destabilizes a word in which every generator occurs at most once.
fn unknot_moves(strands: usize, word: &[i32]) -> Vec<WordMove> {
    let mut moves = Vec::new();
    let mut cur = BraidWord::new(strands, word.to_vec()).expect("local word");
    while cur.strands() > 1 {
        moves.push(WordMove::Destabilize);
        cur = WordMove::Destabilize.apply(&cur).expect("top generator occurs once");
    }
    moves
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn band_generators_certified() {
        for (n, word) in [(2, vec![1]), (3, vec![2]), (3, vec![1, 2, -1]), (4, vec![-2, -3, 1, 3, 2]), (2, vec![-1])] {
            let verdict = splittable_check(&w(n, &word), None).unwrap();
            assert!(matches!(verdict, SplittableVerdict::CertifiedYes(_)), "{word:?}: {verdict:?}");
        }
    }

    #[test]
    fn full_twist_fails_linking() {
        match splittable_check(&w(2, &[1, 1]), None).unwrap() {
            SplittableVerdict::InvariantFail(InvariantFailure::Linking { linking_number, .. }) => {
                assert_eq!(linking_number, 1)
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn identity_rejected() {
        assert!(matches!(splittable_check(&w(2, &[]), None), Err(BraidError::IdentityBraid)));
        assert!(matches!(splittable_check(&w(3, &[1, -1]), None), Err(BraidError::IdentityBraid)));
    }

    #[test]
    fn knotted_components_fail() {
        // trefoil: writhe 3 on 2 strands
        assert!(matches!(
            splittable_check(&w(2, &[1, 1, 1]), None).unwrap(),
            SplittableVerdict::InvariantFail(InvariantFailure::SelfWrithe { .. })
        ));
        // figure eight: writhe 0 but Δ = 1 − 3t + t²
        assert!(matches!(
            splittable_check(&w(3, &[1, -2, 1, -2]), None).unwrap(),
            SplittableVerdict::InvariantFail(InvariantFailure::Alexander { .. })
        ));
    }

    #[test]
    fn supplied_certificate_checked() {
        let word = w(3, &[1, 2, 1, -2]);
        // σ1σ2σ1σ2⁻¹ = σ2σ1σ2σ2⁻¹ = σ2σ1, a single unknotted 3-strand block
        let cert = SplitCertificate {
            rewrite: vec![WordMove::BraidRelation { pos: 0 }, WordMove::FreeCancel { pos: 2 }],
            blocks: vec![(1, 3)],
            conjugator: vec![],
            block_words: vec![vec![2, 1]],
            unknot_witness: vec![vec![WordMove::Destabilize, WordMove::Destabilize]],
        };
        cert.verify(&word).unwrap();
        assert!(matches!(
            splittable_check(&word, Some(&cert)).unwrap(),
            SplittableVerdict::CertifiedYes(_)
        ));
        let mut broken = cert.clone();
        broken.block_words = vec![vec![1, 2]];
        assert!(broken.verify(&word).is_err());
        assert_eq!(splittable_check(&word, Some(&broken)).unwrap(), SplittableVerdict::Unknown);
    }

    #[test]
    fn certificate_json_roundtrip() {
        let cert = builtin_certificate(&w(4, &[1, 3])).unwrap();
        assert_eq!(cert.blocks, vec![(1, 2), (3, 4)]);
        let text = serde_json::to_string(&cert).unwrap();
        let back: SplitCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
    }
}

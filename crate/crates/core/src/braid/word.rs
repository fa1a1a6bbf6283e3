use serde::{Deserialize, Serialize};

use super::BraidError;
use crate::perm::Permutation;

/// A word in the Artin generators of `B_n`.
///
/// Letter `±i` is `σ_i^{±1}`, crossing strands at positions `i` and `i+1`.
/// Words are read left to right, so the permutation of `uv` is `perm(u)` then `perm(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBraid", into = "RawBraid")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawBraid {
    n: usize,
    word: Vec<i32>,
}

impl TryFrom<RawBraid> for BraidWord {
    type Error = BraidError;
    fn try_from(r: RawBraid) -> Result<Self, BraidError> {
        BraidWord::new(r.n, r.word)
    }
}

impl From<BraidWord> for RawBraid {
    fn from(w: BraidWord) -> Self {
        RawBraid {
            n: w.strands,
            word: w.letters,
        }
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, BraidError> {
        if strands == 0 || strands > 64 {
            return Err(BraidError::BadStrandCount(strands));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(BraidError::InvalidLetter { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord::new(strands, Vec::new()).expect("valid strand count")
    }

    pub fn generator(strands: usize, i: i32) -> Result<Self, BraidError> {
        BraidWord::new(strands, vec![i])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        self.check_strands(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// `c · self · c⁻¹`.
    pub fn conjugate_by(&self, c: &BraidWord) -> Result<BraidWord, BraidError> {
        c.concat(self)?.concat(&c.inverse())
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    pub(crate) fn check_strands(&self, other: &BraidWord) -> Result<(), BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: other.strands,
            });
        }
        Ok(())
    }

    /// Strand permutation: strand starting at position `i` ends at `perm.apply(i)`.
    pub fn underlying_permutation(&self) -> Permutation {
        let mut at: Vec<u8> = (0..self.strands as u8).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        // at[pos] = starting strand now at pos
        let mut images = vec![0u8; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            images[s as usize] = pos as u8;
        }
        Permutation::from_zero_based(images)
    }

    /// Signed crossing count for each pair of starting strands (unordered, `i < j`),
    /// returned in [`pair_index`] order.
    pub fn crossing_counts(&self) -> Vec<i64> {
        let n = self.strands;
        let mut at: Vec<usize> = (0..n).collect();
        let mut out = vec![0i64; n * n.saturating_sub(1) / 2];
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (a, b) = (at[i], at[i + 1]);
            out[pair_index(n, a.min(b), a.max(b))] += l.signum() as i64;
            at.swap(i, i + 1);
        }
        out
    }

    /// The braid on the strands (by starting position) in `keep`, other strands deleted.
    pub fn restrict_to(&self, keep: &[usize]) -> BraidWord {
        let n = self.strands;
        let mut kept = vec![false; n];
        for &k in keep {
            kept[k] = true;
        }
        let mut at: Vec<usize> = (0..n).collect();
        let mut letters = Vec::new();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            if kept[at[i]] && kept[at[i + 1]] {
                let below = (0..i).filter(|&p| kept[at[p]]).count();
                letters.push(l.signum() * (below as i32 + 1));
            }
            at.swap(i, i + 1);
        }
        BraidWord {
            strands: keep.len().max(1),
            letters,
        }
    }

    /// The positive permutation braid of `p`: every pair of strands crosses at most
    /// once, positively, and the strand starting at `i` ends at `p(i)`.
    pub fn section(p: &Permutation) -> BraidWord {
        let n = p.degree();
        let mut arr: Vec<usize> = (0..n).collect();
        let mut letters = Vec::new();
        let mut swapped = true;
        while swapped {
            swapped = false;
            for pos in 0..n.saturating_sub(1) {
                if p.apply(arr[pos]) > p.apply(arr[pos + 1]) {
                    arr.swap(pos, pos + 1);
                    letters.push(pos as i32 + 1);
                    swapped = true;
                }
            }
        }
        BraidWord {
            strands: n.max(1),
            letters,
        }
    }
}

/// Index of the unordered pair `{i, j}`, `i < j < n`, in lexicographic order.
#[inline]
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All pairs `(i, j)` with `i < j < n`, in [`pair_index`] order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut v = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            v.push((i, j));
        }
    }
    v
}

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::words::{evaluate, inverse, letter, reduce, substitute, Word};
use crate::perm::FiniteGroup;

/// A mapping-class move given as a word map on the flat generators
/// `a_1, b_1, …, a_g, b_g, c_1, …, c_m`: the new value of generator `k` is
/// `images[k]` evaluated at the old tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MCGMove {
    pub name: String,
    pub images: Vec<Word>,
}

impl MCGMove {
    fn identity(name: impl Into<String>, len: usize) -> Self {
        MCGMove {
            name: name.into(),
            images: (0..len).map(|k| vec![letter(k, true)]).collect(),
        }
    }

    /// Applies the move to a tuple of group elements.
    pub fn apply(&self, group: &FiniteGroup, entries: &[usize]) -> Vec<usize> {
        self.images.iter().map(|w| evaluate(w, entries, group)).collect()
    }

    /// Applies the move to a tuple of free-group words.
    pub fn apply_words(&self, entries: &[Word]) -> Vec<Word> {
        self.images.iter().map(|w| substitute(w, entries)).collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &MCGMove, name: impl Into<String>) -> MCGMove {
        MCGMove {
            name: name.into(),
            images: next.images.iter().map(|w| substitute(w, &self.images)).collect(),
        }
    }
}

/// Stable fingerprint of a move set (names and word maps).
pub fn move_set_fingerprint(moves: &[MCGMove]) -> String {
    let mut h = Sha256::new();
    for m in moves {
        h.update(m.name.as_bytes());
        h.update([0u8]);
        for w in &m.images {
            for l in w {
                h.update(l.to_le_bytes());
            }
            h.update([0xffu8]);
        }
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Twist `(a_i, b_i) ↦ (a_i, b_i a_i)`.
fn twist_a(g: usize, m: usize, i: usize) -> MCGMove {
    let mut mv = MCGMove::identity(format!("Ta{}", i + 1), 2 * g + m);
    mv.images[2 * i + 1] = vec![letter(2 * i + 1, true), letter(2 * i, true)];
    mv
}

/// Twist `(a_i, b_i) ↦ (a_i b_i⁻¹, b_i)`.
fn twist_b(g: usize, m: usize, i: usize) -> MCGMove {
    let mut mv = MCGMove::identity(format!("Tb{}", i + 1), 2 * g + m);
    mv.images[2 * i] = vec![letter(2 * i, true), letter(2 * i + 1, false)];
    mv
}

/// Twist along a curve homologous to `a_i + a_{i+1}`; with `Γ = a_i a_{i+1}`:
/// `a_i ↦ Γ a_i Γ⁻¹`, `b_i ↦ Γ (a_{i+1} a_i)⁻¹ b_i Γ⁻¹`, `a_{i+1} ↦ Γ a_{i+1} Γ⁻¹`,
/// `b_{i+1} ↦ b_{i+1} Γ⁻¹`.
fn handle_link(g: usize, m: usize, i: usize) -> MCGMove {
    let (a1, b1, a2, b2) = (
        letter(2 * i, true),
        letter(2 * i + 1, true),
        letter(2 * i + 2, true),
        letter(2 * i + 3, true),
    );
    let gamma = vec![a1, a2];
    let gi = inverse(&gamma);
    let conj = |x: Vec<i32>| reduce(&[gamma.clone(), x, gi.clone()].concat());
    let mut mv = MCGMove::identity(format!("L{}", i + 1), 2 * g + m);
    mv.images[2 * i] = conj(vec![a1]);
    mv.images[2 * i + 1] = conj(vec![-a1, -a2, b1]);
    mv.images[2 * i + 2] = conj(vec![a2]);
    mv.images[2 * i + 3] = reduce(&[vec![b2], gi.clone()].concat());
    mv
}

/// Exchanges handles `i` and `i+1`: `(A, B, C, D) ↦ (C, D, Y⁻¹AY, Y⁻¹BY)`, `Y = [C, D]`.
fn handle_swap(g: usize, m: usize, i: usize) -> MCGMove {
    let (a1, b1, a2, b2) = (
        letter(2 * i, true),
        letter(2 * i + 1, true),
        letter(2 * i + 2, true),
        letter(2 * i + 3, true),
    );
    let y = vec![a2, b2, -a2, -b2];
    let yi = inverse(&y);
    let mut mv = MCGMove::identity(format!("S{}", i + 1), 2 * g + m);
    mv.images[2 * i] = vec![a2];
    mv.images[2 * i + 1] = vec![b2];
    mv.images[2 * i + 2] = reduce(&[yi.clone(), vec![a1], y.clone()].concat());
    mv.images[2 * i + 3] = reduce(&[yi, vec![b1], y].concat());
    mv
}

/// Hurwitz move `(c_j, c_{j+1}) ↦ (c_j c_{j+1} c_j⁻¹, c_j)` or its inverse.
fn hurwitz(g: usize, m: usize, j: usize, positive: bool) -> MCGMove {
    let (x, y) = (letter(2 * g + j, true), letter(2 * g + j + 1, true));
    let mut mv = MCGMove::identity(format!("h{}{}", j + 1, if positive { "" } else { "'" }), 2 * g + m);
    if positive {
        mv.images[2 * g + j] = vec![x, y, -x];
        mv.images[2 * g + j + 1] = vec![x];
    } else {
        mv.images[2 * g + j] = vec![y];
        mv.images[2 * g + j + 1] = vec![-y, x, y];
    }
    mv
}

fn compose(moves: &[MCGMove], len: usize, name: String) -> MCGMove {
    moves
        .iter()
        .fold(MCGMove::identity("", len), |acc, mv| acc.then(mv, ""))
        .renamed(name)
}

impl MCGMove {
    fn renamed(mut self, name: String) -> Self {
        self.name = name;
        self
    }
}

/// Pure braid generator `A_{jk}` on punctures `j < k` (0-based).
fn pure_braid(g: usize, m: usize, j: usize, k: usize) -> MCGMove {
    let len = 2 * g + m;
    let mut seq = Vec::new();
    for l in (j + 1..k).rev() {
        seq.push(hurwitz(g, m, l, true));
    }
    seq.push(hurwitz(g, m, j, true));
    seq.push(hurwitz(g, m, j, true));
    for l in j + 1..k {
        seq.push(hurwitz(g, m, l, false));
    }
    compose(&seq, len, format!("A{}{}", j + 1, k + 1))
}

/// Pushes puncture `j` around the last handle. For `j = 0`, with `(A, B, C) = (a_g, b_g, c_1)`
/// and `U = B A⁻¹ B⁻¹`: `B ↦ U C B`, `C ↦ U C U⁻¹`. Other punctures are first brought next
/// to the handle by Hurwitz moves, then moved back.
fn handle_push(g: usize, m: usize, j: usize) -> MCGMove {
    let len = 2 * g + m;
    let (a, b, c) = (
        letter(2 * g - 2, true),
        letter(2 * g - 1, true),
        letter(2 * g, true),
    );
    let u = vec![b, -a, -b];
    let ui = inverse(&u);
    let mut base = MCGMove::identity("", len);
    base.images[2 * g - 1] = reduce(&[u.clone(), vec![c, b]].concat());
    base.images[2 * g] = reduce(&[u, vec![c], ui].concat());
    let mut seq = Vec::new();
    for l in (0..j).rev() {
        seq.push(hurwitz(g, m, l, false));
    }
    seq.push(base);
    for l in 0..j {
        seq.push(hurwitz(g, m, l, true));
    }
    compose(&seq, len, format!("P{}", j + 1))
}

/// `c_j ↦ C⁻¹ c_j C` for all `j`, `C = c_1 ⋯ c_m`.
fn cluster_twist(g: usize, m: usize) -> MCGMove {
    let cs: Vec<i32> = (0..m).map(|j| letter(2 * g + j, true)).collect();
    let ci = inverse(&cs);
    let mut mv = MCGMove::identity("K", 2 * g + m);
    for j in 0..m {
        mv.images[2 * g + j] = reduce(&[ci.clone(), vec![cs[j]], cs.clone()].concat());
    }
    mv
}

/// The move set used for orbits of `π₁(Σ_g ∖ m points)`-tuples (puncture-fixing).
///
/// Handle twists `Ta_i`, `Tb_i`, links `L_i` and swaps `S_i`; pure braids `A_jk`;
/// pushes `P_j` of each puncture around the last handle; the cluster twist `K`.
/// Complete for `m = 0` and for `g = 0`; for mixed surfaces the closure is under
/// the listed moves only.
pub fn mcg_moves(g: usize, m: usize) -> Vec<MCGMove> {
    let mut out = Vec::new();
    for i in 0..g {
        out.push(twist_a(g, m, i));
        out.push(twist_b(g, m, i));
    }
    for i in 0..g.saturating_sub(1) {
        out.push(handle_link(g, m, i));
        out.push(handle_swap(g, m, i));
    }
    for j in 0..m {
        for k in j + 1..m {
            out.push(pure_braid(g, m, j, k));
        }
    }
    if g > 0 && m > 0 {
        for j in 0..m {
            out.push(handle_push(g, m, j));
        }
        if m > 1 {
            out.push(cluster_twist(g, m));
        }
    }
    out
}

/// True when the move set is known to generate the pure mapping class group.
pub fn moves_complete(g: usize, m: usize) -> bool {
    g == 0 || m == 0
}

#[cfg(test)]
mod tests {
    use super::super::words::{is_conjugate_of_letter, surface_relator};
    use super::*;

    #[test]
    fn moves_preserve_relator_in_free_group() {
        for g in 0..=3 {
            for m in 0..=3 {
                let rel = surface_relator(g, m);
                let gens: Vec<Word> = (0..2 * g + m).map(|k| vec![letter(k, true)]).collect();
                for mv in mcg_moves(g, m) {
                    let img = mv.apply_words(&gens);
                    let r = substitute(&rel, &img);
                    assert_eq!(r, reduce(&rel), "g={g} m={m} move {}", mv.name);
                    for j in 0..m {
                        let x = letter(2 * g + j, true);
                        assert!(is_conjugate_of_letter(&img[2 * g + j], x), "{} c{}", mv.name, j + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn genus_one_moves() {
        let moves = mcg_moves(1, 0);
        assert_eq!(moves[0].images, vec![vec![1], vec![2, 1]]);
        assert_eq!(moves[1].images, vec![vec![1, -2], vec![2]]);
    }

    #[test]
    fn pure_braid_example() {
        let mv = pure_braid(0, 3, 0, 1);
        // (c1, c2) ↦ ((c1c2) c1 (c1c2)⁻¹, c1 c2 c1⁻¹)
        assert_eq!(mv.images[0], vec![1, 2, 1, -2, -1]);
        assert_eq!(mv.images[1], vec![1, 2, -1]);
        assert_eq!(mv.images[2], vec![3]);
    }

    #[test]
    fn fingerprint_depends_on_moves() {
        assert_ne!(move_set_fingerprint(&mcg_moves(2, 0)), move_set_fingerprint(&mcg_moves(1, 0)));
        assert_eq!(move_set_fingerprint(&mcg_moves(2, 1)), move_set_fingerprint(&mcg_moves(2, 1)));
    }
}

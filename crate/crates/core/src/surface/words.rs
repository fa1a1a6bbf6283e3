//! Free-group words: letters `±(k+1)` stand for generator `k` and its inverse.

pub type Word = Vec<i32>;

pub fn reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse(w: &[i32]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

pub fn concat(parts: &[&[i32]]) -> Word {
    let mut v = Vec::new();
    for p in parts {
        v.extend_from_slice(p);
    }
    reduce(&v)
}

/// `x y x⁻¹ y⁻¹`.
pub fn commutator(x: &[i32], y: &[i32]) -> Word {
    concat(&[x, y, &inverse(x), &inverse(y)])
}

/// Replaces each letter `±(k+1)` by `images[k]^{±1}`.
pub fn substitute(w: &[i32], images: &[Word]) -> Word {
    let mut v = Vec::new();
    for &l in w {
        let img = &images[l.unsigned_abs() as usize - 1];
        if l > 0 {
            v.extend_from_slice(img);
        } else {
            v.extend(inverse(img));
        }
    }
    reduce(&v)
}

/// Evaluates a word in a group given generator images.
pub fn evaluate(w: &[i32], images: &[usize], g: &crate::perm::FiniteGroup) -> usize {
    w.iter().fold(g.identity(), |acc, &l| {
        let x = images[l.unsigned_abs() as usize - 1];
        g.mul(acc, if l > 0 { x } else { g.inv(x) })
    })
}

/// Letter for generator index `k` (0-based), positive or inverse.
pub fn letter(k: usize, positive: bool) -> i32 {
    let l = k as i32 + 1;
    if positive {
        l
    } else {
        -l
    }
}

/// The surface relator `∏[a_i,b_i] ∏ c_j` in the flat generator order
/// `a_1, b_1, …, a_g, b_g, c_1, …, c_m`.
pub fn surface_relator(g: usize, m: usize) -> Word {
    let mut v = Vec::new();
    for i in 0..g {
        let (a, b) = (letter(2 * i, true), letter(2 * i + 1, true));
        v.extend([a, b, -a, -b]);
    }
    for j in 0..m {
        v.push(letter(2 * g + j, true));
    }
    v
}

/// True if `w` is a conjugate `u x u⁻¹` of the single letter `x` (freely).
pub fn is_conjugate_of_letter(w: &[i32], x: i32) -> bool {
    let w = reduce(w);
    if w.len().is_multiple_of(2) {
        return false;
    }
    let k = w.len() / 2;
    w[k] == x && (0..k).all(|i| w[i] == -w[w.len() - 1 - i])
}

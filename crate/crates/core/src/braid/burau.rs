use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ring::{ComplexRing, Laurent, LaurentRing, Ring};
use super::{BraidError, BraidWord};

/// Dense square matrix over a [`Ring`].
#[derive(Clone, Debug, PartialEq)]
pub struct Mat<E> {
    pub dim: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.dim + j] = v;
    }
}

pub fn identity<R: Ring>(ring: &R, dim: usize) -> Mat<R::E> {
    let mut m = Mat {
        dim,
        data: vec![ring.zero(); dim * dim],
    };
    for i in 0..dim {
        m.set(i, i, ring.one());
    }
    m
}

pub fn mat_mul<R: Ring>(ring: &R, a: &Mat<R::E>, b: &Mat<R::E>) -> Mat<R::E> {
    let n = a.dim;
    let mut out = Mat {
        dim: n,
        data: vec![ring.zero(); n * n],
    };
    for i in 0..n {
        for k in 0..n {
            let aik = a.get(i, k);
            if ring.is_zero(aik) {
                continue;
            }
            for j in 0..n {
                let v = ring.add(out.get(i, j), &ring.mul(aik, b.get(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

/// Determinant by cofactor expansion (exact; intended for dimension ≤ 8).
pub fn determinant<R: Ring>(ring: &R, m: &Mat<R::E>) -> R::E {
    fn rec<R: Ring>(ring: &R, m: &Mat<R::E>, rows: &[usize], cols: &mut Vec<usize>) -> R::E {
        if rows.is_empty() {
            return ring.one();
        }
        let r = rows[0];
        let mut acc = ring.zero();
        for k in 0..cols.len() {
            let c = cols[k];
            let entry = m.get(r, c).clone();
            if ring.is_zero(&entry) {
                continue;
            }
            cols.remove(k);
            let minor = rec(ring, m, &rows[1..], cols);
            cols.insert(k, c);
            let term = ring.mul(&entry, &minor);
            acc = if k % 2 == 0 {
                ring.add(&acc, &term)
            } else {
                ring.sub(&acc, &term)
            };
        }
        acc
    }
    let rows: Vec<usize> = (0..m.dim).collect();
    let mut cols = rows.clone();
    rec(ring, m, &rows, &mut cols)
}

fn letter_reduced<R: Ring>(ring: &R, n: usize, letter: i32, t: &R::E, tinv: &R::E) -> Mat<R::E> {
    let d = n - 1;
    let mut m = identity(ring, d);
    let i = letter.unsigned_abs() as usize; // 1-based generator, row i-1 in 0-based
    let c = i - 1;
    // block on coordinates (c-1, c, c+1), truncated to 0..d
    let (tl, mid, bl) = if letter > 0 {
        // [[1, t, 0], [0, -t, 0], [0, 1, 1]]
        (t.clone(), ring.neg(t), ring.one())
    } else {
        // [[1, 1, 0], [0, -t⁻¹, 0], [0, t⁻¹, 1]]
        (ring.one(), ring.neg(tinv), tinv.clone())
    };
    if c >= 1 {
        m.set(c - 1, c, tl);
    }
    m.set(c, c, mid);
    if c + 1 < d {
        m.set(c + 1, c, bl);
    }
    m
}

fn letter_unreduced<R: Ring>(ring: &R, n: usize, letter: i32, t: &R::E, tinv: &R::E) -> Mat<R::E> {
    let mut m = identity(ring, n);
    let c = letter.unsigned_abs() as usize - 1;
    let block = if letter > 0 {
        [ring.sub(&ring.one(), t), t.clone(), ring.one(), ring.zero()]
    } else {
        [ring.zero(), ring.one(), tinv.clone(), ring.sub(&ring.one(), tinv)]
    };
    m.set(c, c, block[0].clone());
    m.set(c, c + 1, block[1].clone());
    m.set(c + 1, c, block[2].clone());
    m.set(c + 1, c + 1, block[3].clone());
    m
}

fn word_product<R: Ring>(
    ring: &R,
    w: &BraidWord,
    t: &R::E,
    dim: usize,
    letter: impl Fn(&R, usize, i32, &R::E, &R::E) -> Mat<R::E>,
) -> Result<Mat<R::E>, BraidError> {
    let tinv = ring.inv(t).ok_or(BraidError::NonInvertibleParameter)?;
    let mut acc = identity(ring, dim);
    for &l in w.letters() {
        acc = mat_mul(ring, &acc, &letter(ring, w.strands(), l, t, &tinv));
    }
    Ok(acc)
}

/// Reduced Burau matrix (size `n-1`) of `w`, product taken in word order.
pub fn reduced_burau<R: Ring>(ring: &R, w: &BraidWord, t: &R::E) -> Result<Mat<R::E>, BraidError> {
    word_product(ring, w, t, w.strands() - 1, letter_reduced)
}

/// Unreduced Burau matrix (size `n`); at `t = 1` it is the permutation matrix with
/// a one in row `i`, column `perm(i)`.
pub fn unreduced_burau<R: Ring>(ring: &R, w: &BraidWord, t: &R::E) -> Result<Mat<R::E>, BraidError> {
    word_product(ring, w, t, w.strands(), letter_unreduced)
}

/// Reduced Burau at a complex parameter, as an `nalgebra` matrix.
pub fn reduced_burau_complex(w: &BraidWord, t: Complex64) -> Result<DMatrix<Complex64>, BraidError> {
    let ring = ComplexRing { eps: 1e-300 };
    let m = reduced_burau(&ring, w, &t)?;
    Ok(DMatrix::from_row_slice(m.dim, m.dim, &m.data))
}

/// Alexander polynomial of the closure of `w`, normalized up to `±t^k`.
///
/// Uses `Δ(t)·(1 + t + … + t^{n-1}) ≐ det(I − ρ̄(w))`. For split links the result is 0.
pub fn alexander_polynomial(w: &BraidWord) -> Result<Laurent, BraidError> {
    let n = w.strands();
    if n == 1 {
        return Ok(Laurent::constant(1));
    }
    if n > 9 {
        return Err(BraidError::BadStrandCount(n));
    }
    let ring = LaurentRing;
    let t = Laurent::monomial(1, 1);
    let m = reduced_burau(&ring, w, &t)?;
    let mut im = identity(&ring, n - 1);
    for (a, b) in im.data.iter_mut().zip(&m.data) {
        *a = ring.sub(a, b);
    }
    let det = determinant(&ring, &im);
    let numer = ring.mul(&det, &ring.sub(&ring.one(), &t));
    let denom = ring.sub(&ring.one(), &Laurent::monomial(1, n as i32));
    let delta = numer
        .div_exact(&denom)
        .ok_or_else(|| BraidError::Internal("Burau determinant not divisible".into()))?;
    Ok(delta.unit_normalized())
}

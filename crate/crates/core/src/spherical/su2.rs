use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{InvariantBasis, SphericalError};

const MAX_TWICE_SPIN: u32 = 6;
const MAX_FACTORS: usize = 4;

/// A 2×2 special unitary matrix.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 4]; 2]", into = "[[f64; 4]; 2]")]
pub struct SU2Element(Matrix2<Complex64>);

impl TryFrom<[[f64; 4]; 2]> for SU2Element {
    type Error = SphericalError;
    /// Rows as `[re00, im00, re01, im01]`, `[re10, im10, re11, im11]`.
    fn try_from(r: [[f64; 4]; 2]) -> Result<Self, SphericalError> {
        let c = |row: &[f64; 4], k: usize| Complex64::new(row[2 * k], row[2 * k + 1]);
        SU2Element::new(Matrix2::new(c(&r[0], 0), c(&r[0], 1), c(&r[1], 0), c(&r[1], 1)))
    }
}

impl From<SU2Element> for [[f64; 4]; 2] {
    fn from(a: SU2Element) -> Self {
        let m = a.0;
        [
            [m[(0, 0)].re, m[(0, 0)].im, m[(0, 1)].re, m[(0, 1)].im],
            [m[(1, 0)].re, m[(1, 0)].im, m[(1, 1)].re, m[(1, 1)].im],
        ]
    }
}

impl SU2Element {
    pub fn new(m: Matrix2<Complex64>) -> Result<Self, SphericalError> {
        let unit = (m.adjoint() * m - Matrix2::identity()).norm();
        let det = (m.determinant() - Complex64::new(1.0, 0.0)).norm();
        if unit > 1e-10 || det > 1e-10 {
            return Err(SphericalError::NotSpecialUnitary { unitarity: unit, determinant: det });
        }
        Ok(SU2Element(m))
    }

    pub fn identity() -> Self {
        SU2Element(Matrix2::identity())
    }

    /// Haar-random element (a uniformly random unit quaternion).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut q = [0.0f64; 4];
        let mut norm = 0.0;
        while norm < 1e-6 {
            for v in q.iter_mut() {
                *v = rng.sample(StandardNormal);
            }
            norm = q.iter().map(|v| v * v).sum::<f64>().sqrt();
        }
        let [a, b, c, d] = q.map(|v| v / norm);
        let alpha = Complex64::new(a, b);
        let beta = Complex64::new(c, d);
        SU2Element(Matrix2::new(alpha, beta, -beta.conj(), alpha.conj()))
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.0
    }

    pub fn mul(&self, other: &SU2Element) -> SU2Element {
        SU2Element(self.0 * other.0)
    }

    pub fn inverse(&self) -> SU2Element {
        SU2Element(self.0.adjoint())
    }

    pub fn conjugate_by(&self, g: &SU2Element) -> SU2Element {
        g.mul(self).mul(&g.inverse())
    }
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Action of `A` on homogeneous polynomials of degree `n` in `z = (a, b)`, by
/// `f(z) ↦ f(Aᵀ z)`, in the orthonormal basis `a^p b^{n−p} / √(p!(n−p)!)`.
pub fn spin_matrix(a: &Matrix2<Complex64>, n: u32) -> DMatrix<Complex64> {
    let d = n as usize + 1;
    // images of a and b under z ↦ Aᵀz, as (coeff of a, coeff of b)
    let ia = (a[(0, 0)], a[(1, 0)]);
    let ib = (a[(0, 1)], a[(1, 1)]);
    let pow = |lin: (Complex64, Complex64), e: u32| -> Vec<Complex64> {
        // coefficients indexed by the exponent of a
        let mut poly = vec![Complex64::new(1.0, 0.0)];
        for _ in 0..e {
            let mut next = vec![Complex64::new(0.0, 0.0); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c * lin.0;
                next[i] += c * lin.1;
            }
            poly = next;
        }
        poly
    };
    let mut m = DMatrix::zeros(d, d);
    for p in 0..=n {
        let pa = pow(ia, p);
        let pb = pow(ib, n - p);
        let scale = 1.0 / (factorial(p) * factorial(n - p)).sqrt();
        for (i, x) in pa.iter().enumerate() {
            for (j, y) in pb.iter().enumerate() {
                let q = (i + j) as u32;
                let norm = (factorial(q) * factorial(n - q)).sqrt();
                m[(q as usize, p as usize)] += x * y * norm * scale;
            }
        }
    }
    m
}

/// Converts spins to twice-spins, rejecting non-half-integers.
pub fn twice_spins(spins: &[f64]) -> Result<Vec<u32>, SphericalError> {
    spins
        .iter()
        .map(|&j| {
            let t = (2.0 * j).round();
            if (2.0 * j - t).abs() > 1e-9 || t < 0.0 {
                Err(SphericalError::InvalidSpin(j))
            } else {
                Ok(t as u32)
            }
        })
        .collect()
}

/// Invariants of `V_{j₁} ⊗ … ⊗ V_{j_k}` under the diagonal action of `SU(2)`.
pub fn su2_invariant_basis(spins: &[f64]) -> Result<InvariantBasis, SphericalError> {
    let twice = twice_spins(spins)?;
    if spins.len() > MAX_FACTORS || twice.iter().any(|&t| t > MAX_TWICE_SPIN) {
        return Err(SphericalError::CapExceeded {
            size: spins.len(),
            cap: MAX_FACTORS,
        });
    }
    Ok(invariant_basis_twice(&twice))
}

/// Common kernel of the generators `J_z` and `J_+` (hence of all of `su(2)`),
/// computed on the zero-weight space.
pub(crate) fn invariant_basis_twice(twice: &[u32]) -> InvariantBasis {
    let dims: Vec<usize> = twice.iter().map(|&n| n as usize + 1).collect();
    let total: usize = dims.iter().product();
    let digits = |mut idx: usize| -> Vec<usize> {
        let mut out = vec![0; dims.len()];
        for s in (0..dims.len()).rev() {
            out[s] = idx % dims[s];
            idx /= dims[s];
        }
        out
    };
    let encode = |ds: &[usize]| ds.iter().zip(&dims).fold(0, |acc, (&d, &m)| acc * m + d);
    // weight of e_p in factor n is p − n/2; track twice the total weight
    let weight = |ds: &[usize]| -> i64 { ds.iter().zip(twice).map(|(&p, &n)| 2 * p as i64 - n as i64).sum() };
    let zero: Vec<usize> = (0..total).filter(|&i| weight(&digits(i)) == 0).collect();
    let plus: Vec<usize> = (0..total).filter(|&i| weight(&digits(i)) == 2).collect();
    let basis = |vecs: Vec<DVector<Complex64>>| InvariantBasis {
        factor_dims: dims.clone(),
        vectors: vecs,
    };
    if zero.is_empty() {
        return basis(Vec::new());
    }
    let row_of = |i: usize| plus.binary_search(&i).ok();
    // J_+ e_p = √((p+1)(n−p)) e_{p+1} on each factor
    let mut jp = DMatrix::<f64>::zeros(plus.len().max(1), zero.len());
    for (c, &i) in zero.iter().enumerate() {
        let ds = digits(i);
        for s in 0..dims.len() {
            let (p, n) = (ds[s], twice[s] as usize);
            if p < n {
                let mut up = ds.clone();
                up[s] += 1;
                let r = row_of(encode(&up)).expect("weight-two index");
                jp[(r, c)] += (((p + 1) * (n - p)) as f64).sqrt();
            }
        }
    }
    let gram = jp.transpose() * &jp;
    let eig = gram.symmetric_eigen();
    let mut kernel: Vec<usize> = (0..zero.len()).filter(|&i| eig.eigenvalues[i].abs() < 1e-9).collect();
    kernel.sort_unstable();
    let vecs = kernel
        .into_iter()
        .map(|k| {
            let mut v = DVector::<Complex64>::zeros(total);
            for (c, &i) in zero.iter().enumerate() {
                v[i] = Complex64::new(eig.eigenvectors[(c, k)], 0.0);
            }
            v
        })
        .collect();
    basis(vecs)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::spherical::cosets::kron_all;

    #[test]
    fn clebsch_gordan_dimensions() {
        let dim = |s: &[f64]| su2_invariant_basis(s).unwrap().vectors.len();
        assert_eq!(dim(&[0.5, 0.5]), 1);
        assert_eq!(dim(&[0.5]), 0);
        assert_eq!(dim(&[1.0, 1.0, 1.0]), 1);
        assert_eq!(dim(&[0.5, 0.5, 0.5, 0.5]), 2);
        assert_eq!(dim(&[1.0, 1.0, 1.0, 1.0]), 3);
        assert_eq!(dim(&[0.5, 1.0]), 0);
        assert!(su2_invariant_basis(&[0.3]).is_err());
    }

    #[test]
    fn spin_matrices_are_unitary_homomorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = SU2Element::random(&mut rng);
        let b = SU2Element::random(&mut rng);
        for n in 0..4 {
            let ra = spin_matrix(a.matrix(), n);
            let rb = spin_matrix(b.matrix(), n);
            let rab = spin_matrix(a.mul(&b).matrix(), n);
            assert!((&ra * &rb - &rab).norm() < 1e-12);
            let d = n as usize + 1;
            assert!((ra.adjoint() * &ra - DMatrix::identity(d, d)).norm() < 1e-12);
        }
    }

    #[test]
    fn invariants_are_fixed() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let b = su2_invariant_basis(&[1.0, 0.5, 0.5]).unwrap();
        assert_eq!(b.vectors.len(), 1);
        for _ in 0..5 {
            let g = SU2Element::random(&mut rng);
            let m = kron_all(&[&spin_matrix(g.matrix(), 2), &spin_matrix(g.matrix(), 1), &spin_matrix(g.matrix(), 1)]);
            for v in &b.vectors {
                assert!((&m * v - v).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let m = Matrix2::new(
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
        );
        assert!(SU2Element::new(m).is_err());
    }
}

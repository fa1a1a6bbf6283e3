use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use super::burau::reduced_burau_complex;
use super::{BraidError, BraidWord};

/// Relative eigenvalue margin required to call the invariant form definite.
const DEFINITE_MARGIN: f64 = 1e-9;

/// Unitarization of the reduced Burau representation of `B_3` at `t = e^{iθ}`.
///
/// The invariant Hermitian form `H` (with `M* H M = H` for both generators) is found
/// numerically; when it is definite, `w ↦ λ^{writhe(w)} H^{1/2} ρ̄(w) H^{-1/2}` with
/// `λ = (−t)^{-1/2}` lands in `SU(2)`.
#[derive(Clone, Debug)]
pub struct BurauSu2 {
    theta: f64,
    h_sqrt: Matrix2<Complex64>,
    h_sqrt_inv: Matrix2<Complex64>,
    lambda: Complex64,
}

impl BurauSu2 {
    pub fn new(theta: f64) -> Result<Self, BraidError> {
        let t = Complex64::from_polar(1.0, theta);
        let gens: Vec<Matrix2<Complex64>> = [1, 2]
            .iter()
            .map(|&i| {
                let m = reduced_burau_complex(&BraidWord::new(3, vec![i]).expect("valid"), t)?;
                Ok(Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]))
            })
            .collect::<Result<_, BraidError>>()?;
        let h = invariant_form(&gens).ok_or(BraidError::SquierFormNotPositive(theta))?;
        let eig = h.symmetric_eigen();
        let (lo, hi) = (eig.eigenvalues.min(), eig.eigenvalues.max());
        let h = if lo > DEFINITE_MARGIN * hi.abs() {
            eig
        } else if hi < -DEFINITE_MARGIN * lo.abs() {
            (-h).symmetric_eigen()
        } else {
            return Err(BraidError::SquierFormNotPositive(theta));
        };
        let sq = h.eigenvalues.map(|v| Complex64::new(v.sqrt(), 0.0));
        let q = h.eigenvectors;
        let h_sqrt = q * Matrix2::from_diagonal(&sq) * q.adjoint();
        let h_sqrt_inv = q * Matrix2::from_diagonal(&sq.map(|v| 1.0 / v)) * q.adjoint();
        let lambda = Complex64::from_polar(1.0, -(theta + std::f64::consts::PI) / 2.0);
        Ok(BurauSu2 {
            theta,
            h_sqrt,
            h_sqrt_inv,
            lambda,
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn image(&self, w: &BraidWord) -> Result<Matrix2<Complex64>, BraidError> {
        if w.strands() != 3 {
            return Err(BraidError::StrandMismatch {
                left: 3,
                right: w.strands(),
            });
        }
        let m = reduced_burau_complex(w, Complex64::from_polar(1.0, self.theta))?;
        let m = Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        let scale = self.lambda.powi(w.writhe() as i32);
        Ok(self.h_sqrt * m * self.h_sqrt_inv * scale)
    }
}

/// Solves `M* H M = H` for all `M` over Hermitian `H`; `None` unless the solution
/// space is one-dimensional.
fn invariant_form(gens: &[Matrix2<Complex64>]) -> Option<Matrix2<Complex64>> {
    // H = [[a, b + ic], [b - ic, d]] with real a, b, c, d
    let basis = [
        Matrix2::new(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)),
        Matrix2::new(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        Matrix2::new(c(0.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(0.0, 0.0)),
        Matrix2::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)),
    ];
    let rows = 8 * gens.len();
    let mut a = DMatrix::<f64>::zeros(rows, 4);
    for (k, e) in basis.iter().enumerate() {
        for (g, m) in gens.iter().enumerate() {
            let r = m.adjoint() * e * m - e;
            for (idx, z) in r.iter().enumerate() {
                a[(8 * g + 2 * idx, k)] = z.re;
                a[(8 * g + 2 * idx + 1, k)] = z.im;
            }
        }
    }
    let eig = (a.transpose() * &a).symmetric_eigen();
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let scale = eig.eigenvalues[order[3]].abs().max(1.0);
    if eig.eigenvalues[order[0]].abs() > 1e-12 * scale || eig.eigenvalues[order[1]].abs() < 1e-8 * scale {
        return None;
    }
    let v = eig.eigenvectors.column(order[0]);
    let mut h = basis[0] * c(v[0], 0.0) + basis[1] * c(v[1], 0.0) + basis[2] * c(v[2], 0.0) + basis[3] * c(v[3], 0.0);
    let tr = (h[(0, 0)] + h[(1, 1)]).re;
    if tr < 0.0 {
        h = -h;
    }
    Some(h)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// One-shot form of [`BurauSu2::image`].
pub fn burau_su2(w: &BraidWord, theta: f64) -> Result<Matrix2<Complex64>, BraidError> {
    BurauSu2::new(theta)?.image(w)
}

/// Scans `(−π, π]` on a grid of `steps` points and returns the admissible `θ`.
pub fn admissible_thetas(steps: usize) -> Vec<f64> {
    (1..=steps)
        .map(|k| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * k as f64 / steps as f64)
        .filter(|&th| BurauSu2::new(th).is_ok())
        .collect()
}

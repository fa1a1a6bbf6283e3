use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cosets::kron_all;
use super::su2::{invariant_basis_twice, spin_matrix, SU2Element};
use super::SphericalError;
use crate::braid::{burau_su2, BraidWord};

const INVARIANCE_TOL: f64 = 1e-9;

/// Variables `x_st` for `s < t`; `x_ts = −x_st` and `x_ss = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairVars {
    k: usize,
    values: Vec<Complex64>,
}

impl PairVars {
    /// Values ordered `(1,2), (1,3), …, (1,k), (2,3), …`.
    pub fn new(k: usize, values: Vec<Complex64>) -> Result<Self, SphericalError> {
        if values.len() != k * k.saturating_sub(1) / 2 {
            return Err(SphericalError::DimensionMismatch(format!(
                "{} pair variables for k = {k}",
                values.len()
            )));
        }
        Ok(PairVars { k, values })
    }

    pub fn constant(k: usize, v: Complex64) -> Self {
        PairVars {
            k,
            values: vec![v; k * k.saturating_sub(1) / 2],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    fn index(&self, s: usize, t: usize) -> usize {
        // pairs before row s, then offset within the row
        s * (2 * self.k - s - 1) / 2 + (t - s - 1)
    }

    pub fn get(&self, s: usize, t: usize) -> Complex64 {
        match s.cmp(&t) {
            std::cmp::Ordering::Less => self.values[self.index(s, t)],
            std::cmp::Ordering::Greater => -self.values[self.index(t, s)],
            std::cmp::Ordering::Equal => Complex64::new(0.0, 0.0),
        }
    }

    /// The `2k × 2k` matrix with blocks `x_st · [[0, 1], [−1, 0]]`.
    pub fn block_matrix(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(2 * self.k, 2 * self.k);
        for s in 0..self.k {
            for t in 0..self.k {
                let v = self.get(s, t);
                m[(2 * s, 2 * t + 1)] = v;
                m[(2 * s + 1, 2 * t)] = -v;
            }
        }
        m
    }
}

/// How `A^⊥` is formed from the block-diagonal `A`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerpConvention {
    /// Blockwise transpose `Aᵀ`.
    #[default]
    Transpose,
    /// Blockwise inverse transpose; on `SU(2)` this is the entrywise conjugate.
    Contragredient,
}

fn block_diag(a: &[SU2Element], f: impl Fn(&Matrix2<Complex64>) -> Matrix2<Complex64>) -> DMatrix<Complex64> {
    let k = a.len();
    let mut m = DMatrix::zeros(2 * k, 2 * k);
    for (s, e) in a.iter().enumerate() {
        m.view_mut((2 * s, 2 * s), (2, 2)).copy_from(&f(e.matrix()));
    }
    m
}

fn spectral_radius(m: &DMatrix<Complex64>) -> f64 {
    if let Some(ev) = m.clone().schur().eigenvalues() {
        return ev.iter().fold(0.0f64, |r, z| r.max(z.norm()));
    }
    // Gelfand's formula as a fallback
    let mut p = m.clone();
    for _ in 0..6 {
        p = &p * &p;
    }
    p.norm().powf(1.0 / 64.0)
}

fn phi2_raw(a: &[SU2Element], x: &PairVars, y: &PairVars, conv: PerpConvention) -> Result<Complex64, SphericalError> {
    let k = a.len();
    if x.k() != k || y.k() != k {
        return Err(SphericalError::DimensionMismatch(format!("variables for k = {} but {k} matrices", x.k())));
    }
    let big_a = block_diag(a, |m| *m);
    let perp = match conv {
        PerpConvention::Transpose => block_diag(a, |m| m.transpose()),
        PerpConvention::Contragredient => block_diag(a, |m| m.map(|z| z.conj())),
    };
    let prod = big_a * x.block_matrix() * perp * y.block_matrix();
    let rho = spectral_radius(&prod);
    if rho >= 1.0 {
        return Err(SphericalError::SpectralRadiusTooLarge(rho));
    }
    let det = (DMatrix::identity(2 * k, 2 * k) - prod).determinant();
    Ok(det.inv())
}

/// `Φ²(A) = det(1 − A X A^⊥ Y)^{−1}` with the default convention.
pub fn neretin_phi2(a: &[SU2Element], x: &PairVars, y: &PairVars) -> Result<Complex64, SphericalError> {
    neretin_phi2_with(a, x, y, PerpConvention::default())
}

/// In debug builds every evaluation is also checked for invariance under a
/// fixed simultaneous conjugation.
pub fn neretin_phi2_with(
    a: &[SU2Element],
    x: &PairVars,
    y: &PairVars,
    conv: PerpConvention,
) -> Result<Complex64, SphericalError> {
    let v = phi2_raw(a, x, y, conv)?;
    if cfg!(debug_assertions) {
        let g = SU2Element::random(&mut ChaCha8Rng::seed_from_u64(0x9e7));
        let b: Vec<SU2Element> = a.iter().map(|e| e.conjugate_by(&g)).collect();
        let w = phi2_raw(&b, x, y, conv)?;
        let diff = (v - w).norm();
        if diff > INVARIANCE_TOL * v.norm().max(1.0) {
            return Err(SphericalError::ConventionViolation(diff));
        }
    }
    Ok(v)
}

type Poly = HashMap<Vec<u8>, Complex64>;

fn degree(e: &[u8], s: usize) -> u32 {
    u32::from(e[2 * s]) + u32::from(e[2 * s + 1])
}

/// Multiplies by `[z_s, z_t] = a_s b_t − b_s a_t`, dropping terms of degree above `cap` in any factor.
fn mul_bracket(p: &Poly, s: usize, t: usize, cap: u32) -> Poly {
    let mut out = Poly::new();
    for (e, &c) in p {
        if degree(e, s) >= cap || degree(e, t) >= cap {
            continue;
        }
        let mut e1 = e.clone();
        e1[2 * s] += 1;
        e1[2 * t + 1] += 1;
        *out.entry(e1).or_default() += c;
        let mut e2 = e.clone();
        e2[2 * s + 1] += 1;
        e2[2 * t] += 1;
        *out.entry(e2).or_default() -= c;
    }
    out
}

/// `exp(Σ_{s<t} x_st [z_s, z_t])`, truncated to degree `cap` in each `z_s`.
fn gaussian_poly(x: &PairVars, cap: u32) -> Poly {
    let k = x.k();
    let mut poly: Poly = HashMap::from([(vec![0u8; 2 * k], Complex64::new(1.0, 0.0))]);
    for s in 0..k {
        for t in s + 1..k {
            let xv = x.get(s, t);
            let mut acc = poly.clone();
            let mut term = poly;
            for m in 1..=cap {
                term = mul_bracket(&term, s, t, cap);
                let f = xv / f64::from(m);
                term.values_mut().for_each(|c| *c *= f);
                if term.is_empty() {
                    break;
                }
                for (e, c) in &term {
                    *acc.entry(e.clone()).or_default() += c;
                }
            }
            poly = acc;
        }
    }
    poly
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Splits a polynomial by multidegree into vectors of `⊗ V_{n_s}`, in the basis
/// `a^p b^{n−p} / √(p!(n−p)!)` of each factor.
fn components(p: &Poly, k: usize) -> BTreeMap<Vec<u32>, DVector<Complex64>> {
    let mut out: BTreeMap<Vec<u32>, DVector<Complex64>> = BTreeMap::new();
    for (e, &c) in p {
        let degs: Vec<u32> = (0..k).map(|s| degree(e, s)).collect();
        let dim: usize = degs.iter().map(|&n| n as usize + 1).product();
        let mut idx = 0usize;
        let mut scale = 1.0;
        for s in 0..k {
            let (pa, n) = (u32::from(e[2 * s]), degs[s]);
            idx = idx * (n as usize + 1) + pa as usize;
            scale *= (factorial(pa) * factorial(n - pa)).sqrt();
        }
        let v = out.entry(degs).or_insert_with(|| DVector::zeros(dim));
        v[idx] += c * scale;
    }
    out
}

/// Truncated tensor series for `Φ(A) = det(1 − A X Aᵀ Y)^{−1/2}`:
/// `Σ_I Σ_{u,v ∈ B_I} ⟨F_X^I, u⟩ φ_{I,u,v}(A) ⟨v, F_Ȳ^I⟩`, where `B_I` is an
/// orthonormal basis of the `SU(2)`-invariants of `V_{i₁} ⊗ … ⊗ V_{i_k}`,
/// `φ_{I,u,v}(A) = ⟨ρ_I(A)u, v⟩`, and `F_X = exp(Σ x_st [z_s, z_t])` carries
/// the `x^α / α!` weights. All spins are at most `max_spin`.
pub fn neretin_series(a: &[SU2Element], x: &PairVars, y: &PairVars, max_spin: f64) -> Result<Complex64, SphericalError> {
    let k = a.len();
    if x.k() != k || y.k() != k {
        return Err(SphericalError::DimensionMismatch("variables and matrices disagree in k".into()));
    }
    let cap = super::su2::twice_spins(&[max_spin])?[0];
    let fx = components(&gaussian_poly(x, cap), k);
    let fy = components(&gaussian_poly(y, cap), k);
    let mut total = Complex64::new(0.0, 0.0);
    for (degs, vx) in &fx {
        let Some(vy) = fy.get(degs) else { continue };
        let basis = invariant_basis_twice(degs);
        let mats: Vec<DMatrix<Complex64>> = a.iter().zip(degs).map(|(e, &n)| spin_matrix(e.matrix(), n)).collect();
        let refs: Vec<&DMatrix<Complex64>> = mats.iter().collect();
        let r = kron_all(&refs);
        for u in &basis.vectors {
            let cu = u.dotc(vx);
            let ru = &r * u;
            for v in &basis.vectors {
                total += cu * v.dotc(&ru) * v.dot(vy);
            }
        }
    }
    Ok(total)
}

/// `Φ²` of the Burau images `(1, B(w₁), …, B(w_m))`; the leading identity makes
/// the value depend on each `B(w_s)` and not only on the ratios `B(w_s)B(w_t)⁻¹`.
/// `x` and `y` carry `m + 1` points.
pub fn phi2_burau(words: &[BraidWord], theta: f64, x: &PairVars, y: &PairVars) -> Result<Complex64, SphericalError> {
    if words.is_empty() {
        return Err(SphericalError::DimensionMismatch("at least one braid word is needed".into()));
    }
    let mut a = vec![SU2Element::identity()];
    for w in words {
        a.push(SU2Element::new(burau_su2(w, theta)?)?);
    }
    neretin_phi2(&a, x, y)
}

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SphericalError;
use crate::perm::FiniteGroup;

/// Seed of the random Hermitian operator used to split the regular representation.
pub const SPLIT_SEED: u64 = 0x5eed_0001;
pub const DEFAULT_IRREP_CAP: usize = 200;
const RETRIES: u64 = 4;

#[derive(Clone, Debug)]
pub struct IrrepOptions {
    pub cap: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for IrrepOptions {
    fn default() -> Self {
        IrrepOptions {
            cap: DEFAULT_IRREP_CAP,
            seed: SPLIT_SEED,
            tol: 1e-9,
        }
    }
}

/// A unitary representation given by one matrix per group element.
#[derive(Clone, Debug)]
pub struct UnitaryRep {
    pub group_fingerprint: String,
    pub dim: usize,
    pub matrices: Vec<DMatrix<Complex64>>,
    pub tol: f64,
}

impl UnitaryRep {
    pub fn character(&self) -> Vec<Complex64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    pub fn matrix(&self, x: usize) -> &DMatrix<Complex64> {
        &self.matrices[x]
    }

    /// Largest deviation from `ρ(xy) = ρ(x)ρ(y)` and from unitarity.
    pub fn defect(&self, g: &FiniteGroup) -> f64 {
        let mut worst = 0.0f64;
        for x in g.elements() {
            let m = &self.matrices[x];
            let id = DMatrix::<Complex64>::identity(self.dim, self.dim);
            worst = worst.max((m.adjoint() * m - id).norm());
            for y in g.elements() {
                worst = worst.max((m * &self.matrices[y] - &self.matrices[g.mul(x, y)]).norm());
            }
        }
        worst
    }

    /// `⟨χ, χ⟩`, which is 1 exactly for irreducible representations.
    pub fn character_norm(&self) -> f64 {
        let chi = self.character();
        chi.iter().map(|c| c.norm_sqr()).sum::<f64>() / chi.len() as f64
    }
}

/// `⟨χ, ψ⟩ = (1/|G|) Σ χ(g) conj(ψ(g))`.
pub fn character_inner(chi: &[Complex64], psi: &[Complex64]) -> Complex64 {
    let s: Complex64 = chi.iter().zip(psi).map(|(a, b)| a * b.conj()).sum();
    s / chi.len() as f64
}

/// Rounds to the nearest integer, refusing values more than 0.01 away.
pub(crate) fn guarded_round(v: f64, what: &str) -> Result<i64, SphericalError> {
    let r = v.round();
    if (v - r).abs() > 0.01 {
        return Err(SphericalError::RoundingAmbiguity {
            what: what.to_string(),
            value: v,
        });
    }
    Ok(r as i64)
}

/// All irreducible unitary representations of `g`, trivial first, then by dimension.
pub fn numeric_irreps(g: &FiniteGroup) -> Result<Vec<UnitaryRep>, SphericalError> {
    numeric_irreps_with(g, &IrrepOptions::default())
}

pub fn numeric_irreps_with(g: &FiniteGroup, opts: &IrrepOptions) -> Result<Vec<UnitaryRep>, SphericalError> {
    let n = g.order();
    if n > opts.cap {
        return Err(SphericalError::CapExceeded { size: n, cap: opts.cap });
    }
    let mut last = String::new();
    for attempt in 0..RETRIES {
        match split_regular(g, opts.seed.wrapping_add(attempt), opts.tol) {
            Ok(reps) => return Ok(reps),
            Err(e) => last = e,
        }
    }
    Err(SphericalError::SplittingFailed(last))
}

fn split_regular(g: &FiniteGroup, seed: u64, tol: f64) -> Result<Vec<UnitaryRep>, String> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut h = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
        }
        h[(i, i)] = Complex64::new(h[(i, i)].re, 0.0);
    }
    // average over the left regular action; the result commutes with every R(g)
    let invs: Vec<usize> = g.elements().map(|x| g.inv(x)).collect();
    let mut t = DMatrix::<Complex64>::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let s: Complex64 = (0..n).map(|x| h[(g.mul(invs[x], a), g.mul(invs[x], b))]).sum();
            t[(a, b)] = s / n as f64;
        }
    }
    let eig = t.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let scale = eig.eigenvalues.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c) if (eig.eigenvalues[i] - eig.eigenvalues[*c.last().unwrap()]).abs() < 1e-8 * scale => c.push(i),
            _ => clusters.push(vec![i]),
        }
    }

    // character of the subrepresentation on one eigenspace
    let character = |cols: &[usize]| -> Vec<Complex64> {
        g.elements()
            .map(|x| {
                let mut s = Complex64::new(0.0, 0.0);
                for &i in cols {
                    for c in 0..n {
                        s += eig.eigenvectors[(g.mul(x, c), i)].conj() * eig.eigenvectors[(c, i)];
                    }
                }
                s
            })
            .collect()
    };

    let mut types: Vec<(Vec<usize>, Vec<Complex64>, usize)> = Vec::new();
    for c in &clusters {
        let chi = character(c);
        if let Some(t) = types.iter_mut().find(|t| {
            t.1.iter().zip(&chi).all(|(a, b)| (a - b).norm() < 1e-6)
        }) {
            t.2 += 1;
        } else {
            types.push((c.clone(), chi, 1));
        }
    }
    let mut reps = Vec::with_capacity(types.len());
    let mut sum_sq = 0usize;
    for (cols, chi, copies) in &types {
        let d = cols.len();
        let norm = character_inner(chi, chi).re;
        if (norm - 1.0).abs() > 1e-6 || *copies != d {
            return Err(format!("eigenspace of dimension {d} is not irreducible (norm {norm:.3e}, {copies} copies)"));
        }
        sum_sq += d * d;
        let mut matrices = Vec::with_capacity(n);
        for x in g.elements() {
            let m = DMatrix::from_fn(d, d, |i, j| {
                (0..n)
                    .map(|c| eig.eigenvectors[(g.mul(x, c), cols[i])].conj() * eig.eigenvectors[(c, cols[j])])
                    .sum()
            });
            matrices.push(m);
        }
        reps.push(UnitaryRep {
            group_fingerprint: g.fingerprint(),
            dim: d,
            matrices,
            tol,
        });
    }
    if sum_sq != n {
        return Err(format!("dimensions squared sum to {sum_sq}, expected {n}"));
    }
    let chars: Vec<Vec<Complex64>> = reps.iter().map(UnitaryRep::character).collect();
    for i in 0..chars.len() {
        for j in 0..i {
            if character_inner(&chars[i], &chars[j]).norm() > 1e-8 {
                return Err("characters are not orthogonal".into());
            }
        }
    }
    let key = |r: &UnitaryRep| -> (usize, Vec<(i64, i64)>) {
        let chi = r.character();
        (
            r.dim,
            chi.iter()
                .map(|c| (-(c.re * 1e6).round() as i64, -(c.im * 1e6).round() as i64))
                .collect(),
        )
    };
    reps.sort_by_cached_key(key);
    Ok(reps)
}

/// `|Hom(π₁Σ_g, G)| = |G|^{2g−1} Σ_χ χ(1)^{2−2g}`, from numeric irreducible dimensions.
pub fn frobenius_count(g: &FiniteGroup, genus: usize) -> Result<u128, SphericalError> {
    let reps = numeric_irreps(g)?;
    let n = g.order() as f64;
    let e = 2.0 - 2.0 * genus as f64;
    let v = n.powi(2 * genus as i32 - 1) * reps.iter().map(|r| (r.dim as f64).powf(e)).sum::<f64>();
    Ok(guarded_round(v, "Frobenius count")? as u128)
}

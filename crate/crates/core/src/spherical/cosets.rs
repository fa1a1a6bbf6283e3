use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::irreps::{guarded_round, numeric_irreps, UnitaryRep, DEFAULT_IRREP_CAP};
use super::{InvariantBasis, SphericalError};
use crate::perm::FiniteGroup;

/// Witness functions must differ by more than this on separated tuples.
pub const SEPARATION_TOL: f64 = 1e-6;

pub(crate) fn kron_all(ms: &[&DMatrix<Complex64>]) -> DMatrix<Complex64> {
    let mut acc = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    for m in ms {
        acc = acc.kronecker(m);
    }
    acc
}

/// Orthonormal basis of the range of a Hermitian projector.
pub(crate) fn range_basis(p: DMatrix<Complex64>) -> Vec<DVector<Complex64>> {
    let eig = p.symmetric_eigen();
    let mut idx: Vec<usize> = (0..eig.eigenvalues.len()).filter(|&i| eig.eigenvalues[i] > 0.5).collect();
    idx.sort_unstable();
    idx.into_iter().map(|i| eig.eigenvectors.column(i).into_owned()).collect()
}

/// Vectors of `⊗ V_i` fixed by the diagonal action, via the averaging projector.
pub fn invariant_vectors(g: &FiniteGroup, factors: &[&UnitaryRep]) -> Result<InvariantBasis, SphericalError> {
    let fp = g.fingerprint();
    if factors.iter().any(|f| f.group_fingerprint != fp) {
        return Err(SphericalError::DimensionMismatch("factors belong to another group".into()));
    }
    let dim: usize = factors.iter().map(|f| f.dim).product();
    let mut p = DMatrix::<Complex64>::zeros(dim, dim);
    for x in g.elements() {
        let ms: Vec<&DMatrix<Complex64>> = factors.iter().map(|f| f.matrix(x)).collect();
        p += kron_all(&ms);
    }
    p /= Complex64::new(g.order() as f64, 0.0);
    Ok(InvariantBasis {
        factor_dims: factors.iter().map(|f| f.dim).collect(),
        vectors: range_basis(p),
    })
}

/// `⟨(ρ₁(x₁) ⊗ … ⊗ ρ_k(x_k)) u, v⟩`.
pub fn spherical_value(
    factors: &[&UnitaryRep],
    u: &DVector<Complex64>,
    v: &DVector<Complex64>,
    x: &[usize],
) -> Result<Complex64, SphericalError> {
    if x.len() != factors.len() {
        return Err(SphericalError::DimensionMismatch(format!(
            "{} group elements for {} factors",
            x.len(),
            factors.len()
        )));
    }
    let dim: usize = factors.iter().map(|f| f.dim).product();
    if u.len() != dim || v.len() != dim {
        return Err(SphericalError::DimensionMismatch(format!("vectors must have length {dim}")));
    }
    let ms: Vec<&DMatrix<Complex64>> = factors.iter().zip(x).map(|(f, &xi)| f.matrix(xi)).collect();
    Ok(v.dotc(&(kron_all(&ms) * u)))
}

/// A spherical function that tells two tuples apart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparationWitness {
    /// Irrep indices (into `numeric_irreps`) of the `k+1` tensor factors.
    pub factors: Vec<usize>,
    pub u: usize,
    pub v: usize,
    pub value_x: [f64; 2],
    pub value_y: [f64; 2],
    pub difference: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Separation {
    Separated { witness: SeparationWitness },
    NotSeparated { max_difference: f64 },
}

impl Separation {
    pub fn is_separated(&self) -> bool {
        matches!(self, Separation::Separated { .. })
    }
}

/// All spherical functions on `G\G^{k+1}/G`, read as functions of `k`-tuples
/// up to simultaneous conjugation through `x ↦ (1, x₁, …, x_k)`.
pub struct SphericalFamily {
    group: FiniteGroup,
    k: usize,
    irreps: Vec<UnitaryRep>,
    blocks: Vec<(Vec<usize>, InvariantBasis)>,
}

fn tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = base.checked_pow(len as u32).unwrap_or(usize::MAX);
    (0..total).map(move |mut c| {
        let mut t = vec![0; len];
        for slot in t.iter_mut().rev() {
            *slot = c % base;
            c /= base;
        }
        t
    })
}

fn tuple_cap(g: &FiniteGroup, k: usize) -> Result<(), SphericalError> {
    let size = g.order().checked_pow(k as u32).unwrap_or(usize::MAX);
    if size > DEFAULT_IRREP_CAP {
        return Err(SphericalError::CapExceeded {
            size,
            cap: DEFAULT_IRREP_CAP,
        });
    }
    Ok(())
}

impl SphericalFamily {
    pub fn new(g: &FiniteGroup, k: usize) -> Result<Self, SphericalError> {
        tuple_cap(g, k)?;
        let irreps = numeric_irreps(g)?;
        let mut blocks = Vec::new();
        for idx in tuples(irreps.len(), k + 1) {
            let fs: Vec<&UnitaryRep> = idx.iter().map(|&i| &irreps[i]).collect();
            let basis = invariant_vectors(g, &fs)?;
            if !basis.vectors.is_empty() {
                blocks.push((idx, basis));
            }
        }
        Ok(SphericalFamily {
            group: g.clone(),
            k,
            irreps,
            blocks,
        })
    }

    pub fn irreps(&self) -> &[UnitaryRep] {
        &self.irreps
    }

    /// Number of spherical functions `Σ m_I²`.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|(_, b)| b.vectors.len().pow(2)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn check(&self, x: &[usize]) -> Result<(), SphericalError> {
        if x.len() != self.k || x.iter().any(|&e| e >= self.group.order()) {
            return Err(SphericalError::DimensionMismatch(format!("expected {} group elements", self.k)));
        }
        Ok(())
    }

    /// Values of every spherical function, in a fixed order.
    pub fn values(&self, x: &[usize]) -> Result<Vec<(usize, usize, usize, Complex64)>, SphericalError> {
        self.check(x)?;
        let mut full = vec![self.group.identity()];
        full.extend_from_slice(x);
        let mut out = Vec::with_capacity(self.len());
        for (b, (idx, basis)) in self.blocks.iter().enumerate() {
            let fs: Vec<&UnitaryRep> = idx.iter().map(|&i| &self.irreps[i]).collect();
            let ms: Vec<&DMatrix<Complex64>> = fs.iter().zip(&full).map(|(f, &e)| f.matrix(e)).collect();
            let m = kron_all(&ms);
            for (iu, u) in basis.vectors.iter().enumerate() {
                let mu = &m * u;
                for (iv, v) in basis.vectors.iter().enumerate() {
                    out.push((b, iu, iv, v.dotc(&mu)));
                }
            }
        }
        Ok(out)
    }

    pub fn separate(&self, x: &[usize], y: &[usize]) -> Result<Separation, SphericalError> {
        let vx = self.values(x)?;
        let vy = self.values(y)?;
        let mut best: Option<(f64, usize)> = None;
        for (i, (a, b)) in vx.iter().zip(&vy).enumerate() {
            let d = (a.3 - b.3).norm();
            if best.is_none_or(|(m, _)| d > m) {
                best = Some((d, i));
            }
        }
        let Some((d, i)) = best else {
            return Ok(Separation::NotSeparated { max_difference: 0.0 });
        };
        if d <= SEPARATION_TOL {
            return Ok(Separation::NotSeparated { max_difference: d });
        }
        let (b, u, v, ax) = vx[i];
        let ay = vy[i].3;
        Ok(Separation::Separated {
            witness: SeparationWitness {
                factors: self.blocks[b].0.clone(),
                u,
                v,
                value_x: [ax.re, ax.im],
                value_y: [ay.re, ay.im],
                difference: d,
            },
        })
    }
}

/// Whether `y = h x h⁻¹` for some `h`, by brute force.
pub fn same_double_coset(g: &FiniteGroup, x: &[usize], y: &[usize]) -> bool {
    x.len() == y.len() && g.elements().any(|h| x.iter().zip(y).all(|(&a, &b)| g.conjugate(a, h) == b))
}

/// Separates two `k`-tuples up to simultaneous conjugation, cross-checked by brute force.
pub fn separate_cosets(g: &FiniteGroup, x: &[usize], y: &[usize]) -> Result<Separation, SphericalError> {
    if x.len() != y.len() {
        return Err(SphericalError::DimensionMismatch("tuples of different lengths".into()));
    }
    let fam = SphericalFamily::new(g, x.len())?;
    let s = fam.separate(x, y)?;
    if s.is_separated() == same_double_coset(g, x, y) {
        return Err(SphericalError::CrossValidation(format!("{x:?} vs {y:?}")));
    }
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WielandtCounts {
    pub orbits: u64,
    pub sum_m_squared: u64,
}

/// Orbit count of simultaneous conjugation on `G^k` (brute force) and
/// `Σ m_I²` over irreducibles `V_I` of `G^{k+1}` with `m_I = dim V_I^G`.
pub fn wielandt_check(g: &FiniteGroup, k: usize) -> Result<WielandtCounts, SphericalError> {
    tuple_cap(g, k)?;
    let n = g.order();
    let mut seen = HashSet::new();
    let mut orbits = 0u64;
    for t in tuples(n, k) {
        if seen.contains(&t) {
            continue;
        }
        orbits += 1;
        for h in g.elements() {
            seen.insert(t.iter().map(|&a| g.conjugate(a, h)).collect::<Vec<_>>());
        }
    }
    let irreps = numeric_irreps(g)?;
    let chars: Vec<Vec<Complex64>> = irreps.iter().map(UnitaryRep::character).collect();
    let mut sum = 0u64;
    for idx in tuples(irreps.len(), k + 1) {
        let avg: Complex64 = g
            .elements()
            .map(|x| idx.iter().map(|&i| chars[i][x]).product::<Complex64>())
            .sum::<Complex64>()
            / n as f64;
        if avg.im.abs() > 0.01 {
            return Err(SphericalError::RoundingAmbiguity {
                what: "multiplicity".into(),
                value: avg.im,
            });
        }
        let m = guarded_round(avg.re, "multiplicity")?;
        sum += (m * m) as u64;
    }
    Ok(WielandtCounts {
        orbits,
        sum_m_squared: sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{builtin, Permutation};

    fn elt(g: &FiniteGroup, cycles: &[&[usize]]) -> usize {
        let n = g.permutation_degree().unwrap();
        let p = Permutation::from_cycles(n, cycles).unwrap();
        g.permutations().unwrap().iter().position(|q| *q == p).unwrap()
    }

    #[test]
    fn invariant_dimensions() {
        let g = builtin("S3").unwrap();
        let reps = numeric_irreps(&g).unwrap();
        let std = &reps[2];
        assert_eq!(invariant_vectors(&g, &[std, std]).unwrap().vectors.len(), 1);
        assert_eq!(invariant_vectors(&g, &[std, &reps[1]]).unwrap().vectors.len(), 0);
        assert_eq!(invariant_vectors(&g, &[&reps[0]]).unwrap().vectors.len(), 1);
        let b = invariant_vectors(&g, &[std, std, std]).unwrap();
        for v in &b.vectors {
            for x in g.elements() {
                let m = kron_all(&[std.matrix(x), std.matrix(x), std.matrix(x)]);
                assert!((&m * v - v).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn spherical_values_are_bi_invariant() {
        let g = builtin("S3").unwrap();
        let reps = numeric_irreps(&g).unwrap();
        let fs = [&reps[2], &reps[2]];
        let b = invariant_vectors(&g, &fs).unwrap();
        let u = &b.vectors[0];
        let e = g.identity();
        assert!((spherical_value(&fs, u, u, &[e, e]).unwrap() - 1.0).norm() < 1e-10);
        let x = [elt(&g, &[&[1, 2]]), elt(&g, &[&[1, 2, 3]])];
        for h in g.elements() {
            let y = [g.conjugate(x[0], h), g.conjugate(x[1], h)];
            let a = spherical_value(&fs, u, u, &x).unwrap();
            let b = spherical_value(&fs, u, u, &y).unwrap();
            assert!((a - b).norm() < 1e-10);
        }
        assert!(spherical_value(&fs, u, u, &[e]).is_err());
    }

    #[test]
    fn separation_examples() {
        let g = builtin("S3").unwrap();
        let t = elt(&g, &[&[1, 2]]);
        let c = elt(&g, &[&[1, 2, 3]]);
        let s = separate_cosets(&g, &[t], &[c]).unwrap();
        match s {
            Separation::Separated { witness } => assert!(witness.difference > 10.0 * SEPARATION_TOL),
            _ => panic!("expected separation"),
        }
        let h = elt(&g, &[&[1, 3]]);
        let y = [g.conjugate(t, h), g.conjugate(c, h)];
        assert!(!separate_cosets(&g, &[t, c], &y).unwrap().is_separated());

        let v4 = builtin("V4").unwrap();
        assert!(separate_cosets(&v4, &[1, 2], &[2, 1]).unwrap().is_separated());
    }

    #[test]
    fn wielandt_examples() {
        let z2 = builtin("Z/2").unwrap();
        let w = wielandt_check(&z2, 1).unwrap();
        assert_eq!((w.orbits, w.sum_m_squared), (2, 2));
        let s3 = builtin("S3").unwrap();
        let w = wielandt_check(&s3, 1).unwrap();
        assert_eq!((w.orbits, w.sum_m_squared), (3, 3));
        let w = wielandt_check(&s3, 2).unwrap();
        assert_eq!(w.orbits, w.sum_m_squared);
        assert_eq!(w.orbits, 11);
    }
}

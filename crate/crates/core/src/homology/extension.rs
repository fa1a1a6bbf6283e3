use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::HomologyError;
use crate::perm::{builtin, find_epimorphism_with_kernel, find_isomorphism, group_from_spec, FiniteGroup, GroupHom};

/// A central extension `1 → K → G̃ → G → 1` with `K ⊆ [G̃, G̃]`.
#[derive(Clone, Debug)]
pub struct StemExtension {
    name: String,
    proj: GroupHom,
    kernel: Vec<usize>,
    /// `lift[x]`: least element of `G̃` over `x`.
    lift: Vec<usize>,
}

impl StemExtension {
    /// Validates surjectivity, centrality and the stem condition.
    pub fn new(name: impl Into<String>, proj: GroupHom) -> Result<Self, HomologyError> {
        let name = name.into();
        let total = proj.source().clone();
        if !proj.is_surjective() {
            return Err(HomologyError::NotStem(format!("{name}: projection is not onto")));
        }
        let kernel = proj.kernel();
        for &k in &kernel {
            if total.elements().any(|x| total.mul(k, x) != total.mul(x, k)) {
                return Err(HomologyError::NotStem(format!(
                    "{name}: kernel element {} is not central",
                    total.label(k)
                )));
            }
        }
        let derived = total.derived_subgroup();
        if let Some(&k) = kernel.iter().find(|&&k| !derived[k]) {
            return Err(HomologyError::NotStem(format!(
                "{name}: kernel element {} lies outside the commutator subgroup",
                total.label(k)
            )));
        }
        let base = proj.target();
        let mut lift = vec![usize::MAX; base.order()];
        for x in total.elements() {
            let y = proj.apply(x);
            if lift[y] == usize::MAX {
                lift[y] = x;
            }
        }
        Ok(StemExtension {
            name,
            proj,
            kernel,
            lift,
        })
    }

    /// The trivial extension `G → G`.
    pub fn identity(base: Arc<FiniteGroup>) -> Self {
        let map = base.elements().collect();
        let proj = GroupHom::new(base.clone(), base, map).expect("identity map");
        StemExtension::new("identity", proj).expect("trivially stem")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn total(&self) -> &Arc<FiniteGroup> {
        self.proj.source()
    }

    pub fn base(&self) -> &Arc<FiniteGroup> {
        self.proj.target()
    }

    pub fn proj(&self) -> &GroupHom {
        &self.proj
    }

    /// Sorted kernel elements of `G̃`.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    pub fn in_kernel(&self, x: usize) -> bool {
        self.kernel.binary_search(&x).is_ok()
    }

    /// Canonical lift (least index over `x`).
    pub fn lift(&self, x: usize) -> usize {
        self.lift[x]
    }

    /// All lifts of `x`.
    pub fn lifts(&self, x: usize) -> Vec<usize> {
        let total = self.total();
        self.kernel.iter().map(|&k| total.mul(self.lift[x], k)).collect()
    }

    pub fn to_file(&self) -> StemExtensionFile {
        StemExtensionFile {
            total: self.total().name().to_string(),
            proj: self.proj.map().to_vec(),
            kernel: self.kernel.clone(),
        }
    }
}

/// JSON form: `{"total": <group descriptor>, "proj": [...], "kernel": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StemExtensionFile {
    pub total: String,
    pub proj: Vec<usize>,
    #[serde(default)]
    pub kernel: Vec<usize>,
}

impl StemExtensionFile {
    pub fn resolve(&self, base: Arc<FiniteGroup>) -> Result<StemExtension, HomologyError> {
        let total = Arc::new(group_from_spec(&self.total)?);
        let proj = GroupHom::new(total, base, self.proj.clone())?;
        let ext = StemExtension::new(format!("{}-cover", self.total), proj)?;
        if !self.kernel.is_empty() {
            let mut k = self.kernel.clone();
            k.sort_unstable();
            if k != ext.kernel {
                return Err(HomologyError::NotStem("declared kernel differs from proj⁻¹(1)".into()));
            }
        }
        Ok(ext)
    }
}

/// Shipped covers: `(cli name, total group, base group)`.
pub const SHIPPED_COVERS: &[(&str, &str, &str)] = &[
    ("q8-v4", "Q8", "V4"),
    ("d4-v4", "D4", "V4"),
    ("heis3-z3xz3", "Heis3", "Z/3xZ/3"),
    ("sl23-a4", "SL23", "A4"),
];

/// Builds a shipped cover onto `base`, which only needs to be isomorphic to the
/// cover's usual base. The kernel is the centre of the total group.
pub fn shipped_cover(name: &str, base: &Arc<FiniteGroup>) -> Result<StemExtension, HomologyError> {
    if name == "identity" {
        return Ok(StemExtension::identity(base.clone()));
    }
    let &(_, total_name, _) = SHIPPED_COVERS
        .iter()
        .find(|(n, _, _)| *n == name)
        .ok_or_else(|| HomologyError::NoCoverAvailable(format!("unknown cover {name:?}")))?;
    let total = Arc::new(builtin(total_name)?);
    let centre = total.center();
    let map = find_epimorphism_with_kernel(&total, base, &centre).ok_or_else(|| {
        HomologyError::NoCoverAvailable(format!("{name} does not cover {}", base.name()))
    })?;
    StemExtension::new(name, GroupHom::new(total, base.clone(), map)?)
}

/// Covers shipped for `G` (matched up to isomorphism). Groups with trivial
/// `H₂` get the identity cover.
pub fn builtin_extensions(base: &Arc<FiniteGroup>) -> Result<Vec<StemExtension>, HomologyError> {
    let mut out = Vec::new();
    for &(name, _, base_name) in SHIPPED_COVERS {
        let model = group_from_spec(base_name)?;
        if model.order() == base.order() && find_isomorphism(&model, base).is_some() {
            out.push(shipped_cover(name, base)?);
        }
    }
    if out.is_empty() {
        if schur_multiplier_trivial(base) {
            out.push(StemExtension::identity(base.clone()));
        } else {
            return Err(HomologyError::NoCoverAvailable(base.name().to_string()));
        }
    }
    Ok(out)
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Sufficient test for `H₂(G) = 0`: every Sylow subgroup is cyclic (the
/// `p`-part of the multiplier embeds in that of a Sylow `p`-subgroup), or, for
/// `|G| ≤ 16`, the cocycle computation gives zero `p`-rank for each prime.
pub fn schur_multiplier_trivial(g: &FiniteGroup) -> bool {
    let n = g.order();
    let sylow_cyclic = prime_factors(n).into_iter().all(|p| {
        let mut pa = 1;
        while n.is_multiple_of(pa * p) {
            pa *= p;
        }
        g.elements().any(|x| g.element_order(x) == pa)
    });
    sylow_cyclic || (n <= 16 && prime_factors(n).into_iter().all(|p| schur_multiplier_p_rank(g, p) == 0))
}

/// `p`-rank of `H₂(G; ℤ)`, read off the trivial-coefficient cocycles:
/// `dim Z²(G; F_p) = |G| + rank_p H₂(G)` by universal coefficients.
/// Cost is `|G|³` sparse equations over `|G|²` unknowns; meant for small groups.
pub fn schur_multiplier_p_rank(g: &FiniteGroup, p: usize) -> usize {
    let n = g.order();
    let vars = n * n;
    let p = p as i64;
    // echelon rows keyed by pivot column
    let mut pivots: Vec<Option<Vec<i64>>> = vec![None; vars];
    let mut rank = 0;
    let inv = |a: i64| -> i64 {
        let mut r = 1;
        for _ in 0..p - 2 {
            r = r * a % p;
        }
        r
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // f(y,z) − f(xy,z) + f(x,yz) − f(x,y) = 0
                let mut row = vec![0i64; vars];
                let xy = g.mul(x, y);
                let yz = g.mul(y, z);
                row[y * n + z] += 1;
                row[xy * n + z] -= 1;
                row[x * n + yz] += 1;
                row[x * n + y] -= 1;
                for v in row.iter_mut() {
                    *v = v.rem_euclid(p);
                }
                for c in 0..vars {
                    if row[c] == 0 {
                        continue;
                    }
                    if let Some(pr) = &pivots[c] {
                        let f = row[c];
                        for k in c..vars {
                            row[k] = (row[k] - f * pr[k]).rem_euclid(p);
                        }
                    } else {
                        let s = inv(row[c]);
                        for v in row[c..].iter_mut() {
                            *v = *v * s % p;
                        }
                        pivots[c] = Some(row);
                        rank += 1;
                        break;
                    }
                }
            }
        }
    }
    // Z² = kernel of the coboundary, dimension vars − rank
    (vars - rank).saturating_sub(n)
}

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::SurfaceError;
use crate::perm::{group_from_spec, is_transitive, FiniteGroup, Permutation};

/// A homomorphism `π₁(Σ_g ∖ {m points}) → G`, stored as the flat tuple
/// `(a_1, b_1, …, a_g, b_g, c_1, …, c_m)` of element indices.
#[derive(Clone, Debug)]
pub struct SurfaceMonodromy {
    group: Arc<FiniteGroup>,
    genus: usize,
    entries: Vec<usize>,
}

impl PartialEq for SurfaceMonodromy {
    fn eq(&self, other: &Self) -> bool {
        self.genus == other.genus
            && self.entries == other.entries
            && self.group.fingerprint() == other.group.fingerprint()
    }
}

impl Eq for SurfaceMonodromy {}

impl SurfaceMonodromy {
    pub fn new(
        group: Arc<FiniteGroup>,
        a: &[usize],
        b: &[usize],
        c: &[usize],
    ) -> Result<Self, SurfaceError> {
        if a.len() != b.len() {
            return Err(SurfaceError::Shape(format!(
                "{} a-entries but {} b-entries",
                a.len(),
                b.len()
            )));
        }
        let mut entries = Vec::with_capacity(2 * a.len() + c.len());
        for (x, y) in a.iter().zip(b) {
            entries.push(*x);
            entries.push(*y);
        }
        entries.extend_from_slice(c);
        Self::from_flat(group, a.len(), entries)
    }

    pub fn from_flat(group: Arc<FiniteGroup>, genus: usize, entries: Vec<usize>) -> Result<Self, SurfaceError> {
        if entries.len() < 2 * genus {
            return Err(SurfaceError::Shape("tuple shorter than 2g".into()));
        }
        if let Some(&bad) = entries.iter().find(|&&x| x >= group.order()) {
            return Err(SurfaceError::Shape(format!("element index {bad} out of range")));
        }
        Ok(SurfaceMonodromy {
            group,
            genus,
            entries,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn punctures(&self) -> usize {
        self.entries.len() - 2 * self.genus
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn a(&self, i: usize) -> usize {
        self.entries[2 * i]
    }

    pub fn b(&self, i: usize) -> usize {
        self.entries[2 * i + 1]
    }

    pub fn c(&self, j: usize) -> usize {
        self.entries[2 * self.genus + j]
    }

    pub fn a_all(&self) -> Vec<usize> {
        (0..self.genus).map(|i| self.a(i)).collect()
    }

    pub fn b_all(&self) -> Vec<usize> {
        (0..self.genus).map(|i| self.b(i)).collect()
    }

    pub fn c_all(&self) -> &[usize] {
        &self.entries[2 * self.genus..]
    }

    /// `∏[a_i,b_i] · ∏ c_j`.
    pub fn relator_value(&self) -> usize {
        relator_value(&self.group, self.genus, &self.entries)
    }

    /// Relator holds and every peripheral image is nontrivial.
    pub fn validate(&self) -> bool {
        let id = self.group.identity();
        self.relator_value() == id && self.c_all().iter().all(|&c| c != id)
    }

    pub fn is_surjective(&self) -> bool {
        self.group.generates(&self.entries)
    }

    /// Transitivity of the image in the permutation realization (`None` without one).
    pub fn is_transitive(&self) -> Option<bool> {
        let perms = self.group.permutations()?;
        let n = perms[0].degree();
        let imgs: Vec<Permutation> = self.entries.iter().map(|&x| perms[x].clone()).collect();
        is_transitive(&imgs, n).ok()
    }

    /// Appends `k` trivial handles `(1, 1)` after the last handle.
    pub fn stabilize(&self, k: usize) -> SurfaceMonodromy {
        let id = self.group.identity();
        let mut entries = self.entries[..2 * self.genus].to_vec();
        entries.extend(std::iter::repeat_n(id, 2 * k));
        entries.extend_from_slice(self.c_all());
        SurfaceMonodromy {
            group: self.group.clone(),
            genus: self.genus + k,
            entries,
        }
    }

    /// Simultaneous conjugation `x ↦ h x h⁻¹`.
    pub fn conjugate(&self, h: usize) -> SurfaceMonodromy {
        SurfaceMonodromy {
            group: self.group.clone(),
            genus: self.genus,
            entries: self.entries.iter().map(|&x| self.group.conjugate(x, h)).collect(),
        }
    }

    /// Lexicographically least simultaneous conjugate.
    pub fn canonical_form(&self) -> SurfaceMonodromy {
        SurfaceMonodromy {
            group: self.group.clone(),
            genus: self.genus,
            entries: canonical_entries(&self.group, &self.entries),
        }
    }

    pub fn to_file(&self) -> MonodromyFile {
        let lab = |v: Vec<usize>| v.into_iter().map(ElementRef::Index).collect();
        MonodromyFile {
            group: self.group.name().to_string(),
            g: self.genus,
            a: lab(self.a_all()),
            b: lab(self.b_all()),
            c: lab(self.c_all().to_vec()),
        }
    }
}

pub(crate) fn relator_value(g: &FiniteGroup, genus: usize, entries: &[usize]) -> usize {
    let mut acc = g.identity();
    for i in 0..genus {
        acc = g.mul(acc, g.commutator(entries[2 * i], entries[2 * i + 1]));
    }
    for &c in &entries[2 * genus..] {
        acc = g.mul(acc, c);
    }
    acc
}

/// Lexicographically least conjugate of a tuple.
pub fn canonical_entries(g: &FiniteGroup, entries: &[usize]) -> Vec<usize> {
    let mut best = entries.to_vec();
    let mut cand = vec![0usize; entries.len()];
    for h in g.elements() {
        let hi = g.inv(h);
        let mut better = false;
        for (k, &x) in entries.iter().enumerate() {
            let y = g.mul(g.mul(h, x), hi);
            cand[k] = y;
            if !better {
                if y < best[k] {
                    better = true;
                } else if y > best[k] {
                    break;
                }
            }
        }
        if better {
            best.copy_from_slice(&cand);
        }
    }
    best
}

/// A tuple entry in a monodromy file: an element index or a label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

/// JSON form: `{"group": "S3", "g": 2, "a": [...], "b": [...], "c": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyFile {
    pub group: String,
    pub g: usize,
    #[serde(default)]
    pub a: Vec<ElementRef>,
    #[serde(default)]
    pub b: Vec<ElementRef>,
    #[serde(default)]
    pub c: Vec<ElementRef>,
}

impl MonodromyFile {
    pub fn resolve(&self) -> Result<SurfaceMonodromy, SurfaceError> {
        let group = Arc::new(group_from_spec(&self.group)?);
        self.resolve_in(group)
    }

    pub fn resolve_in(&self, group: Arc<FiniteGroup>) -> Result<SurfaceMonodromy, SurfaceError> {
        if self.a.len() != self.g || self.b.len() != self.g {
            return Err(SurfaceError::Shape(format!("g = {} but a/b lengths differ", self.g)));
        }
        let look = |r: &ElementRef| -> Result<usize, SurfaceError> {
            match r {
                ElementRef::Index(i) if *i < group.order() => Ok(*i),
                ElementRef::Index(i) => Err(SurfaceError::Shape(format!("index {i} out of range"))),
                ElementRef::Label(l) => group
                    .element_by_label(l)
                    .ok_or_else(|| SurfaceError::Shape(format!("unknown element label {l:?}"))),
            }
        };
        let a: Vec<usize> = self.a.iter().map(look).collect::<Result<_, _>>()?;
        let b: Vec<usize> = self.b.iter().map(look).collect::<Result<_, _>>()?;
        let c: Vec<usize> = self.c.iter().map(look).collect::<Result<_, _>>()?;
        SurfaceMonodromy::new(group.clone(), &a, &b, &c)
    }
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{builtin_extensions, HomologyError, StemExtension};
use crate::surface::SurfaceMonodromy;

/// One chosen lift in `G̃` per conjugacy class of `G` (keyed by class index).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeripheralLifts(pub BTreeMap<usize, usize>);

impl PeripheralLifts {
    /// Least lift of each class's least member.
    pub fn canonical(ext: &StemExtension) -> Self {
        let base = ext.base();
        PeripheralLifts(
            base.conjugacy_classes()
                .iter()
                .enumerate()
                .map(|(i, cls)| (i, ext.lift(cls[0])))
                .collect(),
        )
    }

    /// Lift assigned to the class of `x` (falls back to the canonical choice).
    fn lift_for(&self, ext: &StemExtension, x: usize) -> usize {
        let class = ext.base().class_of(x);
        self.0
            .get(&class)
            .copied()
            .unwrap_or_else(|| ext.lift(ext.base().conjugacy_classes()[class][0]))
    }
}

fn check_target(t: &SurfaceMonodromy, ext: &StemExtension) -> Result<(), HomologyError> {
    if t.group().fingerprint() != ext.base().fingerprint() {
        return Err(HomologyError::GroupMismatch {
            monodromy: t.group().name().to_string(),
            cover: ext.base().name().to_string(),
        });
    }
    Ok(())
}

/// `c̃_j`: the class lift `ĉ` conjugated by the canonical lift of the least `h`
/// with `h π(ĉ) h⁻¹ = c_j`.
fn peripheral_lift(ext: &StemExtension, lifts: &PeripheralLifts, j: usize, c: usize) -> Result<usize, HomologyError> {
    let base = ext.base();
    let total = ext.total();
    let hat = lifts.lift_for(ext, c);
    let rep = ext.proj().apply(hat);
    if base.class_of(rep) != base.class_of(c) {
        return Err(HomologyError::LiftMismatch { puncture: j });
    }
    let h = base
        .elements()
        .find(|&h| base.conjugate(rep, h) == c)
        .expect("same class");
    Ok(total.conjugate(hat, ext.lift(h)))
}

/// `∏[ã_i, b̃_i] · ∏ c̃_j` in the kernel, with explicit handle lifts.
pub fn lifting_invariant_with_lifts(
    t: &SurfaceMonodromy,
    ext: &StemExtension,
    handle_lifts: &[usize],
    lifts: &PeripheralLifts,
) -> Result<usize, HomologyError> {
    check_target(t, ext)?;
    let total = ext.total();
    let g = t.genus();
    if handle_lifts.len() != 2 * g || (0..2 * g).any(|k| ext.proj().apply(handle_lifts[k]) != t.entries()[k]) {
        return Err(HomologyError::Malformed("handle lifts do not project to the tuple".into()));
    }
    let mut acc = total.identity();
    for i in 0..g {
        acc = total.mul(acc, total.commutator(handle_lifts[2 * i], handle_lifts[2 * i + 1]));
    }
    for (j, &c) in t.c_all().iter().enumerate() {
        acc = total.mul(acc, peripheral_lift(ext, lifts, j, c)?);
    }
    if !ext.in_kernel(acc) {
        return Err(HomologyError::Malformed("tuple does not satisfy the relator".into()));
    }
    Ok(acc)
}

/// Lifting invariant with canonical handle lifts. For closed surfaces this is
/// the image of the fundamental class.
pub fn lifting_invariant(t: &SurfaceMonodromy, ext: &StemExtension, lifts: &PeripheralLifts) -> Result<usize, HomologyError> {
    let handle: Vec<usize> = t.entries()[..2 * t.genus()].iter().map(|&x| ext.lift(x)).collect();
    lifting_invariant_with_lifts(t, ext, &handle, lifts)
}

/// Relative class: absolute kernel value, primitive boundary `(1, …, 1)`, and
/// the subgroup of kernel values reachable by re-choosing the conjugators
/// used for the peripheral lifts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchurClass {
    pub absolute: usize,
    pub boundary: Vec<i64>,
    /// Sorted subgroup of the kernel.
    pub ambiguity: Vec<usize>,
}

impl SchurClass {
    /// Equal boundary and absolute parts agreeing modulo both ambiguity subgroups.
    pub fn equivalent(&self, other: &SchurClass, ext: &StemExtension) -> bool {
        if self.boundary != other.boundary {
            return false;
        }
        let total = ext.total();
        let mut gens = self.ambiguity.clone();
        gens.extend_from_slice(&other.ambiguity);
        let sub = total.generated_subgroup(&gens);
        sub[total.mul(self.absolute, total.inv(other.absolute))]
    }
}

pub fn relative_class(t: &SurfaceMonodromy, ext: &StemExtension, lifts: &PeripheralLifts) -> Result<SchurClass, HomologyError> {
    if t.punctures() == 0 {
        return Err(HomologyError::Malformed("relative class needs at least one puncture".into()));
    }
    let absolute = lifting_invariant(t, ext, lifts)?;
    let base = ext.base();
    let total = ext.total();
    let mut gens = Vec::new();
    for &c in t.c_all() {
        let hat = lifts.lift_for(ext, c);
        let rep = ext.proj().apply(hat);
        for z in base.centralizer(rep) {
            gens.push(total.commutator(ext.lift(z), hat));
        }
    }
    let mask = total.generated_subgroup(&gens);
    let ambiguity = total.elements().filter(|&x| mask[x]).collect();
    Ok(SchurClass {
        absolute,
        boundary: vec![1; t.punctures()],
        ambiguity,
    })
}

/// True when the lifting invariant vanishes over every shipped cover of the
/// target group.
pub fn is_null_homologous(t: &SurfaceMonodromy) -> Result<bool, HomologyError> {
    let exts = builtin_extensions(t.group())?;
    for e in &exts {
        let lifts = PeripheralLifts::canonical(e);
        if lifting_invariant(t, e, &lifts)? != e.total().identity() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::homology::shipped_cover;
    use crate::perm::{builtin, group_from_spec, FiniteGroup};

    fn grp(name: &str) -> Arc<FiniteGroup> {
        Arc::new(group_from_spec(name).unwrap())
    }

    #[test]
    fn q8_over_v4() {
        let v4 = grp("V4");
        let e = shipped_cover("q8-v4", &v4).unwrap();
        let lifts = PeripheralLifts::canonical(&e);
        let minus_one = e.kernel().iter().copied().find(|&k| k != e.total().identity()).unwrap();
        let t = SurfaceMonodromy::new(v4.clone(), &[1], &[2], &[]).unwrap();
        assert_eq!(lifting_invariant(&t, &e, &lifts).unwrap(), minus_one);
        assert_eq!(e.total().label(minus_one), "-1");
        let t = SurfaceMonodromy::new(v4.clone(), &[1], &[0], &[]).unwrap();
        assert_eq!(lifting_invariant(&t, &e, &lifts).unwrap(), e.total().identity());
    }

    #[test]
    fn heisenberg_commutator() {
        let base = grp("Z/3xZ/3");
        let e = shipped_cover("heis3-z3xz3", &base).unwrap();
        let lifts = PeripheralLifts::canonical(&e);
        // two independent generators of (Z/3)²
        let (x, y) = (3, 1);
        assert!(base.generates(&[x, y]));
        let t = SurfaceMonodromy::new(base, &[x], &[y], &[]).unwrap();
        let v = lifting_invariant(&t, &e, &lifts).unwrap();
        assert_ne!(v, e.total().identity());
        assert!(e.total().center().contains(&v));
    }

    #[test]
    fn independent_of_handle_lifts() {
        let v4 = grp("V4");
        let e = shipped_cover("q8-v4", &v4).unwrap();
        let lifts = PeripheralLifts::canonical(&e);
        let t = SurfaceMonodromy::new(v4.clone(), &[1, 3], &[2, 3], &[]).unwrap();
        let want = lifting_invariant(&t, &e, &lifts).unwrap();
        let choices: Vec<Vec<usize>> = t.entries().iter().map(|&x| e.lifts(x)).collect();
        for a in &choices[0] {
            for b in &choices[1] {
                for c in &choices[2] {
                    for d in &choices[3] {
                        let got = lifting_invariant_with_lifts(&t, &e, &[*a, *b, *c, *d], &lifts).unwrap();
                        assert_eq!(got, want);
                    }
                }
            }
        }
    }

    #[test]
    fn relative_class_ambiguity() {
        let v4 = grp("V4");
        let e = shipped_cover("q8-v4", &v4).unwrap();
        // c = (x, x): product 1
        let t = SurfaceMonodromy::new(v4.clone(), &[], &[], &[1, 1]).unwrap();
        let canon = PeripheralLifts::canonical(&e);
        let a = relative_class(&t, &e, &canon).unwrap();
        assert_eq!(a.boundary, vec![1, 1]);
        // choose the other lift of the class of x
        let mut other = canon.clone();
        let class = v4.class_of(1);
        let alt = e.lifts(1).into_iter().find(|&l| l != canon.0[&class]).unwrap();
        other.0.insert(class, alt);
        let b = relative_class(&t, &e, &other).unwrap();
        assert!(a.equivalent(&b, &e));
        // stabilization leaves the class unchanged
        let s = relative_class(&t.stabilize(2), &e, &canon).unwrap();
        assert_eq!(s, a);
    }

    #[test]
    fn mismatched_lift_is_rejected() {
        let v4 = grp("V4");
        let e = shipped_cover("q8-v4", &v4).unwrap();
        let mut lifts = PeripheralLifts::canonical(&e);
        let class = v4.class_of(1);
        lifts.0.insert(class, e.lift(2));
        let t = SurfaceMonodromy::new(v4, &[], &[], &[1, 1]).unwrap();
        assert_eq!(
            lifting_invariant(&t, &e, &lifts),
            Err(HomologyError::LiftMismatch { puncture: 0 })
        );
    }

    #[test]
    fn trivial_cover_gives_trivial_invariant() {
        let s3 = Arc::new(builtin("S3").unwrap());
        let t = SurfaceMonodromy::new(s3.clone(), &[1], &[2], &[]).unwrap();
        if t.validate() {
            assert!(is_null_homologous(&t).unwrap());
        }
    }
}

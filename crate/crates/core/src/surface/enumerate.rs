use std::ops::ControlFlow;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monodromy::canonical_entries;
use super::{SurfaceError, SurfaceMonodromy};
use crate::perm::{FiniteGroup, Permutation};

/// Filters applied during enumeration.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Constraints {
    /// One conjugacy class (given by any member) per puncture.
    #[serde(default)]
    pub peripheral_classes: Option<Vec<usize>>,
    #[serde(default)]
    pub surjective: bool,
    #[serde(default)]
    pub transitive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCounts {
    pub raw: u64,
    /// Tuples up to simultaneous conjugation.
    pub conjugacy_classes: u64,
}

/// Streams every valid tuple in lexicographic order of the flat tuple
/// `(a_1, b_1, …, c_m)`. The callback may stop the stream early.
///
/// The last free coordinate is solved for: `c_m` is forced when `m ≥ 1`, and
/// otherwise the last handle ranges over the fiber of the commutator map.
pub fn for_each_tuple<F>(
    group: &FiniteGroup,
    genus: usize,
    punctures: usize,
    constraints: &Constraints,
    mut f: F,
) -> Result<(), SurfaceError>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if let Some(cls) = &constraints.peripheral_classes {
        if cls.len() != punctures {
            return Err(SurfaceError::Shape(format!(
                "{} peripheral classes for {} punctures",
                cls.len(),
                punctures
            )));
        }
    }
    let allowed_c: Vec<Vec<usize>> = (0..punctures)
        .map(|j| match &constraints.peripheral_classes {
            Some(cls) => group.conjugacy_classes()[group.class_of(cls[j])]
                .iter()
                .copied()
                .filter(|&x| x != group.identity())
                .collect(),
            None => group.elements().filter(|&x| x != group.identity()).collect(),
        })
        .collect();
    let perms = group.permutations();
    if constraints.transitive && perms.is_none() {
        return Err(SurfaceError::NoPermutationRealization);
    }
    let accept = |t: &[usize]| -> bool {
        if constraints.surjective && !group.generates(t) {
            return false;
        }
        if constraints.transitive {
            let p = perms.expect("checked above");
            let imgs: Vec<Permutation> = t.iter().map(|&x| p[x].clone()).collect();
            if !crate::perm::is_transitive(&imgs, p[0].degree()).unwrap_or(false) {
                return false;
            }
        }
        true
    };
    let fibers = commutator_fibers(group);
    let len = 2 * genus + punctures;
    let mut tuple = vec![0usize; len];
    let mut stop = false;
    let mut emit = |t: &[usize], stop: &mut bool| {
        if accept(t) && f(t).is_break() {
            *stop = true;
        }
    };
    if len == 0 {
        emit(&tuple, &mut stop);
        return Ok(());
    }
    // free coordinates: all handles except the last one when m = 0, all c_j except c_m
    let (free_handles, free_c) = if punctures > 0 {
        (genus, punctures - 1)
    } else {
        (genus - 1, 0)
    };
    recurse(
        group,
        &fibers,
        &allowed_c,
        genus,
        punctures,
        free_handles,
        free_c,
        0,
        group.identity(),
        &mut tuple,
        &mut |t| {
            emit(t, &mut stop);
            stop
        },
    );
    Ok(())
}

/// Depth-first over free coordinates; returns true to stop.
#[allow(clippy::too_many_arguments)]
fn recurse(
    group: &FiniteGroup,
    fibers: &[Vec<(usize, usize)>],
    allowed_c: &[Vec<usize>],
    genus: usize,
    punctures: usize,
    free_handles: usize,
    free_c: usize,
    depth: usize,
    prefix: usize,
    tuple: &mut [usize],
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if depth < free_handles {
        for a in group.elements() {
            for b in group.elements() {
                tuple[2 * depth] = a;
                tuple[2 * depth + 1] = b;
                let p = group.mul(prefix, group.commutator(a, b));
                if recurse(group, fibers, allowed_c, genus, punctures, free_handles, free_c, depth + 1, p, tuple, emit) {
                    return true;
                }
            }
        }
        return false;
    }
    let j = depth - free_handles;
    if j < free_c {
        for &c in &allowed_c[j] {
            tuple[2 * genus + j] = c;
            let p = group.mul(prefix, c);
            if recurse(group, fibers, allowed_c, genus, punctures, free_handles, free_c, depth + 1, p, tuple, emit) {
                return true;
            }
        }
        return false;
    }
    let need = group.inv(prefix);
    if punctures > 0 {
        if allowed_c[punctures - 1].binary_search(&need).is_ok() {
            tuple[2 * genus + punctures - 1] = need;
            return emit(tuple);
        }
        false
    } else {
        for &(a, b) in &fibers[need] {
            tuple[2 * genus - 2] = a;
            tuple[2 * genus - 1] = b;
            if emit(tuple) {
                return true;
            }
        }
        false
    }
}

/// `fibers[z]` lists all `(a, b)` with `[a, b] = z`, in lexicographic order.
pub fn commutator_fibers(group: &FiniteGroup) -> Vec<Vec<(usize, usize)>> {
    let mut fibers = vec![Vec::new(); group.order()];
    for a in group.elements() {
        for b in group.elements() {
            fibers[group.commutator(a, b)].push((a, b));
        }
    }
    fibers
}

/// Counts valid tuples and their conjugacy classes.
pub fn count(
    group: &FiniteGroup,
    genus: usize,
    punctures: usize,
    constraints: &Constraints,
) -> Result<EnumerationCounts, SurfaceError> {
    let mut raw = 0u64;
    let mut classes = 0u64;
    for_each_tuple(group, genus, punctures, constraints, |t| {
        raw += 1;
        if canonical_entries(group, t) == t {
            classes += 1;
        }
        ControlFlow::Continue(())
    })?;
    Ok(EnumerationCounts {
        raw,
        conjugacy_classes: classes,
    })
}

/// Collects all tuples; intended for small cases.
pub fn enumerate(
    group: &Arc<FiniteGroup>,
    genus: usize,
    punctures: usize,
    constraints: &Constraints,
) -> Result<(Vec<SurfaceMonodromy>, EnumerationCounts), SurfaceError> {
    let mut out = Vec::new();
    let mut classes = 0u64;
    for_each_tuple(group, genus, punctures, constraints, |t| {
        if canonical_entries(group, t) == t {
            classes += 1;
        }
        out.push(SurfaceMonodromy::from_flat(group.clone(), genus, t.to_vec()).expect("in range"));
        ControlFlow::Continue(())
    })?;
    let counts = EnumerationCounts {
        raw: out.len() as u64,
        conjugacy_classes: classes,
    };
    Ok((out, counts))
}

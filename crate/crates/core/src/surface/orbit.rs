use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::monodromy::canonical_entries;
use super::moves::{mcg_moves, move_set_fingerprint, moves_complete, MCGMove};
use super::{SurfaceError, SurfaceMonodromy};
use crate::perm::{FiniteGroup, GroupHom};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Convention recorded in orbit metadata: mapping classes fix each puncture.
pub const PUNCTURE_CONVENTION: &str = "puncture-fixing";

#[derive(Clone, Debug)]
pub struct OrbitOptions {
    /// Maximum number of canonical forms stored.
    pub budget: usize,
    /// Also identify tuples differing by these automorphisms of the target.
    pub automorphisms: Option<Vec<GroupHom>>,
}

impl Default for OrbitOptions {
    fn default() -> Self {
        OrbitOptions {
            budget: DEFAULT_BUDGET,
            automorphisms: None,
        }
    }
}

/// Closure of one tuple under the move set, as sorted canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSummary {
    pub group: String,
    pub group_fingerprint: String,
    pub genus: usize,
    pub punctures: usize,
    pub representatives: Vec<Vec<usize>>,
    pub size: usize,
    pub moves: Vec<String>,
    pub move_fingerprint: String,
    pub with_automorphisms: bool,
    /// False when the budget stopped the search.
    pub complete: bool,
    /// Whether the move set is known to generate the mapping class group.
    pub moves_generate: bool,
    pub convention: String,
}

impl OrbitSummary {
    /// Membership of an already canonicalized tuple.
    pub fn contains_canonical(&self, canonical: &[usize]) -> bool {
        self.representatives
            .binary_search_by(|r| r.as_slice().cmp(canonical))
            .is_ok()
    }
}

/// Canonical forms up to conjugation, optionally also up to automorphisms.
pub(crate) struct Canonicalizer<'a> {
    group: &'a FiniteGroup,
    auts: Option<&'a [GroupHom]>,
}

impl<'a> Canonicalizer<'a> {
    pub(crate) fn new(group: &'a FiniteGroup, auts: Option<&'a [GroupHom]>) -> Self {
        Canonicalizer { group, auts }
    }

    pub(crate) fn canon(&self, t: &[usize]) -> Vec<usize> {
        match self.auts {
            None => canonical_entries(self.group, t),
            Some(auts) => auts
                .iter()
                .map(|h| {
                    let img: Vec<usize> = t.iter().map(|&x| h.apply(x)).collect();
                    canonical_entries(self.group, &img)
                })
                .min()
                .unwrap_or_else(|| canonical_entries(self.group, t)),
        }
    }
}

pub(crate) struct Exploration {
    pub visited: Vec<Vec<usize>>,
    pub complete: bool,
    pub hit: Option<Vec<usize>>,
}

/// Breadth-first closure over canonical forms. Each layer is expanded in
/// parallel and merged in a fixed order, so the result does not depend on
/// scheduling. Stops early when `stop` accepts a state.
pub(crate) fn explore<P>(
    canon: &Canonicalizer,
    moves: &[MCGMove],
    start: &[usize],
    budget: usize,
    stop: P,
) -> Exploration
where
    P: Fn(&[usize]) -> bool,
{
    let group = canon.group;
    let first = canon.canon(start);
    if stop(&first) {
        return Exploration {
            visited: vec![first.clone()],
            complete: false,
            hit: Some(first),
        };
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(first.clone());
    let mut visited = vec![first.clone()];
    let mut frontier = vec![first];
    while !frontier.is_empty() {
        let images: Vec<Vec<Vec<usize>>> = frontier
            .par_iter()
            .map(|s| moves.iter().map(|mv| canon.canon(&mv.apply(group, s))).collect())
            .collect();
        let mut next = Vec::new();
        for t in images.into_iter().flatten() {
            if seen.contains(&t) {
                continue;
            }
            if visited.len() >= budget {
                return Exploration {
                    visited,
                    complete: false,
                    hit: None,
                };
            }
            seen.insert(t.clone());
            visited.push(t.clone());
            if stop(&t) {
                return Exploration {
                    visited,
                    complete: false,
                    hit: Some(t),
                };
            }
            next.push(t);
        }
        frontier = next;
    }
    Exploration {
        visited,
        complete: true,
        hit: None,
    }
}

/// Orbit of `t` under [`mcg_moves`] (and optionally `Aut(G)`), deduplicated on
/// canonical forms. When the budget is hit the summary is returned with
/// `complete = false`.
pub fn orbit(t: &SurfaceMonodromy, options: &OrbitOptions) -> Result<OrbitSummary, SurfaceError> {
    if !t.validate() {
        return Err(SurfaceError::InvalidMonodromy);
    }
    let moves = mcg_moves(t.genus(), t.punctures());
    Ok(orbit_with_moves(t, &moves, options))
}

/// Same as [`orbit`] with an explicit move set; no validity check.
pub fn orbit_with_moves(t: &SurfaceMonodromy, moves: &[MCGMove], options: &OrbitOptions) -> OrbitSummary {
    let group = t.group();
    let canon = Canonicalizer::new(group, options.automorphisms.as_deref());
    let ex = explore(&canon, moves, t.entries(), options.budget.max(1), |_| false);
    let mut reps = ex.visited;
    reps.sort();
    OrbitSummary {
        group: group.name().to_string(),
        group_fingerprint: group.fingerprint(),
        genus: t.genus(),
        punctures: t.punctures(),
        size: reps.len(),
        representatives: reps,
        moves: moves.iter().map(|m| m.name.clone()).collect(),
        move_fingerprint: move_set_fingerprint(moves),
        with_automorphisms: options.automorphisms.is_some(),
        complete: ex.complete,
        moves_generate: moves_complete(t.genus(), t.punctures()),
        convention: PUNCTURE_CONVENTION.to_string(),
    }
}

/// Splits a set of tuples (same shape) into orbits; each orbit is listed once,
/// in order of its least member's first appearance.
pub fn partition_into_orbits(
    tuples: &[SurfaceMonodromy],
    options: &OrbitOptions,
) -> Result<Vec<OrbitSummary>, SurfaceError> {
    partition_into_orbits_by(tuples, options, |t| orbit(t, options))
}

/// As [`partition_into_orbits`], with orbits supplied by `orbit_of` (for
/// example from a cache). `orbit_of` must honour the same options.
pub fn partition_into_orbits_by<F>(
    tuples: &[SurfaceMonodromy],
    options: &OrbitOptions,
    mut orbit_of: F,
) -> Result<Vec<OrbitSummary>, SurfaceError>
where
    F: FnMut(&SurfaceMonodromy) -> Result<OrbitSummary, SurfaceError>,
{
    let mut out: Vec<OrbitSummary> = Vec::new();
    for t in tuples {
        let canon = Canonicalizer::new(t.group(), options.automorphisms.as_deref());
        let c = canon.canon(t.entries());
        if out.iter().any(|o| o.contains_canonical(&c)) {
            continue;
        }
        out.push(orbit_of(t)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum ElementaryVerdict {
    /// A tuple in the orbit with every `b_i = 1`.
    Yes { witness: Vec<usize> },
    /// The whole orbit was enumerated without such a tuple.
    No { orbit_size: usize },
    Unknown { explored: usize },
}

impl ElementaryVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, ElementaryVerdict::Yes { .. })
    }
}

fn kill_pattern(g: &FiniteGroup, genus: usize) -> impl Fn(&[usize]) -> bool + '_ {
    move |t: &[usize]| (0..genus).all(|i| t[2 * i + 1] == g.identity())
}

/// Searches the orbit of a closed tuple for the handlebody kill pattern.
pub fn is_elementary(t: &SurfaceMonodromy, budget: usize) -> Result<ElementaryVerdict, SurfaceError> {
    if t.punctures() != 0 {
        return Err(SurfaceError::NotClosed(t.punctures()));
    }
    if !t.validate() {
        return Err(SurfaceError::InvalidMonodromy);
    }
    let moves = mcg_moves(t.genus(), 0);
    let canon = Canonicalizer::new(t.group(), None);
    let ex = explore(&canon, &moves, t.entries(), budget.max(1), kill_pattern(t.group(), t.genus()));
    Ok(match (ex.hit, ex.complete) {
        (Some(w), _) => ElementaryVerdict::Yes { witness: w },
        (None, true) => ElementaryVerdict::No {
            orbit_size: ex.visited.len(),
        },
        (None, false) => ElementaryVerdict::Unknown {
            explored: ex.visited.len(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum ThicknessBound {
    Found { k: usize, witness: Vec<usize> },
    /// `exhaustive` is true when every tried stabilization had its orbit fully
    /// enumerated.
    NotFound { max_k: usize, exhaustive: bool },
}

/// Smallest `k ≤ max_k` for which the `k`-fold stabilization is elementary.
///
/// The lifting invariant must vanish over every shipped cover of the target
/// group; otherwise the tuple is not null-homologous and the bound is undefined.
pub fn thickness_upper(t: &SurfaceMonodromy, max_k: usize, budget: usize) -> Result<ThicknessBound, SurfaceError> {
    if t.punctures() != 0 {
        return Err(SurfaceError::NotClosed(t.punctures()));
    }
    if !crate::homology::is_null_homologous(t)? {
        return Err(SurfaceError::NonNullHomologous);
    }
    let mut exhaustive = true;
    for k in 0..=max_k {
        match is_elementary(&t.stabilize(k), budget)? {
            ElementaryVerdict::Yes { witness } => return Ok(ThicknessBound::Found { k, witness }),
            ElementaryVerdict::No { .. } => {}
            ElementaryVerdict::Unknown { .. } => exhaustive = false,
        }
    }
    Ok(ThicknessBound::NotFound { max_k, exhaustive })
}

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::HomologyError;
use crate::perm::FiniteGroup;
use crate::surface::words::{commutator, concat, evaluate, inverse, reduce, Word};
use crate::surface::SurfaceMonodromy;

/// `G = F/R` with `F` free on `generators.len()` letters; `generators[k]` is
/// the image of letter `k+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<usize>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Presentation read off the Cayley graph: a breadth-first spanning tree
    /// gives a normal word for each element, and every non-tree edge
    /// `(x, s)` contributes the relator `w_x s w_{xs}⁻¹`.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let gens = g.generating_set();
        let mut word: Vec<Option<Word>> = vec![None; g.order()];
        word[g.identity()] = Some(Vec::new());
        let mut tree: HashSet<(usize, usize)> = HashSet::new();
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if word[y].is_none() {
                    let mut w = word[x].clone().expect("visited");
                    w.push(k as i32 + 1);
                    word[y] = Some(w);
                    tree.insert((x, k));
                    queue.push_back(y);
                }
            }
        }
        let mut relators = Vec::new();
        for x in g.elements() {
            for (k, &s) in gens.iter().enumerate() {
                if tree.contains(&(x, k)) {
                    continue;
                }
                let y = g.mul(x, s);
                let wx = word[x].as_ref().expect("connected");
                let wy = word[y].as_ref().expect("connected");
                let r = cyclic_reduce(&concat(&[wx, &[k as i32 + 1], &inverse(wy)]));
                if !r.is_empty() && !relators.contains(&r) {
                    relators.push(r);
                }
            }
        }
        relators.sort_by(|a: &Word, b: &Word| a.len().cmp(&b.len()).then(a.cmp(b)));
        Presentation {
            generators: gens,
            relators,
        }
    }

    /// Generators must generate `G` and every relator must evaluate to 1.
    /// (Whether the relators define `G` is not checked.)
    pub fn validate(&self, g: &FiniteGroup) -> Result<(), HomologyError> {
        if self.generators.iter().any(|&x| x >= g.order()) || !g.generates(&self.generators) {
            return Err(HomologyError::Malformed("presentation generators do not generate G".into()));
        }
        let n = self.generators.len() as i32;
        for r in &self.relators {
            if r.iter().any(|&l| l == 0 || l.abs() > n) {
                return Err(HomologyError::Malformed(format!("relator {r:?} uses unknown letters")));
            }
            if evaluate(r, &self.generators, g) != g.identity() {
                return Err(HomologyError::Malformed(format!("relator {r:?} is not trivial in G")));
            }
        }
        Ok(())
    }

    pub fn evaluate(&self, w: &[i32], g: &FiniteGroup) -> usize {
        evaluate(w, &self.generators, g)
    }
}

fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.remove(0);
        w.pop();
    }
    w
}

/// All reduced words of length `≤ len` on `rank` letters, shortest first, then
/// in lexicographic order of letters.
fn words_up_to(rank: usize, len: usize) -> Vec<Word> {
    let letters: Vec<i32> = (1..=rank as i32).flat_map(|l| [l, -l]).collect();
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v: Word = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Longest product of commutators searched; three or more would need a
/// quadratic table of pair products.
pub const MAX_COMMUTATORS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OclBounds {
    /// Largest number of commutators tried.
    pub n_max: usize,
    /// Length cap for conjugators of relators and for the `f_j`.
    pub len_max: usize,
    /// Length cap for lifts of the tuple entries.
    pub lift_len: usize,
    /// Number of lifts kept per element.
    pub lifts_per_element: usize,
}

impl Default for OclBounds {
    fn default() -> Self {
        OclBounds {
            n_max: MAX_COMMUTATORS,
            len_max: 2,
            lift_len: 3,
            lifts_per_element: 6,
        }
    }
}

/// An expression `∏[ã_i, b̃_i] = ∏_{j=1}^{n} [r_j, f_j]` (trailing trivial
/// commutators omitted from `pairs`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OclWitness {
    pub n: usize,
    pub lifts: Vec<Word>,
    pub pairs: Vec<(Word, Word)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result")]
pub enum OclResult {
    Found(OclWitness),
    NotFound { bounds: OclBounds },
}

/// Bounded search for `ocl(f)`: the least `n` with
/// `∏[ã_i, b̃_i] = ∏_{j ≤ n} [r_j, f_j]`, `r_j ∈ R`, over lifts of the tuple.
///
/// Relator elements are conjugates `u ρ^{±1} u⁻¹` and `f_j` range over words,
/// both of length `≤ len_max`. Since `[1, 1]` pads any shorter expression,
/// the reported value is at least `g`.
pub fn ocl_bounded(t: &SurfaceMonodromy, pres: &Presentation, bounds: &OclBounds) -> Result<OclResult, HomologyError> {
    if t.punctures() != 0 {
        return Err(HomologyError::Malformed("ocl needs a closed surface".into()));
    }
    let g = t.group();
    pres.validate(g)?;
    let genus = t.genus();
    let rank = pres.generators.len();

    // candidate lifts per element
    let mut lifts: HashMap<usize, Vec<Word>> = HashMap::new();
    for w in words_up_to(rank, bounds.lift_len) {
        let x = pres.evaluate(&w, g);
        let e = lifts.entry(x).or_default();
        if e.len() < bounds.lifts_per_element {
            e.push(w);
        }
    }
    let per_entry: Vec<&Vec<Word>> = t
        .entries()
        .iter()
        .map(|x| lifts.get(x).ok_or_else(|| HomologyError::Malformed("lift length too small".into())))
        .collect::<Result<_, _>>()?;

    // the commutators [r, f]
    let conj = words_up_to(rank, bounds.len_max);
    let mut rel_elems: Vec<Word> = Vec::new();
    for r in &pres.relators {
        for rr in [r.clone(), inverse(r)] {
            for u in &conj {
                let e = concat(&[u, &rr, &inverse(u)]);
                if !rel_elems.contains(&e) {
                    rel_elems.push(e);
                }
            }
        }
    }
    let mut comm: HashMap<Word, (Word, Word)> = HashMap::new();
    for r in &rel_elems {
        for f in &conj {
            let c = commutator(r, f);
            comm.entry(c).or_insert_with(|| (r.clone(), f.clone()));
        }
    }
    let mut comm_list: Vec<(&Word, &(Word, Word))> = comm.iter().collect();
    comm_list.sort();

    // iterate lift tuples in mixed-radix order, shortest lifts first
    let total: usize = per_entry.iter().map(|v| v.len()).product();
    let decode = |mut idx: usize| -> Vec<Word> {
        let mut out = Vec::with_capacity(per_entry.len());
        for v in &per_entry {
            out.push(v[idx % v.len()].clone());
            idx /= v.len();
        }
        out
    };
    let target_of = |ls: &[Word]| -> Word {
        let mut w = Vec::new();
        for i in 0..genus {
            w.extend(commutator(&ls[2 * i], &ls[2 * i + 1]));
        }
        reduce(&w)
    };
    let search = |w: &Word, n: usize| -> Option<Vec<(Word, Word)>> {
        match n {
            0 => w.is_empty().then(Vec::new),
            1 => comm.get(w).map(|p| vec![p.clone()]),
            _ => comm_list.iter().find_map(|(c, p)| {
                let rest = concat(&[&inverse(c), w]);
                comm.get(&rest).map(|q| vec![(*p).clone(), q.clone()])
            }),
        }
    };
    let cap = bounds.n_max.min(MAX_COMMUTATORS);
    // every n ≤ g reports g, so those are tried together in one pass
    let mut levels: Vec<Vec<usize>> = vec![(0..=genus.min(cap)).collect()];
    levels.extend((genus + 1..=cap).map(|n| vec![n]));
    let mut best: Option<OclWitness> = None;
    for ns in levels {
        if ns.is_empty() {
            continue;
        }
        let attempt = |idx: usize| -> Option<(Vec<Word>, Vec<(Word, Word)>)> {
            let ls = decode(idx);
            let w = target_of(&ls);
            ns.iter().find_map(|&n| search(&w, n)).map(|pairs| (ls, pairs))
        };
        if let Some(idx) = (0..total).into_par_iter().find_first(|&idx| attempt(idx).is_some()) {
            let (ls, pairs) = attempt(idx).expect("found above");
            best = Some(OclWitness {
                n: pairs.len().max(genus),
                lifts: ls,
                pairs,
            });
            break;
        }
    }
    Ok(match best {
        Some(w) if w.n <= bounds.n_max => OclResult::Found(w),
        _ => OclResult::NotFound { bounds: *bounds },
    })
}

/// Checks a witness in the free group and against the tuple.
pub fn verify_ocl_witness(t: &SurfaceMonodromy, pres: &Presentation, w: &OclWitness) -> bool {
    let g = t.group();
    if w.lifts.len() != t.entries().len()
        || w.lifts.iter().zip(t.entries()).any(|(l, &x)| pres.evaluate(l, g) != x)
        || w.pairs.len() > w.n
        || w.n < t.genus()
    {
        return false;
    }
    let mut lhs = Vec::new();
    for i in 0..t.genus() {
        lhs.extend(commutator(&w.lifts[2 * i], &w.lifts[2 * i + 1]));
    }
    let mut rhs = Vec::new();
    for (r, f) in &w.pairs {
        if pres.evaluate(r, g) != g.identity() {
            return false;
        }
        rhs.extend(commutator(r, f));
    }
    reduce(&lhs) == reduce(&rhs)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::perm::builtin;

    #[test]
    fn presentation_of_v4() {
        let v4 = builtin("V4").unwrap();
        let p = Presentation::from_group(&v4);
        assert_eq!(p.generators.len(), 2);
        p.validate(&v4).unwrap();
        assert!(!p.relators.is_empty());
    }

    #[test]
    fn trivial_map_returns_genus() {
        let v4 = Arc::new(builtin("V4").unwrap());
        let p = Presentation::from_group(&v4);
        let t = SurfaceMonodromy::new(v4.clone(), &[0, 0], &[0, 0], &[]).unwrap();
        match ocl_bounded(&t, &p, &OclBounds::default()).unwrap() {
            OclResult::Found(w) => {
                assert_eq!(w.n, 2);
                assert!(verify_ocl_witness(&t, &p, &w));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn elementary_tuple() {
        let v4 = Arc::new(builtin("V4").unwrap());
        let p = Presentation::from_group(&v4);
        let t = SurfaceMonodromy::new(v4.clone(), &[1, 2], &[0, 0], &[]).unwrap();
        match ocl_bounded(&t, &p, &OclBounds::default()).unwrap() {
            OclResult::Found(w) => assert_eq!(w.n, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nonzero_invariant_has_no_expression() {
        let v4 = Arc::new(builtin("V4").unwrap());
        let p = Presentation::from_group(&v4);
        let t = SurfaceMonodromy::new(v4.clone(), &[1], &[2], &[]).unwrap();
        let small = OclBounds {
            n_max: 2,
            len_max: 1,
            lift_len: 2,
            lifts_per_element: 3,
        };
        assert!(matches!(ocl_bounded(&t, &p, &small).unwrap(), OclResult::NotFound { .. }));
    }
}

use std::collections::{BTreeMap, VecDeque};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use super::{PermError, Permutation};

/// A finite group given by its multiplication table.
///
/// Elements are dense indices `0..order`. `mul(x, y)` is the product `x·y`
/// (apply `x` first when the group is realized by permutations). Conjugacy
/// classes are computed once at construction.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    id: usize,
    labels: Vec<String>,
    perms: Option<Vec<Permutation>>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl FiniteGroup {
    /// Validated construction from a full multiplication table.
    pub fn from_table(
        name: impl Into<String>,
        mul: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, PermError> {
        let order = mul.len();
        if order == 0 {
            return Err(PermError::InvalidTable("empty table".into()));
        }
        let mut flat = Vec::with_capacity(order * order);
        for (i, row) in mul.iter().enumerate() {
            if row.len() != order {
                return Err(PermError::InvalidTable(format!("row {i} has wrong length")));
            }
            let mut seen = vec![false; order];
            for &v in row {
                if v >= order || seen[v] {
                    return Err(PermError::InvalidTable(format!("row {i} is not a permutation")));
                }
                seen[v] = true;
                flat.push(v as u32);
            }
        }
        let id = (0..order)
            .find(|&e| (0..order).all(|x| flat[e * order + x] as usize == x && flat[x * order + e] as usize == x))
            .ok_or_else(|| PermError::InvalidTable("no identity element".into()))?;
        for x in 0..order {
            for y in 0..order {
                let xy = flat[x * order + y] as usize;
                for z in 0..order {
                    let lhs = flat[xy * order + z];
                    let rhs = flat[x * order + flat[y * order + z] as usize];
                    if lhs != rhs {
                        return Err(PermError::NonAssociative { x, y, z });
                    }
                }
            }
        }
        let mut inv = vec![0u32; order];
        for x in 0..order {
            let y = (0..order)
                .find(|&y| flat[x * order + y] as usize == id)
                .ok_or_else(|| PermError::InvalidTable(format!("element {x} has no inverse")))?;
            inv[x] = y as u32;
        }
        let labels = match labels {
            Some(l) if l.len() == order => l,
            Some(_) => return Err(PermError::InvalidTable("label count differs from order".into())),
            None => (0..order).map(|i| format!("g{i}")).collect(),
        };
        Ok(Self::assemble(name.into(), order, flat, inv, id, labels, None))
    }

    /// Checks an explicit inverse table against the multiplication table.
    pub fn check_inverse_table(&self, inv: &[usize]) -> Result<(), PermError> {
        if inv.len() != self.order {
            return Err(PermError::InconsistentInverse(0));
        }
        for (x, &y) in inv.iter().enumerate() {
            if y >= self.order || self.mul(x, y) != self.id {
                return Err(PermError::InconsistentInverse(x));
            }
        }
        Ok(())
    }

    /// Closure of `gens` under a multiplication that is already known to be
    /// associative; elements are sorted by `Ord` so the indexing is canonical.
    pub(crate) fn from_closure<T, F, L>(
        name: impl Into<String>,
        identity: T,
        gens: &[T],
        mul: F,
        label: L,
        cap: usize,
    ) -> Result<(Self, Vec<T>), PermError>
    where
        T: Ord + Clone,
        F: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        let mut found: BTreeMap<T, ()> = BTreeMap::new();
        found.insert(identity.clone(), ());
        let mut queue = VecDeque::from([identity.clone()]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = mul(&x, g);
                if !found.contains_key(&y) {
                    if found.len() >= cap {
                        return Err(PermError::TooLarge(cap));
                    }
                    found.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let elems: Vec<T> = found.into_keys().collect();
        let index: BTreeMap<&T, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let order = elems.len();
        let mut flat = vec![0u32; order * order];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                flat[i * order + j] = index[&mul(x, y)] as u32;
            }
        }
        let id = index[&identity];
        let mut inv = vec![0u32; order];
        for x in 0..order {
            for y in 0..order {
                if flat[x * order + y] as usize == id {
                    inv[x] = y as u32;
                    break;
                }
            }
        }
        let labels = elems.iter().map(label).collect();
        Ok((
            Self::assemble(name.into(), order, flat, inv, id, labels, None),
            elems,
        ))
    }

    /// Subgroup of `S_n` generated by `gens`, elements in lexicographic order.
    pub fn from_permutations(
        name: impl Into<String>,
        n: usize,
        gens: &[Permutation],
    ) -> Result<Self, PermError> {
        for g in gens {
            if g.degree() != n {
                return Err(PermError::DegreeMismatch {
                    expected: n,
                    found: g.degree(),
                });
            }
        }
        let (mut group, elems) = Self::from_closure(
            name,
            Permutation::identity(n),
            gens,
            |a, b| a.then(b),
            |p| p.to_string(),
            1 << 20,
        )?;
        group.perms = Some(elems);
        Ok(group)
    }

    fn assemble(
        name: String,
        order: usize,
        mul: Vec<u32>,
        inv: Vec<u32>,
        id: usize,
        labels: Vec<String>,
        perms: Option<Vec<Permutation>>,
    ) -> Self {
        let mut class_of = vec![usize::MAX; order];
        let mut classes = Vec::new();
        for x in 0..order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let k = classes.len();
            let mut class = Vec::new();
            for g in 0..order {
                let gi = inv[g] as usize;
                let c = mul[mul[gi * order + x] as usize * order + g] as usize;
                if class_of[c] == usize::MAX {
                    class_of[c] = k;
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        FiniteGroup {
            name,
            order,
            mul,
            inv,
            id,
            labels,
            perms,
            classes,
            class_of,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = labels;
        self
    }

    pub(crate) fn with_permutations(mut self, perms: Vec<Permutation>) -> Self {
        self.perms = Some(perms);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.id
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    /// `x y x⁻¹ y⁻¹`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        self.mul(xy, self.inv(yx))
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, elems: I) -> usize {
        elems.into_iter().fold(self.id, |acc, x| self.mul(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn permutations(&self) -> Option<&[Permutation]> {
        self.perms.as_deref()
    }

    pub fn permutation_degree(&self) -> Option<usize> {
        self.perms.as_ref().and_then(|p| p.first()).map(|p| p.degree())
    }

    /// Conjugacy classes; each is sorted and the list is ordered by minimal element.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    /// Minimal element index of the class of `x`.
    pub fn class_representative(&self, x: usize) -> usize {
        self.classes[self.class_of[x]][0]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (0..x).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.id {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Membership mask of the subgroup generated by `gens`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[self.id] = true;
        let mut stack = vec![self.id];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    stack.push(y);
                }
            }
        }
        mask
    }

    pub fn generates(&self, gens: &[usize]) -> bool {
        self.generated_subgroup(gens).into_iter().all(|b| b)
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect()
    }

    /// Membership mask of `[G, G]`.
    pub fn derived_subgroup(&self) -> Vec<bool> {
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.order];
        for x in 0..self.order {
            for y in 0..self.order {
                let c = self.commutator(x, y);
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.generated_subgroup(&comms)
    }

    /// A small generating set chosen greedily by element index.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut mask = self.generated_subgroup(&gens);
        // prefer elements of large order, ties broken by index
        let mut cands: Vec<usize> = (0..self.order).collect();
        cands.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        for x in cands {
            if !mask[x] {
                gens.push(x);
                mask = self.generated_subgroup(&gens);
                if mask.iter().all(|&b| b) {
                    break;
                }
            }
        }
        gens
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let (na, nb) = (a.order, b.order);
        let order = na * nb;
        let mut mul = vec![0u32; order * order];
        for x in 0..order {
            let (xa, xb) = (x / nb, x % nb);
            for y in 0..order {
                let (ya, yb) = (y / nb, y % nb);
                mul[x * order + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u32;
            }
        }
        let inv = (0..order)
            .map(|x| (a.inv(x / nb) * nb + b.inv(x % nb)) as u32)
            .collect();
        let labels = (0..order)
            .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
            .collect();
        let perms = match (&a.perms, &b.perms) {
            (Some(pa), Some(pb)) => {
                let (da, db) = (pa[0].degree(), pb[0].degree());
                Some(
                    (0..order)
                        .map(|x| {
                            let p = &pa[x / nb];
                            let q = &pb[x % nb];
                            let mut img: Vec<u8> = p.raw().to_vec();
                            img.extend(q.raw().iter().map(|&v| v + da as u8));
                            debug_assert_eq!(img.len(), da + db);
                            Permutation::from_zero_based(img)
                        })
                        .collect(),
                )
            }
            _ => None,
        };
        Self::assemble(
            format!("{}x{}", a.name, b.name),
            order,
            mul,
            inv,
            a.id * nb + b.id,
            labels,
            perms,
        )
    }

    /// Stable fingerprint of the multiplication table (hex, 16 chars).
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order as u64).to_le_bytes());
        for &v in &self.mul {
            h.update(v.to_le_bytes());
        }
        let d = h.finalize();
        d.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    /// Multiplication table as nested rows (for serialization).
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|x| (0..self.order).map(|y| self.mul(x, y)).collect())
            .collect()
    }

    /// Checks that the stored permutation realization is a faithful homomorphism.
    pub fn check_permutation_realization(&self) -> Result<(), PermError> {
        let Some(perms) = &self.perms else {
            return Ok(());
        };
        let mut distinct = perms.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != self.order {
            return Err(PermError::InvalidTable("permutation realization not faithful".into()));
        }
        for x in 0..self.order {
            for y in 0..self.order {
                if perms[x].then(&perms[y]) != perms[self.mul(x, y)] {
                    return Err(PermError::InvalidTable(
                        "permutation realization is not a homomorphism".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// A homomorphism between two finite groups, validated on construction.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<usize>,
    ) -> Result<Self, PermError> {
        if map.len() != source.order() || map.iter().any(|&v| v >= target.order()) {
            return Err(PermError::NotAHomomorphism("map has wrong shape".into()));
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(PermError::NotAHomomorphism(format!(
                        "fails on ({}, {})",
                        source.label(x),
                        source.label(y)
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            map,
        })
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source
            .elements()
            .filter(|&x| self.map[x] == self.target.identity())
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_surjective()
    }
}

/// Extends generator images to a map on the whole group, if they define a homomorphism.
pub fn extend_homomorphism(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[source.identity()] = target.identity();
    let mut queue = VecDeque::from([source.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = source.mul(x, g);
            let img = target.mul(map[x], h);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    // every (x, g) edge was checked once, so map(xy) = map(x)map(y) by induction on y
    Some(map)
}

/// All homomorphisms `source → target`, enumerated by images of a fixed generating set.
pub fn homomorphisms(source: &FiniteGroup, target: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = source.generating_set();
    let mut out = Vec::new();
    let r = gens.len();
    let mut images = vec![0usize; r];
    loop {
        if let Some(map) = extend_homomorphism(source, target, &gens, &images) {
            out.push(map);
        }
        let mut k = 0;
        loop {
            if k == r {
                return out;
            }
            images[k] += 1;
            if images[k] < target.order() {
                break;
            }
            images[k] = 0;
            k += 1;
        }
    }
}

/// All automorphisms of `g`, the identity first.
pub fn automorphisms(g: &Arc<FiniteGroup>) -> Vec<GroupHom> {
    let mut maps: Vec<Vec<usize>> = homomorphisms(g, g)
        .into_iter()
        .filter(|m| {
            let mut hit = vec![false; g.order()];
            m.iter().for_each(|&v| hit[v] = true);
            hit.into_iter().all(|b| b)
        })
        .collect();
    maps.sort();
    maps.into_iter()
        .map(|m| GroupHom::new(g.clone(), g.clone(), m).expect("validated automorphism"))
        .collect()
}

/// Some isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    homomorphisms(a, b).into_iter().find(|m| {
        let mut hit = vec![false; b.order()];
        m.iter().for_each(|&v| hit[v] = true);
        hit.into_iter().all(|x| x)
    })
}

/// Some epimorphism `a → b` whose kernel is exactly `kernel`.
pub fn find_epimorphism_with_kernel(
    a: &FiniteGroup,
    b: &FiniteGroup,
    kernel: &[usize],
) -> Option<Vec<usize>> {
    let mut want = kernel.to_vec();
    want.sort_unstable();
    homomorphisms(a, b).into_iter().find(|m| {
        let mut hit = vec![false; b.order()];
        m.iter().for_each(|&v| hit[v] = true);
        let ker: Vec<usize> = (0..a.order()).filter(|&x| m[x] == b.identity()).collect();
        hit.into_iter().all(|x| x) && ker == want
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::builtin;

    #[test]
    fn rejects_non_associative_table() {
        // a Latin square with identity 0 that is not a group table
        let mul = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table("bad", mul, None),
            Err(PermError::NonAssociative { .. })
        ));
    }

    #[test]
    fn inverse_table_is_checked() {
        let g = builtin("S3").unwrap();
        let good: Vec<usize> = g.elements().map(|x| g.inv(x)).collect();
        assert!(g.check_inverse_table(&good).is_ok());
        let mut bad = good.clone();
        bad.swap(1, 2);
        if g.mul(1, bad[1]) != g.identity() {
            assert!(g.check_inverse_table(&bad).is_err());
        }
    }

    #[test]
    fn class_sizes_divide_order() {
        for name in ["S3", "S4", "A4", "D4", "Q8", "Heis3", "SL23"] {
            let g = builtin(name).unwrap();
            let classes = g.conjugacy_classes();
            assert_eq!(classes.iter().map(|c| c.len()).sum::<usize>(), g.order());
            for c in classes {
                assert_eq!(g.order() % c.len(), 0, "{name}");
            }
            assert_eq!(classes[g.class_of(g.identity())], vec![g.identity()]);
        }
    }

    #[test]
    fn automorphism_counts() {
        let v4 = Arc::new(builtin("V4").unwrap());
        assert_eq!(automorphisms(&v4).len(), 6);
        let s3 = Arc::new(builtin("S3").unwrap());
        assert_eq!(automorphisms(&s3).len(), 6);
        let q8 = Arc::new(builtin("Q8").unwrap());
        assert_eq!(automorphisms(&q8).len(), 24);
    }

    #[test]
    fn hom_validation() {
        let s3 = Arc::new(builtin("S3").unwrap());
        let z2 = Arc::new(builtin("Z/2").unwrap());
        let sign: Vec<usize> = s3
            .permutations()
            .unwrap()
            .iter()
            .map(|p| if p.sign() == 1 { 0 } else { 1 })
            .collect();
        let h = GroupHom::new(s3.clone(), z2.clone(), sign).unwrap();
        assert_eq!(h.kernel().len(), 3);
        assert!(h.is_surjective());
        let bogus = (0..6).map(|x| x % 2).collect();
        assert!(GroupHom::new(s3, z2, bogus).is_err());
    }
}

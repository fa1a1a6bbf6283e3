use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FiniteGroup, PermError, Permutation};

/// On-disk form of an explicit group table.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupTableFile {
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inv: Option<Vec<usize>>,
}

impl GroupTableFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupTableFile {
            order: g.order(),
            mul: g.table(),
            labels: Some(g.labels().to_vec()),
            inv: Some(g.elements().map(|x| g.inv(x)).collect()),
        }
    }

    pub fn into_group(self, name: &str) -> Result<FiniteGroup, PermError> {
        if self.mul.len() != self.order {
            return Err(PermError::InvalidTable(format!(
                "order {} but {} rows",
                self.order,
                self.mul.len()
            )));
        }
        let g = FiniteGroup::from_table(name, self.mul, self.labels)?;
        if let Some(inv) = &self.inv {
            g.check_inverse_table(inv)?;
        }
        Ok(g)
    }
}

/// Parses a group descriptor: a built-in name, `"AxB"` products, or `"table:<path>"`.
pub fn group_from_spec(spec: &str) -> Result<FiniteGroup, PermError> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix("table:") {
        return load_table(Path::new(path), spec);
    }
    let parts: Vec<&str> = spec.split('x').map(str::trim).collect();
    if parts.len() > 1 {
        let mut acc = builtin(parts[0])?;
        for p in &parts[1..] {
            acc = FiniteGroup::direct_product(&acc, &builtin(p)?);
        }
        return Ok(acc.with_name(spec));
    }
    builtin(spec)
}

fn load_table(path: &Path, name: &str) -> Result<FiniteGroup, PermError> {
    let text = std::fs::read_to_string(path).map_err(|e| PermError::Io(e.to_string()))?;
    let file: GroupTableFile =
        serde_json::from_str(&text).map_err(|e| PermError::InvalidTable(e.to_string()))?;
    file.into_group(name)
}

/// A single built-in group (no products).
pub fn builtin(name: &str) -> Result<FiniteGroup, PermError> {
    let unknown = || PermError::UnknownGroup(name.to_string());
    let norm = name.replace('_', "");
    match norm.as_str() {
        "V4" => return klein(),
        "D4" => return dihedral4(),
        "Q8" => return quaternion(),
        "Heis3" => return heisenberg3(),
        "SL23" => return sl23(),
        "1" | "Z/1" | "C1" => return cyclic(1),
        _ => {}
    }
    if let Some(k) = norm.strip_prefix("Z/") {
        let k: usize = k.parse().map_err(|_| unknown())?;
        if k == 0 || k > 255 {
            return Err(unknown());
        }
        return cyclic(k);
    }
    if let Some(n) = norm.strip_prefix('S') {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if !(1..=6).contains(&n) {
            return Err(unknown());
        }
        return symmetric(n);
    }
    if let Some(n) = norm.strip_prefix('A') {
        let n: usize = n.parse().map_err(|_| unknown())?;
        if !(1..=6).contains(&n) {
            return Err(unknown());
        }
        return alternating(n);
    }
    Err(unknown())
}

fn cycle(n: usize, pts: &[usize]) -> Permutation {
    Permutation::from_cycles(n, &[pts]).expect("valid cycle")
}

fn symmetric(n: usize) -> Result<FiniteGroup, PermError> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, &[1, 2]));
        gens.push(cycle(n, &(1..=n).collect::<Vec<_>>()));
    }
    FiniteGroup::from_permutations(format!("S{n}"), n, &gens)
}

fn alternating(n: usize) -> Result<FiniteGroup, PermError> {
    let gens: Vec<Permutation> = (3..=n).map(|k| cycle(n, &[1, 2, k])).collect();
    FiniteGroup::from_permutations(format!("A{n}"), n, &gens)
}

/// Right-regular realization: element `x` sends point `h` to `h·x`.
fn regular_realization(g: &FiniteGroup) -> Vec<Permutation> {
    g.elements()
        .map(|x| Permutation::from_zero_based(g.elements().map(|h| g.mul(h, x) as u8).collect()))
        .collect()
}

fn cyclic(k: usize) -> Result<FiniteGroup, PermError> {
    let mul = (0..k)
        .map(|a| (0..k).map(|b| (a + b) % k).collect())
        .collect();
    let labels = (0..k).map(|a| a.to_string()).collect();
    let g = FiniteGroup::from_table(format!("Z/{k}"), mul, Some(labels))?;
    let perms = regular_realization(&g);
    Ok(g.with_permutations(perms))
}

fn klein() -> Result<FiniteGroup, PermError> {
    let g = FiniteGroup::from_permutations(
        "V4",
        4,
        &[
            Permutation::parse_cycles(4, "(1 2)(3 4)")?,
            Permutation::parse_cycles(4, "(1 3)(2 4)")?,
        ],
    )?;
    Ok(g.with_labels(["1", "a", "b", "c"].map(String::from).to_vec()))
}

fn dihedral4() -> Result<FiniteGroup, PermError> {
    FiniteGroup::from_permutations("D4", 4, &[cycle(4, &[1, 2, 3, 4]), cycle(4, &[2, 4])])
}

fn quaternion() -> Result<FiniteGroup, PermError> {
    // index 2u + s: unit u in {1, i, j, k}, sign bit s
    const UNIT: [[(u8, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mul = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (s, w) = UNIT[x / 2][y / 2];
                    2 * w + ((x % 2) ^ (y % 2) ^ s as usize)
                })
                .collect()
        })
        .collect();
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .map(String::from)
        .to_vec();
    let g = FiniteGroup::from_table("Q8", mul, Some(labels))?;
    let perms = regular_realization(&g);
    Ok(g.with_permutations(perms))
}

fn heisenberg3() -> Result<FiniteGroup, PermError> {
    let dec = |x: usize| (x / 9, (x / 3) % 3, x % 3);
    let mul = (0..27)
        .map(|x| {
            (0..27)
                .map(|y| {
                    let (a, b, c) = dec(x);
                    let (a2, b2, c2) = dec(y);
                    ((a + a2) % 3) * 9 + ((b + b2) % 3) * 3 + (c + c2 + a * b2) % 3
                })
                .collect()
        })
        .collect();
    let labels = (0..27)
        .map(|x| {
            let (a, b, c) = dec(x);
            format!("({a},{b},{c})")
        })
        .collect();
    FiniteGroup::from_table("Heis3", mul, Some(labels))
}

fn sl23() -> Result<FiniteGroup, PermError> {
    type M = [u8; 4];
    let mul = |x: &M, y: &M| -> M {
        [
            (x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3,
        ]
    };
    let (g, _) = FiniteGroup::from_closure(
        "SL23",
        [1, 0, 0, 1],
        &[[1, 1, 0, 1], [1, 0, 1, 1]],
        mul,
        |m| format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3]),
        64,
    )?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (name, order) in [
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("A5", 60),
            ("Z/4", 4),
            ("V4", 4),
            ("D4", 8),
            ("Q8", 8),
            ("Heis3", 27),
            ("SL23", 24),
            ("Z/2xZ/2", 4),
            ("S3xZ/2", 12),
        ] {
            let g = group_from_spec(name).unwrap();
            assert_eq!(g.order(), order, "{name}");
            assert!(g.check_permutation_realization().is_ok());
        }
    }

    #[test]
    fn klein_every_element_involution() {
        for name in ["V4", "Z/2xZ/2"] {
            let g = group_from_spec(name).unwrap();
            for x in g.elements() {
                assert_eq!(g.mul(x, x), g.identity());
            }
        }
    }

    #[test]
    fn quaternion_facts() {
        let q = builtin("Q8").unwrap();
        let inv: Vec<usize> = q
            .elements()
            .filter(|&x| x != q.identity() && q.mul(x, x) == q.identity())
            .collect();
        assert_eq!(inv, vec![q.element_by_label("-1").unwrap()]);
        let i = q.element_by_label("i").unwrap();
        let j = q.element_by_label("j").unwrap();
        assert_eq!(q.label(q.mul(i, j)), "k");
        assert_eq!(q.label(q.commutator(i, j)), "-1");
        let sizes: Vec<usize> = q.conjugacy_classes().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn s3_class_sizes() {
        let g = builtin("S3").unwrap();
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 3]);
        let z5 = builtin("Z/5").unwrap();
        assert_eq!(z5.conjugacy_classes().len(), 5);
    }

    #[test]
    fn heisenberg_commutator_is_central() {
        let h = builtin("Heis3").unwrap();
        let e1 = h.element_by_label("(1,0,0)").unwrap();
        let e2 = h.element_by_label("(0,1,0)").unwrap();
        assert_eq!(h.label(h.commutator(e1, e2)), "(0,0,1)");
        assert_eq!(h.center().len(), 3);
    }

    #[test]
    fn deterministic_builtins() {
        let a = group_from_spec("D4").unwrap();
        let b = group_from_spec("D4").unwrap();
        assert_eq!(a.table(), b.table());
        assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn unknown_names_rejected() {
        for bad in ["S9", "Z/0", "Foo", "Q8xBar"] {
            assert!(group_from_spec(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn table_roundtrip_through_json() {
        let g = builtin("Q8").unwrap();
        let file = GroupTableFile::from_group(&g);
        let text = serde_json::to_string(&file).unwrap();
        let back: GroupTableFile = serde_json::from_str(&text).unwrap();
        let h = back.into_group("Q8").unwrap();
        assert_eq!(h.table(), g.table());
    }
}

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::PermError;

/// A permutation of `{1, …, n}`.
///
/// Points are stored 0-based; the public constructors and the serialized form
/// use 1-based images. Products compose left to right: `p.then(&q)` first
/// applies `p`, then `q`, matching the way braid words are read.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= u8::MAX as usize, "degree {n} too large");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n > u8::MAX as usize {
            return Err(PermError::NotABijection(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &i in images {
            if i == 0 || i > n || seen[i - 1] {
                return Err(PermError::NotABijection(format!("{images:?}")));
            }
            seen[i - 1] = true;
            out.push((i - 1) as u8);
        }
        Ok(Permutation { images: out })
    }

    /// Builds a permutation from 0-based images without validation beyond a debug check.
    pub(crate) fn from_zero_based(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v as usize)
        });
        Permutation { images }
    }

    /// Builds a permutation of degree `n` from 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n + 1];
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                if p == 0 || p > n || touched[p] {
                    return Err(PermError::NotABijection(format!("{cycles:?}")));
                }
                touched[p] = true;
                images[p - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Permutation::from_images(&images)
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"`; `"()"` is the identity.
    pub fn parse_cycles(n: usize, s: &str) -> Result<Self, PermError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(PermError::Parse(s.to_string()));
            };
            let Some(end) = stripped.find(')') else {
                return Err(PermError::Parse(s.to_string()));
            };
            let body = &stripped[..end];
            let pts: Result<Vec<usize>, _> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>())
                .collect();
            let pts = pts.map_err(|_| PermError::Parse(s.to_string()))?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
            rest = stripped[end + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    /// Left-to-right product: apply `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Disjoint cycles (0-based), fixed points included, each starting at its minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.apply(start);
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.apply(j);
            }
            out.push(cyc);
        }
        out
    }

    pub fn sign(&self) -> i32 {
        let even = self
            .cycles()
            .iter()
            .map(|c| c.len() - 1)
            .sum::<usize>()
            % 2
            == 0;
        if even {
            1
        } else {
            -1
        }
    }

    pub fn inversions(&self) -> usize {
        let n = self.degree();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Rank of this permutation in the lexicographic order of `S_n` (Lehmer code).
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0usize;
        let mut fact = vec![1usize; n + 1];
        for i in 1..=n {
            fact[i] = fact[i - 1] * i;
        }
        for i in 0..n {
            let smaller = self.images[i + 1..]
                .iter()
                .filter(|&&v| v < self.images[i])
                .count();
            rank += smaller * fact[n - 1 - i];
        }
        rank
    }

    /// Inverse of [`Permutation::lex_rank`].
    pub fn from_lex_rank(n: usize, mut rank: usize) -> Permutation {
        let mut fact = vec![1usize; n + 1];
        for i in 1..=n {
            fact[i] = fact[i - 1] * i;
        }
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let f = fact[n - 1 - i];
            let k = rank / f;
            rank %= f;
            images.push(pool.remove(k));
        }
        Permutation { images }
    }

    /// All permutations of degree `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let total: usize = (1..=n).product();
        (0..total).map(|r| Permutation::from_lex_rank(n, r)).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let body: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{}", self)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// True iff the subgroup generated by `perms` acts transitively on `{1, …, n}`.
pub fn is_transitive(perms: &[Permutation], n: usize) -> Result<bool, PermError> {
    for p in perms {
        if p.degree() != n {
            return Err(PermError::DegreeMismatch {
                expected: n,
                found: p.degree(),
            });
        }
    }
    if n == 0 {
        return Ok(true);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for p in perms {
            let j = p.apply(i);
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    Ok(seen.into_iter().all(|s| s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_with_inverse_is_identity() {
        for p in Permutation::all(4) {
            assert!(p.then(&p.inverse()).is_identity());
            assert!(p.inverse().then(&p).is_identity());
        }
    }

    #[test]
    fn left_to_right_product() {
        let a = Permutation::parse_cycles(3, "(1 2)").unwrap();
        let b = Permutation::parse_cycles(3, "(2 3)").unwrap();
        // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
        assert_eq!(a.then(&b).to_string(), "(1 3 2)");
    }

    #[test]
    fn lex_rank_roundtrip() {
        for (r, p) in Permutation::all(5).into_iter().enumerate() {
            assert_eq!(p.lex_rank(), r);
        }
        assert!(Permutation::from_lex_rank(4, 0).is_identity());
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(&[1, 1, 2]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::parse_cycles(3, "(1 4)").is_err());
        assert!(Permutation::parse_cycles(3, "1 2").is_err());
    }

    #[test]
    fn transitivity_examples() {
        let t12 = Permutation::parse_cycles(3, "(1 2)").unwrap();
        let t23 = Permutation::parse_cycles(3, "(2 3)").unwrap();
        assert!(!is_transitive(std::slice::from_ref(&t12), 3).unwrap());
        assert!(is_transitive(&[t12.clone(), t23], 3).unwrap());
        let x = Permutation::parse_cycles(4, "(1 2)(3 4)").unwrap();
        let y = Permutation::parse_cycles(4, "(1 3)(2 4)").unwrap();
        assert!(is_transitive(&[x, y], 4).unwrap());
        assert!(matches!(
            is_transitive(&[t12], 4),
            Err(PermError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn serde_uses_one_based_images() {
        let p = Permutation::parse_cycles(3, "(1 2 3)").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[2,3,1]");
        let q: Permutation = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }
}

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::abelian::{ab_product, AbelianizedBraidElement};
use super::burau::{mat_mul, reduced_burau, Mat};
use super::ring::FiniteField;
use super::{abelianize, BraidError, BraidWord};
use crate::perm::{FiniteGroup, Permutation};

/// Finite quotients of `B_n` that can be probed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientSpec {
    /// Image in `S_n`.
    Symmetric,
    /// Reduced Burau over `F_{p^r}` with `t` a primitive `k`-th root of unity.
    BurauMod { p: u32, k: u32 },
    /// `B_n^{(1)}` with the linking vector reduced mod `N`.
    AbelianizedMod { modulus: u32 },
}

impl FromStr for QuotientSpec {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, BraidError> {
        let bad = || BraidError::InvalidQuotient(s.to_string());
        let s = s.trim();
        if s == "sym" {
            return Ok(QuotientSpec::Symmetric);
        }
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let mut p = None;
        let mut k = None;
        let mut n = None;
        for kv in args.split(',') {
            let (key, val) = kv.split_once('=').ok_or_else(bad)?;
            let val: u32 = val.trim().parse().map_err(|_| bad())?;
            match key.trim() {
                "p" => p = Some(val),
                "k" => k = Some(val),
                "N" => n = Some(val),
                _ => return Err(bad()),
            }
        }
        match kind {
            "burau" if n.is_none() => Ok(QuotientSpec::BurauMod {
                p: p.ok_or_else(bad)?,
                k: k.ok_or_else(bad)?,
            }),
            "ab" if p.is_none() && k.is_none() => {
                let modulus = n.ok_or_else(bad)?;
                if modulus == 0 {
                    return Err(bad());
                }
                Ok(QuotientSpec::AbelianizedMod { modulus })
            }
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuotientSpec::Symmetric => write!(f, "sym"),
            QuotientSpec::BurauMod { p, k } => write!(f, "burau:p={p},k={k}"),
            QuotientSpec::AbelianizedMod { modulus } => write!(f, "ab:N={modulus}"),
        }
    }
}

/// The finite group generated by the images of `σ_1, …, σ_{n-1}` in a quotient.
///
/// Elements are encoded as integer vectors and kept sorted, so indices are
/// deterministic. The multiplication table is only built on request.
#[derive(Clone, Debug)]
pub struct ProbeQuotient {
    spec: QuotientSpec,
    strands: usize,
    kind: Kind,
    elements: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
enum Kind {
    Sym,
    Burau { field: FiniteField, t: u32 },
    Ab { modulus: u32 },
}

/// Default cap on the size of a probed quotient.
pub const PROBE_CAP: usize = 200_000;

impl ProbeQuotient {
    pub fn new(strands: usize, spec: &QuotientSpec) -> Result<Self, BraidError> {
        Self::with_cap(strands, spec, PROBE_CAP)
    }

    pub fn with_cap(strands: usize, spec: &QuotientSpec, cap: usize) -> Result<Self, BraidError> {
        let kind = match *spec {
            QuotientSpec::Symmetric => Kind::Sym,
            QuotientSpec::BurauMod { p, k } => {
                let (field, t) = FiniteField::with_root_of_unity(p, k)
                    .ok_or_else(|| BraidError::InvalidQuotient(spec.to_string()))?;
                Kind::Burau { field, t }
            }
            QuotientSpec::AbelianizedMod { modulus } => {
                if strands > super::abelian::MAX_AB_STRANDS {
                    return Err(BraidError::BadStrandCount(strands));
                }
                Kind::Ab { modulus }
            }
        };
        if strands == 0 {
            return Err(BraidError::BadStrandCount(0));
        }
        let mut q = ProbeQuotient {
            spec: spec.clone(),
            strands,
            kind,
            elements: Vec::new(),
        };
        let id = q.encode(&BraidWord::identity(strands))?;
        let gens: Vec<Vec<u32>> = (1..strands as i32)
            .map(|i| q.encode(&BraidWord::new(strands, vec![i]).expect("valid")))
            .collect::<Result<_, _>>()?;
        let mut seen: BTreeSet<Vec<u32>> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = q.combine(&x, g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(BraidError::QuotientTooLarge(cap));
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        q.elements = seen.into_iter().collect();
        Ok(q)
    }

    pub fn spec(&self) -> &QuotientSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of the image of `w`.
    pub fn probe(&self, w: &BraidWord) -> Result<usize, BraidError> {
        if w.strands() != self.strands {
            return Err(BraidError::StrandMismatch {
                left: self.strands,
                right: w.strands(),
            });
        }
        let code = self.encode(w)?;
        self.elements
            .binary_search(&code)
            .map_err(|_| BraidError::Internal("image outside generated group".into()))
    }

    fn encode(&self, w: &BraidWord) -> Result<Vec<u32>, BraidError> {
        match &self.kind {
            Kind::Sym => Ok(w.underlying_permutation().raw().iter().map(|&v| v as u32).collect()),
            Kind::Burau { field, t } => {
                if self.strands == 1 {
                    return Ok(Vec::new());
                }
                Ok(reduced_burau(field, w, t)?.data)
            }
            Kind::Ab { modulus } => Ok(self.encode_ab(&abelianize(w), *modulus)),
        }
    }

    fn encode_ab(&self, x: &AbelianizedBraidElement, modulus: u32) -> Vec<u32> {
        let mut v: Vec<u32> = x.perm.raw().iter().map(|&i| i as u32).collect();
        v.extend(x.lk.iter().map(|&l| l.rem_euclid(modulus as i64) as u32));
        v
    }

    fn decode_ab(&self, code: &[u32]) -> AbelianizedBraidElement {
        let n = self.strands;
        AbelianizedBraidElement {
            perm: Permutation::from_zero_based(code[..n].iter().map(|&v| v as u8).collect()),
            lk: code[n..].iter().map(|&v| v as i64).collect(),
        }
    }

    fn combine(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        match &self.kind {
            Kind::Sym => x.iter().map(|&i| y[i as usize]).collect(),
            Kind::Burau { field, .. } => {
                let dim = self.strands - 1;
                if dim == 0 {
                    return Vec::new();
                }
                let a = Mat { dim, data: x.to_vec() };
                let b = Mat { dim, data: y.to_vec() };
                mat_mul(field, &a, &b).data
            }
            Kind::Ab { modulus } => {
                let p = ab_product(&self.decode_ab(x), &self.decode_ab(y)).expect("same strands");
                self.encode_ab(&p, *modulus)
            }
        }
    }

    /// Label of an element index.
    pub fn label(&self, idx: usize) -> String {
        format!("{:?}", self.elements[idx])
    }

    /// The quotient as a [`FiniteGroup`] (table built on demand; order capped).
    pub fn as_group(&self, cap: usize) -> Result<FiniteGroup, BraidError> {
        let order = self.order();
        if order > cap {
            return Err(BraidError::QuotientTooLarge(cap));
        }
        let mul: Vec<Vec<usize>> = self
            .elements
            .iter()
            .map(|x| {
                self.elements
                    .iter()
                    .map(|y| {
                        let z = self.combine(x, y);
                        self.elements.binary_search(&z).expect("closed under products")
                    })
                    .collect()
            })
            .collect();
        let labels = (0..order).map(|i| self.label(i)).collect();
        FiniteGroup::from_table(self.spec.to_string(), mul, Some(labels))
            .map_err(|e| BraidError::Internal(e.to_string()))
    }
}

/// Element index of `w` in the quotient described by `spec`.
pub fn quotient_probe(w: &BraidWord, spec: &QuotientSpec) -> Result<(usize, ProbeQuotient), BraidError> {
    let q = ProbeQuotient::new(w.strands(), spec)?;
    let idx = q.probe(w)?;
    Ok((idx, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn parse_descriptors() {
        assert_eq!("sym".parse::<QuotientSpec>().unwrap(), QuotientSpec::Symmetric);
        assert_eq!(
            "burau:p=5,k=4".parse::<QuotientSpec>().unwrap(),
            QuotientSpec::BurauMod { p: 5, k: 4 }
        );
        assert_eq!(
            "ab:N=2".parse::<QuotientSpec>().unwrap(),
            QuotientSpec::AbelianizedMod { modulus: 2 }
        );
        for bad in ["", "burau:p=5", "ab:N=0", "ab:p=2", "foo:N=1"] {
            assert!(bad.parse::<QuotientSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn symmetric_probe() {
        let (idx, q) = quotient_probe(&w(2, &[1, 1]), &QuotientSpec::Symmetric).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(idx, q.probe(&w(2, &[])).unwrap());
        let q = ProbeQuotient::new(4, &QuotientSpec::Symmetric).unwrap();
        assert_eq!(q.order(), 24);
        let word = w(4, &[1, -2, 3, 3, 2]);
        let p = word.underlying_permutation();
        assert_eq!(q.probe(&word).unwrap(), p.lex_rank());
    }

    #[test]
    fn burau_k1_matches_permutations() {
        let spec = QuotientSpec::BurauMod { p: 5, k: 1 };
        let q = ProbeQuotient::new(3, &spec).unwrap();
        assert_eq!(q.order(), 6);
        let sym = ProbeQuotient::new(3, &QuotientSpec::Symmetric).unwrap();
        for word in [&[1][..], &[1, 2], &[2, 1, 2], &[-1, 2, 2, 1], &[1, 1]] {
            let word = w(3, word);
            let section = BraidWord::section(&word.underlying_permutation());
            assert_eq!(q.probe(&word).unwrap(), q.probe(&section).unwrap());
            assert_eq!(
                sym.probe(&word).unwrap() == sym.probe(&w(3, &[])).unwrap(),
                q.probe(&word).unwrap() == q.probe(&w(3, &[])).unwrap()
            );
        }
    }

    #[test]
    fn burau_mod_is_homomorphic() {
        let spec: QuotientSpec = "burau:p=5,k=4".parse().unwrap();
        let q = ProbeQuotient::new(3, &spec).unwrap();
        let g = q.as_group(1000).unwrap();
        let u = w(3, &[1, -2, 1]);
        let v = w(3, &[2, 2, -1]);
        let uv = u.concat(&v).unwrap();
        assert_eq!(g.mul(q.probe(&u).unwrap(), q.probe(&v).unwrap()), q.probe(&uv).unwrap());
        assert_eq!(q.probe(&w(3, &[1, 2, 1])).unwrap(), q.probe(&w(3, &[2, 1, 2])).unwrap());
    }

    #[test]
    fn abelianized_mod_two_detects_full_twist() {
        let spec: QuotientSpec = "ab:N=2".parse().unwrap();
        let q = ProbeQuotient::new(2, &spec).unwrap();
        assert_eq!(q.order(), 4);
        assert_ne!(q.probe(&w(2, &[1, 1])).unwrap(), q.probe(&w(2, &[])).unwrap());
        let q3 = ProbeQuotient::new(3, &spec).unwrap();
        assert_eq!(q3.order(), 6 * 8);
    }
}

//! Coefficient rings for Burau matrices.

use std::fmt::Debug;

use num_complex::Complex64;

/// A commutative ring with explicit context (needed for finite fields).
pub trait Ring {
    type E: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Multiplicative inverse, if it exists in the ring.
    fn inv(&self, a: &Self::E) -> Option<Self::E>;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexRing {
    /// Magnitudes below this count as zero when inverting.
    pub eps: f64,
}

impl Ring for ComplexRing {
    type E = Complex64;
    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }
    fn neg(&self, a: &Complex64) -> Complex64 {
        -a
    }
    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }
    fn inv(&self, a: &Complex64) -> Option<Complex64> {
        (a.norm() > self.eps).then(|| 1.0 / a)
    }
}

/// The finite field `F_{p^r}`; elements are base-`p` digit strings packed into `u32`
/// (coefficients of a polynomial modulo a fixed monic irreducible of degree `r`).
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    r: u32,
    size: u32,
    /// Low coefficients of the monic modulus `x^r + Σ m_i x^i`.
    modulus: Vec<u32>,
}

impl FiniteField {
    /// Returns `None` unless `p` is prime and `p^r` fits comfortably in memory.
    pub fn new(p: u32, r: u32) -> Option<Self> {
        if p < 2 || r == 0 || !is_prime(p) {
            return None;
        }
        let size = (p as u64).checked_pow(r)?;
        if size > 1 << 20 {
            return None;
        }
        let modulus = find_irreducible(p, r as usize)?;
        Some(FiniteField {
            p,
            r,
            size: size as u32,
            modulus,
        })
    }

    /// Smallest extension of `F_p` containing a primitive `k`-th root of unity.
    pub fn with_root_of_unity(p: u32, k: u32) -> Option<(Self, u32)> {
        if k == 0 || !is_prime(p) || k.is_multiple_of(p) {
            return None;
        }
        let mut r = 1u32;
        let mut q = p as u64;
        while !(q - 1).is_multiple_of(k as u64) {
            r += 1;
            q = q.checked_mul(p as u64)?;
            if q > 1 << 20 {
                return None;
            }
        }
        let f = FiniteField::new(p, r)?;
        let root = (1..f.size).find(|&x| f.multiplicative_order(x) == k as u64)?;
        Some((f, root))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        let mut d = vec![0; self.r as usize];
        for v in d.iter_mut() {
            *v = x % self.p;
            x /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &v| acc * self.p + v)
    }

    pub fn multiplicative_order(&self, x: u32) -> u64 {
        if x == 0 {
            return 0;
        }
        let one = self.one();
        let mut y = x;
        let mut k = 1u64;
        while y != one {
            y = self.mul(&y, &x);
            k += 1;
        }
        k
    }

    pub fn pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Ring for FiniteField {
    type E = u32;
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let (x, y) = (self.digits(*a), self.digits(*b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }
    fn neg(&self, a: &u32) -> u32 {
        let x = self.digits(*a);
        let s: Vec<u32> = x.iter().map(|u| (self.p - u) % self.p).collect();
        self.pack(&s)
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        let r = self.r as usize;
        let p = self.p as u64;
        let (x, y) = (self.digits(*a), self.digits(*b));
        let mut prod = vec![0u64; 2 * r - 1];
        for i in 0..r {
            for j in 0..r {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p;
            }
        }
        for deg in (r..2 * r - 1).rev() {
            let c = prod[deg];
            if c != 0 {
                prod[deg] = 0;
                for (i, &m) in self.modulus.iter().enumerate() {
                    let k = deg - r + i;
                    prod[k] = (prod[k] + (p - c) * m as u64) % p;
                }
            }
        }
        let out: Vec<u32> = prod[..r].iter().map(|&v| v as u32).collect();
        self.pack(&out)
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        (*a != 0).then(|| self.pow(*a, self.size as u64 - 2))
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// First monic irreducible of degree `r` over `F_p` in lexicographic order of
/// its low coefficients.
fn find_irreducible(p: u32, r: usize) -> Option<Vec<u32>> {
    if r == 1 {
        return Some(vec![0]);
    }
    let total = (p as u64).pow(r as u32);
    'cand: for code in 0..total {
        let mut low = vec![0u32; r];
        let mut c = code;
        for v in low.iter_mut() {
            *v = (c % p as u64) as u32;
            c /= p as u64;
        }
        if low[0] == 0 {
            continue;
        }
        let mut f = low.clone();
        f.push(1);
        for d in 1..=r / 2 {
            let count = (p as u64).pow(d as u32);
            for dc in 0..count {
                let mut g = vec![0u32; d + 1];
                let mut c = dc;
                for v in g.iter_mut().take(d) {
                    *v = (c % p as u64) as u32;
                    c /= p as u64;
                }
                g[d] = 1;
                if poly_rem_is_zero(&f, &g, p) {
                    continue 'cand;
                }
            }
        }
        return Some(low);
    }
    None
}

fn poly_rem_is_zero(f: &[u32], g: &[u32], p: u32) -> bool {
    let mut rem: Vec<u64> = f.iter().map(|&v| v as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    while rem.len() > dg {
        let lead = *rem.last().unwrap();
        let shift = rem.len() - 1 - dg;
        if lead != 0 {
            for (i, &gi) in g.iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + (p - lead) * gi as u64) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&v| v == 0)
}

/// Laurent polynomials in `t` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Laurent {
    /// Exponent of `coeffs[0]`.
    pub low: i32,
    pub coeffs: Vec<i128>,
}

impl Laurent {
    pub fn constant(c: i128) -> Self {
        Laurent {
            low: 0,
            coeffs: vec![c],
        }
        .normalized()
    }

    pub fn monomial(c: i128, e: i32) -> Self {
        Laurent {
            low: e,
            coeffs: vec![c],
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.coeffs.len() {
            return Laurent {
                low: 0,
                coeffs: Vec::new(),
            };
        }
        self.coeffs.drain(..lead_zeros);
        self.low += lead_zeros as i32;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn high(&self) -> i32 {
        self.low + self.coeffs.len() as i32 - 1
    }

    /// Representative up to units `±t^k`: lowest exponent 0, lowest coefficient positive.
    pub fn unit_normalized(&self) -> Laurent {
        if self.is_zero() {
            return self.clone();
        }
        let sign = self.coeffs[0].signum();
        Laurent {
            low: 0,
            coeffs: self.coeffs.iter().map(|c| c * sign).collect(),
        }
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Laurent) -> Option<Laurent> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let mut rem = self.coeffs.clone();
        let d = &other.coeffs;
        if rem.len() < d.len() {
            return None;
        }
        let lead = *d.last().unwrap();
        let mut q = vec![0i128; rem.len() - d.len() + 1];
        for k in (0..q.len()).rev() {
            let top = rem[k + d.len() - 1];
            if top % lead != 0 {
                return None;
            }
            let c = top / lead;
            q[k] = c;
            for (i, &di) in d.iter().enumerate() {
                rem[k + i] -= c * di;
            }
        }
        if rem.iter().any(|&v| v != 0) {
            return None;
        }
        Some(
            Laurent {
                low: self.low - other.low,
                coeffs: q,
            }
            .normalized(),
        )
    }

    pub fn eval(&self, t: num_complex::Complex64) -> num_complex::Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| t.powi(self.low + i as i32) * c as f64)
            .sum()
    }
}

impl std::fmt::Display for Laurent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = self.low + i as i32;
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match (e, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "t".to_string(),
                (1, m) => format!("{m}t"),
                (e, 1) => format!("t^{e}"),
                (e, m) => format!("{m}t^{e}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct LaurentRing;

impl Ring for LaurentRing {
    type E = Laurent;
    fn zero(&self) -> Laurent {
        Laurent {
            low: 0,
            coeffs: Vec::new(),
        }
    }
    fn one(&self) -> Laurent {
        Laurent::constant(1)
    }
    fn add(&self, a: &Laurent, b: &Laurent) -> Laurent {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let low = a.low.min(b.low);
        let high = a.high().max(b.high());
        let mut coeffs = vec![0i128; (high - low + 1) as usize];
        for (i, &c) in a.coeffs.iter().enumerate() {
            coeffs[(a.low - low) as usize + i] += c;
        }
        for (i, &c) in b.coeffs.iter().enumerate() {
            coeffs[(b.low - low) as usize + i] += c;
        }
        Laurent { low, coeffs }.normalized()
    }
    fn neg(&self, a: &Laurent) -> Laurent {
        Laurent {
            low: a.low,
            coeffs: a.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn mul(&self, a: &Laurent, b: &Laurent) -> Laurent {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut coeffs = vec![0i128; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            for (j, &y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        Laurent {
            low: a.low + b.low,
            coeffs,
        }
        .normalized()
    }
    fn inv(&self, a: &Laurent) -> Option<Laurent> {
        (a.coeffs.len() == 1 && a.coeffs[0].abs() == 1).then(|| Laurent::monomial(a.coeffs[0], -a.low))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for (p, r) in [(2, 2), (3, 2), (5, 1), (2, 3)] {
            let f = FiniteField::new(p, r).unwrap();
            for a in 0..f.size() {
                if a != 0 {
                    let ai = f.inv(&a).unwrap();
                    assert_eq!(f.mul(&a, &ai), 1, "p={p} r={r} a={a}");
                }
                for b in 0..f.size() {
                    assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
                    assert_eq!(f.sub(&f.add(&a, &b), &b), a);
                }
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let (f, t) = FiniteField::with_root_of_unity(5, 4).unwrap();
        assert_eq!(f.degree(), 1);
        assert_eq!(f.multiplicative_order(t), 4);
        let (f, t) = FiniteField::with_root_of_unity(2, 3).unwrap();
        assert_eq!(f.size(), 4);
        assert_eq!(f.multiplicative_order(t), 3);
        assert!(FiniteField::with_root_of_unity(5, 5).is_none());
        assert!(FiniteField::with_root_of_unity(4, 3).is_none());
    }

    #[test]
    fn laurent_division() {
        let r = LaurentRing;
        let a = Laurent {
            low: 0,
            coeffs: vec![1, -1, 1],
        };
        let b = Laurent {
            low: -1,
            coeffs: vec![1, 1],
        };
        let prod = r.mul(&a, &b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&b).is_none());
        assert_eq!(a.to_string(), "1-t+t^2");
    }
}

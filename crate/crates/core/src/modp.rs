//! Polynomials over a prime field `F_p`, used only as a filter and a
//! reconstruction modulus by the factorizer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::IntPoly;

/// Dense polynomial over `F_p`, constant term first, coefficients in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    pub c: Vec<BigInt>,
}

pub struct Field {
    pub p: BigInt,
}

impl Field {
    pub fn new(p: BigInt) -> Self {
        Field { p }
    }

    fn norm(&self, x: BigInt) -> BigInt {
        x.mod_floor(&self.p)
    }

    fn trim(&self, mut c: Vec<BigInt>) -> FpPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        FpPoly { c }
    }

    pub fn reduce(&self, f: &IntPoly) -> FpPoly {
        self.trim(f.coeffs().iter().map(|x| self.norm(x.clone())).collect())
    }

    pub fn inv(&self, a: &BigInt) -> BigInt {
        let e = a.extended_gcd(&self.p);
        debug_assert!(e.gcd.is_one());
        self.norm(e.x)
    }

    pub fn x(&self) -> FpPoly {
        FpPoly { c: vec![BigInt::zero(), BigInt::one()] }
    }

    pub fn one(&self) -> FpPoly {
        FpPoly { c: vec![BigInt::one()] }
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.c.len().max(b.c.len());
        let get = |v: &FpPoly, i: usize| v.c.get(i).cloned().unwrap_or_default();
        self.trim((0..n).map(|i| self.norm(get(a, i) - get(b, i))).collect())
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.c.is_empty() || b.c.is_empty() {
            return FpPoly { c: vec![] };
        }
        let mut out = vec![BigInt::zero(); a.c.len() + b.c.len() - 1];
        for (i, x) in a.c.iter().enumerate() {
            for (j, y) in b.c.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.trim(out.into_iter().map(|v| self.norm(v)).collect())
    }

    pub fn scale(&self, a: &FpPoly, k: &BigInt) -> FpPoly {
        self.trim(a.c.iter().map(|x| self.norm(x * k)).collect())
    }

    pub fn monic(&self, a: &FpPoly) -> FpPoly {
        match a.c.last() {
            Some(l) => self.scale(a, &self.inv(l)),
            None => a.clone(),
        }
    }

    pub fn divrem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!b.c.is_empty());
        let db = b.c.len() - 1;
        if a.c.len() < b.c.len() {
            return (FpPoly { c: vec![] }, a.clone());
        }
        let li = self.inv(b.c.last().unwrap());
        let mut r = a.c.clone();
        let mut q = vec![BigInt::zero(); a.c.len() - db];
        for k in (0..q.len()).rev() {
            let t = self.norm(&r[k + db] * &li);
            if t.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                r[k + j] = self.norm(&r[k + j] - &t * y);
            }
            q[k] = t;
        }
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.c.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn derivative(&self, a: &FpPoly) -> FpPoly {
        self.trim(
            a.c.iter()
                .enumerate()
                .skip(1)
                .map(|(i, x)| self.norm(x * BigInt::from(i)))
                .collect(),
        )
    }

    /// `base^e mod m`
    pub fn powmod(&self, base: &FpPoly, e: &BigInt, m: &FpPoly) -> FpPoly {
        let mut result = self.one();
        let mut b = self.rem(base, m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
            if i + 1 < bits {
                b = self.rem(&self.mul(&b, &b), m);
            }
        }
        result
    }

    pub fn degree(a: &FpPoly) -> usize {
        a.c.len().saturating_sub(1)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(g, d)` where `g` is the product of all irreducible factors of
    /// degree `d`.
    pub fn distinct_degree(&self, f: &FpPoly) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = self.monic(f);
        let x = self.x();
        let mut h = x.clone();
        let mut d = 0;
        while Self::degree(&f) >= 2 * (d + 1) {
            d += 1;
            h = self.powmod(&h, &self.p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if Self::degree(&g) > 0 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        if Self::degree(&f) > 0 {
            let deg = Self::degree(&f);
            out.push((f, deg));
        }
        out
    }

    /// Splits a product of distinct irreducibles all of degree `d`
    /// (Cantor–Zassenhaus, odd `p`).
    pub fn equal_degree(&self, f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        let n = Self::degree(f);
        if n == d {
            return vec![self.monic(f)];
        }
        let exp = (self.p.pow(d as u32) - BigInt::one()) / 2;
        loop {
            let a = self.random_poly(n, rng);
            if Self::degree(&a) == 0 {
                continue;
            }
            let g = self.gcd(&a, f);
            let split = if Self::degree(&g) > 0 && Self::degree(&g) < n {
                g
            } else {
                let b = self.powmod(&a, &exp, f);
                self.gcd(&self.sub(&b, &self.one()), f)
            };
            let k = Self::degree(&split);
            if k > 0 && k < n {
                let rest = self.divrem(f, &split).0;
                let mut out = self.equal_degree(&split, d, rng);
                out.extend(self.equal_degree(&rest, d, rng));
                return out;
            }
        }
    }

    fn random_poly(&self, n: usize, rng: &mut ChaCha8Rng) -> FpPoly {
        let bound = self.p.clone();
        let nwords = bound.bits() as usize / 32 + 2;
        let coeffs = (0..n)
            .map(|_| {
                let words: Vec<u32> = (0..nwords).map(|_| rng.gen()).collect();
                BigInt::from(num_bigint::BigUint::new(words)).mod_floor(&bound)
            })
            .collect();
        self.trim(coeffs)
    }

    /// Complete factorization of a squarefree polynomial into monic
    /// irreducibles.
    pub fn factor_squarefree(&self, f: &FpPoly, seed: u64) -> Vec<FpPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, &mut rng));
        }
        out
    }

    /// `f mod p` keeps its degree and stays squarefree.
    pub fn is_good_reduction(&self, f: &IntPoly) -> bool {
        let fp = self.reduce(f);
        if Self::degree(&fp) != f.degree() {
            return false;
        }
        Self::degree(&self.gcd(&fp, &self.derivative(&fp))) == 0
    }

    /// Multiset of irreducible factor degrees of a good reduction.
    pub fn degree_pattern(&self, f: &IntPoly) -> Vec<usize> {
        let fp = self.reduce(f);
        let mut degs = Vec::new();
        for (g, d) in self.distinct_degree(&fp) {
            degs.extend(std::iter::repeat(d).take(Self::degree(&g) / d));
        }
        degs.sort_unstable();
        degs
    }
}

/// Deterministic Miller–Rabin with fixed bases (exact below 3.3e24, a
/// strong probable-prime test above).
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for small in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let s = BigInt::from(small);
        if n == &s {
            return true;
        }
        if (n % &s).is_zero() {
            return false;
        }
    }
    let nm1: BigInt = n - 1;
    let mut d = nm1.clone();
    let mut r = 0;
    while d.is_even() {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..r {
            x = x.modpow(&two, n);
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly above `n`.
pub fn next_prime(n: &BigInt) -> BigInt {
    let mut c: BigInt = n + 1;
    if c <= BigInt::from(2) {
        return BigInt::from(2);
    }
    if c.is_even() {
        c += 1;
    }
    while !is_probable_prime(&c) {
        c += 2;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: i64) -> Field {
        Field::new(BigInt::from(p))
    }

    #[test]
    fn primes() {
        let ps: Vec<i64> = (0..60)
            .filter(|&n| is_probable_prime(&BigInt::from(n)))
            .collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_probable_prime(&BigInt::from(1_000_000_007i64)));
        assert!(!is_probable_prime(&BigInt::from(1_000_000_007i64 * 3)));
        assert_eq!(next_prime(&BigInt::from(100)), BigInt::from(101));
    }

    #[test]
    fn factor_x4_minus_1_mod_5() {
        let f = fp(5);
        let poly = f.reduce(&IntPoly::from_i64(&[-1, 0, 0, 0, 1]));
        let fs = f.factor_squarefree(&poly, 1);
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|g| Field::degree(g) == 1));
    }

    #[test]
    fn pattern_of_irreducible_quadratic() {
        // x^2 + 1 is irreducible mod 3 and splits mod 5
        let q = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(fp(3).degree_pattern(&q), vec![2]);
        assert_eq!(fp(5).degree_pattern(&q), vec![1, 1]);
    }

    #[test]
    fn product_of_factors_recovers_input() {
        let f = fp(101);
        let q = IntPoly::from_i64(&[1, -2, -5, -3, -5, -2, 1]);
        let qp = f.reduce(&q);
        let fs = f.factor_squarefree(&qp, 7);
        let prod = fs.iter().fold(f.one(), |acc, g| f.mul(&acc, g));
        assert_eq!(prod, f.monic(&qp));
    }
}

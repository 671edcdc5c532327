//! Factorization over `Q` and cyclotomic divisor detection.
//!
//! Factoring runs in three stages: a linear-factor sweep using the rational
//! root theorem, degree-pattern pruning with a handful of small primes, and
//! reconstruction of the true factors modulo one prime larger than twice the
//! Mignotte coefficient bound. Subsets of the modular factors are lifted to
//! the symmetric range and tested by exact division, so every reported factor
//! is certified in `Z[x]`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modp::{is_probable_prime, next_prime, Field, FpPoly};
use crate::poly::IntPoly;

const PATTERN_PRIMES: usize = 5;
const DIVISOR_SWEEP_LIMIT: u64 = 1_000_000_000_000;

/// Irreducible factors over `Q` with multiplicities.
///
/// Factors are primitive with positive leading coefficient and sorted by
/// degree then coefficients; their product equals `p` up to a rational
/// unit. Constant input (including zero) yields an empty list.
pub fn factor_over_q(p: &IntPoly) -> Vec<(IntPoly, u32)> {
    if p.is_constant() {
        return Vec::new();
    }
    let f = p.primitive_part();
    let sqf = match f.div_exact(&f.gcd(&f.derivative())) {
        Some(q) => q.primitive_part(),
        None => unreachable!("gcd(f, f') divides f"),
    };
    let mut out = Vec::new();
    for g in factor_squarefree(&sqf) {
        let mut mult = 0;
        let mut rest = f.clone();
        while let Some(q) = rest.div_exact(&g) {
            mult += 1;
            rest = q;
        }
        out.push((g, mult));
    }
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    out
}

pub fn is_irreducible_over_q(p: &IntPoly) -> Result<bool> {
    if p.degree() == 0 {
        return Err(Error::DegreeTooSmall);
    }
    let fs = factor_over_q(p);
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

/// Factors a primitive squarefree polynomial of positive degree.
fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut rest = f.primitive_part();
    if rest.coeff(0).is_zero() {
        let x = IntPoly::from_i64(&[0, 1]);
        found.push(x.clone());
        rest = rest.div_exact(&x).expect("x divides f");
    }
    strip_rational_roots(&mut rest, &mut found);
    if rest.degree() >= 1 {
        found.extend(modular_factor(&rest));
    }
    found
}

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_SWEEP_LIMIT {
        return None;
    }
    let mut ds = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d * d != n {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    Some(ds)
}

/// Removes linear factors `b x - a` found by the rational root theorem when
/// the constant and leading coefficients are small enough to enumerate.
fn strip_rational_roots(rest: &mut IntPoly, found: &mut Vec<IntPoly>) {
    let (Some(nums), Some(dens)) = (small_divisors(&rest.coeff(0)), small_divisors(&rest.lead()))
    else {
        return;
    };
    for &b in &dens {
        for &a in &nums {
            if a.gcd(&b) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                if rest.degree() < 1 {
                    return;
                }
                let r = BigRational::new(BigInt::from(a) * sign, BigInt::from(b));
                if rest.sign_at(&r) == 0 {
                    let lin = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
                    *rest = rest.div_exact(&lin).expect("rational root gives exact factor");
                    found.push(lin);
                }
            }
        }
    }
}

/// Possible factor degrees over `Z`, intersected across several good small
/// primes. Contains 0 and `deg f` always.
fn allowed_degrees(f: &IntPoly) -> BTreeSet<usize> {
    let n = f.degree();
    let mut allowed: BTreeSet<usize> = (0..=n).collect();
    let mut used = 0;
    let mut p = BigInt::from(2);
    let mut tried = 0;
    while used < PATTERN_PRIMES && tried < 200 {
        p = next_prime(&p);
        tried += 1;
        if (f.lead() % &p).is_zero() {
            continue;
        }
        let field = Field::new(p.clone());
        if !field.is_good_reduction(f) {
            continue;
        }
        let pattern = field.degree_pattern(f);
        let mut sums: BTreeSet<usize> = BTreeSet::from([0]);
        for d in pattern {
            let next: Vec<usize> = sums.iter().map(|s| s + d).collect();
            sums.extend(next);
        }
        allowed = allowed.intersection(&sums).copied().collect();
        used += 1;
        if allowed.len() <= 2 {
            break;
        }
    }
    allowed
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn symmetric_lift(v: &BigInt, p: &BigInt) -> BigInt {
    let r = v.mod_floor(p);
    if &r * 2 > *p {
        r - p
    } else {
        r
    }
}

fn modular_factor(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.degree();
    if n <= 1 {
        return vec![f.primitive_part()];
    }
    let allowed = allowed_degrees(f);
    if allowed.iter().all(|&d| d == 0 || d == n) {
        return vec![f.primitive_part()];
    }

    // factor g of degree d < n satisfies |g_j| <= C(d, j) ||f||_2; the lifted
    // candidate carries an extra factor lead(f)/lead(g)
    let bound = f.lead().abs() * binomial(n - 1, (n - 1) / 2) * f.norm2_ceil();
    let mut p = next_prime(&(&bound * 2 + 1));
    let field = loop {
        let fld = Field::new(p.clone());
        if !(f.lead() % &p).is_zero() && fld.is_good_reduction(f) {
            break fld;
        }
        p = next_prime(&p);
    };
    debug_assert!(is_probable_prime(&field.p));

    let fp = field.reduce(f);
    let mut modular: Vec<FpPoly> = field.factor_squarefree(&fp, 0x746f72616c);
    if modular.len() == 1 {
        return vec![f.primitive_part()];
    }

    let mut out = Vec::new();
    let mut rest = f.primitive_part();
    let mut split_happened = false;
    let mut k = 1;
    while 2 * k <= modular.len() {
        let mut hit: Option<(Vec<usize>, IntPoly)> = None;
        for subset in Combinations::new(modular.len(), k) {
            let deg: usize = subset.iter().map(|&i| Field::degree(&modular[i])).sum();
            if !split_happened && !allowed.contains(&deg) {
                continue;
            }
            let lead = rest.lead();
            let prod = subset
                .iter()
                .fold(FpPoly { c: vec![lead.mod_floor(&field.p)] }, |acc, &i| {
                    field.mul(&acc, &modular[i])
                });
            let cand = IntPoly::new(prod.c.iter().map(|c| symmetric_lift(c, &field.p)).collect())
                .primitive_part();
            if cand.degree() == 0 {
                continue;
            }
            if let Some(q) = rest.div_exact(&cand) {
                hit = Some((subset, q));
                out.push(cand);
                break;
            }
        }
        match hit {
            Some((subset, q)) => {
                rest = q.primitive_part();
                split_happened = true;
                modular = modular
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g)
                    .collect();
            }
            None => k += 1,
        }
    }
    if rest.degree() >= 1 {
        out.push(rest);
    }
    out
}

/// k-subsets of `0..n` in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations { n, idx: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

pub fn euler_phi(k: u64) -> u64 {
    let mut n = k;
    let mut result = k;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The k-th cyclotomic polynomial, by dividing `x^k - 1` by `Φ_d` for every
/// proper divisor `d` of `k`.
pub fn cyclotomic(k: u64) -> IntPoly {
    assert!(k >= 1);
    let mut num = IntPoly::monomial(BigInt::one(), k as usize);
    num = &num - &IntPoly::one();
    for d in 1..k {
        if k % d == 0 {
            num = num.div_exact(&cyclotomic(d)).expect("cyclotomic divisor");
        }
    }
    num
}

/// All `k` with `Φ_k | p`, sorted. Tests every `k` with `φ(k) <= deg p`;
/// since `φ(k) >= sqrt(k/2)` it is enough to scan `k <= 2 deg^2`.
pub fn cyclotomic_divisors(p: &IntPoly) -> Vec<u64> {
    let n = p.degree() as u64;
    if n == 0 {
        return Vec::new();
    }
    let f = p.primitive_part();
    (1..=2 * n * n + 2)
        .filter(|&k| euler_phi(k) <= n)
        .filter(|&k| f.div_exact(&cyclotomic(k)).is_some())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn difference_of_squares() {
        let fs = factor_over_q(&poly(&[-1, 0, 1]));
        assert_eq!(fs, vec![(poly(&[-1, 1]), 1), (poly(&[1, 1]), 1)]);
    }

    #[test]
    fn multiplicities_and_content() {
        // 6 (x - 1)^2 (x^2 + 1)
        let p = (&poly(&[-1, 1]) * &poly(&[-1, 1])) * poly(&[1, 0, 1]);
        let fs = factor_over_q(&p.scale(&BigInt::from(6)));
        assert_eq!(fs, vec![(poly(&[-1, 1]), 2), (poly(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn non_monic_rational_roots() {
        // (2x - 1)(3x + 2)(x^2 + x + 1)
        let p = (&poly(&[-1, 2]) * &poly(&[2, 3])) * poly(&[1, 1, 1]);
        let fs = factor_over_q(&p);
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&(poly(&[-1, 2]), 1)));
        assert!(fs.contains(&(poly(&[2, 3]), 1)));
    }

    #[test]
    fn quartic_splitting_into_quadratics() {
        // x^4 + 1 is irreducible; x^4 + 4 = (x^2 + 2x + 2)(x^2 - 2x + 2)
        assert!(is_irreducible_over_q(&poly(&[1, 0, 0, 0, 1])).unwrap());
        let fs = factor_over_q(&poly(&[4, 0, 0, 0, 1]));
        assert_eq!(fs, vec![(poly(&[2, -2, 1]), 1), (poly(&[2, 2, 1]), 1)]);
    }

    #[test]
    fn degree_zero_is_an_error() {
        assert_eq!(is_irreducible_over_q(&poly(&[3])), Err(Error::DegreeTooSmall));
        assert!(factor_over_q(&poly(&[5])).is_empty());
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic(6), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
        assert_eq!(euler_phi(18), 6);
    }

    #[test]
    fn phi_bound_test_set_for_degree_six() {
        let ks: Vec<u64> = (1..=100).filter(|&k| euler_phi(k) <= 6).collect();
        assert_eq!(ks, vec![1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18]);
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        let all: Vec<Vec<usize>> = Combinations::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
    }
}

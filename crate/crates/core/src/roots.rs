//! Sturm sequences, certified real-root isolation and unit-circle root
//! counts.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric;
use crate::poly::IntPoly;
use crate::reciprocal::reciprocal_reduce;

/// Closest a floating root modulus may come to 1 on the non-reciprocal path.
pub const CIRCLE_TOLERANCE: f64 = 1e-12;

/// Sturm chain of a squarefree polynomial: `p, p', -rem(p, p'), ...`, each
/// member kept primitive (positive rescaling preserves sign counts).
pub fn sturm_sequence(p: &IntPoly) -> Vec<IntPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let (a, b) = (&seq[n - 2], &seq[n - 1]);
        if b.is_zero() || b.is_constant() {
            break;
        }
        let steps = (a.degree() - b.degree() + 1) as u32;
        let mut r = a.pseudo_rem(b);
        // prem = lead(b)^steps * rem, so undo a negative factor
        let flip = b.lead().is_negative() && steps % 2 == 1;
        if !flip {
            r = -&r;
        }
        if r.is_zero() {
            break;
        }
        let g = r.content();
        let r = IntPoly::new(r.coeffs().iter().map(|c| c / &g).collect());
        seq.push(r);
    }
    seq
}

fn sign_variations(seq: &[IntPoly], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last = 0;
    for q in seq {
        let s = q.sign_at(x);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of a squarefree `p` in the open interval
/// `(lo, hi)`.
pub fn sturm_count(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    if p.sign_at(lo) == 0 || p.sign_at(hi) == 0 {
        return Err(Error::EndpointRoot);
    }
    if !p.is_squarefree() {
        return Err(Error::RepeatedRoots);
    }
    let seq = sturm_sequence(p);
    Ok(sign_variations(&seq, lo) - sign_variations(&seq, hi))
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A rational strictly inside `(lo, hi)` that is not a root of `p`.
fn split_point(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    for (num, den) in [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (2, 5), (3, 5)] {
        let m = lo + &width * BigRational::new(num.into(), den.into());
        if p.sign_at(&m) != 0 {
            return m;
        }
    }
    // at most deg p candidates can be roots
    let mut k = 5i64;
    loop {
        k += 1;
        let m = lo + &width * BigRational::new(1.into(), k.into());
        if p.sign_at(&m) != 0 {
            return m;
        }
    }
}

/// Disjoint open rational intervals, sorted, each holding exactly one real
/// root of the squarefree polynomial `p`.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<(BigRational, BigRational)>> {
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    if !p.is_squarefree() {
        return Err(Error::RepeatedRoots);
    }
    let seq = sturm_sequence(p);
    let b = p.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_variations(&seq, &lo) - sign_variations(&seq, &hi);
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let m = split_point(p, &lo, &hi);
                stack.push((lo, m.clone()));
                stack.push((m, hi));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Shrinks an isolating interval by bisection until its width is at most
/// `width`. Exact rational roots collapse to a degenerate interval.
pub fn refine_root(
    p: &IntPoly,
    interval: &(BigRational, BigRational),
    width: &BigRational,
) -> (BigRational, BigRational) {
    let (mut lo, mut hi) = interval.clone();
    let lo_sign = p.sign_at(&lo);
    let two = rat(2);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let s = p.sign_at(&mid);
        if s == 0 {
            return (mid.clone(), mid);
        }
        if s == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Position of a root relative to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircleTag {
    Inside,
    On,
    Outside,
}

/// Root counts inside / on / outside the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CircleCounts {
    pub on: usize,
    pub inside: usize,
    pub outside: usize,
}

impl CircleCounts {
    pub fn total(&self) -> usize {
        self.on + self.inside + self.outside
    }
}

/// Trichotomy counts for a squarefree polynomial.
///
/// Self-reciprocal input is handled exactly through the reduced polynomial
/// in `z = x + 1/x`: real `z` roots in `(-2, 2)` give a conjugate pair on
/// the circle, every other `z` root gives one root inside and one outside.
/// Otherwise the on-circle roots are counted exactly through
/// `gcd(p, reversed p)` and the rest are located by floating evaluation;
/// a modulus within [`CIRCLE_TOLERANCE`] of 1 is reported as unresolved.
pub fn unit_circle_root_count(p: &IntPoly) -> Result<CircleCounts> {
    if p.is_zero() {
        return Err(Error::DegreeTooSmall);
    }
    if !p.is_squarefree() {
        return Err(Error::RepeatedRoots);
    }
    if p.degree() == 0 {
        return Ok(CircleCounts::default());
    }
    if p.coeff(0).is_zero() {
        // root at 0: strictly inside
        let rest = p.div_exact(&IntPoly::from_i64(&[0, 1])).expect("x | p");
        let mut c = unit_circle_root_count(&rest)?;
        c.inside += 1;
        return Ok(c);
    }
    if p.is_self_reciprocal() || p.reversed() == -p {
        return reciprocal_counts(p);
    }

    let g = p.gcd(&p.reversed());
    let on = if g.degree() > 0 { reciprocal_counts(&g)?.on } else { 0 };
    let mut roots = numeric::complex_roots(p);
    roots.sort_by(|a, b| (a.norm() - 1.0).abs().total_cmp(&(b.norm() - 1.0).abs()));
    let mut counts = CircleCounts { on, ..Default::default() };
    for (i, z) in roots.iter().enumerate() {
        let gap = z.norm() - 1.0;
        if i < on {
            if gap.abs() > 1e-6 {
                return Err(Error::CircleBoundaryUnresolved);
            }
            continue;
        }
        if gap.abs() <= CIRCLE_TOLERANCE {
            return Err(Error::CircleBoundaryUnresolved);
        }
        if gap < 0.0 {
            counts.inside += 1;
        } else {
            counts.outside += 1;
        }
    }
    Ok(counts)
}

/// Exact counts for a polynomial whose coefficient vector is a palindrome
/// or an anti-palindrome.
fn reciprocal_counts(q: &IntPoly) -> Result<CircleCounts> {
    let mut q = q.primitive_part();
    let mut counts = CircleCounts::default();
    for r in [1i64, -1] {
        if q.eval(&BigInt::from(r)).is_zero() {
            counts.on += 1;
            q = q.div_exact(&IntPoly::linear_root(r)).expect("linear factor");
        }
    }
    if q.degree() == 0 {
        return Ok(counts);
    }
    let reduced = reciprocal_reduce(&q)?;
    // q(1) != 0 != q(-1) so +-2 are not roots of the reduced polynomial
    let inner = sturm_count(&reduced, &rat(-2), &rat(2))?;
    let b = reduced.root_bound();
    let real = sturm_count(&reduced, &-b.clone(), &b)?;
    let complex_pairs = (reduced.degree() - real) / 2;
    counts.on += 2 * inner;
    counts.inside += (real - inner) + 2 * complex_pairs;
    counts.outside += (real - inner) + 2 * complex_pairs;
    Ok(counts)
}

/// Certified isolation of the real roots together with their position
/// relative to the unit circle.
#[derive(Debug, Clone, PartialEq)]
pub struct RootIsolation {
    pub poly: IntPoly,
    pub intervals: Vec<(BigRational, BigRational)>,
    pub circle_tags: Vec<CircleTag>,
    pub complex_pair_count: usize,
}

pub fn isolate(p: &IntPoly) -> Result<RootIsolation> {
    let intervals = isolate_real_roots(p)?;
    let one = BigRational::one();
    let minus_one = -one.clone();
    let mut refined = Vec::with_capacity(intervals.len());
    let mut tags = Vec::with_capacity(intervals.len());
    for iv in intervals {
        let (mut lo, mut hi) = iv;
        let tag = loop {
            if p.sign_at(&one) == 0 && lo < one && one < hi {
                break CircleTag::On;
            }
            if p.sign_at(&minus_one) == 0 && lo < minus_one && minus_one < hi {
                break CircleTag::On;
            }
            let straddles = |c: &BigRational| lo <= *c && *c <= hi;
            if !straddles(&one) && !straddles(&minus_one) {
                let abs_mid = ((&lo + &hi) / rat(2)).abs();
                break if abs_mid < one { CircleTag::Inside } else { CircleTag::Outside };
            }
            let w = (&hi - &lo) / rat(2);
            let (l, h) = refine_root(p, &(lo.clone(), hi.clone()), &w);
            if l == h {
                // exact rational root away from +-1 landed on a midpoint
                let eps = w / rat(4);
                lo = &l - &eps;
                hi = &h + &eps;
            } else {
                lo = l;
                hi = h;
            }
        };
        refined.push((lo, hi));
        tags.push(tag);
    }
    let complex_pair_count = (p.degree() - refined.len()) / 2;
    Ok(RootIsolation { poly: p.clone(), intervals: refined, circle_tags: tags, complex_pair_count })
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

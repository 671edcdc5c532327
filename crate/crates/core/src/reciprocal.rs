//! The substitution `z = x + 1/x` between self-reciprocal polynomials of
//! degree `2m` and polynomials of degree `m`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// `V_k(z)` with `x^k + x^-k = V_k(x + 1/x)`: `V_0 = 2`, `V_1 = z`,
/// `V_k = z V_{k-1} - V_{k-2}`.
fn dickson(k: usize) -> IntPoly {
    let z = IntPoly::from_i64(&[0, 1]);
    let mut prev = IntPoly::from_i64(&[2]);
    if k == 0 {
        return prev;
    }
    let mut cur = z.clone();
    for _ in 1..k {
        let next = &(&z * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Returns `P` with `q(x) = x^m P(x + 1/x)`, where `deg q = 2m`.
pub fn reciprocal_reduce(q: &IntPoly) -> Result<IntPoly> {
    if q.is_zero() || q.degree() % 2 != 0 || !q.is_self_reciprocal() {
        return Err(Error::NotSelfReciprocal);
    }
    let m = q.degree() / 2;
    let mut p = IntPoly::constant(q.coeff(m));
    for k in 1..=m {
        let c = q.coeff(m + k);
        if !c.is_zero() {
            p = &p + &dickson(k).scale(&c);
        }
    }
    Ok(p)
}

/// Inverse of [`reciprocal_reduce`]: `x^m P(x + 1/x)` for `deg P = m`,
/// expanded as `sum p_k x^(m-k) (x^2 + 1)^k`.
pub fn reciprocal_lift(p: &IntPoly) -> IntPoly {
    let m = p.degree();
    let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
    let mut out = IntPoly::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &IntPoly::monomial(c.clone(), m - k) * &x2p1.pow(k as u32);
        out = &out + &term;
    }
    out
}

/// The sextic `x^6 + a x^5 + (3+b) x^4 + (2a+c) x^3 + (3+b) x^2 + a x + 1`
/// obtained from the cubic `z^3 + a z^2 + b z + c`.
pub fn lift_cubic(a: i64, b: i64, c: i64) -> IntPoly {
    let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
    let three = BigInt::from(3);
    IntPoly::new(vec![
        BigInt::from(1),
        a.clone(),
        &three + &b,
        &a * 2 + c,
        &three + &b,
        a,
        BigInt::from(1),
    ])
}

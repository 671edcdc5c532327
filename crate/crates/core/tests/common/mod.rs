#![allow(dead_code)]

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toral::IntMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Elementary matrix `I + k E_ij` (i != j).
pub fn elementary(n: usize, i: usize, j: usize, k: i64) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    m[(i, j)] = BigInt::from(k);
    m
}

/// Product of `len` random elementary matrices with multipliers in {-1, 1}
/// and an occasional sign flip.
pub fn random_unimodular(r: &mut ChaCha8Rng, n: usize, len: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for _ in 0..len {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let k = if r.gen_bool(0.5) { 1 } else { -1 };
        m = &m * &elementary(n, i, j, k);
    }
    if r.gen_bool(0.2) {
        let i = r.gen_range(0..n);
        for c in 0..n {
            m[(i, c)] = -&m[(i, c)];
        }
    }
    m
}

/// Generator of `Sp(2m, Z)` for the standard form: a symplectic transvection
/// or a block `diag(U, U^-T)` with `U` elementary.
fn symplectic_generator(r: &mut ChaCha8Rng, m: usize) -> IntMatrix {
    let n = 2 * m;
    let mut g = IntMatrix::identity(n);
    let k = if r.gen_bool(0.5) { 1 } else { -1 };
    match r.gen_range(0..3) {
        0 | 1 => {
            // [[I, S], [0, I]] or [[I, 0], [S, I]] with S symmetric elementary
            let (i, j) = (r.gen_range(0..m), r.gen_range(0..m));
            let upper = r.gen_bool(0.5);
            let (ro, co) = if upper { (0, m) } else { (m, 0) };
            g[(ro + i, co + j)] += BigInt::from(k);
            if i != j {
                g[(ro + j, co + i)] += BigInt::from(k);
            }
        }
        _ => {
            let i = r.gen_range(0..m);
            let mut j = r.gen_range(0..m - 1);
            if j >= i {
                j += 1;
            }
            g[(i, j)] = BigInt::from(k);
            // inverse transpose of I + k E_ij is I - k E_ji
            g[(m + j, m + i)] = BigInt::from(-k);
        }
    }
    g
}

pub fn random_symplectic_word(r: &mut ChaCha8Rng, m: usize, len: usize) -> IntMatrix {
    let mut a = IntMatrix::identity(2 * m);
    for _ in 0..len {
        a = &a * &symplectic_generator(r, m);
    }
    a
}

pub fn conjugate(h: &IntMatrix, a: &IntMatrix) -> IntMatrix {
    &(h * a) * &h.inverse_unimodular().expect("unimodular")
}

/// Determinant by cofactor expansion, independent of the library routine.
pub fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::from(0);
    for c in 0..n {
        if m[0][c] == BigInt::from(0) {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][c] * laplace_det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

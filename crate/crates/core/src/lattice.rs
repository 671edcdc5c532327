//! Integer lattices: Hermite and Smith normal forms, integer kernels and
//! saturation, rational coordinates, and a cheap pairwise size reduction.
//!
//! Vectors are plain `Vec<BigInt>`; a lattice is given by a list of basis
//! vectors (rows).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

pub type IntVec = Vec<BigInt>;

fn axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    // target -= q * src
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `vecs`: nonzero
/// rows in echelon form, positive pivots, entries above each pivot reduced
/// into `[0, pivot)`. The result is a basis of the same lattice.
pub fn hermite_rows(vecs: &[IntVec]) -> Vec<IntVec> {
    hermite_rows_limited(vecs, usize::MAX).0
}

/// Hermite form where pivots are only sought in the first `pivot_cols`
/// columns; also returns how many pivots were placed there.
fn hermite_rows_limited(vecs: &[IntVec], pivot_cols: usize) -> (Vec<IntVec>, usize) {
    let mut a: Vec<IntVec> = vecs.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut pivots = 0;
    for col in 0..ncols {
        if r >= a.len() {
            break;
        }
        loop {
            let Some(best) = (r..a.len())
                .filter(|&i| !a[i][col].is_zero())
                .min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()))
            else {
                break;
            };
            a.swap(r, best);
            let mut clean = true;
            for i in r + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let pivot_row = a[r].clone();
                axpy(&mut a[i], &q, &pivot_row);
                if !a[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if r < a.len() && !a[r][col].is_zero() {
            if a[r][col].is_negative() {
                for x in a[r].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_row = a[r].clone();
            for i in 0..r {
                let q = a[i][col].div_floor(&pivot_row[col]);
                if !q.is_zero() {
                    axpy(&mut a[i], &q, &pivot_row);
                }
            }
            if col < pivot_cols {
                pivots += 1;
            }
            r += 1;
        }
    }
    a.retain(|row| row.iter().any(|x| !x.is_zero()));
    (a, pivots)
}

/// Basis of `{x in Z^n : M x = 0}` in Hermite form. The basis is saturated:
/// it spans the full integer points of the rational kernel.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVec> {
    let (rows, n) = (m.rows(), m.cols());
    // rows of [M^T | I]; unimodular row operations keep the right block
    // invertible, and rows whose left block vanishes lie in the kernel
    let aug: Vec<IntVec> = (0..n)
        .map(|j| {
            let mut v = m.column(j);
            v.extend((0..n).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    let (h, pivots) = hermite_rows_limited(&aug, rows);
    let kernel: Vec<IntVec> = h[pivots..].iter().map(|row| row[rows..].to_vec()).collect();
    debug_assert!(kernel.iter().all(|v| m.mul_vec(v).iter().all(Zero::is_zero)));
    hermite_rows(&kernel)
}

/// Integer points of the rational span of `vecs`, as a Hermite basis.
pub fn saturate(vecs: &[IntVec], n: usize) -> Vec<IntVec> {
    let nonzero: Vec<IntVec> = vecs.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let m = IntMatrix::from_rows(nonzero).expect("equal length vectors");
    let perp = integer_kernel(&m);
    let perp_m = if perp.is_empty() {
        IntMatrix::zeros(0, n)
    } else {
        IntMatrix::from_rows(perp).expect("equal length vectors")
    };
    integer_kernel(&perp_m)
}

/// Orthogonal complement lattice `{r in Z^n : (r, v) = 0 for all v}`.
pub fn orthogonal_complement(vecs: &[IntVec], n: usize) -> Vec<IntVec> {
    if vecs.is_empty() {
        return (0..n)
            .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
    }
    integer_kernel(&IntMatrix::from_rows(vecs.to_vec()).expect("equal length vectors"))
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Rank over `Q`.
pub fn rank(vecs: &[IntVec]) -> usize {
    hermite_rows(vecs).len()
}

/// Rational coordinates of `v` in the basis `basis` (assumed independent),
/// or `None` when `v` is outside the rational span.
pub fn coordinates(basis: &[IntVec], v: &[BigInt]) -> Option<Vec<BigRational>> {
    let k = basis.len();
    let n = v.len();
    // solve sum c_i basis_i = v: n equations, k unknowns
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            let mut r: Vec<BigRational> =
                (0..k).map(|i| BigRational::from_integer(basis[i][row].clone())).collect();
            r.push(BigRational::from_integer(v[row].clone()));
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..n).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for c in col..=k {
                    let t = &f * &a[r][c];
                    a[i][c] -= t;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }
    if (r..n).any(|i| !a[i][k].is_zero()) {
        return None;
    }
    let mut c = vec![BigRational::zero(); k];
    for (row, &col) in pivot_cols.iter().enumerate() {
        c[col] = a[row][k].clone();
    }
    Some(c)
}

/// Integer coordinates of `v` in a lattice basis, if `v` is a lattice point.
pub fn integer_coordinates(basis: &[IntVec], v: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = coordinates(basis, v)?;
    if c.iter().all(|x| x.is_integer()) {
        Some(c.into_iter().map(|x| x.to_integer()).collect())
    } else {
        None
    }
}

fn norm_sq(v: &[BigInt]) -> BigInt {
    dot(v, v)
}

/// Pairwise size reduction: repeatedly subtract the nearest-integer multiple
/// of one basis vector from another while that shortens it, then sort by
/// length. Cheap stand-in for full lattice reduction.
pub fn size_reduce(basis: &[IntVec]) -> Vec<IntVec> {
    let mut b: Vec<IntVec> = basis.to_vec();
    let k = b.len();
    for _round in 0..200 {
        let mut changed = false;
        b.sort_by_key(|v| norm_sq(v));
        for i in 0..k {
            for j in 0..k {
                if i == j {
                    continue;
                }
                let nj = norm_sq(&b[j]);
                if nj.is_zero() {
                    continue;
                }
                let num = dot(&b[i], &b[j]);
                let q = BigRational::new(num, nj).round().to_integer();
                if q.is_zero() {
                    continue;
                }
                let mut cand = b[i].clone();
                axpy(&mut cand, &q, &b[j]);
                if norm_sq(&cand) < norm_sq(&b[i]) {
                    b[i] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    b.sort_by(|x, y| norm_sq(x).cmp(&norm_sq(y)).then_with(|| y.cmp(x)));
    // fix a sign convention: first nonzero entry positive
    for v in b.iter_mut() {
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
    b
}

/// Smith normal form `U M V = D` with `U`, `V` unimodular and the diagonal
/// of `D` nonnegative with each entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.to_rows();
    let mut u = IntMatrix::identity(rows).to_rows();
    let mut v = IntMatrix::identity(cols).to_rows(); // stored as rows; column ops act on v[.][j]

    let swap_cols = |x: &mut Vec<IntVec>, a: usize, b: usize| {
        for row in x.iter_mut() {
            row.swap(a, b);
        }
    };
    let col_axpy = |x: &mut Vec<IntVec>, target: usize, q: &BigInt, src: usize| {
        for row in x.iter_mut() {
            let s = row[src].clone();
            row[target] -= q * s;
        }
    };

    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero()
                        && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(u, d, v);
            };
            d.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut d, t, bj);
            swap_cols(&mut v, t, bj);

            let mut dirty = false;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                let (pd, pu) = (d[t].clone(), u[t].clone());
                axpy(&mut d[i], &q, &pd);
                axpy(&mut u[i], &q, &pu);
                dirty |= !d[i][t].is_zero();
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, &q, t);
                col_axpy(&mut v, j, &q, t);
                dirty |= !d[t][j].is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into row t and repeat
            let piv = d[t][t].clone();
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&d[i][j] % &piv).is_zero()));
            match offending {
                Some(i) => {
                    let (rd, ru) = (d[i].clone(), u[i].clone());
                    for (x, y) in d[t].iter_mut().zip(&rd) {
                        *x += y;
                    }
                    for (x, y) in u[t].iter_mut().zip(&ru) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    finish(u, d, v)
}

fn finish(u: Vec<IntVec>, mut d: Vec<IntVec>, v: Vec<IntVec>) -> SmithForm {
    let mut u = IntMatrix::from_rows(u).expect("square");
    for (i, row) in d.iter_mut().enumerate() {
        if i < row.len() && row[i].is_negative() {
            for x in row.iter_mut() {
                *x = -&*x;
            }
            for j in 0..u.cols() {
                u[(i, j)] = -&u[(i, j)];
            }
        }
    }
    let cols = d.first().map_or(0, Vec::len);
    let d = if d.is_empty() { IntMatrix::zeros(0, cols) } else { IntMatrix::from_rows(d).expect("rect") };
    SmithForm { u, d, v: IntMatrix::from_rows(v).expect("square") }
}

//! Dense integer matrices and the constructors used throughout the crate.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn scalar(n: usize, k: &BigInt) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = k.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Panics on ragged input; meant for literals.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_rows(v).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && self.transpose() == -self
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().abs().is_one()
    }

    /// Characteristic polynomial `det(x I - A)` by the Faddeev–LeVerrier
    /// recurrence; every division in it is exact over the integers.
    pub fn char_poly(&self) -> IntPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::zeros(n, n);
        let ident = Self::identity(n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
            m = &(self * &m) + &ident.scale(&coeffs[n - k + 1]);
            let am = self * &m;
            let (q, r) = (-am.trace()).div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero());
            coeffs[n - k] = q;
        }
        IntPoly::new(coeffs)
    }

    /// `p(A)` by Horner's scheme.
    pub fn eval_poly(&self, p: &IntPoly) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        p.coeffs()
            .iter()
            .rev()
            .fold(Self::zeros(n, n), |acc, c| &(&acc * self) + &Self::scalar(n, c))
    }

    /// Exact inverse over `Q`; `None` for singular matrices.
    pub fn inverse_rational(&self) -> Option<Vec<Vec<BigRational>>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self[(i, j)].clone())
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * n {
                        let t = &f * &a[col][c];
                        a[r][c] -= t;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
    }

    /// Inverse of a unimodular matrix, itself an integer matrix.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare);
        }
        let d = self.det();
        if !d.abs().is_one() {
            return Err(Error::NotUnimodular(d.to_string()));
        }
        let inv = self.inverse_rational().expect("unimodular is invertible");
        let rows = inv
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.to_integer()).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    /// Text form: one row per line, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "incompatible matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }
}

/// Companion matrix: ones on the superdiagonal and the negated low
/// coefficients in the last row, so a monic self-reciprocal sextic
/// `x^6 + a x^5 + b x^4 + c x^3 + b x^2 + a x + 1` has last row
/// `(-1, -a, -b, -c, -b, -a)`.
pub fn companion(p: &IntPoly) -> Result<IntMatrix> {
    if !p.is_monic() || p.degree() == 0 {
        return Err(Error::NotMonic);
    }
    let n = p.degree();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n - 1 {
        m[(i, i + 1)] = BigInt::one();
    }
    for j in 0..n {
        m[(n - 1, j)] = -p.coeff(j);
    }
    Ok(m)
}

pub fn block_diag(blocks: &[IntMatrix]) -> IntMatrix {
    let n: usize = blocks.iter().map(IntMatrix::rows).sum();
    let c: usize = blocks.iter().map(IntMatrix::cols).sum();
    let mut m = IntMatrix::zeros(n, c);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                m[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
        r0 += b.rows();
        c0 += b.cols();
    }
    m
}

/// `[[0, E], [-E, 0]]` of size `2m`.
pub fn standard_j(m: usize) -> IntMatrix {
    assert!(m >= 1);
    let mut j = IntMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        j[(i, m + i)] = BigInt::one();
        j[(m + i, i)] = -BigInt::one();
    }
    j
}

/// The integer skew form preserved by the companion matrix of the
/// self-reciprocal sextic with parameters `(a, b, c)`. Its determinant is
/// `(a + b - c - 2)^2`, so `degenerate` is set exactly when `a + b - c = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonstandardForm {
    pub matrix: IntMatrix,
    pub degenerate: bool,
}

pub fn nonstandard_j(a: i64, b: i64, c: i64) -> NonstandardForm {
    let (a, b, c) = (BigInt::from(a), BigInt::from(b), BigInt::from(c));
    let z = BigInt::zero;
    let one = BigInt::one;
    let a1: BigInt = &a + 1;
    let s = &a + &b - &c;
    let rows = vec![
        vec![z(), z(), one(), one(), one(), z()],
        vec![z(), z(), a.clone(), a1.clone(), a1.clone(), one()],
        vec![-one(), -a.clone(), z(), s.clone(), a1.clone(), one()],
        vec![-one(), -a1.clone(), -s.clone(), z(), a.clone(), one()],
        vec![-one(), -a1.clone(), -a1.clone(), -a.clone(), z(), z()],
        vec![z(), -one(), -one(), -one(), z(), z()],
    ];
    let degenerate = s == BigInt::from(2);
    NonstandardForm { matrix: IntMatrix::from_rows(rows).expect("6x6"), degenerate }
}

/// Exact test of `A^T J A = J` for a nondegenerate skew form `J`.
pub fn is_symplectic(a: &IntMatrix, j: &IntMatrix) -> Result<bool> {
    if !a.is_square() || !j.is_square() || a.rows() != j.rows() {
        return Err(Error::DimensionMismatch("A and J must be square of equal size".into()));
    }
    if !j.is_skew() || j.det().is_zero() {
        return Err(Error::BadForm);
    }
    Ok(&(&a.transpose() * j) * a == *j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small_cases() {
        assert_eq!(IntMatrix::identity(6).det(), BigInt::one());
        assert_eq!(IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).det(), BigInt::one());
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det(), BigInt::from(-1));
        assert_eq!(
            IntMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]).det(),
            BigInt::from(-3)
        );
        assert_eq!(IntMatrix::from_i64(&[&[1, 2], &[2, 4]]).det(), BigInt::zero());
    }

    #[test]
    fn char_poly_of_cat_map() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.char_poly(), IntPoly::from_i64(&[1, -3, 1]));
    }

    #[test]
    fn companion_layout() {
        let m = companion(&IntPoly::from_i64(&[1, -3, 1])).unwrap();
        assert_eq!(m, IntMatrix::from_i64(&[&[0, 1], &[-1, 3]]));
        assert_eq!(companion(&IntPoly::from_i64(&[-1, 1])).unwrap(), IntMatrix::from_i64(&[&[1]]));
        assert_eq!(companion(&IntPoly::from_i64(&[1, 2])), Err(Error::NotMonic));
    }

    #[test]
    fn standard_form_shape() {
        assert_eq!(standard_j(1), IntMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
        let j = standard_j(3);
        assert!(j.is_skew());
        assert_eq!(j.det(), BigInt::one());
    }

    #[test]
    fn nonstandard_form_degenerate_flag() {
        let f = nonstandard_j(3, 1, 2);
        assert!(f.degenerate);
        assert!(f.matrix.det().is_zero());
        assert_eq!(nonstandard_j(0, 0, 0).matrix.det(), BigInt::from(4));
    }

    #[test]
    fn is_symplectic_rejects_bad_forms() {
        let a = IntMatrix::identity(2);
        let sym = IntMatrix::from_i64(&[&[1, 0], &[0, 1]]);
        assert_eq!(is_symplectic(&a, &sym), Err(Error::BadForm));
        assert_eq!(is_symplectic(&a, &IntMatrix::zeros(2, 2)), Err(Error::BadForm));
        assert_eq!(is_symplectic(&a, &standard_j(1)), Ok(true));
    }

    #[test]
    fn unimodular_inverse() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(&a * &inv, IntMatrix::identity(2));
        assert!(IntMatrix::from_i64(&[&[2, 0], &[0, 1]]).inverse_unimodular().is_err());
    }

    #[test]
    fn eval_poly_cayley_hamilton() {
        let a = IntMatrix::from_i64(&[&[1, 2, 0], &[3, -1, 4], &[0, 5, 2]]);
        assert!(a.eval_poly(&a.char_poly()).is_zero());
    }
}

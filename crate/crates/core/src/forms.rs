//! Integer skew-symmetric forms preserved by an automorphism: the lattice of
//! all `J` with `Aᵀ J A = J`, plus a bounded search for a nondegenerate one.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::lattice::{integer_coordinates, integer_kernel, IntVec};
use crate::matrix::IntMatrix;

/// Largest coordinate max-norm tried when looking for a nondegenerate form.
pub const FORM_SEARCH_NORM: i64 = 5;
/// Candidate cap for the same search.
pub const FORM_SEARCH_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewFormLattice {
    pub dim: usize,
    /// Lattice basis; each element is skew and invariant.
    pub basis: Vec<IntMatrix>,
    pub rank: usize,
    /// First nondegenerate lattice element met by the bounded search.
    pub nondegenerate: Option<IntMatrix>,
    pub search_note: String,
}

impl SkewFormLattice {
    /// Whether `j` is an integer combination of the basis.
    pub fn contains(&self, j: &IntMatrix) -> bool {
        if j.rows() != self.dim || j.cols() != self.dim || !j.is_skew() {
            return false;
        }
        let target = skew_coordinates(j);
        if target.iter().all(Zero::is_zero) {
            return true;
        }
        let basis: Vec<IntVec> = self.basis.iter().map(skew_coordinates).collect();
        !basis.is_empty() && integer_coordinates(&basis, &target).is_some()
    }
}

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// Strict upper-triangle entries in row-major order.
pub fn skew_coordinates(j: &IntMatrix) -> IntVec {
    pairs(j.rows()).into_iter().map(|(a, b)| j[(a, b)].clone()).collect()
}

pub fn skew_from_coordinates(n: usize, coords: &[BigInt]) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for ((a, b), c) in pairs(n).into_iter().zip(coords) {
        m[(a, b)] = c.clone();
        m[(b, a)] = -c;
    }
    m
}

/// All integer skew-symmetric `J` with `Aᵀ J A = J`.
///
/// The invariance condition is linear in the strict upper-triangle
/// coordinates of `J`; its integer kernel is saturated, hence a basis of
/// every integer solution.
pub fn solve_invariant_form(a: &IntMatrix) -> SkewFormLattice {
    let n = a.rows();
    let slots = pairs(n);
    let at = a.transpose();
    let columns: Vec<IntVec> = slots
        .iter()
        .map(|&(p, q)| {
            let mut e = IntMatrix::zeros(n, n);
            e[(p, q)] = BigInt::one();
            e[(q, p)] = -BigInt::one();
            let image = &(&(&at * &e) * a) - &e;
            skew_coordinates(&image)
        })
        .collect();
    let system = if slots.is_empty() {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(columns).expect("rectangular").transpose()
    };
    let kernel = if slots.is_empty() { Vec::new() } else { integer_kernel(&system) };
    let basis: Vec<IntMatrix> = kernel.iter().map(|c| skew_from_coordinates(n, c)).collect();
    debug_assert!(basis.iter().all(|j| j.is_skew() && &(&at * j) * a == *j));
    let (nondegenerate, search_note) = search_nondegenerate(n, &kernel);
    SkewFormLattice { dim: n, rank: basis.len(), basis, nondegenerate, search_note }
}

fn search_nondegenerate(n: usize, kernel: &[IntVec]) -> (Option<IntMatrix>, String) {
    if n % 2 == 1 {
        return (None, "odd dimension: every skew form is degenerate".into());
    }
    if kernel.is_empty() {
        return (None, "no invariant skew form".into());
    }
    let mut tried = 0usize;
    for shell in 1..=FORM_SEARCH_NORM {
        let mut found = None;
        let finished = for_each_in_shell(kernel.len(), shell, |c| {
            tried += 1;
            if tried > FORM_SEARCH_BUDGET {
                return Walk::Stop;
            }
            let coords = combine(kernel, c);
            let j = skew_from_coordinates(n, &coords);
            if !j.det().is_zero() {
                found = Some(j);
                return Walk::Stop;
            }
            Walk::Continue
        });
        if let Some(j) = found {
            return (Some(j), format!("found at coordinate max-norm {shell}"));
        }
        if !finished {
            return (None, format!("none found: candidate budget {FORM_SEARCH_BUDGET} exhausted"));
        }
    }
    (None, format!("none found with coordinate max-norm <= {FORM_SEARCH_NORM}"))
}

pub(crate) fn combine(basis: &[IntVec], c: &[i64]) -> IntVec {
    let len = basis[0].len();
    let mut out = vec![BigInt::zero(); len];
    for (b, &k) in basis.iter().zip(c) {
        if k == 0 {
            continue;
        }
        let k = BigInt::from(k);
        for (o, x) in out.iter_mut().zip(b) {
            *o += &k * x;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Walk {
    Continue,
    Stop,
}

/// Visits every vector in `{-s..=s}^k` with max-norm exactly `s`, in
/// lexicographic order. Returns `false` if the visitor stopped early.
pub(crate) fn for_each_in_shell(k: usize, s: i64, mut visit: impl FnMut(&[i64]) -> Walk) -> bool {
    if k == 0 || s <= 0 {
        return true;
    }
    let mut c = vec![-s; k];
    loop {
        if c.iter().any(|x| x.abs() == s) && visit(&c) == Walk::Stop {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if c[i] < s {
                c[i] += 1;
                break;
            }
            c[i] = -s;
        }
    }
}

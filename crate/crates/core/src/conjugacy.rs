//! Integral similarity `H A = B H` with `H` unimodular: cheap necessary
//! invariants, the lattice of all integer intertwiners, and a bounded search
//! for a unimodular element of that lattice.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::factor::factor_over_q;
use crate::foliation::{classify_foliation, FoliationKind};
use crate::forms::{combine, for_each_in_shell, Walk};
use crate::lattice::{integer_kernel, size_reduce, smith_normal_form, IntVec};
use crate::matrix::IntMatrix;
use crate::poly::IntPoly;

pub const DEFAULT_SEARCH_BOUND: u32 = 3;
/// Candidate cap for the witness search regardless of the bound.
pub const WITNESS_BUDGET: usize = 2_000_000;
pub const SHIFTS: [i64; 5] = [-2, -1, 0, 1, 2];
pub const TRACE_POWERS: u32 = 6;

/// Integral-similarity invariants. Equality is necessary for `A ~ B` over
/// `Z`, not sufficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantBundle {
    pub char_poly: IntPoly,
    /// Smith diagonal of `f(A)` for each irreducible factor `f`.
    pub factor_smith: Vec<(IntPoly, Vec<BigInt>)>,
    /// Smith diagonal of `A - kI` for `k` in [`SHIFTS`].
    pub shift_smith: Vec<(i64, Vec<BigInt>)>,
    /// `tr(A^j)` for `j = 1..=TRACE_POWERS`.
    pub power_traces: Vec<BigInt>,
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

impl InvariantBundle {
    /// Describes the first invariant on which `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<String> {
        if self.char_poly != other.char_poly {
            return Some(format!("char_poly: {} vs {}", self.char_poly, other.char_poly));
        }
        for ((f, d1), (_, d2)) in self.factor_smith.iter().zip(&other.factor_smith) {
            if d1 != d2 {
                return Some(format!("smith diagonal of f(A) for f = {f}: {} vs {}", fmt_vec(d1), fmt_vec(d2)));
            }
        }
        for ((k, d1), (_, d2)) in self.shift_smith.iter().zip(&other.shift_smith) {
            if d1 != d2 {
                return Some(format!("smith diagonal of A - ({k})I: {} vs {}", fmt_vec(d1), fmt_vec(d2)));
            }
        }
        for (j, (t1, t2)) in self.power_traces.iter().zip(&other.power_traces).enumerate() {
            if t1 != t2 {
                return Some(format!("trace of A^{}: {t1} vs {t2}", j + 1));
            }
        }
        None
    }
}

pub fn similarity_invariants(a: &IntMatrix) -> InvariantBundle {
    let n = a.rows();
    let char_poly = a.char_poly();
    let factor_smith = factor_over_q(&char_poly)
        .into_iter()
        .map(|(f, _)| {
            let d = smith_normal_form(&a.eval_poly(&f)).diagonal();
            (f, d)
        })
        .collect();
    let shift_smith = SHIFTS
        .iter()
        .map(|&k| {
            let m = a - &IntMatrix::scalar(n, &BigInt::from(k));
            (k, smith_normal_form(&m).diagonal())
        })
        .collect();
    let mut power = IntMatrix::identity(n);
    let power_traces = (0..TRACE_POWERS)
        .map(|_| {
            power = &power * a;
            power.trace()
        })
        .collect();
    InvariantBundle { char_poly, factor_smith, shift_smith, power_traces }
}

/// Basis of all integer `H` with `H A = B H`, size reduced.
pub fn conjugator_lattice(a: &IntMatrix, b: &IntMatrix) -> Result<Vec<IntMatrix>> {
    let n = a.rows();
    if !a.is_square() || !b.is_square() || b.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    // unknown h_{ik} sits at column i*n + k; equation (i, j) at row i*n + j
    let mut m = IntMatrix::zeros(n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            let row = i * n + j;
            for k in 0..n {
                m[(row, i * n + k)] += &a[(k, j)];
                m[(row, k * n + j)] -= &b[(i, k)];
            }
        }
    }
    let kernel = size_reduce(&integer_kernel(&m));
    Ok(kernel.iter().map(|v| vector_to_matrix(n, v)).collect())
}

fn vector_to_matrix(n: usize, v: &[BigInt]) -> IntMatrix {
    IntMatrix::from_rows(v.chunks(n).map(<[BigInt]>::to_vec).collect()).expect("n*n entries")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConjugacyStatus {
    Conjugate,
    Distinct,
    Unknown,
}

impl ConjugacyStatus {
    pub fn label(self) -> &'static str {
        match self {
            ConjugacyStatus::Conjugate => "CONJUGATE",
            ConjugacyStatus::Distinct => "DISTINCT",
            ConjugacyStatus::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremScope {
    /// Both unstable foliations are transitive.
    Transitive,
    OutsideTheoremScope,
}

impl TheoremScope {
    pub fn label(self) -> &'static str {
        match self {
            TheoremScope::Transitive => "TRANSITIVE",
            TheoremScope::OutsideTheoremScope => "OUTSIDE_THEOREM_SCOPE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyVerdict {
    pub status: ConjugacyStatus,
    pub witness: Option<IntMatrix>,
    pub separating_invariant: Option<String>,
    pub search_bound: u32,
    pub scope: TheoremScope,
    pub note: String,
}

pub fn verify_conjugacy(a: &IntMatrix, b: &IntMatrix, h: &IntMatrix) -> bool {
    a.is_square()
        && h.rows() == a.rows()
        && h.cols() == a.rows()
        && b.rows() == a.rows()
        && b.cols() == a.rows()
        && &(h * a) == &(b * h)
        && h.det().abs().is_one()
}

fn scope_of(a: &IntMatrix, b: &IntMatrix) -> TheoremScope {
    let transitive = |m: &IntMatrix| matches!(classify_foliation(m), Ok(v) if v.kind == FoliationKind::Transitive);
    if transitive(a) && transitive(b) {
        TheoremScope::Transitive
    } else {
        TheoremScope::OutsideTheoremScope
    }
}

/// Tri-state semi-decision of integral similarity.
///
/// Invariants are compared first; when they agree the size-reduced
/// intertwiner lattice is searched shell by shell (coordinate max-norm
/// `1..=bound`, lexicographic within a shell) for an element of
/// determinant `±1`.
pub fn decide_conjugacy(a: &IntMatrix, b: &IntMatrix, bound: u32) -> Result<ConjugacyVerdict> {
    for (name, m) in [("A", a), ("B", b)] {
        if !m.is_square() || !m.is_unimodular() {
            return Err(Error::NotUnimodular(name.to_string()));
        }
    }
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", a.rows(), b.rows())));
    }
    let scope = scope_of(a, b);
    let verdict = |status, witness, separating_invariant, note: &str| ConjugacyVerdict {
        status,
        witness,
        separating_invariant,
        search_bound: bound,
        scope,
        note: note.to_string(),
    };
    if a == b {
        let id = IntMatrix::identity(a.rows());
        return Ok(verdict(ConjugacyStatus::Conjugate, Some(id), None, "identical matrices"));
    }
    if let Some(diff) = similarity_invariants(a).first_difference(&similarity_invariants(b)) {
        return Ok(verdict(ConjugacyStatus::Distinct, None, Some(diff), "invariants differ"));
    }
    let basis = conjugator_lattice(a, b)?;
    if basis.is_empty() {
        return Ok(verdict(
            ConjugacyStatus::Distinct,
            None,
            Some("no nonzero integer intertwiner".to_string()),
            "intertwiner lattice is trivial",
        ));
    }
    match search_witness(&basis, bound) {
        Search::Found(h) => {
            debug_assert!(verify_conjugacy(a, b, &h));
            Ok(verdict(ConjugacyStatus::Conjugate, Some(h), None, "unimodular intertwiner found"))
        }
        Search::Exhausted => Ok(verdict(
            ConjugacyStatus::Unknown,
            None,
            None,
            &format!("no unimodular intertwiner with coordinates of max-norm <= {bound}"),
        )),
        Search::OverBudget => Ok(verdict(
            ConjugacyStatus::Unknown,
            None,
            None,
            &format!("candidate budget {WITNESS_BUDGET} exhausted"),
        )),
    }
}

enum Search {
    Found(IntMatrix),
    Exhausted,
    OverBudget,
}

fn search_witness(basis: &[IntMatrix], bound: u32) -> Search {
    let n = basis[0].rows();
    let vectors: Vec<IntVec> = basis.iter().map(|h| h.entries().to_vec()).collect();
    let floats: Vec<Vec<f64>> =
        vectors.iter().map(|v| v.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect()).collect();
    let mut tried = 0usize;
    for shell in 1..=bound as i64 {
        let mut found = None;
        let mut over = false;
        for_each_in_shell(vectors.len(), shell, |c| {
            tried += 1;
            if tried > WITNESS_BUDGET {
                over = true;
                return Walk::Stop;
            }
            if !float_det_may_be_unit(&floats, c, n) {
                return Walk::Continue;
            }
            let h = vector_to_matrix(n, &combine(&vectors, c));
            if h.det().abs().is_one() {
                found = Some(h);
                return Walk::Stop;
            }
            Walk::Continue
        });
        if let Some(h) = found {
            return Search::Found(h);
        }
        if over {
            return Search::OverBudget;
        }
    }
    Search::Exhausted
}

/// Cheap filter: `false` only when a floating determinant is certainly not
/// `±1`. The margin covers elimination round-off.
fn float_det_may_be_unit(basis: &[Vec<f64>], c: &[i64], n: usize) -> bool {
    let mut m = vec![0.0f64; n * n];
    for (b, &k) in basis.iter().zip(c) {
        if k != 0 {
            let k = k as f64;
            for (x, y) in m.iter_mut().zip(b) {
                *x += k * y;
            }
        }
    }
    let hadamard: f64 = (0..n)
        .map(|i| m[i * n..(i + 1) * n].iter().map(|x| x * x).sum::<f64>().sqrt())
        .product();
    if !hadamard.is_finite() {
        return true;
    }
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| m[i * n + col].abs().total_cmp(&m[j * n + col].abs())).unwrap();
        if m[piv * n + col] == 0.0 {
            det = 0.0;
            break;
        }
        if piv != col {
            for k in 0..n {
                m.swap(piv * n + k, col * n + k);
            }
            det = -det;
        }
        let p = m[col * n + col];
        det *= p;
        for r in col + 1..n {
            let f = m[r * n + col] / p;
            if f != 0.0 {
                for k in col..n {
                    m[r * n + k] -= f * m[col * n + k];
                }
            }
        }
    }
    (det.abs() - 1.0).abs() <= 0.25 + 1e-10 * hadamard.max(1.0)
}

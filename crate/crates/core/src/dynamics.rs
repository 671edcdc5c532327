//! Orbits and leaves on the torus: exact periods of rational points, counts
//! of periodic points, floating unstable frames, density scans of the leaf
//! through the origin, and Kronecker approximation witnesses.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::foliation::{resonance_relations, SpectrumPart};
use crate::lattice::{smith_normal_form, IntVec};
use crate::matrix::IntMatrix;
use crate::numeric::{complex_roots, inverse_iteration, residual};
use crate::spectral::{is_ergodic, spectrum_trichotomy};

pub const MAX_DENOMINATOR: u64 = 1_000_000;
/// Iteration cap for [`period_of`].
pub const PERIOD_BUDGET: u64 = 50_000_000;
pub const FRAME_RESIDUAL: f64 = 1e-9;
pub const SAMPLE_RANGE: f64 = 1000.0;
pub const DEFAULT_KRONECKER_BUDGET: u64 = 200_000_000;

/// A point of the torus with rational coordinates `numerators / denominator`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
}

impl RationalPoint {
    /// Reduces coordinates into `[0, 1)` and clears common factors.
    pub fn new(numerators: Vec<BigInt>, denominator: BigInt) -> Result<Self> {
        if !denominator.is_positive() {
            return Err(Error::InvalidParameter("denominator must be positive".into()));
        }
        let nums: Vec<BigInt> = numerators.iter().map(|x| x.mod_floor(&denominator)).collect();
        let g = nums.iter().fold(denominator.clone(), |g, x| g.gcd(x));
        Ok(RationalPoint { numerators: nums.iter().map(|x| x / &g).collect(), denominator: &denominator / &g })
    }

    pub fn from_i64(numerators: &[i64], denominator: i64) -> Result<Self> {
        Self::new(numerators.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(denominator))
    }

    pub fn dim(&self) -> usize {
        self.numerators.len()
    }
}

/// Least `k >= 1` with `A^k x = x` on the torus, computed on `(Z/q)^n`.
pub fn period_of(a: &IntMatrix, x: &RationalPoint) -> Result<u64> {
    if x.dim() != a.rows() {
        return Err(Error::DimensionMismatch(format!("point of dimension {} for {}x{} matrix", x.dim(), a.rows(), a.cols())));
    }
    if !is_ergodic(a) {
        return Err(Error::MayBeNonPeriodic);
    }
    let q = match x.denominator.to_u64() {
        Some(q) if q <= MAX_DENOMINATOR => q as i128,
        _ => return Err(Error::DenominatorTooLarge(x.denominator.to_string())),
    };
    let n = a.rows();
    let m: Vec<i128> = a
        .entries()
        .iter()
        .map(|e| e.mod_floor(&BigInt::from(q)).to_i128().expect("reduced"))
        .collect();
    let start: Vec<i128> = x.numerators.iter().map(|v| v.to_i128().expect("reduced")).collect();
    let mut cur = start.clone();
    for k in 1..=PERIOD_BUDGET {
        cur = (0..n).map(|i| (0..n).map(|j| m[i * n + j] * cur[j]).sum::<i128>().rem_euclid(q)).collect();
        if cur == start {
            return Ok(k);
        }
    }
    Err(Error::PeriodBudgetExceeded(PERIOD_BUDGET))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixedPointCount {
    Finite(BigInt),
    Infinite,
}

/// Number of points with `A^k x = x`: `|det(A^k - I)|`, or infinitely many
/// when that determinant vanishes.
pub fn count_fixed_points(a: &IntMatrix, k: u32) -> Result<FixedPointCount> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let m = &a.pow(k) - &IntMatrix::identity(a.rows());
    let det = m.det().abs();
    let smith: BigInt = smith_normal_form(&m).diagonal().iter().product::<BigInt>().abs();
    assert_eq!(det, smith, "determinant and Smith product disagree");
    Ok(if det.is_zero() { FixedPointCount::Infinite } else { FixedPointCount::Finite(det) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    RealPair,
    ComplexPair,
}

impl FrameKind {
    pub fn label(self) -> &'static str {
        match self {
            FrameKind::RealPair => "REAL_PAIR",
            FrameKind::ComplexPair => "COMPLEX_PAIR",
        }
    }
}

/// Two unit vectors spanning the unstable subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct UnstableFrame {
    pub vectors: [Vec<f64>; 2],
    pub kind: FrameKind,
    pub eigenvalues: [Complex64; 2],
}

impl UnstableFrame {
    pub fn gram_det(&self) -> f64 {
        let d = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
        let [u, v] = &self.vectors;
        d(u, u) * d(v, v) - d(u, v).powi(2)
    }
}

fn is_companion_layout(a: &IntMatrix) -> bool {
    let n = a.rows();
    (0..n - 1).all(|i| (0..n).all(|j| a[(i, j)] == if j == i + 1 { BigInt::one() } else { BigInt::zero() }))
}

fn unit(v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.into_iter().map(|x| x / norm).collect()
}

/// Floating eigenvector frame of a two-dimensional unstable part.
pub fn unstable_frame(a: &IntMatrix) -> Result<UnstableFrame> {
    let split = spectrum_trichotomy(a)?;
    if split.dims.unstable != 2 {
        return Err(Error::WrongUnstableDim(split.dims.unstable));
    }
    let mut outside: Vec<Complex64> = split
        .factors
        .iter()
        .filter(|f| f.counts.outside > 0)
        .flat_map(|f| {
            let mut r = complex_roots(&f.factor);
            r.sort_by(|x, y| y.norm().total_cmp(&x.norm()));
            r.truncate(f.counts.outside);
            r
        })
        .collect();
    outside.sort_by(|x, y| y.im.total_cmp(&x.im).then(y.re.total_cmp(&x.re)));
    let rows = a.to_f64_rows();
    let n = a.rows();
    let companion = is_companion_layout(a);
    let eigvec = |lambda: Complex64| -> Result<Vec<Complex64>> {
        let start: Vec<Complex64> = if companion {
            (0..n).map(|k| lambda.powu(k as u32)).collect()
        } else {
            vec![Complex64::new(1.0, 0.0); n]
        };
        let v = inverse_iteration(&rows, lambda, &start);
        let r = residual(&rows, lambda, &v);
        if r > FRAME_RESIDUAL || !r.is_finite() {
            return Err(Error::EigenvectorResidual(r));
        }
        Ok(v)
    };
    let complex = outside[0].im.abs() > 1e-9 * outside[0].norm();
    let frame = if complex {
        let lambda = Complex64::new(outside[0].re, outside[0].im.abs());
        let v = eigvec(lambda)?;
        UnstableFrame {
            vectors: [unit(v.iter().map(|z| z.re).collect()), unit(v.iter().map(|z| z.im).collect())],
            kind: FrameKind::ComplexPair,
            eigenvalues: [lambda, lambda.conj()],
        }
    } else {
        let l1 = Complex64::new(outside[0].re, 0.0);
        let l2 = Complex64::new(outside[1].re, 0.0);
        let v1 = eigvec(l1)?;
        let v2 = eigvec(l2)?;
        UnstableFrame {
            vectors: [unit(v1.iter().map(|z| z.re).collect()), unit(v2.iter().map(|z| z.re).collect())],
            kind: FrameKind::RealPair,
            eigenvalues: [l1, l2],
        }
    };
    if frame.gram_det() <= 1e-9 {
        return Err(Error::EigenvectorResidual(frame.gram_det()));
    }
    Ok(frame)
}

/// Reduces `x` into `[0, 1)`.
pub fn frac(x: f64) -> f64 {
    let r = x.rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Distance from `x` to the nearest integer.
pub fn dist_to_integer(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// Deterministic pseudo-random points `t1 γ1 + t2 γ2 mod 1` of the leaf
/// through the origin, with `t` uniform in `[-SAMPLE_RANGE, SAMPLE_RANGE]^2`.
pub fn leaf_samples(frame: &UnstableFrame, samples: u64, seed: u64) -> impl Iterator<Item = Vec<f64>> + '_ {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(move |_| {
        let t1: f64 = rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
        let t2: f64 = rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE);
        let [g1, g2] = &frame.vectors;
        g1.iter().zip(g2).map(|(a, b)| frac(t1 * a + t2 * b)).collect()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityScan {
    pub coverage: f64,
    pub boxes_hit: u64,
    pub total_boxes: u64,
    pub resolution: u32,
    pub samples: u64,
    pub seed: u64,
}

/// Fraction of the `resolution^n` congruence boxes visited by leaf samples.
pub fn leaf_density_scan(a: &IntMatrix, resolution: u32, samples: u64, seed: u64) -> Result<DensityScan> {
    if resolution < 2 {
        return Err(Error::InvalidParameter("resolution must be at least 2".into()));
    }
    let n = a.rows() as u32;
    let total_boxes = (resolution as u64)
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidParameter("too many boxes".into()))?;
    if samples < total_boxes {
        return Err(Error::InsufficientSamples(total_boxes));
    }
    let frame = unstable_frame(a)?;
    let mut hit = std::collections::HashSet::new();
    for p in leaf_samples(&frame, samples, seed) {
        let index = p.iter().fold(0u64, |acc, x| {
            let cell = ((x * resolution as f64) as u64).min(resolution as u64 - 1);
            acc * resolution as u64 + cell
        });
        hit.insert(index);
    }
    let boxes_hit = hit.len() as u64;
    Ok(DensityScan {
        coverage: boxes_hit as f64 / total_boxes as f64,
        boxes_hit,
        total_boxes,
        resolution,
        samples,
        seed,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum KroneckerOutcome {
    Witness { t: [f64; 2], p: Vec<i64>, residual: f64 },
    /// An integer relation orthogonal to the leaf that the target violates.
    Obstruction(IntVec),
}

fn kron_residual(frame: &UnstableFrame, target: &[f64], t: [f64; 2]) -> f64 {
    let [g1, g2] = &frame.vectors;
    (0..target.len())
        .map(|i| dist_to_integer(t[0] * g1[i] + t[1] * g2[i] - target[i]))
        .fold(0.0, f64::max)
}

/// Replays a witness: `max_i |t1 γ1_i + t2 γ2_i - p_i - target_i|`.
pub fn replay_witness(frame: &UnstableFrame, target: &[f64], t: [f64; 2], p: &[i64]) -> f64 {
    let [g1, g2] = &frame.vectors;
    (0..target.len())
        .map(|i| (t[0] * g1[i] + t[1] * g2[i] - p[i] as f64 - target[i]).abs())
        .fold(0.0, f64::max)
}

/// Approximates `target` mod 1 by a point of the leaf through the origin,
/// or returns a resonance relation proving that no such point exists.
///
/// A relation `r` obstructs when `(r, target)` is farther than `eps·|r|_1`
/// from an integer. Otherwise a square-ring scan over `t` with step
/// `2 eps / L`, `L = max_i (|γ1_i| + |γ2_i|)`, marks candidates within
/// `2 eps`, each refined on a grid eight times finer.
pub fn kronecker_witness(a: &IntMatrix, target: &[f64], eps: f64, budget: u64) -> Result<KroneckerOutcome> {
    if eps < 1e-3 || !eps.is_finite() {
        return Err(Error::InvalidParameter("eps must be at least 1e-3".into()));
    }
    if target.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("target of length {} for dimension {}", target.len(), a.rows())));
    }
    let frame = unstable_frame(a)?;
    for r in resonance_relations(a, SpectrumPart::Unstable)? {
        let rf: Vec<f64> = r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
        let pairing: f64 = rf.iter().zip(target).map(|(x, y)| x * y).sum();
        let l1: f64 = rf.iter().map(|x| x.abs()).sum();
        if dist_to_integer(pairing) > eps * l1 {
            return Ok(KroneckerOutcome::Obstruction(r));
        }
    }
    let witness = |t: [f64; 2]| {
        let [g1, g2] = &frame.vectors;
        let p: Vec<i64> =
            (0..target.len()).map(|i| (t[0] * g1[i] + t[1] * g2[i] - target[i]).round() as i64).collect();
        let residual = replay_witness(&frame, target, t, &p);
        KroneckerOutcome::Witness { t, p, residual }
    };
    if kron_residual(&frame, target, [0.0, 0.0]) <= eps {
        return Ok(witness([0.0, 0.0]));
    }
    let [g1, g2] = &frame.vectors;
    let lip = g1.iter().zip(g2).map(|(x, y)| x.abs() + y.abs()).fold(0.0, f64::max);
    let h = 2.0 * eps / lip;
    let fine = h / 8.0;
    let mut visited = 0u64;
    let mut ring: i64 = 0;
    loop {
        let cells = if ring == 0 { 1 } else { 8 * ring as u64 };
        if visited + cells > budget {
            return Err(Error::BudgetExhausted(budget));
        }
        visited += cells;
        for (i, j) in ring_cells(ring) {
            let t = [i as f64 * h, j as f64 * h];
            if kron_residual(&frame, target, t) > 2.0 * eps {
                continue;
            }
            let mut best = (f64::INFINITY, t);
            for di in -4..=4 {
                for dj in -4..=4 {
                    let s = [t[0] + di as f64 * fine, t[1] + dj as f64 * fine];
                    let r = kron_residual(&frame, target, s);
                    if r < best.0 {
                        best = (r, s);
                    }
                }
            }
            if best.0 <= eps {
                if let KroneckerOutcome::Witness { residual, .. } = witness(best.1) {
                    if residual <= eps {
                        return Ok(witness(best.1));
                    }
                }
            }
        }
        ring += 1;
    }
}

/// Integer points with max-norm exactly `k`, in a fixed order.
fn ring_cells(k: i64) -> Vec<(i64, i64)> {
    if k == 0 {
        return vec![(0, 0)];
    }
    let mut out = Vec::with_capacity(8 * k as usize);
    for i in -k..=k {
        for j in -k..=k {
            if i.abs() == k || j.abs() == k {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> IntMatrix {
        IntMatrix::from_i64(&[&[2, 1], &[1, 1]])
    }

    #[test]
    fn period_of_half_point() {
        let x = RationalPoint::from_i64(&[1, 1], 2).unwrap();
        assert_eq!(period_of(&cat(), &x).unwrap(), 3);
        let o = RationalPoint::from_i64(&[0, 0], 7).unwrap();
        assert_eq!(period_of(&cat(), &o).unwrap(), 1);
        let rot = IntMatrix::from_i64(&[&[0, 1], &[-1, 1]]);
        assert_eq!(period_of(&rot, &x), Err(Error::MayBeNonPeriodic));
        let big = RationalPoint::from_i64(&[1, 0], 1_000_003).unwrap();
        assert!(matches!(period_of(&cat(), &big), Err(Error::DenominatorTooLarge(_))));
    }

    #[test]
    fn fixed_point_counts() {
        assert_eq!(count_fixed_points(&cat(), 1).unwrap(), FixedPointCount::Finite(1.into()));
        assert_eq!(count_fixed_points(&cat(), 2).unwrap(), FixedPointCount::Finite(5.into()));
        let rot = IntMatrix::from_i64(&[&[0, 1], &[-1, 1]]);
        assert_eq!(count_fixed_points(&rot, 6).unwrap(), FixedPointCount::Infinite);
    }

    #[test]
    fn anosov_surface_has_wrong_unstable_dim() {
        assert_eq!(unstable_frame(&cat()), Err(Error::WrongUnstableDim(1)));
        assert_eq!(leaf_density_scan(&cat(), 2, 100, 1), Err(Error::WrongUnstableDim(1)));
    }

    #[test]
    fn frac_stays_in_unit_interval() {
        assert_eq!(frac(-1e-30), 0.0);
        assert_eq!(frac(2.25), 0.25);
    }

    #[test]
    fn ring_sizes() {
        assert_eq!(ring_cells(0).len(), 1);
        assert_eq!(ring_cells(3).len(), 24);
    }
}

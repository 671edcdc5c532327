//! Leaf closures of the invariant foliations.
//!
//! The closure of the leaf through the origin of a linear foliation is the
//! subtorus cut out by the smallest rational subspace containing the leaf.
//! For an invariant spectral part that subspace is the sum of `ker f(A)` over
//! the irreducible factors `f` of the characteristic polynomial with a root
//! in the part.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, orthogonal_complement, IntVec};
use crate::matrix::IntMatrix;
use crate::poly::{product, IntPoly};
use crate::spectral::{is_partially_hyperbolic, spectrum_trichotomy, SpectrumSplit};

/// Largest power tried when looking for the order of the center block.
pub const CENTER_ORDER_BOUND: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectrumPart {
    Stable,
    Center,
    Unstable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalHull {
    pub dim: usize,
    pub basis: Vec<IntVec>,
}

fn selected(split: &SpectrumSplit, part: SpectrumPart) -> Vec<IntPoly> {
    split
        .factors
        .iter()
        .filter(|fs| match part {
            SpectrumPart::Stable => fs.counts.inside > 0,
            SpectrumPart::Center => fs.counts.on > 0,
            SpectrumPart::Unstable => fs.counts.outside > 0,
        })
        .map(|fs| fs.factor.clone())
        .collect()
}

fn kernel_of(a: &IntMatrix, g: &IntPoly) -> Vec<IntVec> {
    integer_kernel(&a.eval_poly(g))
}

/// Smallest `A`-invariant rational subspace containing the eigenvectors of
/// the selected part, as a saturated Hermite basis.
pub fn rational_hull(a: &IntMatrix, part: SpectrumPart) -> Result<RationalHull> {
    let split = spectrum_trichotomy(a)?;
    hull_from_split(a, &split, part)
}

fn hull_from_split(a: &IntMatrix, split: &SpectrumSplit, part: SpectrumPart) -> Result<RationalHull> {
    let chosen = selected(split, part);
    if chosen.is_empty() {
        return Err(Error::EmptyPart);
    }
    // factors are pairwise coprime, so ker of the product is the direct sum
    let basis = kernel_of(a, &product(chosen.iter()));
    Ok(RationalHull { dim: basis.len(), basis })
}

/// Primitive integer vectors orthogonal to the hull of `part`.
pub fn resonance_relations(a: &IntMatrix, part: SpectrumPart) -> Result<Vec<IntVec>> {
    let hull = rational_hull(a, part)?;
    Ok(orthogonal_complement(&hull.basis, a.rows()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FoliationKind {
    Transitive,
    Decomposable,
}

impl FoliationKind {
    pub fn label(self) -> &'static str {
        match self {
            FoliationKind::Transitive => "TRANSITIVE",
            FoliationKind::Decomposable => "DECOMPOSABLE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoliationVerdict {
    pub kind: FoliationKind,
    pub closure_dim: usize,
    pub hull_basis: Vec<IntVec>,
    pub resonance_basis: Vec<IntVec>,
    /// Set when the unstable dimension is not two.
    pub unstable_dim_not_two: bool,
}

/// Transitivity of the unstable foliation of a partially hyperbolic map.
pub fn classify_foliation(a: &IntMatrix) -> Result<FoliationVerdict> {
    let ph = is_partially_hyperbolic(a)?;
    if !ph.partially_hyperbolic {
        return Err(Error::NotPartiallyHyperbolic);
    }
    let split = spectrum_trichotomy(a)?;
    let hull = hull_from_split(a, &split, SpectrumPart::Unstable)?;
    let n = a.rows();
    let resonance_basis = orthogonal_complement(&hull.basis, n);
    debug_assert_eq!(hull.dim + resonance_basis.len(), n);
    let kind = if hull.dim == n { FoliationKind::Transitive } else { FoliationKind::Decomposable };
    Ok(FoliationVerdict {
        kind,
        closure_dim: hull.dim,
        hull_basis: hull.basis,
        resonance_basis,
        unstable_dim_not_two: ph.dims.unstable != 2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorRole {
    /// No root on the unit circle.
    Anosov,
    /// Every root on the unit circle.
    Center,
    Mixed,
}

impl FactorRole {
    pub fn label(self) -> &'static str {
        match self {
            FactorRole::Anosov => "ANOSOV",
            FactorRole::Center => "CENTER",
            FactorRole::Mixed => "MIXED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBlock {
    pub factor: IntPoly,
    pub role: FactorRole,
    pub sublattice: Vec<IntVec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub factors: Vec<FactorBlock>,
    /// Least `k <= CENTER_ORDER_BOUND` with `A^k = I` on the center blocks.
    pub center_order: Option<u32>,
    pub center_note: String,
}

pub fn decomposition_report(a: &IntMatrix) -> Result<DecompositionReport> {
    let split = spectrum_trichotomy(a)?;
    let factors: Vec<FactorBlock> = split
        .factors
        .iter()
        .map(|fs| {
            let role = if fs.counts.on == 0 {
                FactorRole::Anosov
            } else if fs.counts.on == fs.factor.degree() {
                FactorRole::Center
            } else {
                FactorRole::Mixed
            };
            FactorBlock { factor: fs.factor.clone(), role, sublattice: kernel_of(a, &fs.factor) }
        })
        .collect();
    let center: Vec<&IntVec> =
        factors.iter().filter(|b| b.role == FactorRole::Center).flat_map(|b| &b.sublattice).collect();
    let (center_order, center_note) = if center.is_empty() {
        let note = if factors.iter().any(|b| b.role == FactorRole::Mixed) {
            "center roots belong to a mixed factor; no finite order"
        } else {
            "no center factor"
        };
        (None, note.to_string())
    } else {
        match center_block_order(a, &center) {
            Some(k) => (Some(k), format!("A^{k} is the identity on the center sublattice")),
            None => (None, format!("no power up to {CENTER_ORDER_BOUND} is the identity on the center sublattice")),
        }
    };
    Ok(DecompositionReport { factors, center_order, center_note })
}

fn center_block_order(a: &IntMatrix, basis: &[&IntVec]) -> Option<u32> {
    let mut images: Vec<IntVec> = basis.iter().map(|v| (*v).clone()).collect();
    for k in 1..=CENTER_ORDER_BOUND {
        images = images.iter().map(|v| a.mul_vec(v)).collect();
        if images.iter().zip(basis).all(|(w, v)| w == *v) {
            return Some(k);
        }
    }
    None
}

/// Writes a complex reduced root `u + iv` as `ρ e^{iα} + ρ⁻¹ e^{-iα}`, so that
/// `u = (ρ + ρ⁻¹) cos α` and `v = (ρ - ρ⁻¹) sin α`, with `ρ > 1`.
///
/// `s = ρ² + ρ⁻²` is the root `s > 2` of `s² − (u² + v²) s − 4 + 2(u² − v²)`.
/// The sign of `v` only selects the conjugate, so `α` is taken in `(0, π)`
/// using `|v|`.
pub fn polar_parameters(u: f64, v: f64) -> Result<(f64, f64)> {
    if v == 0.0 || !v.is_finite() || !u.is_finite() {
        return Err(Error::RealRoot);
    }
    let q = u * u + v * v;
    let disc = q * q + 16.0 - 8.0 * (u * u - v * v);
    let s = (q + disc.sqrt()) / 2.0;
    let rho = ((s + (s * s - 4.0).sqrt()) / 2.0).sqrt();
    let alpha = (v.abs() / (rho - 1.0 / rho)).atan2(u / (rho + 1.0 / rho));
    Ok((rho, alpha))
}

/// Standard basis vector `e_i` (0-based) of length `n`.
pub fn unit_vector(n: usize, i: usize) -> IntVec {
    (0..n).map(|k| if k == i { BigInt::one() } else { BigInt::zero() }).collect()
}

//! Spectral trichotomy, partial hyperbolicity, ergodicity and topological
//! entropy of a toral automorphism.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::factor::{cyclotomic_divisors, factor_over_q};
use crate::foliation::polar_parameters;
use crate::matrix::IntMatrix;
use crate::numeric::{complex_roots, newton_error};
use crate::poly::IntPoly;
use crate::reciprocal::reciprocal_reduce;
use crate::roots::{isolate_real_roots, rational_to_f64, refine_root, unit_circle_root_count, CircleCounts};

/// Default absolute accuracy of the entropy value.
pub const DEFAULT_ENTROPY_TOLERANCE: f64 = 1e-9;
/// Declared accuracy of the floating fallback for non-palindromic factors.
pub const FALLBACK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Dims {
    pub stable: usize,
    pub center: usize,
    pub unstable: usize,
}

impl Dims {
    pub fn total(&self) -> usize {
        self.stable + self.center + self.unstable
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSplit {
    pub factor: IntPoly,
    pub counts: CircleCounts,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumSplit {
    pub char_poly: IntPoly,
    pub factors: Vec<FactorSplit>,
    pub dims: Dims,
    pub simple: bool,
}

/// Irreducible factors of the characteristic polynomial with their exact
/// inside / on / outside root counts.
pub fn spectrum_trichotomy(a: &IntMatrix) -> Result<SpectrumSplit> {
    let cp = a.char_poly();
    if !cp.is_squarefree() {
        return Err(Error::NotSimpleSpectrum);
    }
    let mut factors = Vec::new();
    let mut dims = Dims::default();
    for (f, _) in factor_over_q(&cp) {
        let counts = unit_circle_root_count(&f)?;
        dims.stable += counts.inside;
        dims.center += counts.on;
        dims.unstable += counts.outside;
        factors.push(FactorSplit { factor: f, counts });
    }
    debug_assert_eq!(dims.total(), a.rows());
    Ok(SpectrumSplit { char_poly: cp, factors, dims, simple: true })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HyperbolicityVerdict {
    pub partially_hyperbolic: bool,
    pub anosov: bool,
    pub dims: Dims,
}

/// For a linear map with simple spectrum the splitting is the unit-circle
/// trichotomy, so partial hyperbolicity is nonemptiness of both the
/// expanding and the contracting part.
pub fn is_partially_hyperbolic(a: &IntMatrix) -> Result<HyperbolicityVerdict> {
    let dims = spectrum_trichotomy(a)?.dims;
    let ph = dims.unstable >= 1 && dims.stable >= 1;
    Ok(HyperbolicityVerdict { partially_hyperbolic: ph, anosov: ph && dims.center == 0, dims })
}

/// No eigenvalue is a root of unity.
pub fn is_ergodic(a: &IntMatrix) -> bool {
    let cp = a.char_poly();
    cp.degree() == 0 || cyclotomic_divisors(&cp).is_empty()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyMethod {
    /// Real reduced root refined by exact bisection.
    ExactReal,
    /// Complex reduced root through the polar parametrisation.
    Polar,
    /// Floating roots of a factor that is not palindromic.
    Floating,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyTerm {
    pub factor: IntPoly,
    pub contribution: f64,
    pub error_bound: f64,
    pub method: EntropyMethod,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    pub error_bound: f64,
    pub terms: Vec<EntropyTerm>,
}

/// Sum of `log |λ|` over eigenvalues outside the unit circle.
pub fn bowen_entropy(a: &IntMatrix, tolerance: f64) -> Result<EntropyValue> {
    let split = spectrum_trichotomy(a)?;
    let tolerance = if tolerance > 0.0 { tolerance } else { DEFAULT_ENTROPY_TOLERANCE };
    let mut terms = Vec::new();
    for fs in &split.factors {
        if fs.counts.outside == 0 {
            continue;
        }
        let f = &fs.factor;
        let per_root = tolerance / (2.0 * a.rows().max(1) as f64);
        if f.degree() >= 2 && f.degree() % 2 == 0 && f.is_self_reciprocal() {
            terms.extend(reciprocal_terms(f, per_root)?);
        } else {
            terms.push(floating_term(f));
        }
    }
    let value = terms.iter().map(|t| t.contribution).sum::<f64>().max(0.0);
    let error_bound = terms.iter().map(|t| t.error_bound).sum();
    Ok(EntropyValue { value, error_bound, terms })
}

fn reciprocal_terms(f: &IntPoly, per_root: f64) -> Result<Vec<EntropyTerm>> {
    let p = reciprocal_reduce(f)?;
    let two = BigRational::from_integer(2.into());
    let mut terms = Vec::new();
    let intervals = isolate_real_roots(&p)?;
    for iv in &intervals {
        // shrink until the interval is clear of [-2, 2] or inside it
        let mut iv = iv.clone();
        let mut width = &iv.1 - &iv.0;
        loop {
            let outside = iv.0 > two || iv.1 < -two.clone();
            let inside = iv.0 >= -two.clone() && iv.1 <= two;
            if inside {
                break;
            }
            if outside {
                let near = iv.0.abs().min(iv.1.abs());
                let near = rational_to_f64(&near);
                let err = rational_to_f64(&(&iv.1 - &iv.0)) / (near * near - 4.0).sqrt();
                if err <= per_root {
                    let z = rational_to_f64(&((&iv.0 + &iv.1) / &two));
                    let z = z.abs();
                    let value = ((z + (z * z - 4.0).sqrt()) / 2.0).ln();
                    terms.push(EntropyTerm {
                        factor: f.clone(),
                        contribution: value,
                        error_bound: err + 4.0 * f64::EPSILON * value.abs().max(1.0),
                        method: EntropyMethod::ExactReal,
                    });
                    break;
                }
            }
            width = width / &two;
            iv = refine_root(&p, &iv, &width);
            if iv.0 == iv.1 {
                // exact rational root; an integer z outside [-2, 2]
                let z = rational_to_f64(&iv.0).abs();
                if z > 2.0 {
                    let value = ((z + (z * z - 4.0).sqrt()) / 2.0).ln();
                    terms.push(EntropyTerm {
                        factor: f.clone(),
                        contribution: value,
                        error_bound: 4.0 * f64::EPSILON * value.abs().max(1.0),
                        method: EntropyMethod::ExactReal,
                    });
                }
                break;
            }
        }
    }
    let complex_pairs = (p.degree() - intervals.len()) / 2;
    if complex_pairs > 0 {
        let mut upper: Vec<Complex64> = complex_roots(&p);
        upper.sort_by(|x, y| y.im.total_cmp(&x.im));
        for z in upper.into_iter().take(complex_pairs) {
            let dz = newton_error(&p, z);
            let (rho, _) = polar_parameters(z.re, z.im)?;
            let x = Complex64::from_polar(rho, 0.0);
            // |d log|x| / dz| = |x| / |x^2 - 1| for x + 1/x = z
            let sens = x.norm() / (x * x - 1.0).norm();
            terms.push(EntropyTerm {
                factor: f.clone(),
                contribution: 2.0 * rho.ln(),
                error_bound: 2.0 * dz * sens + 8.0 * f64::EPSILON * rho.ln().abs().max(1.0),
                method: EntropyMethod::Polar,
            });
        }
    }
    Ok(terms)
}

fn floating_term(f: &IntPoly) -> EntropyTerm {
    let mut value = 0.0;
    let mut estimate = 0.0;
    for z in complex_roots(f) {
        if z.norm() > 1.0 {
            value += z.norm().ln();
            estimate += newton_error(f, z) / z.norm();
        }
    }
    EntropyTerm {
        factor: f.clone(),
        contribution: value,
        error_bound: f64::max(estimate, FALLBACK_TOLERANCE),
        method: EntropyMethod::Floating,
    }
}

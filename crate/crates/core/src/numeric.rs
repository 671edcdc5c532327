//! Floating-point helpers: polynomial roots and small complex linear algebra.
//!
//! Nothing here feeds an exact verdict. Roots and eigenvectors are used for
//! entropy fallbacks, unstable frames and sampling.

use num_complex::Complex64;

use crate::poly::IntPoly;

const ABERTH_MAX_ITER: usize = 500;

/// All complex roots of `p` (degree >= 1) by the Aberth–Ehrlich iteration
/// followed by two Newton polishing steps.
pub fn complex_roots(p: &IntPoly) -> Vec<Complex64> {
    let c = p.to_f64_coeffs();
    complex_roots_f64(&c)
}

pub fn complex_roots_f64(c: &[f64]) -> Vec<Complex64> {
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let deriv: Vec<f64> = (1..=n).map(|i| monic[i] * i as f64).collect();
    let eval = |coef: &[f64], z: Complex64| {
        coef.iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    };

    let radius = 1.0 + monic[..n].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(0.5 * radius, theta)
        })
        .collect();

    for _ in 0..ABERTH_MAX_ITER {
        let mut max_step = 0.0f64;
        for i in 0..n {
            let pv = eval(&monic, z[i]);
            let dv = eval(&deriv, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..2 {
            let dv = eval(&deriv, *zi);
            if dv.norm() > 0.0 {
                let step = eval(&monic, *zi) / dv;
                if step.is_finite() {
                    *zi -= step;
                }
            }
        }
    }
    z
}

/// Newton-step size at a root estimate, a practical error estimate for a
/// simple root.
pub fn newton_error(p: &IntPoly, z: Complex64) -> f64 {
    let d = p.derivative().eval_complex(z);
    let v = p.eval_complex(z);
    if d.norm() == 0.0 {
        return f64::INFINITY;
    }
    (v / d).norm()
}

/// Solves `m x = b` by Gaussian elimination with partial pivoting. Returns
/// `None` only for an exactly zero pivot column.
pub fn solve_complex(m: &[Vec<Complex64>], b: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = b.len();
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, piv);
        x.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            if f.norm() == 0.0 {
                continue;
            }
            for c in col..n {
                let t = a[col][c];
                a[r][c] -= f * t;
            }
            let t = x[col];
            x[r] -= f * t;
        }
    }
    for col in (0..n).rev() {
        let mut s = x[col];
        for c in col + 1..n {
            s -= a[col][c] * x[c];
        }
        x[col] = s / a[col][col];
    }
    Some(x)
}

pub fn norm2(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenvector for an eigenvalue estimate `lambda` by inverse iteration,
/// normalised to unit 2-norm with its largest component real positive.
pub fn inverse_iteration(a: &[Vec<f64>], lambda: Complex64, start: &[Complex64]) -> Vec<Complex64> {
    let n = a.len();
    let shift = lambda * (1.0 + 1e-10) + Complex64::new(1e-12, 1e-12);
    let shifted: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Complex64::new(a[i][j], 0.0) - if i == j { shift } else { Complex64::new(0.0, 0.0) })
                .collect()
        })
        .collect();
    let mut v = start.to_vec();
    for _ in 0..4 {
        let Some(w) = solve_complex(&shifted, &v) else { break };
        let nrm = norm2(&w);
        if !nrm.is_finite() || nrm == 0.0 {
            break;
        }
        v = w.into_iter().map(|z| z / nrm).collect();
    }
    let big = v
        .iter()
        .copied()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .unwrap_or(Complex64::new(1.0, 0.0));
    let phase = big.conj() / big.norm();
    v.into_iter().map(|z| z * phase).collect()
}

pub fn residual(a: &[Vec<f64>], lambda: Complex64, v: &[Complex64]) -> f64 {
    let n = a.len();
    (0..n)
        .map(|i| {
            let av: Complex64 = (0..n).map(|j| v[j] * a[i][j]).sum();
            (av - lambda * v[i]).norm()
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_golden_quadratic() {
        let mut r = complex_roots(&IntPoly::from_i64(&[1, -3, 1]));
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        let s5 = 5f64.sqrt();
        assert!((r[0].re - (3.0 - s5) / 2.0).abs() < 1e-14);
        assert!((r[1].re - (3.0 + s5) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn roots_of_sextic_have_small_residual() {
        let p = IntPoly::from_i64(&[1, -2, -5, -3, -5, -2, 1]);
        for z in complex_roots(&p) {
            assert!(p.eval_complex(z).norm() < 1e-10, "{z}");
        }
    }

    #[test]
    fn inverse_iteration_on_cat_map() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 1.0]];
        let lam = Complex64::new((3.0 + 5f64.sqrt()) / 2.0, 0.0);
        let v = inverse_iteration(&a, lam, &[Complex64::new(1.0, 0.0); 2]);
        assert!(residual(&a, lam, &v) < 1e-12);
    }
}

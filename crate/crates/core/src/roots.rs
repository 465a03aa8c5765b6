//! Univariate polynomial helpers: an Aberth–Ehrlich simultaneous root
//! finder for the approximate regime and an exact squarefree test for the
//! rational regime.
//!
//! Coefficients are stored in ascending order: `c[0] + c[1] t + ... + c[d] t^d`.

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::scalar::{Field, Rat, Ring, Tol, C64};

/// Per-coefficient residual bound for the reconstruction check of
/// [`poly_roots`], relative to the monic coefficient scale.
pub const ROOT_RESIDUAL: f64 = 1e-8;

/// Iteration cap for the Aberth solver.
pub const ROOT_ITERATION_CAP: usize = 500;

/// Minimum relative separation at which two computed roots count as
/// distinct. A numerically repeated root is only resolved to about
/// sqrt(machine epsilon) (~1e-8), so distinctness decisions must sit above
/// that noise floor.
pub const MIN_ROOT_SEPARATION: f64 = 1e-6;

pub fn poly_eval<T: Ring>(coeffs: &[T], x: &T) -> T {
    let mut acc = T::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

pub fn poly_derivative<T: Ring>(coeffs: &[T]) -> Vec<T> {
    if coeffs.len() <= 1 {
        return vec![T::zero()];
    }
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.mul(&T::from_i64(k as i64)))
        .collect()
}

fn trim_high_zeros<T: Ring>(coeffs: &[T]) -> &[T] {
    let mut end = coeffs.len();
    while end > 1 && coeffs[end - 1].is_zero() {
        end -= 1;
    }
    &coeffs[..end]
}

/// All complex roots of the given polynomial by simultaneous Aberth–Ehrlich
/// iteration. The returned multiset, multiplied back out, reproduces the
/// monic normalization of the input to within [`ROOT_RESIDUAL`] per
/// coefficient; otherwise the call fails with `NoConvergence`. Any internal
/// NaN aborts with `NoConvergence` rather than propagating.
pub fn poly_roots(coeffs: &[C64], tol: &Tol) -> Result<Vec<C64>> {
    assert!(coeffs.len() >= 2, "poly_roots requires degree >= 1");
    let coeff_scale = coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let lead = coeffs[coeffs.len() - 1];
    if lead.norm() <= tol.eps_rank * coeff_scale.max(1.0) {
        return Err(Error::LeadingZero);
    }
    let n = coeffs.len() - 1;
    let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    if n == 1 {
        return Ok(vec![-monic[0]]);
    }
    let deriv = poly_derivative(&monic);

    // Standard Aberth seeding: a circle of radius 1 + max |c_i / c_lead|,
    // with a deterministic per-index angular offset to break symmetry.
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4 + 0.01 * k as f64;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut converged = false;
    for _ in 0..ROOT_ITERATION_CAP {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let p = poly_eval(&monic, &z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let dp = poly_eval(&deriv, &z[k]);
            let w = if dp.norm() == 0.0 {
                // Stationary point: take a fixed nudge instead of dividing.
                Complex64::new(1e-3, 1e-3)
            } else {
                p / dp
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        repulsion += Complex64::new(1e6, 0.0);
                    } else {
                        repulsion += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * repulsion;
            let step = if denom.norm() == 0.0 { w } else { w / denom };
            if step.re.is_nan() || step.im.is_nan() {
                return Err(Error::NoConvergence(ROOT_ITERATION_CAP));
            }
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        let z_scale = z.iter().map(|r| r.norm()).fold(1.0f64, f64::max);
        if max_step <= 1e-14 * z_scale {
            converged = true;
            break;
        }
    }

    if z.iter().any(|r| r.re.is_nan() || r.im.is_nan()) {
        return Err(Error::NoConvergence(ROOT_ITERATION_CAP));
    }

    // Postcondition: the roots must reproduce the monic input.
    let rebuilt = monic_from_roots(&z);
    let monic_scale = monic.iter().map(|c| c.norm()).fold(1.0f64, f64::max);
    let residual = rebuilt
        .iter()
        .zip(&monic)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    if residual > ROOT_RESIDUAL * monic_scale {
        return Err(Error::NoConvergence(ROOT_ITERATION_CAP));
    }
    let _ = converged;
    Ok(z)
}

/// Expand prod (t - r_k) into ascending monic coefficients.
pub fn monic_from_roots(roots: &[C64]) -> Vec<C64> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for r in roots {
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        coeffs = next;
    }
    coeffs
}

/// Exact squarefree test over the rationals: `f` has no repeated roots iff
/// `gcd(f, f')` is constant. Constants count as squarefree.
pub fn squarefree_rational(coeffs: &[Rat]) -> Result<bool> {
    let f = trim_high_zeros(coeffs);
    if f.len() <= 1 {
        return Ok(true);
    }
    let df = poly_derivative(f);
    let g = rational_poly_gcd(f, &df);
    Ok(g.len() <= 1)
}

/// Euclidean gcd of rational polynomials (ascending coefficients); the
/// result is not normalized beyond trimming.
fn rational_poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut a = trim_high_zeros(a).to_vec();
    let mut b = trim_high_zeros(b).to_vec();
    if b.len() == 1 && b[0].is_zero() {
        return a;
    }
    loop {
        let r = rational_poly_rem(&a, &b);
        let r = trim_high_zeros(&r).to_vec();
        if r.len() == 1 && r[0].is_zero() {
            return b;
        }
        a = b;
        b = r;
    }
}

fn rational_poly_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead_inv = b[db].inv().expect("divisor leading coefficient non-zero");
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let factor = r[dr].mul(&lead_inv);
        if !factor.is_zero() {
            for k in 0..=db {
                let delta = factor.mul(&b[k]);
                r[dr - db + k] = r[dr - db + k].sub(&delta);
            }
        }
        r.pop();
        while r.len() > 1 && r[r.len() - 1].is_zero() {
            r.pop();
        }
        if r.is_empty() {
            r.push(Rat::zero());
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        Complex64::new(re, im)
    }

    fn assert_multiset_close(found: &[C64], expected: &[C64], tol: f64) {
        assert_eq!(found.len(), expected.len());
        let mut remaining = found.to_vec();
        for e in expected {
            let (idx, _) = remaining
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| (*a - e).norm().total_cmp(&(*b - e).norm()))
                .expect("non-empty");
            assert!(
                (remaining[idx] - e).norm() <= tol,
                "no root near {e}: {remaining:?}"
            );
            remaining.swap_remove(idx);
        }
    }

    #[test]
    fn difference_of_squares() {
        let roots = poly_roots(&[c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], &Tol::default()).unwrap();
        assert_multiset_close(&roots, &[c(1.0, 0.0), c(-1.0, 0.0)], 1e-10);
    }

    #[test]
    fn sum_of_squares() {
        let roots = poly_roots(&[c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], &Tol::default()).unwrap();
        assert_multiset_close(&roots, &[c(0.0, 1.0), c(0.0, -1.0)], 1e-10);
    }

    #[test]
    fn cubic_with_integer_roots() {
        // (t-1)(t-2)(t-3) = t^3 - 6 t^2 + 11 t - 6
        let roots = poly_roots(
            &[c(-6.0, 0.0), c(11.0, 0.0), c(-6.0, 0.0), c(1.0, 0.0)],
            &Tol::default(),
        )
        .unwrap();
        assert_multiset_close(&roots, &[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)], 1e-9);
    }

    #[test]
    fn leading_zero_detected() {
        let err = poly_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], &Tol::default());
        assert!(matches!(err, Err(Error::LeadingZero)));
    }

    #[test]
    fn degree_one() {
        let roots = poly_roots(&[c(3.0, 0.0), c(-2.0, 0.0)], &Tol::default()).unwrap();
        assert!((roots[0] - c(1.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn reconstruction_residual_on_random_polynomials() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let tol = Tol::default();
        for _ in 0..30 {
            let n = rng.gen_range(1..=6);
            let coeffs: Vec<C64> = (0..=n)
                .map(|k| {
                    let hi = if k == n {
                        rng.gen_range(1..=5) as f64
                    } else {
                        rng.gen_range(-5..=5) as f64
                    };
                    c(hi, 0.0)
                })
                .collect();
            let roots = poly_roots(&coeffs, &tol).unwrap();
            let lead = coeffs[n];
            let rebuilt = monic_from_roots(&roots);
            let scale = coeffs.iter().map(|x| (x / lead).norm()).fold(1.0f64, f64::max);
            for (k, r) in rebuilt.iter().enumerate() {
                assert!((r - coeffs[k] / lead).norm() <= ROOT_RESIDUAL * scale);
            }
        }
    }

    #[test]
    fn repeated_roots_still_reconstruct() {
        // (t-1)^2: the solver clusters both approximations near 1.
        let roots = poly_roots(&[c(1.0, 0.0), c(-2.0, 0.0), c(1.0, 0.0)], &Tol::default()).unwrap();
        for r in &roots {
            assert!((r - c(1.0, 0.0)).norm() < 1e-4);
        }
    }

    #[test]
    fn squarefree_tests() {
        // t^2 - 1 squarefree
        assert!(squarefree_rational(&[rat(-1), rat(0), rat(1)]).unwrap());
        // (t-1)^2 = t^2 - 2t + 1 not squarefree
        assert!(!squarefree_rational(&[rat(1), rat(-2), rat(1)]).unwrap());
        // constants are squarefree
        assert!(squarefree_rational(&[rat(5)]).unwrap());
        // (t-1)(t-2)(t-3)
        assert!(squarefree_rational(&[rat(-6), rat(11), rat(-6), rat(1)]).unwrap());
        // t^3 (triple root)
        assert!(!squarefree_rational(&[rat(0), rat(0), rat(0), rat(1)]).unwrap());
    }
}

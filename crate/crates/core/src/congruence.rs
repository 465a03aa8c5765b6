//! Congruence factorizations in the approximate regime: taking a
//! non-singular symmetric matrix to the identity, and the complex-orthogonal
//! diagonalization of a complex symmetric matrix with distinct eigenvalues.

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SymMat};
use crate::poly::{det_of_linear_forms, univariate_from_pencil};
use crate::roots::poly_roots;
use crate::scalar::{Ring, Scalar, Tol, C64};

/// Residual bound for `g^t A0 g - I`, relative to the input scale.
pub const CONGRUENCE_RESIDUAL: f64 = 1e-8;

/// Residual bound for `h^t h - I` and `h^t S h - diag`, relative to the
/// input scale.
pub const EIGEN_RESIDUAL: f64 = 1e-7;

/// Minimum relative eigenvalue separation accepted by
/// [`complex_symmetric_eigen`]. A numerically double root is resolved only
/// to about sqrt(machine epsilon) (~1e-8), so the gate must sit above that
/// noise floor to classify repeated eigenvalues as degenerate.
pub const EIGEN_GAP: f64 = 1e-6;

/// Characteristic polynomial coefficients (ascending) of det(t A0 - A1),
/// through the shared determinant expansion.
pub fn pencil_char_poly<T: Ring>(a0: &SymMat<T>, a1: &SymMat<T>) -> Vec<T> {
    let n = a0.n();
    assert_eq!(n, a1.n());
    let p = det_of_linear_forms(n, 2, |i, j| {
        vec![a0.get(i, j).clone(), a1.get(i, j).neg()]
    });
    univariate_from_pencil(&p)
}

/// A `g` with `g^t A0 g = I` (to [`CONGRUENCE_RESIDUAL`] times the scale),
/// by symmetric congruence elimination: simultaneous row/column operations
/// with largest-modulus diagonal pivoting, the classical add-row/column
/// repair when every remaining diagonal entry vanishes (valid in
/// characteristic != 2), and a final principal-branch `1/sqrt(d)` column
/// scaling. The witness is one of many; only the residual is promised.
pub fn sym_congruence_to_identity(a0: &SymMat<C64>, tol: &Tol) -> Result<Matrix<C64>> {
    let n = a0.n();
    let scale = a0.max_magnitude();
    let mut tol = *tol;
    tol.absorb(scale);
    let det = a0.det(&tol);
    if !det.det_nonsingular(n, &tol) {
        return Err(Error::SingularInput);
    }

    let mut s = a0.to_matrix();
    let mut g: Matrix<C64> = Matrix::identity(n);
    let threshold = tol.rank_threshold();

    // Column operation col_i += f * col_j on s (as a congruence: rows too)
    // and on g (columns only).
    let apply = |s: &mut Matrix<C64>, g: &mut Matrix<C64>, i: usize, j: usize, f: C64| {
        for c in 0..n {
            let d = f * s[(j, c)];
            s[(i, c)] += d;
        }
        for r in 0..n {
            let d = f * s[(r, j)];
            s[(r, i)] += d;
        }
        for r in 0..n {
            let d = f * g[(r, j)];
            g[(r, i)] += d;
        }
    };

    let swap = |s: &mut Matrix<C64>, g: &mut Matrix<C64>, i: usize, j: usize| {
        if i == j {
            return;
        }
        for c in 0..n {
            let t = s[(i, c)];
            s[(i, c)] = s[(j, c)];
            s[(j, c)] = t;
        }
        for r in 0..n {
            let t = s[(r, i)];
            s[(r, i)] = s[(r, j)];
            s[(r, j)] = t;
        }
        for r in 0..n {
            let t = g[(r, i)];
            g[(r, i)] = g[(r, j)];
            g[(r, j)] = t;
        }
    };

    for k in 0..n {
        // First index attaining the max keeps unit-pivot inputs untouched.
        let mut pivot_row = k;
        for i in k + 1..n {
            if s[(i, i)].norm() > s[(pivot_row, pivot_row)].norm() {
                pivot_row = i;
            }
        }
        if s[(pivot_row, pivot_row)].norm() <= threshold {
            // Every remaining diagonal entry vanishes; pull the largest
            // off-diagonal entry onto the diagonal (2 S_ij after the repair).
            let mut best = (k, k, 0.0f64);
            for i in k..n {
                for j in i + 1..n {
                    let m = s[(i, j)].norm();
                    if m > best.2 {
                        best = (i, j, m);
                    }
                }
            }
            if best.2 <= threshold {
                return Err(Error::SingularInput);
            }
            apply(&mut s, &mut g, best.0, best.1, Complex64::new(1.0, 0.0));
            pivot_row = best.0;
        }
        swap(&mut s, &mut g, k, pivot_row);
        let d = s[(k, k)];
        if d.norm() <= threshold {
            return Err(Error::SingularInput);
        }
        for i in k + 1..n {
            let f = -(s[(k, i)] / d);
            if f.norm() > 0.0 {
                apply(&mut s, &mut g, i, k, f);
            }
        }
    }

    // Principal-branch square roots of the diagonal pivots.
    for k in 0..n {
        let root = s[(k, k)].sqrt();
        if root.norm() == 0.0 || root.re.is_nan() || root.im.is_nan() {
            return Err(Error::SingularInput);
        }
        let inv = Complex64::new(1.0, 0.0) / root;
        for r in 0..n {
            g[(r, k)] *= inv;
        }
    }
    Ok(g)
}

/// Eigenvalues and a complex-orthogonal eigenvector matrix of a complex
/// symmetric matrix with pairwise distinct eigenvalues.
///
/// Eigenvalues come from the root finder applied to det(tI - S);
/// eigenvectors from null-space extraction on S - lambda I (full-pivot
/// elimination leaves the weakest column free), normalized to v^t v = 1
/// under the bilinear (not conjugate) form.
pub fn complex_symmetric_eigen(s: &SymMat<C64>, tol: &Tol) -> Result<(Vec<C64>, Matrix<C64>)> {
    let n = s.n();
    let scale = s.max_magnitude();
    let mut tol = *tol;
    tol.absorb(scale);

    // det(t I - S)
    let char_poly = pencil_char_poly(&SymMat::identity(n), s);
    let lambdas = poly_roots(&char_poly, &tol)?;

    let lambda_scale = lambdas.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    let gap = (tol.eps_eq).max(EIGEN_GAP) * lambda_scale;
    for i in 0..n {
        for j in i + 1..n {
            if (lambdas[i] - lambdas[j]).norm() <= gap {
                return Err(Error::DegeneratePencil);
            }
        }
    }

    let mut h = Matrix::<C64>::zeros(n, n);
    for (col, lambda) in lambdas.iter().enumerate() {
        let m = Matrix::from_rows(n, n, |i, j| {
            let mut v = *s.get(i, j);
            if i == j {
                v -= lambda;
            }
            v
        });
        let v = null_vector_full_pivot(&m);
        // Rescale to unit max entry before the isotropy test so the
        // threshold is meaningful.
        let mx = v.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
        if mx == 0.0 {
            return Err(Error::DegeneratePencil);
        }
        let v: Vec<C64> = v.iter().map(|z| z / mx).collect();
        let bilinear: C64 = v.iter().map(|z| z * z).sum();
        if bilinear.norm() <= tol.eps_eq {
            return Err(Error::IsotropicEigenvector);
        }
        let inv_root = Complex64::new(1.0, 0.0) / bilinear.sqrt();
        for (row, z) in v.iter().enumerate() {
            h[(row, col)] = z * inv_root;
        }
    }
    Ok((lambdas, h))
}

/// Null vector of a numerically rank-deficient square matrix by elimination
/// with full pivoting; the column never chosen as a pivot (the
/// smallest-pivot column) carries the free variable.
fn null_vector_full_pivot(m: &Matrix<C64>) -> Vec<C64> {
    let n = m.rows();
    if n == 1 {
        return vec![Complex64::new(1.0, 0.0)];
    }
    let mut a = m.clone();
    let mut col_of: Vec<usize> = (0..n).collect();
    for step in 0..n - 1 {
        let mut best = (step, step, -1.0f64);
        for i in step..n {
            for j in step..n {
                let mag = a[(i, j)].norm();
                if mag > best.2 {
                    best = (i, j, mag);
                }
            }
        }
        let (pi, pj, _) = best;
        if pi != step {
            for c in 0..n {
                let t = a[(step, c)];
                a[(step, c)] = a[(pi, c)];
                a[(pi, c)] = t;
            }
        }
        if pj != step {
            for r in 0..n {
                let t = a[(r, step)];
                a[(r, step)] = a[(r, pj)];
                a[(r, pj)] = t;
            }
            col_of.swap(step, pj);
        }
        let d = a[(step, step)];
        if d.norm() == 0.0 {
            break;
        }
        for i in step + 1..n {
            let f = a[(i, step)] / d;
            if f.norm() > 0.0 {
                for j in step..n {
                    let delta = f * a[(step, j)];
                    a[(i, j)] -= delta;
                }
            }
        }
    }
    // Free variable in permuted coordinate n-1; back-substitute the rest.
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    x[n - 1] = Complex64::new(1.0, 0.0);
    for i in (0..n - 1).rev() {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in i + 1..n {
            acc += a[(i, j)] * x[j];
        }
        x[i] = -acc / a[(i, i)];
    }
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for (permuted, original) in col_of.iter().enumerate() {
        v[*original] = x[permuted];
    }
    v
}

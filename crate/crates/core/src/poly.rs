//! Dense homogeneous multivariate polynomials and the determinant expansion
//! that produces generalized characteristic polynomials.
//!
//! Monomials of total degree `d` in `v` variables are enumerated in
//! descending lexicographic order on exponent vectors, `x0^d` first. That
//! fixed order is load-bearing: it is the normalization point for
//! hypersurface comparison and the row order of coefficient Jacobians.

use std::collections::HashMap;

use crate::scalar::{Ring, Scalar, Tol};

/// The ordered monomial list for one (vars, degree) pair.
#[derive(Debug, Clone)]
pub struct MonoBasis {
    vars: usize,
    degree: usize,
    exps: Vec<Vec<u32>>,
    pos: HashMap<Vec<u32>, usize>,
}

impl MonoBasis {
    pub fn new(vars: usize, degree: usize) -> Self {
        assert!(vars >= 1);
        let mut exps = Vec::new();
        let mut current = vec![0u32; vars];
        fill(&mut exps, &mut current, 0, degree as u32);
        let pos = exps.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        MonoBasis { vars, degree, exps, pos }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn exponents(&self, index: usize) -> &[u32] {
        &self.exps[index]
    }

    pub fn position(&self, exp: &[u32]) -> Option<usize> {
        self.pos.get(exp).copied()
    }
}

fn fill(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, var: usize, remaining: u32) {
    if var + 1 == current.len() {
        current[var] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[var] = e;
        fill(out, current, var + 1, remaining - e);
    }
    current[var] = 0;
}

/// A homogeneous polynomial of fixed degree, dense over [`MonoBasis`] order.
/// The generalized characteristic polynomial det(x0 A0 + ... + xr Ar) is the
/// canonical producer: `vars = r + 1`, `degree = n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenCharPoly<T> {
    vars: usize,
    degree: usize,
    coeffs: Vec<T>,
}

impl<T: Ring> GenCharPoly<T> {
    pub fn zero(vars: usize, degree: usize) -> Self {
        let len = MonoBasis::new(vars, degree).len();
        GenCharPoly { vars, degree, coeffs: vec![T::zero(); len] }
    }

    pub fn from_coeffs(vars: usize, degree: usize, coeffs: Vec<T>) -> Self {
        assert_eq!(coeffs.len(), MonoBasis::new(vars, degree).len());
        GenCharPoly { vars, degree, coeffs }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn basis(&self) -> MonoBasis {
        MonoBasis::new(self.vars, self.degree)
    }

    pub fn coeff(&self, exp: &[u32]) -> Option<&T> {
        self.basis().position(exp).map(|i| &self.coeffs[i])
    }

    pub fn set_coeff(&mut self, exp: &[u32], value: T) {
        let i = self.basis().position(exp).expect("exponent in basis");
        self.coeffs[i] = value;
    }

    pub fn map<S: Ring>(&self, f: impl FnMut(&T) -> S) -> GenCharPoly<S> {
        GenCharPoly {
            vars: self.vars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.mul(c))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.vars, self.degree), (rhs.vars, rhs.degree));
        GenCharPoly {
            vars: self.vars,
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    pub fn eval(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.vars);
        let basis = self.basis();
        // Power tables per variable.
        let pows: Vec<Vec<T>> = point
            .iter()
            .map(|x| {
                let mut p = vec![T::one()];
                for _ in 0..self.degree {
                    p.push(p.last().unwrap().mul(x));
                }
                p
            })
            .collect();
        let mut acc = T::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for (v, &e) in basis.exponents(i).iter().enumerate() {
                if e > 0 {
                    term = term.mul(&pows[v][e as usize]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute zero for every variable not in `keep` (ascending index
    /// list); the result is a polynomial in the kept variables, in order.
    pub fn substitute_zero_except(&self, keep: &[usize]) -> GenCharPoly<T> {
        let basis = self.basis();
        let mut out = GenCharPoly::<T>::zero(keep.len(), self.degree);
        let out_basis = out.basis();
        'term: for (i, c) in self.coeffs.iter().enumerate() {
            let exp = basis.exponents(i);
            let mut small = Vec::with_capacity(keep.len());
            let mut kept_degree = 0u32;
            for (v, &e) in exp.iter().enumerate() {
                if let Some(p) = keep.iter().position(|&k| k == v) {
                    // keep is ascending, so positions line up with order.
                    debug_assert_eq!(keep[p], v);
                    small.push(e);
                    kept_degree += e;
                } else if e != 0 {
                    continue 'term;
                }
            }
            debug_assert_eq!(kept_degree as usize, self.degree);
            let j = out_basis.position(&small).expect("kept exponent in basis");
            out.coeffs[j] = out.coeffs[j].add(c);
        }
        out
    }

    /// Iterate (exponents, coefficient) in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &T)> {
        let basis = self.basis();
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (basis.exponents(i).to_vec(), c))
            .collect::<Vec<_>>()
            .into_iter()
    }
}

impl<T: Scalar> GenCharPoly<T> {
    /// Index of the first coefficient distinguishable from zero, in basis
    /// order.
    pub fn first_significant(&self, tol: &Tol) -> Option<usize> {
        self.coeffs.iter().position(|c| c.significant(tol))
    }

    pub fn max_magnitude(&self) -> f64 {
        self.coeffs.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn close_to(&self, other: &Self, tol: &Tol) -> bool {
        self.vars == other.vars
            && self.degree == other.degree
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a.close_to(b, tol))
    }
}

/// Determinant of an n-by-n matrix whose entries are linear forms in `vars`
/// variables, as a homogeneous degree-n polynomial. `entry(i, j)` supplies
/// the form coefficients of entry (i, j), length `vars`.
///
/// Expansion runs bottom-up over column subsets: the minor on the last k
/// rows and columns S is expanded along its first row. Exact over exact
/// scalars.
pub fn det_of_linear_forms<T: Ring>(
    n: usize,
    vars: usize,
    entry: impl Fn(usize, usize) -> Vec<T>,
) -> GenCharPoly<T> {
    assert!(n >= 1 && vars >= 1);
    let bases: Vec<MonoBasis> = (0..=n).map(|d| MonoBasis::new(vars, d)).collect();
    // shift[d][v][i] = index in degree d+1 of (basis d exponent i) + unit_v.
    let shift: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|d| {
            (0..vars)
                .map(|v| {
                    (0..bases[d].len())
                        .map(|i| {
                            let mut e = bases[d].exponents(i).to_vec();
                            e[v] += 1;
                            bases[d + 1].position(&e).expect("shifted exponent")
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let full: usize = (1usize << n) - 1;
    let mut minors: Vec<Option<Vec<T>>> = vec![None; 1 << n];
    minors[0] = Some(vec![T::one()]);

    for mask in 1usize..=full {
        let k = mask.count_ones() as usize;
        let row = n - k;
        let mut acc = vec![T::zero(); bases[k].len()];
        let mut sign_flip = false;
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            let sub = minors[mask & !(1 << j)].as_ref().expect("smaller minor computed");
            let form = entry(row, j);
            debug_assert_eq!(form.len(), vars);
            for (v, c) in form.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let table = &shift[k - 1][v];
                for (i, m) in sub.iter().enumerate() {
                    if m.is_zero() {
                        continue;
                    }
                    let t = c.mul(m);
                    let dst = table[i];
                    acc[dst] = if sign_flip { acc[dst].sub(&t) } else { acc[dst].add(&t) };
                }
            }
            sign_flip = !sign_flip;
        }
        minors[mask] = Some(acc);
        // Minors of size k-1 whose mask is a strict subset of no remaining
        // work could be freed here; desk-scale sizes make that unnecessary.
    }

    GenCharPoly::from_coeffs(vars, n, minors[full].take().expect("full minor"))
}

/// Coefficients (ascending in t) of f(t) = P(t, 1) for a two-variable
/// homogeneous polynomial: the univariate form of a pencil determinant.
pub fn univariate_from_pencil<T: Ring>(p: &GenCharPoly<T>) -> Vec<T> {
    assert_eq!(p.vars(), 2);
    let n = p.degree();
    let basis = p.basis();
    let mut out = vec![T::zero(); n + 1];
    for (i, c) in p.coeffs().iter().enumerate() {
        let e = basis.exponents(i);
        out[e[0] as usize] = c.clone();
    }
    out
}

/// Human-readable rendering, e.g. `x0^2 - x1^2 - x2^2`. The coefficient
/// formatter receives each non-zero coefficient.
pub fn render_poly<T: Ring>(
    p: &GenCharPoly<T>,
    mut fmt_coeff: impl FnMut(&T) -> String,
) -> String {
    let basis = p.basis();
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono: Vec<String> = basis
            .exponents(i)
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
            .collect();
        let mono = mono.join("*");
        let cs = fmt_coeff(c);
        let (sign, body) = match cs.strip_prefix('-') {
            Some(rest) => ("-", rest.to_string()),
            None => ("+", cs),
        };
        if out.is_empty() {
            if sign == "-" {
                out.push_str("-");
            }
        } else {
            out.push_str(if sign == "-" { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&mono);
        } else {
            out.push_str(&body);
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

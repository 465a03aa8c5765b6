//! Symmetric matrix tuples and their hypersurfaces.
//!
//! A [`SymTuple`] is an (r+1)-tuple of n-by-n symmetric matrices over one
//! scalar regime. Its generalized characteristic polynomial is
//! det(x0 A0 + ... + xr Ar), homogeneous of degree n; two tuples present the
//! same hypersurface when those polynomials agree up to a non-zero scalar.
//! Membership in the open set U (A0 non-singular, det(t A0 - A1) with n
//! distinct roots) is what the reduction pipeline requires.

use crate::congruence::pencil_char_poly;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, SymMat};
use crate::poly::{det_of_linear_forms, GenCharPoly};
use crate::scalar::{rat_to_c64, Field, Rat, Ring, Scalar, Tol, C64};
use crate::seed::rng_from;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTuple<T> {
    n: usize,
    mats: Vec<SymMat<T>>,
}

impl<T: Ring> SymTuple<T> {
    /// Build from at least two matrices of equal size.
    pub fn new(mats: Vec<SymMat<T>>) -> Self {
        assert!(mats.len() >= 2, "a tuple needs r >= 1, so at least two matrices");
        let n = mats[0].n();
        assert!(mats.iter().all(|m| m.n() == n), "all matrices share n");
        SymTuple { n, mats }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of extra matrices: the tuple is (A0, ..., Ar).
    pub fn r(&self) -> usize {
        self.mats.len() - 1
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn mat(&self, i: usize) -> &SymMat<T> {
        &self.mats[i]
    }

    pub fn mats(&self) -> &[SymMat<T>] {
        &self.mats
    }

    pub fn map<S: Ring>(&self, mut f: impl FnMut(&T) -> S) -> SymTuple<S> {
        SymTuple { n: self.n, mats: self.mats.iter().map(|m| m.map(&mut f)).collect() }
    }

    /// Append one more matrix, producing the (r+2)-tuple.
    pub fn extended(&self, last: SymMat<T>) -> SymTuple<T> {
        assert_eq!(last.n(), self.n);
        let mut mats = self.mats.clone();
        mats.push(last);
        SymTuple { n: self.n, mats }
    }
}

impl SymTuple<Rat> {
    pub fn to_c64(&self) -> SymTuple<C64> {
        self.map(rat_to_c64)
    }
}

impl<T: Scalar> SymTuple<T> {
    pub fn max_magnitude(&self) -> f64 {
        self.mats.iter().map(SymMat::max_magnitude).fold(0.0, f64::max)
    }

    /// Default tolerance context scaled to this tuple's entries.
    pub fn tol(&self) -> Tol {
        Tol::with_scale(self.max_magnitude())
    }

    pub fn close_to(&self, other: &SymTuple<T>, tol: &Tol) -> bool {
        self.n == other.n
            && self.mats.len() == other.mats.len()
            && self
                .mats
                .iter()
                .zip(&other.mats)
                .all(|(a, b)| a.max_diff(b) <= tol.eq_threshold())
    }
}

/// The generalized characteristic polynomial det(x0 A0 + ... + xr Ar).
pub fn gen_char_poly<T: Ring>(a: &SymTuple<T>) -> GenCharPoly<T> {
    det_of_linear_forms(a.n(), a.len(), |i, j| {
        a.mats().iter().map(|m| m.get(i, j).clone()).collect()
    })
}

/// det(sum x_i A_i) at one point, by direct elimination.
pub fn eval_pencil<T: Scalar>(a: &SymTuple<T>, x: &[T], tol: &Tol) -> T {
    assert_eq!(x.len(), a.len(), "point length must be r + 1");
    let n = a.n();
    let m = Matrix::from_rows(n, n, |i, j| {
        let mut acc = T::zero();
        for (c, mat) in x.iter().zip(a.mats()) {
            acc = acc.add(&c.mul(mat.get(i, j)));
        }
        acc
    });
    m.det(tol)
}

/// Apply the congruence g^t A_i g to every matrix of the tuple.
pub fn congruence<T: Field>(a: &SymTuple<T>, g: &Matrix<T>) -> SymTuple<T> {
    SymTuple::new(a.mats().iter().map(|m| m.congruence(g)).collect())
}

/// The scalar c with P = c * Q, when the two polynomials define the same
/// hypersurface; `None` when they do not. The candidate c comes from the
/// first significant coefficient pair (in basis order) and is then verified
/// on every coefficient.
pub fn same_hypersurface<T: Scalar>(
    p: &GenCharPoly<T>,
    q: &GenCharPoly<T>,
    tol: &Tol,
) -> Result<Option<T>> {
    assert_eq!(p.vars(), q.vars(), "polynomials must share the variable count");
    assert_eq!(p.degree(), q.degree(), "polynomials must share the degree");
    let mut tol = *tol;
    tol.absorb(p.max_magnitude());
    tol.absorb(q.max_magnitude());
    let ip = p.first_significant(&tol);
    let iq = q.first_significant(&tol);
    let (ip, iq) = match (ip, iq) {
        (None, _) | (_, None) => return Err(Error::ZeroPolynomial),
        (Some(a), Some(b)) => (a, b),
    };
    if ip != iq {
        return Ok(None);
    }
    let c = p.coeffs()[ip].div(&q.coeffs()[iq]).expect("significant coefficient");
    let scaled = q.scale(&c);
    if p.close_to(&scaled, &tol) {
        Ok(Some(c))
    } else {
        Ok(None)
    }
}

/// A hypersurface representative: the generalized characteristic polynomial
/// normalized so its first significant coefficient is 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypersurface<T> {
    poly: GenCharPoly<T>,
}

impl<T: Scalar> Hypersurface<T> {
    pub fn new(poly: GenCharPoly<T>, tol: &Tol) -> Result<Self> {
        let mut tol = *tol;
        tol.absorb(poly.max_magnitude());
        let i = poly.first_significant(&tol).ok_or(Error::ZeroPolynomial)?;
        let inv = poly.coeffs()[i].inv().expect("significant coefficient");
        Ok(Hypersurface { poly: poly.scale(&inv) })
    }

    pub fn poly(&self) -> &GenCharPoly<T> {
        &self.poly
    }

    pub fn close_to(&self, other: &Self, tol: &Tol) -> bool {
        self.poly.close_to(&other.poly, tol)
    }
}

/// Membership in the open set U: A0 non-singular and det(t A0 - A1) with n
/// distinct roots. Exact regime: exact determinant plus squarefree test by
/// gcd(f, f'). Approximate regime: tolerance determinant plus root
/// separation.
pub fn in_u<T: Scalar>(a: &SymTuple<T>, tol: &Tol) -> Result<bool> {
    let mut tol = *tol;
    tol.absorb(a.max_magnitude());
    let det0 = a.mat(0).det(&tol);
    if !det0.det_nonsingular(a.n(), &tol) {
        return Ok(false);
    }
    let f = pencil_char_poly(a.mat(0), a.mat(1));
    T::distinct_roots(&f, &tol)
}

/// The sub-tuple (A_i) for i in `keep` (ascending); `keep` must contain 0
/// and 1 so U-membership keeps its meaning on the slice.
pub fn slice<T: Ring>(a: &SymTuple<T>, keep: &[usize]) -> Result<SymTuple<T>> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.len() < 2
        || !keep.contains(&0)
        || !keep.contains(&1)
        || keep.iter().any(|&i| i > a.r())
    {
        return Err(Error::BadIndexSet);
    }
    Ok(SymTuple::new(keep.iter().map(|&i| a.mat(i).clone()).collect()))
}

/// Conditions accepted by [`random_tuple`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    Any,
    InU,
    Reduced,
    SpanningPrefix,
}

const REJECTION_CAP: usize = 1000;

/// Seed-deterministic random tuple. Entries are integers in [-9, 9] in the
/// exact regime and standard-normal reals in the approximate regime.
/// `InU` rejection-samples whole tuples; `Reduced` emits
/// (I, diag(distinct), random tail); `SpanningPrefix` additionally requires
/// the first n(n+1)/2 matrices to be linearly independent in Symm_n.
pub fn random_tuple<T: Scalar>(
    n: usize,
    r: usize,
    seed: u64,
    condition: Condition,
) -> Result<SymTuple<T>> {
    assert!(n >= 1 && r >= 1);
    let mut rng = rng_from(seed);
    let tol = Tol::default();
    let sample_sym = |rng: &mut rand_chacha::ChaCha8Rng| {
        SymMat::from_upper_fn(n, |_, _| T::sample(rng))
    };

    match condition {
        Condition::Any => {
            Ok(SymTuple::new((0..=r).map(|_| sample_sym(&mut rng)).collect()))
        }
        Condition::InU => {
            for _ in 0..REJECTION_CAP {
                let t = SymTuple::new((0..=r).map(|_| sample_sym(&mut rng)).collect());
                if in_u(&t, &tol)? {
                    return Ok(t);
                }
            }
            Err(Error::RejectionCapExceeded(REJECTION_CAP))
        }
        Condition::Reduced => {
            let lambdas = sample_distinct::<T>(&mut rng, n)?;
            let mut mats = vec![SymMat::identity(n), SymMat::diagonal(&lambdas)];
            mats.extend((2..=r).map(|_| sample_sym(&mut rng)));
            Ok(SymTuple::new(mats))
        }
        Condition::SpanningPrefix => {
            let need = crate::matrix::tri_len(n);
            if r + 1 < need {
                return Err(Error::NotSpanning);
            }
            for _ in 0..REJECTION_CAP {
                let t = SymTuple::new((0..=r).map(|_| sample_sym(&mut rng)).collect());
                let rows: Vec<Vec<T>> = t
                    .mats()
                    .iter()
                    .take(need)
                    .map(|m| m.upper_triangle().to_vec())
                    .collect();
                if T::span_rank(&rows)? == need {
                    return Ok(t);
                }
            }
            Err(Error::RejectionCapExceeded(REJECTION_CAP))
        }
    }
}

fn sample_distinct<T: Scalar>(rng: &mut rand_chacha::ChaCha8Rng, n: usize) -> Result<Vec<T>> {
    let tol = Tol::default();
    'outer: for _ in 0..REJECTION_CAP {
        let v: Vec<T> = (0..n).map(|_| T::sample(rng)).collect();
        for i in 0..n {
            for j in i + 1..n {
                if !v[i].sub(&v[j]).significant(&tol) {
                    continue 'outer;
                }
            }
        }
        return Ok(v);
    }
    Err(Error::RejectionCapExceeded(REJECTION_CAP))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{mat_from_int_rows, sym_from_int_rows};
    use crate::scalar::{rat, ratio};
    use crate::seed::trial_seed;
    use rand::Rng;

    fn tuple_i64(mats: &[&[&[i64]]]) -> SymTuple<Rat> {
        SymTuple::new(mats.iter().map(|m| sym_from_int_rows(m)).collect())
    }

    fn sig_tuple() -> SymTuple<Rat> {
        tuple_i64(&[
            &[&[1, 0], &[0, 1]],
            &[&[1, 0], &[0, -1]],
            &[&[0, 1], &[1, 0]],
        ])
    }

    #[test]
    fn char_poly_of_one_by_one_tuple() {
        let a = tuple_i64(&[&[&[2]], &[&[3]]]);
        let p = gen_char_poly(&a);
        assert_eq!(p.coeff(&[1, 0]).unwrap(), &rat(2));
        assert_eq!(p.coeff(&[0, 1]).unwrap(), &rat(3));
    }

    #[test]
    fn char_poly_examples() {
        let a = tuple_i64(&[&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 2]]]);
        let p = gen_char_poly(&a);
        assert_eq!(p.coeff(&[2, 0]).unwrap(), &rat(1));
        assert_eq!(p.coeff(&[1, 1]).unwrap(), &rat(3));
        assert_eq!(p.coeff(&[0, 2]).unwrap(), &rat(2));

        let p = gen_char_poly(&sig_tuple());
        assert_eq!(p.coeff(&[2, 0, 0]).unwrap(), &rat(1));
        assert_eq!(p.coeff(&[0, 2, 0]).unwrap(), &rat(-1));
        assert_eq!(p.coeff(&[0, 0, 2]).unwrap(), &rat(-1));
    }

    #[test]
    fn eval_examples() {
        let tol = Tol::default();
        let a = tuple_i64(&[&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 2]]]);
        assert_eq!(eval_pencil(&a, &[rat(0), rat(0)], &tol), rat(0));
        assert_eq!(eval_pencil(&a, &[rat(1), rat(1)], &tol), rat(6));
        let s = sig_tuple();
        assert_eq!(eval_pencil(&s, &[rat(0), rat(0), rat(1)], &tol), rat(-1));
    }

    #[test]
    fn eval_agrees_with_coefficients_at_random_points() {
        let tol = Tol::default();
        let mut rng = rng_from(42);
        for _ in 0..50 {
            let n = rng.gen_range(1..=3);
            let r = rng.gen_range(1..=3);
            let a: SymTuple<Rat> =
                random_tuple(n, r, rng.gen(), Condition::Any).unwrap();
            let p = gen_char_poly(&a);
            let x: Vec<Rat> = (0..=r).map(|_| rat(rng.gen_range(-5..=5))).collect();
            assert_eq!(eval_pencil(&a, &x, &tol), p.eval(&x));
        }
    }

    #[test]
    fn same_hypersurface_scalar_multiple() {
        let tol = Tol::default();
        let p = gen_char_poly(&sig_tuple());
        let q = p.scale(&rat(5));
        // p = (1/5) q
        assert_eq!(same_hypersurface(&p, &q, &tol).unwrap(), Some(ratio(1, 5)));
        assert_eq!(same_hypersurface(&q, &p, &tol).unwrap(), Some(rat(5)));
        assert_eq!(same_hypersurface(&p, &p, &tol).unwrap(), Some(rat(1)));
    }

    #[test]
    fn same_hypersurface_distinct_polynomials() {
        let tol = Tol::default();
        let p = gen_char_poly(&sig_tuple());
        let mut q = p.clone();
        // x0^2 coefficient is 1; x0*x1 coefficient is 0 — bump the latter.
        q.set_coeff(&[1, 1, 0], rat(1));
        assert_eq!(same_hypersurface(&p, &q, &tol).unwrap(), None);
    }

    #[test]
    fn same_hypersurface_rejects_zero() {
        let tol = Tol::default();
        let p = gen_char_poly(&sig_tuple());
        let z = GenCharPoly::<Rat>::zero(3, 2);
        assert!(matches!(
            same_hypersurface(&p, &z, &tol),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn det_g_squared_law_with_witness_scalar() {
        // Q = gen_char_poly(g^t A g) = det(g)^2 P, so same_hypersurface(Q, P)
        // returns det(g)^2.
        let tol = Tol::default();
        let a = sig_tuple();
        let g = mat_from_int_rows(&[&[1, 1], &[1, 3]]); // det 2
        let b = congruence(&a, &g);
        let p = gen_char_poly(&a);
        let q = gen_char_poly(&b);
        assert_eq!(q, p.scale(&rat(4)));
        assert_eq!(same_hypersurface(&q, &p, &tol).unwrap(), Some(rat(4)));
    }

    #[test]
    fn in_u_examples() {
        let tol = Tol::default();
        let yes = tuple_i64(&[
            &[&[1, 0], &[0, 1]],
            &[&[1, 0], &[0, 2]],
            &[&[3, 1], &[1, -2]],
        ]);
        assert!(in_u(&yes, &tol).unwrap());

        let singular_a0 = tuple_i64(&[&[&[1, 0], &[0, 0]], &[&[1, 0], &[0, 2]]]);
        assert!(!in_u(&singular_a0, &tol).unwrap());

        let repeated = tuple_i64(&[&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]]]);
        assert!(!in_u(&repeated, &tol).unwrap());
    }

    #[test]
    fn in_u_approximate_matches_exact_on_examples() {
        let tol = Tol::default();
        let yes = tuple_i64(&[&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 2]]]);
        assert!(in_u(&yes.to_c64(), &tol).unwrap());
        let repeated = tuple_i64(&[&[&[1, 0], &[0, 1]], &[&[1, 0], &[0, 1]]]);
        assert!(!in_u(&repeated.to_c64(), &tol).unwrap());
        let singular = tuple_i64(&[&[&[1, 0], &[0, 0]], &[&[1, 0], &[0, 2]]]);
        assert!(!in_u(&singular.to_c64(), &tol).unwrap());
    }

    #[test]
    fn slice_identity_and_projection() {
        let a = tuple_i64(&[
            &[&[1, 0], &[0, 1]],
            &[&[1, 0], &[0, -1]],
            &[&[0, 1], &[1, 0]],
            &[&[2, 0], &[0, 3]],
        ]);
        let all = slice(&a, &[0, 1, 2, 3]).unwrap();
        assert_eq!(all, a);
        let s = slice(&a, &[0, 1, 2]).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.mat(2), a.mat(2));

        assert!(matches!(slice(&a, &[0, 2]), Err(Error::BadIndexSet)));
        assert!(matches!(slice(&a, &[1, 2]), Err(Error::BadIndexSet)));
        assert!(matches!(slice(&a, &[0, 1, 9]), Err(Error::BadIndexSet)));
    }

    #[test]
    fn slice_commutes_with_char_poly() {
        let mut rng = rng_from(7);
        for trial in 0..10 {
            let a: SymTuple<Rat> =
                random_tuple(3, 3, trial_seed(101, trial), Condition::Any).unwrap();
            let keep = [0usize, 1, 2];
            let sliced = slice(&a, &keep).unwrap();
            let p = gen_char_poly(&a);
            assert_eq!(gen_char_poly(&sliced), p.substitute_zero_except(&keep));
            let _ = &mut rng;
        }
    }

    #[test]
    fn random_tuple_determinism_and_conditions() {
        let a: SymTuple<Rat> = random_tuple(3, 2, 99, Condition::Any).unwrap();
        let b: SymTuple<Rat> = random_tuple(3, 2, 99, Condition::Any).unwrap();
        assert_eq!(a, b);

        let u: SymTuple<Rat> = random_tuple(3, 2, 5, Condition::InU).unwrap();
        assert!(in_u(&u, &Tol::default()).unwrap());

        let red: SymTuple<Rat> = random_tuple(3, 2, 5, Condition::Reduced).unwrap();
        assert_eq!(red.mat(0), &SymMat::identity(3));
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(red.mat(1).get(i, j), &rat(0));
                assert_ne!(red.mat(1).get(i, i), red.mat(1).get(j, j));
            }
        }

        let n = 2;
        let span: SymTuple<Rat> = random_tuple(n, 3, 5, Condition::SpanningPrefix).unwrap();
        let rows: Vec<Vec<Rat>> = span
            .mats()
            .iter()
            .take(3)
            .map(|m| m.upper_triangle().to_vec())
            .collect();
        assert_eq!(<Rat as Scalar>::span_rank(&rows).unwrap(), 3);

        // Too few matrices to span.
        assert!(matches!(
            random_tuple::<Rat>(2, 1, 5, Condition::SpanningPrefix),
            Err(Error::NotSpanning)
        ));
        // Approximate regime has no exact rank.
        assert!(matches!(
            random_tuple::<C64>(2, 3, 5, Condition::SpanningPrefix),
            Err(Error::RegimeMismatch)
        ));
    }

    #[test]
    fn one_by_one_tuples_work() {
        let a: SymTuple<Rat> = random_tuple(1, 1, 3, Condition::Any).unwrap();
        assert_eq!(a.n(), 1);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn scaling_law_holds_exactly() {
        let mut rng = rng_from(1234);
        let tol = Tol::default();
        for trial in 0..20 {
            let n = rng.gen_range(1..=3);
            let r = rng.gen_range(1..=3);
            let a: SymTuple<Rat> =
                random_tuple(n, r, trial_seed(77, trial), Condition::Any).unwrap();
            let g = loop {
                let g = Matrix::from_rows(n, n, |_, _| rat(rng.gen_range(-4..=4)));
                if !g.det(&tol).is_zero() {
                    break g;
                }
            };
            let det_g = g.det(&tol);
            let scaled = gen_char_poly(&a).scale(&det_g.mul(&det_g));
            assert_eq!(gen_char_poly(&congruence(&a, &g)), scaled);
        }
    }

    #[test]
    fn u_membership_is_congruence_invariant() {
        let mut rng = rng_from(4321);
        let tol = Tol::default();
        for trial in 0..30 {
            let n = rng.gen_range(2..=3);
            let r = rng.gen_range(1..=3);
            let a: SymTuple<Rat> =
                random_tuple(n, r, trial_seed(88, trial), Condition::Any).unwrap();
            let g = loop {
                let g = Matrix::from_rows(n, n, |_, _| rat(rng.gen_range(-4..=4)));
                if !g.det(&tol).is_zero() {
                    break g;
                }
            };
            let b = congruence(&a, &g);
            assert_eq!(in_u(&a, &tol).unwrap(), in_u(&b, &tol).unwrap());
        }
    }

    #[test]
    fn char_poly_is_homogeneous() {
        let a: SymTuple<Rat> = random_tuple(3, 3, 6, Condition::Any).unwrap();
        let p = gen_char_poly(&a);
        let basis = p.basis();
        for i in 0..basis.len() {
            let total: u32 = basis.exponents(i).iter().sum();
            assert_eq!(total as usize, 3);
        }
    }

    #[test]
    fn hypersurface_normalization_idempotent() {
        let tol = Tol::default();
        let p = gen_char_poly(&sig_tuple()).scale(&rat(-7));
        let h = Hypersurface::new(p, &tol).unwrap();
        assert_eq!(h.poly().coeffs()[0], rat(1));
        let again = Hypersurface::new(h.poly().clone(), &tol).unwrap();
        assert_eq!(h, again);
    }
}

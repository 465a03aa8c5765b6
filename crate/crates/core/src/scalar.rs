//! Scalar regimes.
//!
//! Two concrete scalars back every computation in this crate:
//!
//! * [`Rat`] — arbitrary-precision rationals, the exact regime. Values stay in
//!   lowest terms with positive denominator (enforced by the representation),
//!   and no operation on them ever consults a tolerance.
//! * [`C64`] — complex doubles, the approximate regime. Every equality or
//!   rank decision goes through a [`Tol`].
//!
//! Generic code is written against [`Ring`] / [`Field`] (polynomial and
//! matrix arithmetic, which also runs over dual numbers) or [`Scalar`]
//! (regime-aware decisions: pivoting, significance, sampling, pencil-root
//! separation).

use num::complex::Complex64;
use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rat = BigRational;

/// Approximate complex scalar.
pub type C64 = Complex64;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational `p/q`.
pub fn ratio(p: i64, q: i64) -> Rat {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Comparison thresholds for the approximate regime.
///
/// `scale` is the max absolute entry of the inputs in play; approximate
/// equality tests use `|a - b| <= eps_eq * max(1, scale)` and pivot/rank
/// decisions use `eps_rank * max(1, scale)`. Exact-regime code never reads
/// these fields.
#[derive(Debug, Clone, Copy)]
pub struct Tol {
    pub eps_eq: f64,
    pub eps_rank: f64,
    pub scale: f64,
}

pub const DEFAULT_EPS_EQ: f64 = 1e-9;
pub const DEFAULT_EPS_RANK: f64 = 1e-10;

impl Default for Tol {
    fn default() -> Self {
        Tol { eps_eq: DEFAULT_EPS_EQ, eps_rank: DEFAULT_EPS_RANK, scale: 1.0 }
    }
}

impl Tol {
    pub fn with_scale(scale: f64) -> Self {
        Tol { scale, ..Tol::default() }
    }

    /// Effective equality threshold.
    pub fn eq_threshold(&self) -> f64 {
        self.eps_eq * self.scale.max(1.0)
    }

    /// Effective pivot/rank threshold.
    pub fn rank_threshold(&self) -> f64 {
        self.eps_rank * self.scale.max(1.0)
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.eq_threshold()
    }

    /// Grow `scale` to cover an additional magnitude.
    pub fn absorb(&mut self, magnitude: f64) {
        if magnitude > self.scale {
            self.scale = magnitude;
        }
    }
}

/// Commutative ring operations, by reference. Implemented by both scalar
/// regimes and by dual numbers, so polynomial and matrix kernels can run
/// over any of them.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;

    fn from_i64(v: i64) -> Self {
        let mut acc = Self::zero();
        let one = Self::one();
        let m = v.unsigned_abs();
        // Desk-scale constants only; no need for doubling tricks.
        for _ in 0..m {
            acc = acc.add(&one);
        }
        if v < 0 {
            acc.neg()
        } else {
            acc
        }
    }
}

/// Ring with division by non-zero elements.
pub trait Field: Ring {
    /// Multiplicative inverse; `None` on zero.
    fn inv(&self) -> Option<Self>;

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// A concrete scalar regime: a field together with the decisions that differ
/// between exact and approximate arithmetic.
pub trait Scalar: Field {
    const EXACT: bool;

    /// Absolute value as a double, for pivot ranking and scale tracking.
    /// In the exact regime this is advisory only (never a correctness input).
    fn magnitude(&self) -> f64;

    /// Distinguishable from zero for equality purposes.
    fn significant(&self, tol: &Tol) -> bool;

    /// Usable as an elimination pivot.
    fn admissible_pivot(&self, tol: &Tol) -> bool;

    /// Regime equality: exact `==` or `|a-b| <= eps_eq * max(1, scale)`.
    fn close_to(&self, other: &Self, tol: &Tol) -> bool;

    /// Is a determinant value of an `n`-by-`n` matrix non-singular?
    /// Approximate test scales the threshold by `max(1, scale)^n`.
    fn det_nonsingular(&self, n: usize, tol: &Tol) -> bool;

    /// One random entry: integers in [-9, 9] (exact) or a standard-normal
    /// real part (approximate).
    fn sample(rng: &mut ChaCha8Rng) -> Self;

    /// Does the degree-n polynomial with these ascending coefficients have n
    /// distinct roots? Exact regime: squarefree test by `gcd(f, f')`.
    /// Approximate regime: root finding plus a pairwise-distance test (a
    /// non-converging root iteration counts as "not distinct": distinctness
    /// cannot be certified for such an input).
    fn distinct_roots(coeffs: &[Self], tol: &Tol) -> Result<bool>;

    /// Rank of a matrix given as rows, for span checks. Exact only; the
    /// approximate regime reports `RegimeMismatch`.
    fn span_rank(rows: &[Vec<Self>]) -> Result<usize>;
}

impl Ring for Rat {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        rat(v)
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn significant(&self, _tol: &Tol) -> bool {
        !Zero::is_zero(self)
    }

    fn admissible_pivot(&self, _tol: &Tol) -> bool {
        !Zero::is_zero(self)
    }

    fn close_to(&self, other: &Self, _tol: &Tol) -> bool {
        self == other
    }

    fn det_nonsingular(&self, _n: usize, _tol: &Tol) -> bool {
        !Zero::is_zero(self)
    }

    fn sample(rng: &mut ChaCha8Rng) -> Self {
        rat(rng.gen_range(-9..=9))
    }

    fn distinct_roots(coeffs: &[Self], _tol: &Tol) -> Result<bool> {
        crate::roots::squarefree_rational(coeffs)
    }

    fn span_rank(rows: &[Vec<Self>]) -> Result<usize> {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        let m = crate::matrix::Matrix::from_rows(rows.len(), cols, |i, j| rows[i][j].clone());
        Ok(crate::matrix::exact_rank(&m))
    }
}

impl Ring for C64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }
}

impl Field for C64 {
    fn inv(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
}

impl Scalar for C64 {
    const EXACT: bool = false;

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn significant(&self, tol: &Tol) -> bool {
        self.norm() > tol.eq_threshold()
    }

    fn admissible_pivot(&self, tol: &Tol) -> bool {
        self.norm() > tol.rank_threshold()
    }

    fn close_to(&self, other: &Self, tol: &Tol) -> bool {
        (self - other).norm() <= tol.eq_threshold()
    }

    fn det_nonsingular(&self, n: usize, tol: &Tol) -> bool {
        self.norm() > tol.eps_rank * tol.scale.max(1.0).powi(n as i32)
    }

    fn sample(rng: &mut ChaCha8Rng) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        Complex64::new(re, 0.0)
    }

    fn distinct_roots(coeffs: &[Self], tol: &Tol) -> Result<bool> {
        let roots = match crate::roots::poly_roots(coeffs, tol) {
            Ok(r) => r,
            Err(Error::NoConvergence(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        let root_scale = roots.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        let gap = tol.eps_eq.max(crate::roots::MIN_ROOT_SEPARATION) * root_scale;
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                if (roots[i] - roots[j]).norm() <= gap {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn span_rank(_rows: &[Vec<Self>]) -> Result<usize> {
        Err(Error::RegimeMismatch)
    }
}

/// Exact rational to complex double.
pub fn rat_to_c64(x: &Rat) -> C64 {
    Complex64::new(x.to_f64().expect("rational out of f64 range"), 0.0)
}

/// Parse `"p/q"` or `"p"` into a rational (lowest terms, q > 0).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::BadRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
        Some((ps, qs)) => {
            let p: BigInt = ps.trim().parse().map_err(|_| bad())?;
            let q: BigInt = qs.trim().parse().map_err(|_| bad())?;
            if Zero::is_zero(&q) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Render a rational as `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rat(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

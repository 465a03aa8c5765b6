//! Forward-mode dual numbers over any scalar field.
//!
//! `Dual { primal, tangent }` carries a value together with one directional
//! derivative; arithmetic follows the product and chain rules, so pushing
//! duals through any composite of ring operations yields exact derivatives
//! (exact in the rational regime). Used to differentiate the coefficient map
//! of the generalized characteristic polynomial one coordinate at a time.

use crate::scalar::{Field, Ring};

#[derive(Debug, Clone, PartialEq)]
pub struct Dual<T> {
    pub primal: T,
    pub tangent: T,
}

impl<T: Ring> Dual<T> {
    /// A constant: derivative zero.
    pub fn constant(value: T) -> Self {
        Dual { primal: value, tangent: T::zero() }
    }

    /// The active coordinate: derivative one.
    pub fn variable(value: T) -> Self {
        Dual { primal: value, tangent: T::one() }
    }

    pub fn new(primal: T, tangent: T) -> Self {
        Dual { primal, tangent }
    }
}

impl<T: Ring> Ring for Dual<T> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }

    fn one() -> Self {
        Dual::constant(T::one())
    }

    fn add(&self, rhs: &Self) -> Self {
        Dual { primal: self.primal.add(&rhs.primal), tangent: self.tangent.add(&rhs.tangent) }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Dual { primal: self.primal.sub(&rhs.primal), tangent: self.tangent.sub(&rhs.tangent) }
    }

    fn mul(&self, rhs: &Self) -> Self {
        // (a, a')(b, b') = (ab, ab' + a'b)
        Dual {
            primal: self.primal.mul(&rhs.primal),
            tangent: self.primal.mul(&rhs.tangent).add(&self.tangent.mul(&rhs.primal)),
        }
    }

    fn neg(&self) -> Self {
        Dual { primal: self.primal.neg(), tangent: self.tangent.neg() }
    }

    fn is_zero(&self) -> bool {
        self.primal.is_zero() && self.tangent.is_zero()
    }

    fn from_i64(v: i64) -> Self {
        Dual::constant(T::from_i64(v))
    }
}

impl<T: Field> Field for Dual<T> {
    fn inv(&self) -> Option<Self> {
        // d(1/a) = -a'/a^2
        let inv = self.primal.inv()?;
        let tangent = self.tangent.mul(&inv.mul(&inv)).neg();
        Some(Dual { primal: inv, tangent })
    }
}

//! Scalar abstractions: the coefficient ring for multiplicities and
//! polynomial coefficients, the floating scalar for direct evaluation, and
//! the inverse-temperature newtype.

use num_traits::{Float, FromPrimitive, Signed, ToPrimitive, Zero};

use crate::Error;

/// Ring of multiplicities and coefficients. Satisfied by the exact types
/// (`BigInt`, `BigRational`) as well as by floats.
pub trait Coefficient: Signed + Clone + PartialEq + std::fmt::Debug {}
impl<T> Coefficient for T where T: Signed + Clone + PartialEq + std::fmt::Debug {}

/// Floating scalar used when a spectrum or polynomial is evaluated
/// numerically (f32 or f64).
pub trait Real: Float + FromPrimitive + std::fmt::Debug {}
impl<T> Real for T where T: Float + FromPrimitive + std::fmt::Debug {}

/// Positive inverse temperature β = T⁻¹, generic over the scalar so the
/// same newtype serves float evaluation and exact decimal evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseTemperature<S>(S);

impl<S: Zero + PartialOrd> InverseTemperature<S> {
    pub fn new(beta: S) -> Result<Self, Error> {
        if beta > S::zero() {
            Ok(Self(beta))
        } else {
            Err(Error::NonPositiveBeta)
        }
    }

    pub fn value(&self) -> &S {
        &self.0
    }
}

impl<S: Zero + PartialOrd + Copy> InverseTemperature<S> {
    pub fn get(&self) -> S {
        self.0
    }
}

/// Convert an exact coefficient to a floating scalar through f64.
pub(crate) fn to_real<C: ToPrimitive, S: Real>(c: &C) -> S {
    S::from_f64(c.to_f64().unwrap_or(f64::NAN)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::One;

    #[test]
    fn beta_must_be_positive() {
        assert!(InverseTemperature::new(0.5f64).is_ok());
        assert!(InverseTemperature::new(0.0f64).is_err());
        assert!(InverseTemperature::new(-1.0f64).is_err());
        assert!(InverseTemperature::new(Rational::one()).is_ok());
        assert!(InverseTemperature::new(Rational::zero()).is_err());
    }
}

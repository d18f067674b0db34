//! Arbitrary-precision decimal evaluation of spectra.
//!
//! Exact τ-evaluation needs integer energies; this module covers the
//! remaining exact route: a rational β and any rational energies, with the
//! exponentials computed in fixed-point decimal (BigInt mantissa at scale
//! 10^P) to a requested number of correct digits. No floating point is
//! involved, so results are bit-identical across runs and platforms.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::spectrum::EnergySpectrum;
use crate::{Error, Rational};

/// Nearest-integer division (ties away from zero); `b` must be positive.
fn div_round(a: BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 >= *b {
        let bump: BigInt = if r.is_negative() { (-1).into() } else { 1.into() };
        q + bump
    } else {
        q
    }
}

/// e^x as a rational with relative error below 10^-digits.
///
/// Argument reduction y = x/2^k with |y| ≤ 1/2, Taylor series for e^y in
/// fixed point, then k exact squarings. The working precision carries
/// enough guard digits to absorb the error doubling of each squaring.
pub fn exp_rational(x: &Rational, digits: u32) -> Rational {
    if x.is_zero() {
        return Rational::one();
    }
    // Smallest k with |x|/2^k ≤ 1/2; bits(ceil(2|x|)) ≥ log2(2|x|).
    let two_abs = (x * Rational::from_integer(2.into())).abs();
    let k = if two_abs <= Rational::one() {
        0
    } else {
        two_abs.ceil().to_integer().bits() as u32
    };
    let p = digits + 20 + k;
    let scale = BigInt::from(10).pow(p);

    let y = x / Rational::from_integer(BigInt::from(2).pow(k));
    let (y_num, y_den) = (y.numer().clone(), y.denom().clone());

    // Taylor sum of e^y at scale 10^p; terms shrink at least as (1/2)^j/j!.
    let mut acc = scale.clone();
    let mut term = scale.clone();
    let mut j = BigInt::one();
    while !term.is_zero() {
        term = div_round(&term * &y_num, &(&y_den * &j));
        acc += &term;
        j += 1;
    }

    for _ in 0..k {
        acc = div_round(&acc * &acc, &scale);
    }
    Rational::new(acc, scale)
}

/// Z(β) = Σ N(E)e^{-βE} with every exponential correct to `digits`
/// digits of relative accuracy, summed exactly in ascending energy order.
pub fn evaluate_decimal(
    spectrum: &EnergySpectrum<Rational>,
    beta: &Rational,
    digits: u32,
) -> Result<Rational, Error> {
    if !beta.is_positive() {
        return Err(Error::NonPositiveBeta);
    }
    let mut acc = Rational::zero();
    for (e, n) in spectrum.terms() {
        acc += n * exp_rational(&(-(beta * e)), digits + 10);
    }
    Ok(acc)
}

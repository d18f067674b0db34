//! Energy spectra (densities of states): the β-free form of every
//! partition function in the crate.
//!
//! A spectrum maps exact rational energies to multiplicities. The partition
//! function it represents is Z(β) = Σ_E N(E) e^{-βE}, so β enters only at
//! evaluation and one exact computation serves every temperature. The ring
//! operations mirror operations on partition functions: `add` is a disjoint
//! union of configuration sets, `shift` multiplies Z by e^{-β·δ}, and
//! `convolve` multiplies two independent Z's.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{format_rational, parse_rational, rational_to_f64};
use crate::scalar::{to_real, Coefficient, Real};
use crate::{Error, InverseTemperature, Rational};

/// Exact energy spectrum with multiplicities in the coefficient ring `C`.
///
/// Multiplicities of physical partition functions are nonnegative integers,
/// but intermediate combinations (differences of partition functions,
/// exact halves) leave that set, so the ring is a type parameter and the
/// crate-level alias fixes it to `Rational`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergySpectrum<C> {
    terms: BTreeMap<Rational, C>,
}

impl<C: Coefficient> Default for EnergySpectrum<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Coefficient> EnergySpectrum<C> {
    /// The zero spectrum (partition function identically 0).
    pub fn new() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    /// A single energy level with the given multiplicity.
    pub fn singleton(energy: Rational, multiplicity: C) -> Self {
        let mut s = Self::new();
        s.add_term(energy, multiplicity);
        s
    }

    /// A single energy level with multiplicity one (Z = e^{-βE}).
    pub fn delta(energy: Rational) -> Self {
        Self::singleton(energy, C::one())
    }

    /// Accumulate terms, coalescing equal energies.
    pub fn from_terms<I: IntoIterator<Item = (Rational, C)>>(terms: I) -> Self {
        let mut s = Self::new();
        for (e, n) in terms {
            s.add_term(e, n);
        }
        s
    }

    /// Terms in ascending energy order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &C)> {
        self.terms.iter()
    }

    /// Number of distinct energy levels.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplicity at an energy (zero when absent).
    pub fn multiplicity(&self, energy: &Rational) -> C {
        self.terms.get(energy).cloned().unwrap_or_else(C::zero)
    }

    pub fn min_energy(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    pub fn max_energy(&self) -> Option<&Rational> {
        self.terms.keys().next_back()
    }

    /// Add `multiplicity` at `energy` in place, dropping the level if the
    /// total cancels to zero.
    pub fn add_term(&mut self, energy: Rational, multiplicity: C) {
        if multiplicity.is_zero() {
            return;
        }
        let entry = self.terms.entry(energy);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(multiplicity);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + multiplicity;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Accumulate `other` shifted by `delta` into `self`:
    /// Z ← Z + e^{-β·δ}·Z_other.
    pub fn add_shifted_in(&mut self, other: &Self, delta: &Rational) {
        for (e, n) in &other.terms {
            self.add_term(e + delta, n.clone());
        }
    }

    /// Sum of two spectra (disjoint union of configuration sets).
    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_shifted_in(other, &Rational::zero());
        out
    }

    /// `self + e^{-β·δ}·other`, the workhorse of the recursions.
    pub fn plus_shifted(&self, other: &Self, delta: &Rational) -> Self {
        let mut out = self.clone();
        out.add_shifted_in(other, delta);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, n)| (e.clone(), -n.clone()))
                .collect(),
        }
    }

    /// All energies moved by `delta` (Z multiplied by e^{-β·δ}).
    pub fn shift(&self, delta: &Rational) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, n)| (e + delta, n.clone()))
                .collect(),
        }
    }

    /// Every multiplicity multiplied by `factor`.
    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self::new();
        for (e, n) in &self.terms {
            out.add_term(e.clone(), n.clone() * factor.clone());
        }
        out
    }

    /// Convolution: the spectrum of the product of two independent
    /// partition functions, N(E) = Σ_{E₁+E₂=E} N₁(E₁)·N₂(E₂).
    pub fn convolve(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (e1, n1) in &self.terms {
            for (e2, n2) in &other.terms {
                out.add_term(e1 + e2, n1.clone() * n2.clone());
            }
        }
        out
    }

    /// Σ_E N(E) — the β = 0 value of the partition function; counts
    /// configurations when the spectrum is physical.
    pub fn total_multiplicity(&self) -> C {
        let mut acc = C::zero();
        for n in self.terms.values() {
            acc = acc + n.clone();
        }
        acc
    }

    /// Whether every energy is an integer (required by exact τ-evaluation
    /// away from τ = 1).
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|e| e.denom().is_one())
    }

    /// Z(β) = Σ N(E)e^{-βE} in floating arithmetic, accumulated in
    /// ascending energy order so the result is deterministic.
    pub fn evaluate<S: Real>(&self, beta: &InverseTemperature<S>) -> S
    where
        C: ToPrimitive,
    {
        let b = *beta.value();
        let mut acc = S::zero();
        for (e, n) in &self.terms {
            let e_s = S::from_f64(rational_to_f64(e)).unwrap();
            acc = acc + to_real::<C, S>(n) * (-b * e_s).exp();
        }
        acc
    }
}

impl EnergySpectrum<Rational> {
    /// Z as an exact rational at τ = e^{-β}: Σ N(E)·τ^E.
    ///
    /// Away from τ = 1 every energy must be an integer (τ^E is otherwise
    /// irrational); at τ = 1 the value is the multiplicity sum and no
    /// integrality is needed.
    pub fn evaluate_exact(&self, tau: &Rational) -> Result<Rational, Error> {
        if !tau.is_positive() {
            return Err(Error::NonPositiveTau);
        }
        if tau.is_one() {
            return Ok(self.total_multiplicity());
        }
        let mut acc = Rational::zero();
        for (e, n) in &self.terms {
            if !e.denom().is_one() {
                return Err(Error::NonIntegerEnergy {
                    energy: format_rational(e),
                });
            }
            let k = e.numer().to_i32().ok_or_else(|| {
                Error::IndexRange(format!("energy {} exceeds the exponent range", e))
            })?;
            acc += n * tau.pow(k);
        }
        Ok(acc)
    }

    /// Dispatch between the two exact evaluation routes.
    pub fn evaluate_mode(&self, mode: &EvalMode) -> Result<Rational, Error> {
        match mode {
            EvalMode::ExactTau(tau) => self.evaluate_exact(tau),
            EvalMode::Decimal { beta, digits } => {
                crate::precise::evaluate_decimal(self, beta, *digits)
            }
        }
    }
}

impl std::fmt::Display for EnergySpectrum<Rational> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("{}");
        }
        f.write_str("{")?;
        for (i, (e, n)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", format_rational(e), format_rational(n))?;
        }
        f.write_str("}")
    }
}

/// How to turn a spectrum into a number exactly: either at a rational
/// τ = e^{-β} (integer energies), or at a rational β through fixed-point
/// decimal exponentials correct to a requested number of digits.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalMode {
    ExactTau(Rational),
    Decimal { beta: Rational, digits: u32 },
}

#[derive(Serialize, Deserialize)]
struct SpectrumRepr {
    terms: Vec<(String, String)>,
}

impl Serialize for EnergySpectrum<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = SpectrumRepr {
            terms: self
                .terms
                .iter()
                .map(|(e, n)| (format_rational(e), format_rational(n)))
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EnergySpectrum<Rational> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SpectrumRepr::deserialize(deserializer)?;
        let mut s = Self::new();
        for (e, n) in &repr.terms {
            let e = parse_rational(e).map_err(D::Error::custom)?;
            let n = parse_rational(n).map_err(D::Error::custom)?;
            s.add_term(e, n);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Beta, Spectrum};
    use num_bigint::BigInt;

    fn rat(p: i64) -> Rational {
        Rational::from_integer(BigInt::from(p))
    }

    fn ratq(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    fn spec(pairs: &[(i64, i64)]) -> Spectrum {
        Spectrum::from_terms(pairs.iter().map(|&(e, n)| (rat(e), rat(n))))
    }

    #[test]
    fn terms_coalesce_and_cancel() {
        let s = Spectrum::from_terms([(rat(1), rat(2)), (rat(1), rat(3)), (rat(0), rat(1))]);
        assert_eq!(s.multiplicity(&rat(1)), rat(5));
        assert_eq!(s.len(), 2);
        let cancelled = s.sub(&s);
        assert!(cancelled.is_empty());
        assert_eq!(cancelled.total_multiplicity(), rat(0));
    }

    #[test]
    fn shift_moves_energies() {
        let s = spec(&[(0, 1), (2, 3)]).shift(&ratq(1, 2));
        assert_eq!(s.multiplicity(&ratq(1, 2)), rat(1));
        assert_eq!(s.multiplicity(&ratq(5, 2)), rat(3));
        assert_eq!(s.min_energy(), Some(&ratq(1, 2)));
    }

    #[test]
    fn convolution_multiplies_partition_functions() {
        let a = spec(&[(0, 1), (1, 1)]);
        let b = spec(&[(0, 1), (2, 3)]);
        let c = a.convolve(&b);
        assert_eq!(c, spec(&[(0, 1), (1, 1), (2, 3), (3, 3)]));

        let beta = Beta::new(0.7).unwrap();
        let lhs: f64 = c.evaluate(&beta);
        let rhs = a.evaluate::<f64>(&beta) * b.evaluate::<f64>(&beta);
        assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs());
    }

    #[test]
    fn evaluation_matches_direct_sum() {
        let s = spec(&[(0, 2), (3, 5)]);
        let beta = Beta::new(1.25).unwrap();
        let direct = 2.0 + 5.0 * (-1.25f64 * 3.0).exp();
        assert!((s.evaluate::<f64>(&beta) - direct).abs() < 1e-15);
        let single = Spectrum::delta(ratq(1, 2));
        let direct = (-0.625f64).exp();
        assert!((single.evaluate::<f64>(&beta) - direct).abs() < 1e-15);
    }

    #[test]
    fn exact_tau_evaluation() {
        let s = spec(&[(0, 1), (2, 1)]);
        assert_eq!(s.evaluate_exact(&ratq(1, 2)).unwrap(), ratq(5, 4));
        // Negative energies invert τ.
        let t = spec(&[(-1, 2)]);
        assert_eq!(t.evaluate_exact(&ratq(1, 2)).unwrap(), rat(4));
        // τ = 1 is the multiplicity sum even for fractional energies.
        let f = Spectrum::singleton(ratq(1, 2), rat(3));
        assert_eq!(f.evaluate_exact(&rat(1)).unwrap(), rat(3));
        assert!(matches!(
            f.evaluate_exact(&ratq(1, 2)),
            Err(Error::NonIntegerEnergy { .. })
        ));
        assert!(matches!(
            f.evaluate_exact(&rat(0)),
            Err(Error::NonPositiveTau)
        ));
    }

    #[test]
    fn scale_by_half_is_exact() {
        let s = spec(&[(0, 1), (1, 3)]).scale(&ratq(1, 2));
        assert_eq!(s.multiplicity(&rat(0)), ratq(1, 2));
        assert_eq!(s.multiplicity(&rat(1)), ratq(3, 2));
    }

    #[test]
    fn json_round_trip_sorted_by_energy() {
        let s = Spectrum::from_terms([(ratq(3, 2), rat(2)), (rat(0), rat(1))]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"terms":[["0","1"],["3/2","2"]]}"#);
        let back: Spectrum = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<Spectrum>(r#"{"terms":[["x","1"]]}"#).is_err());
    }

    #[test]
    fn integrality_flag() {
        assert!(spec(&[(0, 1), (5, 2)]).is_integral());
        assert!(!Spectrum::delta(ratq(1, 3)).is_integral());
        assert!(Spectrum::new().is_integral());
    }
}

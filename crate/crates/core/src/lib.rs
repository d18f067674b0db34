//! Exact computation engine for partition functions of one-dimensional
//! nearest-neighbor spin chains with values ±1 and site-dependent couplings.
//!
//! Everything that can be exact is exact: couplings are arbitrary-precision
//! rationals, partition functions are stored as energy spectra (density of
//! states) with exact energies and multiplicities, and the homogeneous-chain
//! closed forms are polynomials with big-integer coefficients. A temperature
//! enters only at evaluation time, so one exact computation serves every β.
//!
//! Module map:
//! - [`model`]: couplings, intervals, boundary conditions, configurations,
//!   and the energy functions.
//! - [`spectrum`]: [`EnergySpectrum`], the β-free representation of every
//!   partition function, with ring operations and evaluation.
//! - [`oracle`]: brute-force enumeration over all configurations — the
//!   ground truth every recursion is checked against.
//! - [`global`]: linear-time recursion and product closed form for the
//!   whole-chain partition functions under "+" and "±" boundary conditions.
//! - [`crystal`]: dynamic-programming tables for fixed-magnetization
//!   ("crystal") partition functions, in two recursion variants.
//! - [`chipoly`]: exact polynomial engine for the homogeneous (Ising) chain.
//! - [`gibbs`]: event probabilities under the finite-volume Gibbs measure
//!   and coupling-growth diagnostics.
//! - [`precise`]: arbitrary-precision decimal evaluation of spectra.
//! - [`verify`]: the cross-validation checks shared by the CLI and the
//!   acceptance suite.
//!
//! The containers are generic over their scalar type through `num-traits`
//! ([`scalar::Coefficient`] for multiplicities and coefficients,
//! [`scalar::Real`] for evaluation); the aliases below fix the concrete
//! exact types used throughout.

pub mod chipoly;
pub mod crystal;
mod error;
pub mod exact;
pub mod gibbs;
pub mod global;
pub mod model;
pub mod oracle;
pub mod precise;
pub mod scalar;
pub mod spectrum;
pub mod verify;

pub use error::Error;

/// Arbitrary-precision signed integer.
pub type Integer = num_bigint::BigInt;
/// Arbitrary-precision rational number; the exact scalar of the whole crate.
pub type Rational = num_rational::BigRational;

/// Exact energy spectrum with rational multiplicities. Physical partition
/// functions have nonnegative integer multiplicities; intermediate
/// combinations (differences, halves) may not, and this alias covers both.
pub type Spectrum = spectrum::EnergySpectrum<Rational>;
/// Exact polynomial in s = e^{-βI} with big-integer coefficients; χ = s².
pub type SqrtChiPolynomial = chipoly::SqrtPolynomial<Integer>;
/// Inverse temperature carrying a plain float, for direct evaluation.
pub type Beta = scalar::InverseTemperature<f64>;
/// Inverse temperature carrying an exact rational, for decimal evaluation.
pub type BetaExact = scalar::InverseTemperature<Rational>;

pub use model::{BoundaryPair, InteractionProfile, Interval, Spin, SpinConfiguration};
pub use scalar::InverseTemperature;
pub use spectrum::{EnergySpectrum, EvalMode};

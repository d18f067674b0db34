//! Whole-chain partition functions Z⁺_n and Z^±_n on the windows [-n, n]:
//! the linear recursion in n, the product closed form, the asymptotic
//! ratio diagnostic, and a log-space numeric recursion for very large n.
//!
//! Everything here requires the mirror symmetry I_n = I_(-n+1): the
//! recursion adds the sites ±n simultaneously and uses one coupling for
//! both boundary bonds, so it is simply wrong without the symmetry and the
//! entry points refuse asymmetric profiles.

use num_traits::{One, Signed, Zero};

use crate::oracle::{enumerate_global, GlobalBoundary};
use crate::scalar::{to_real, Real};
use crate::spectrum::EvalMode;
use crate::{Error, InteractionProfile, Interval, InverseTemperature, Rational, Spectrum};

/// Z⁺_n and Z^±_n for one volume index n.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalPair {
    pub n: u32,
    pub z_plus: Spectrum,
    pub z_pm: Spectrum,
}

impl GlobalPair {
    /// X_n = Z⁺_n − Z^±_n, the difference that contracts by (1−e^{-βI})².
    pub fn x(&self) -> Spectrum {
        self.z_plus.sub(&self.z_pm)
    }

    /// Y_n = Z⁺_n + Z^±_n, the sum that grows by (1+e^{-βI})².
    pub fn y(&self) -> Spectrum {
        self.z_plus.add(&self.z_pm)
    }
}

fn require_symmetric_up_to(profile: &InteractionProfile, n_max: u32) -> Result<(), Error> {
    let needed = Interval::new(-(n_max as i64), n_max as i64 + 1).expect("valid window");
    profile.require_symmetric(needed)
}

/// The coupling I_{n+1} attached when growing [-n+1, n-1] to [-n, n].
fn step_coupling(profile: &InteractionProfile, n: u32) -> Result<Rational, Error> {
    Ok(profile.coupling_at(n as i64 + 1)?.clone())
}

/// Z⁺ and Z^± for n = 0..=n_max by the two-term recursion
/// Z⁺_n = (1+e^{-2βI_{n+1}})Z⁺_{n-1} + 2e^{-βI_{n+1}}Z^±_{n-1},
/// Z^±_n = 2e^{-βI_{n+1}}Z⁺_{n-1} + (1+e^{-2βI_{n+1}})Z^±_{n-1},
/// seeded by direct enumeration at n = 0.
pub fn recurse_global(n_max: u32, profile: &InteractionProfile) -> Result<Vec<GlobalPair>, Error> {
    require_symmetric_up_to(profile, n_max)?;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(GlobalPair {
        n: 0,
        z_plus: enumerate_global(0, profile, GlobalBoundary::Plus)?,
        z_pm: enumerate_global(0, profile, GlobalBoundary::Pm)?,
    });
    let two = Rational::from_integer(2.into());
    for n in 1..=n_max {
        let coupling = step_coupling(profile, n)?;
        let double = &coupling + &coupling;
        let prev = out.last().expect("seeded above");
        let cross_plus = prev.z_pm.scale(&two).shift(&coupling);
        let z_plus = prev.z_plus.plus_shifted(&prev.z_plus, &double).add(&cross_plus);
        let cross_pm = prev.z_plus.scale(&two).shift(&coupling);
        let z_pm = prev.z_pm.plus_shifted(&prev.z_pm, &double).add(&cross_pm);
        out.push(GlobalPair { n, z_plus, z_pm });
    }
    Ok(out)
}

/// The closed form: with A_n = ∏_{i=0}^{n}(1+e^{-βI_{i+1}})² and
/// B_n = ∏_{i=0}^{n}(1−e^{-βI_{i+1}})², Z⁺_n = ½(A_n+B_n) and
/// Z^±_n = ½(A_n−B_n). The halves cancel exactly: outputs are
/// integer-valued spectra.
pub fn closed_form_global(n: u32, profile: &InteractionProfile) -> Result<GlobalPair, Error> {
    Ok(closed_form_sequence(n, profile)?
        .pop()
        .expect("sequence is nonempty"))
}

/// Closed-form pairs for every n = 0..=n_max, building the two products
/// incrementally (one convolution per step each).
pub fn closed_form_sequence(
    n_max: u32,
    profile: &InteractionProfile,
) -> Result<Vec<GlobalPair>, Error> {
    require_symmetric_up_to(profile, n_max)?;
    let half = Rational::new(1.into(), 2.into());
    let mut sum_product = Spectrum::delta(Rational::zero());
    let mut diff_product = Spectrum::delta(Rational::zero());
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let coupling = step_coupling(profile, n)?;
        sum_product = sum_product.convolve(&squared_factor(&coupling, true));
        diff_product = diff_product.convolve(&squared_factor(&coupling, false));
        let z_plus = sum_product.add(&diff_product).scale(&half);
        let z_pm = sum_product.sub(&diff_product).scale(&half);
        out.push(GlobalPair { n, z_plus, z_pm });
    }
    Ok(out)
}

/// The spectrum of (1 ± e^{-βI})² = 1 ± 2e^{-βI} + e^{-2βI}.
fn squared_factor(coupling: &Rational, plus: bool) -> Spectrum {
    let two = Rational::from_integer(2.into());
    let mut s = Spectrum::delta(Rational::zero());
    s.add_term(coupling.clone(), if plus { two.clone() } else { -two });
    s.add_term(coupling + coupling, Rational::one());
    s
}

/// Z⁺_n / Z^±_n for n = 0..=n_max, with both spectra evaluated exactly in
/// the requested mode. The denominator is a nonempty sum of positive
/// weights, hence never zero.
pub fn ratio_sequence(
    n_max: u32,
    profile: &InteractionProfile,
    mode: &EvalMode,
) -> Result<Vec<Rational>, Error> {
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for pair in closed_form_sequence(n_max, profile)? {
        let plus = pair.z_plus.evaluate_mode(mode)?;
        let pm = pair.z_pm.evaluate_mode(mode)?;
        assert!(pm.is_positive(), "Z^± evaluates positive for β > 0");
        out.push(plus / pm);
    }
    Ok(out)
}

/// Exact Ising ratio Z⁺_n / Z^±_n = (A+B)/(A−B) at τ = e^{-βI}, with
/// A = (1+τ)^{2(n+1)} and B = (1−τ)^{2(n+1)}. One big power instead of a
/// spectrum; practical even at n = 10^5.
pub fn ising_ratio_exact(n: u32, tau: &Rational) -> Result<Rational, Error> {
    if !tau.is_positive() {
        return Err(Error::NonPositiveTau);
    }
    let e = 2 * (n as i32 + 1);
    let a = (Rational::one() + tau).pow(e);
    let b = (Rational::one() - tau).pow(e);
    Ok((&a + &b) / (a - b))
}

/// ln Z⁺_n and ln Z^±_n for one volume index, from the numeric recursion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogPair<S> {
    pub n: u32,
    pub log_z_plus: S,
    pub log_z_pm: S,
}

impl<S: Real> LogPair<S> {
    /// Z⁺_n / Z^±_n.
    pub fn ratio(&self) -> S {
        (self.log_z_plus - self.log_z_pm).exp()
    }
}

/// The same recursion in floating log-space: O(1) state per step, so
/// n_max = 10^5 is immediate. Spectra are never formed; use this for
/// scaling runs, the exact versions for truth.
pub fn recurse_global_numeric<S: Real>(
    n_max: u32,
    profile: &InteractionProfile,
    beta: &InverseTemperature<S>,
) -> Result<Vec<LogPair<S>>, Error> {
    require_symmetric_up_to(profile, n_max)?;
    let b = *beta.value();
    let log_weight = |coupling: &Rational| -> S {
        // ln e^{-βI} = -βI
        -b * to_real::<Rational, S>(coupling)
    };
    let two = S::from_f64(2.0).unwrap();
    let ln_two = two.ln();
    // n = 0 directly: Z⁺ = 1 + e^{-2βI₁}, Z^± = 2e^{-βI₁}.
    let w1 = log_weight(profile.coupling_at(1)?);
    let mut plus = log_sum_exp(S::zero(), two * w1);
    let mut pm = ln_two + w1;
    let mut out = Vec::with_capacity(n_max as usize + 1);
    out.push(LogPair {
        n: 0,
        log_z_plus: plus,
        log_z_pm: pm,
    });
    for n in 1..=n_max {
        let w = log_weight(profile.coupling_at(n as i64 + 1)?);
        let next_plus = log_sum_exp(
            log_sum_exp(plus, plus + two * w),
            ln_two + w + pm,
        );
        let next_pm = log_sum_exp(
            log_sum_exp(pm, pm + two * w),
            ln_two + w + plus,
        );
        plus = next_plus;
        pm = next_pm;
        out.push(LogPair {
            n,
            log_z_plus: plus,
            log_z_pm: pm,
        });
    }
    Ok(out)
}

fn log_sum_exp<S: Real>(a: S, b: S) -> S {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

//! Event probabilities under the finite-volume Gibbs measure, plus
//! coupling-growth diagnostics.
//!
//! A probability is a ratio of two partition-function evaluations sharing
//! one window and boundary. Both evaluations run through [`EvalMode`], so
//! at a rational τ = e^{-β} the ratio is exact, and in decimal mode the
//! two sides round identically term by term — which keeps complements
//! summing to one exactly, not just approximately.
//!
//! The diagnostics report what a finite window can actually show about
//! the two coupling-growth conditions (summability of e^{-2I_n} and the
//! contour bound I_n + I_{n+k} > k): partial sums with a trend
//! description, and an exhaustive list of contour violations. Whether the
//! infinite-volume conditions hold is not decidable from a window, so the
//! report never renders a verdict.

use num_traits::{Signed, Zero};

use crate::crystal::{final_row, RecursionVariant};
use crate::oracle::Enumerator;
use crate::precise::exp_rational;
use crate::{
    BoundaryPair, Error, EvalMode, InteractionProfile, Interval, Rational, Spectrum, Spin,
    SpinConfiguration,
};

/// Spectrum of configurations on `window` with exactly `r` spins equal to
/// `counted`, from the crystal tables (no enumeration cap). Any boundary:
/// a global spin flip reduces (·,−) boundaries to the tabulated (·,+)
/// ones, and counting the complementary spin mirrors r to ℓ−r.
pub fn count_spectrum(
    window: Interval,
    profile: &InteractionProfile,
    boundary: BoundaryPair,
    counted: Spin,
    r: usize,
) -> Result<Spectrum, Error> {
    let row = count_row(window, profile, boundary, counted)?;
    let len = window.len();
    if r > len {
        return Err(Error::CountOutOfRange { r, len });
    }
    Ok(row.into_iter().nth(r).expect("row covers 0..=len"))
}

/// The whole row of count spectra, indexed by r = 0..=window.len(), with
/// `counted` occurrences counted under `boundary`.
fn count_row(
    window: Interval,
    profile: &InteractionProfile,
    boundary: BoundaryPair,
    counted: Spin,
) -> Result<Vec<Spectrum>, Error> {
    let (bc, eps) = if boundary.right == Spin::Down {
        (boundary.flipped(), counted.flipped())
    } else {
        (boundary, counted)
    };
    let (x_row, y_row) = final_row(window, profile, RecursionVariant::OracleValidated)?;
    let mut row = match bc.left {
        Spin::Up => x_row,   // (+,+): indexed by the number of − spins
        Spin::Down => y_row, // (−,+): indexed by the number of + spins
    };
    let tabulated = match bc.left {
        Spin::Up => Spin::Down,
        Spin::Down => Spin::Up,
    };
    if eps != tabulated {
        row.reverse();
    }
    Ok(row)
}

/// P(exactly r spins equal `counted`) on `window` under `boundary`.
pub fn count_probability(
    window: Interval,
    profile: &InteractionProfile,
    boundary: BoundaryPair,
    counted: Spin,
    r: usize,
    mode: &EvalMode,
) -> Result<Rational, Error> {
    let len = window.len();
    if r > len {
        return Err(Error::CountOutOfRange { r, len });
    }
    let row = count_row(window, profile, boundary, counted)?;
    let mut numerator = Rational::zero();
    let mut total = Rational::zero();
    for (i, spectrum) in row.iter().enumerate() {
        let value = spectrum.evaluate_mode(mode)?;
        if i == r {
            numerator = value.clone();
        }
        total += value;
    }
    assert!(total.is_positive(), "partition function vanished");
    Ok(numerator / total)
}

/// P(event) on `window` under `boundary` by direct enumeration; the
/// enumeration cap applies.
pub fn event_probability<P: FnMut(&SpinConfiguration) -> bool>(
    window: Interval,
    profile: &InteractionProfile,
    boundary: BoundaryPair,
    event: P,
    mode: &EvalMode,
) -> Result<Rational, Error> {
    let oracle = Enumerator::default();
    let restricted = oracle.event(window, profile, boundary, event)?;
    let full = oracle.window(window, profile, boundary)?;
    let numerator = restricted.evaluate_mode(mode)?;
    let total = full.evaluate_mode(mode)?;
    assert!(total.is_positive(), "partition function vanished");
    Ok(numerator / total)
}

/// Distribution of the number of `counted` spins: P(r) for r = 0..=len.
/// Normalized by the sum of its own terms, so it sums to one exactly.
pub fn magnetization_distribution(
    window: Interval,
    profile: &InteractionProfile,
    boundary: BoundaryPair,
    counted: Spin,
    mode: &EvalMode,
) -> Result<Vec<Rational>, Error> {
    let row = count_row(window, profile, boundary, counted)?;
    let values = row
        .iter()
        .map(|s| s.evaluate_mode(mode))
        .collect::<Result<Vec<_>, _>>()?;
    let total: Rational = values.iter().cloned().sum();
    assert!(total.is_positive(), "partition function vanished");
    Ok(values.into_iter().map(|v| v / &total).collect())
}

/// How the partial sums S_N = Σ e^{-2I_n} moved across the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumTrend {
    /// Increments stayed near the first one: linear growth on this window.
    Steady,
    /// Increments collapsed: the sum looks bounded on this window.
    Shrinking,
    /// Neither pattern; no description offered.
    Mixed,
}

impl std::fmt::Display for SumTrend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SumTrend::Steady => "increments steady; the sum grows linearly on this window",
            SumTrend::Shrinking => "increments shrinking; the sum looks bounded on this window",
            SumTrend::Mixed => "increments vary without a clear trend on this window",
        })
    }
}

/// A pair (n, k) with I_n + I_{n+k} ≤ k, breaking the contour condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourViolation {
    pub n: i64,
    pub k: i64,
    /// The exact value of I_n + I_{n+k} that failed to exceed k.
    pub sum: Rational,
}

/// Window evidence for the two coupling-growth conditions. Diagnostic
/// only: a finite window cannot decide either condition, and the report
/// says what happened on the window, not what holds in the limit.
#[derive(Debug, Clone, PartialEq)]
pub struct CriteriaReport {
    pub window: Interval,
    pub k_max: i64,
    /// (N, S_N) with S_N = Σ_{n=1}^{N} e^{-2I_n}, for each N ≥ 1 in the
    /// window; empty when the window has no positive sites.
    pub partial_sums: Vec<(i64, Rational)>,
    pub trend: SumTrend,
    /// Every (n, k) in the window with 1 ≤ k ≤ k_max and I_n + I_{n+k} ≤ k,
    /// decided by exact rational comparison.
    pub violations: Vec<ContourViolation>,
}

/// Evaluate both growth conditions on `window` with exponentials carried
/// to `digits` decimal digits.
pub fn criteria_report(
    profile: &InteractionProfile,
    window: Interval,
    k_max: i64,
    digits: u32,
) -> Result<CriteriaReport, Error> {
    let mut partial_sums = Vec::new();
    let mut increments = Vec::new();
    let mut acc = Rational::zero();
    for n in window.sites().filter(|&n| n >= 1) {
        let coupling = profile.coupling_at(n)?;
        let increment = exp_rational(&(coupling * Rational::from_integer((-2).into())), digits);
        acc += &increment;
        increments.push(increment);
        partial_sums.push((n, acc.clone()));
    }
    let trend = classify_trend(&increments);

    let mut violations = Vec::new();
    for n in window.sites() {
        for k in 1..=k_max {
            if n + k > window.n() {
                break;
            }
            let sum = profile.coupling_at(n)? + profile.coupling_at(n + k)?;
            if sum <= Rational::from_integer(k.into()) {
                violations.push(ContourViolation { n, k, sum });
            }
        }
    }
    Ok(CriteriaReport {
        window,
        k_max,
        partial_sums,
        trend,
        violations,
    })
}

fn classify_trend(increments: &[Rational]) -> SumTrend {
    let (Some(first), Some(last)) = (increments.first(), increments.last()) else {
        return SumTrend::Mixed;
    };
    if first.is_zero() {
        return SumTrend::Mixed;
    }
    let ratio = last / first;
    if ratio >= Rational::new(1.into(), 2.into()) {
        SumTrend::Steady
    } else if ratio <= Rational::new(1.into(), 100.into()) {
        SumTrend::Shrinking
    } else {
        SumTrend::Mixed
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial, parse_rational, rational_to_f64};
    use num_traits::One;

    fn rat(text: &str) -> Rational {
        parse_rational(text).unwrap()
    }

    fn exact_tau(text: &str) -> EvalMode {
        EvalMode::ExactTau(rat(text))
    }

    // Integer couplings keep every energy an integer, so rational τ
    // evaluation stays available.
    fn distinct_profile() -> InteractionProfile {
        InteractionProfile::table(
            -2,
            ["3", "5", "7", "2", "9", "13", "11", "8"]
                .iter()
                .map(|v| rat(v))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn single_site_minus_probability_is_one_fifth() {
        let window = Interval::new(0, 0).unwrap();
        let profile = InteractionProfile::constant(rat("1"));
        let p = count_probability(
            window,
            &profile,
            BoundaryPair::PLUS_PLUS,
            Spin::Down,
            1,
            &exact_tau("1/2"),
        )
        .unwrap();
        assert_eq!(p, rat("1/5"));
        let d = magnetization_distribution(
            window,
            &profile,
            BoundaryPair::PLUS_PLUS,
            Spin::Down,
            &exact_tau("1/2"),
        )
        .unwrap();
        assert_eq!(d, vec![rat("4/5"), rat("1/5")]);
    }

    #[test]
    fn infinite_temperature_gives_binomial_weights() {
        let window = Interval::new(-1, 4).unwrap();
        let profile = distinct_profile();
        // τ = 1 is β = 0 exactly: every configuration weighs the same.
        let d = magnetization_distribution(
            window,
            &profile,
            BoundaryPair::MINUS_PLUS,
            Spin::Up,
            &exact_tau("1"),
        )
        .unwrap();
        for (r, p) in d.iter().enumerate() {
            let expected = Rational::new(binomial(6, r as i64), 64.into());
            assert_eq!(p, &expected);
        }
        // Small positive β approaches the same limit.
        let near_zero = EvalMode::Decimal {
            beta: rat("1e-9"),
            digits: 30,
        };
        let d = magnetization_distribution(
            window,
            &profile,
            BoundaryPair::MINUS_PLUS,
            Spin::Up,
            &near_zero,
        )
        .unwrap();
        for (r, p) in d.iter().enumerate() {
            let expected = rational_to_f64(&Rational::new(binomial(6, r as i64), 64.into()));
            assert!((rational_to_f64(p) - expected).abs() < 1e-6, "at r={r}");
        }
    }

    #[test]
    fn low_temperature_concentrates_on_the_majority() {
        let window = Interval::new(0, 4).unwrap();
        let profile = InteractionProfile::constant(rat("1"));
        let d = magnetization_distribution(
            window,
            &profile,
            BoundaryPair::PLUS_PLUS,
            Spin::Down,
            &exact_tau("1/1000000"),
        )
        .unwrap();
        assert!(d[0] > rat("1") - rat("1/100000"));
    }

    #[test]
    fn distributions_sum_to_one_exactly() {
        let window = Interval::new(-2, 3).unwrap();
        let profile = distinct_profile();
        for mode in [
            exact_tau("3/7"),
            EvalMode::Decimal {
                beta: rat("5/4"),
                digits: 40,
            },
        ] {
            let d = magnetization_distribution(
                window,
                &profile,
                BoundaryPair::PLUS_PLUS,
                Spin::Down,
                &mode,
            )
            .unwrap();
            let total: Rational = d.iter().cloned().sum();
            assert!(total.is_one());
        }
    }

    #[test]
    fn counts_agree_with_enumeration_for_every_boundary() {
        let window = Interval::new(-2, 2).unwrap();
        let profile = distinct_profile();
        let mode = exact_tau("2/5");
        for boundary in [
            BoundaryPair::PLUS_PLUS,
            BoundaryPair::MINUS_PLUS,
            BoundaryPair::PLUS_MINUS,
            BoundaryPair::MINUS_MINUS,
        ] {
            for counted in [Spin::Up, Spin::Down] {
                for r in 0..=window.len() {
                    let from_tables =
                        count_probability(window, &profile, boundary, counted, r, &mode).unwrap();
                    let from_enumeration = event_probability(
                        window,
                        &profile,
                        boundary,
                        |config| config.count_of(counted) == r,
                        &mode,
                    )
                    .unwrap();
                    assert_eq!(from_tables, from_enumeration, "at {boundary:?} {counted:?} {r}");
                    let from_distribution = magnetization_distribution(
                        window, &profile, boundary, counted, &mode,
                    )
                    .unwrap();
                    assert_eq!(from_tables, from_distribution[r]);
                }
            }
        }
    }

    #[test]
    fn complements_sum_to_one_exactly_in_both_modes() {
        let window = Interval::new(0, 4).unwrap();
        let profile = distinct_profile();
        for mode in [
            exact_tau("4/9"),
            EvalMode::Decimal {
                beta: rat("7/3"),
                digits: 25,
            },
        ] {
            let inside = event_probability(
                window,
                &profile,
                BoundaryPair::MINUS_PLUS,
                |config| config.spin_at(2).unwrap() == Spin::Down,
                &mode,
            )
            .unwrap();
            let outside = event_probability(
                window,
                &profile,
                BoundaryPair::MINUS_PLUS,
                |config| config.spin_at(2).unwrap() != Spin::Down,
                &mode,
            )
            .unwrap();
            assert!((inside + outside).is_one());
        }
    }

    #[test]
    fn constant_couplings_break_the_contour_condition_for_large_gaps() {
        let window = Interval::new(1, 10).unwrap();
        let profile = InteractionProfile::constant(rat("1"));
        let report = criteria_report(&profile, window, 4, 30).unwrap();
        // I_n + I_{n+k} = 2 ≤ k exactly when k ≥ 2.
        assert!(report.violations.iter().all(|v| v.k >= 2));
        let expected: usize = (2..=4).map(|k| (10 - k) as usize).sum();
        assert_eq!(report.violations.len(), expected);
        assert!(report
            .violations
            .iter()
            .all(|v| v.sum == rat("2") && v.n + v.k <= 10));
        assert_eq!(report.trend, SumTrend::Steady);
        // Constant increments make S_N = N·e^{-2} exactly, term for term.
        let increment = exp_rational(&rat("-2"), 30);
        for (n, sum) in &report.partial_sums {
            assert_eq!(sum, &(&increment * Rational::from_integer((*n).into())));
        }
    }

    #[test]
    fn growing_couplings_satisfy_the_contour_condition() {
        let values = (1..=8).map(|n| Rational::from_integer(n.into())).collect();
        let profile = InteractionProfile::table(1, values).unwrap();
        let window = Interval::new(1, 8).unwrap();
        let report = criteria_report(&profile, window, 5, 30).unwrap();
        assert!(report.violations.is_empty());
        assert_eq!(report.trend, SumTrend::Shrinking);
        assert_eq!(report.partial_sums.len(), 8);
    }

    #[test]
    fn windows_without_positive_sites_report_no_sums() {
        let profile = InteractionProfile::constant(rat("1"));
        let window = Interval::new(-3, 0).unwrap();
        let report = criteria_report(&profile, window, 2, 20).unwrap();
        assert!(report.partial_sums.is_empty());
        assert_eq!(report.trend, SumTrend::Mixed);
    }
}

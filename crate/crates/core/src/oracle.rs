//! Brute-force enumeration over all 2^N configurations of a window.
//!
//! Every recursion and closed form in the crate is checked against these
//! functions. Enumeration walks the configuration tree depth-first,
//! carrying the exact partial energy, so each of the 2^N leaves costs one
//! rational addition and one exact merge into the output spectrum.

use num_traits::{One, Zero};

use crate::{
    BoundaryPair, Error, InteractionProfile, Interval, Rational, Spectrum, Spin,
    SpinConfiguration,
};

/// Default limit on window size: 2^24 configurations stay comfortably
/// inside a test run.
pub const DEFAULT_SITE_CAP: usize = 24;

/// Which global partition function to enumerate: Z⁺ (both boundary spins
/// +1) or Z^± (left −1, right +1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlobalBoundary {
    Plus,
    Pm,
}

impl GlobalBoundary {
    pub fn pair(self) -> BoundaryPair {
        match self {
            GlobalBoundary::Plus => BoundaryPair::PLUS_PLUS,
            GlobalBoundary::Pm => BoundaryPair::MINUS_PLUS,
        }
    }
}

/// Exhaustive enumerator with a configurable site cap.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    pub cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self {
            cap: DEFAULT_SITE_CAP,
        }
    }
}

impl Enumerator {
    pub fn with_cap(cap: usize) -> Self {
        Self { cap }
    }

    /// Spectrum of the global chain on [-n, n] under the chosen boundary
    /// condition. The "±" condition is exactly the (−,+) window energy.
    pub fn global(
        &self,
        n: u32,
        profile: &InteractionProfile,
        bc: GlobalBoundary,
    ) -> Result<Spectrum, Error> {
        self.window(Interval::symmetric(n), profile, bc.pair())
    }

    /// Spectrum of all configurations of `window` under `boundary`.
    pub fn window(
        &self,
        window: Interval,
        profile: &InteractionProfile,
        boundary: BoundaryPair,
    ) -> Result<Spectrum, Error> {
        let mut out = Spectrum::new();
        self.walk(window, profile, boundary, |_, e| {
            out.add_term(e, Rational::one())
        })?;
        Ok(out)
    }

    /// Spectrum restricted to configurations with exactly `r` spins equal
    /// to `counted`.
    pub fn crystal(
        &self,
        window: Interval,
        profile: &InteractionProfile,
        boundary: BoundaryPair,
        r: usize,
        counted: Spin,
    ) -> Result<Spectrum, Error> {
        if r > window.len() {
            return Err(Error::CountOutOfRange {
                r,
                len: window.len(),
            });
        }
        let mut out = Spectrum::new();
        self.walk(window, profile, boundary, |spins, e| {
            if spins.iter().filter(|&&s| s == counted).count() == r {
                out.add_term(e, Rational::one());
            }
        })?;
        Ok(out)
    }

    /// Spectrum restricted to configurations satisfying `event`.
    pub fn event<P: FnMut(&SpinConfiguration) -> bool>(
        &self,
        window: Interval,
        profile: &InteractionProfile,
        boundary: BoundaryPair,
        mut event: P,
    ) -> Result<Spectrum, Error> {
        let mut out = Spectrum::new();
        self.walk(window, profile, boundary, |spins, e| {
            let config = SpinConfiguration::new(window, spins.to_vec())
                .expect("walk produces full configurations");
            if event(&config) {
                out.add_term(e, Rational::one());
            }
        })?;
        Ok(out)
    }

    /// Depth-first walk over all configurations, invoking `leaf` with the
    /// spins and the exact total energy of each.
    fn walk<F: FnMut(&[Spin], Rational)>(
        &self,
        window: Interval,
        profile: &InteractionProfile,
        boundary: BoundaryPair,
        mut leaf: F,
    ) -> Result<(), Error> {
        let sites = window.len();
        if sites > self.cap {
            return Err(Error::EnumerationCapExceeded {
                sites,
                cap: self.cap,
            });
        }
        // Bonds I_m .. I_{n+1}; bonds[i] couples site m+i-1 to site m+i.
        let bonds: Vec<Rational> = (window.m()..=window.n() + 1)
            .map(|x| profile.coupling_at(x).cloned())
            .collect::<Result<_, _>>()?;
        if sites == 0 {
            let e = if boundary.left != boundary.right {
                bonds[0].clone()
            } else {
                Rational::zero()
            };
            leaf(&[], e);
            return Ok(());
        }
        let mut walk = Walk {
            bonds: &bonds,
            boundary,
            spins: vec![Spin::Up; sites],
            leaf: &mut leaf,
        };
        walk.go(0, Rational::zero());
        Ok(())
    }
}

struct Walk<'a, F> {
    bonds: &'a [Rational],
    boundary: BoundaryPair,
    spins: Vec<Spin>,
    leaf: &'a mut F,
}

impl<F: FnMut(&[Spin], Rational)> Walk<'_, F> {
    fn go(&mut self, i: usize, energy: Rational) {
        if i == self.spins.len() {
            let mut total = energy;
            if self.spins[i - 1] != self.boundary.right {
                total += &self.bonds[i];
            }
            (self.leaf)(&self.spins, total);
            return;
        }
        let prev = if i == 0 {
            self.boundary.left
        } else {
            self.spins[i - 1]
        };
        for s in [Spin::Up, Spin::Down] {
            self.spins[i] = s;
            let e = if s != prev {
                energy.clone() + &self.bonds[i]
            } else {
                energy.clone()
            };
            self.go(i + 1, e);
        }
    }
}

/// Global spectrum at the default cap.
pub fn enumerate_global(
    n: u32,
    profile: &InteractionProfile,
    bc: GlobalBoundary,
) -> Result<Spectrum, Error> {
    Enumerator::default().global(n, profile, bc)
}

/// Window spectrum at the default cap.
pub fn enumerate_window(
    window: Interval,
    profile: &InteractionProfile,
    boundary: BoundaryPair,
) -> Result<Spectrum, Error> {
    Enumerator::default().window(window, profile, boundary)
}

/// Fixed-count ("crystal") spectrum at the default cap.
pub fn enumerate_crystal(
    window: Interval,
    profile: &InteractionProfile,
    boundary: BoundaryPair,
    r: usize,
    counted: Spin,
) -> Result<Spectrum, Error> {
    Enumerator::default().crystal(window, profile, boundary, r, counted)
}

/// Event-restricted spectrum at the default cap.
pub fn enumerate_event<P: FnMut(&SpinConfiguration) -> bool>(
    window: Interval,
    profile: &InteractionProfile,
    boundary: BoundaryPair,
    event: P,
) -> Result<Spectrum, Error> {
    Enumerator::default().event(window, profile, boundary, event)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{global_energy_plus, global_energy_pm};
    use num_bigint::BigInt;

    fn rat(p: i64) -> Rational {
        Rational::from_integer(BigInt::from(p))
    }

    fn ratq(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    fn spec(pairs: &[(Rational, i64)]) -> Spectrum {
        Spectrum::from_terms(pairs.iter().map(|(e, n)| (e.clone(), rat(*n))))
    }

    fn one() -> InteractionProfile {
        InteractionProfile::constant(rat(1))
    }

    #[test]
    fn global_base_cases() {
        assert_eq!(
            enumerate_global(0, &one(), GlobalBoundary::Plus).unwrap(),
            spec(&[(rat(0), 1), (rat(2), 1)])
        );
        assert_eq!(
            enumerate_global(0, &one(), GlobalBoundary::Pm).unwrap(),
            spec(&[(rat(1), 2)])
        );
    }

    #[test]
    fn total_multiplicity_counts_configurations() {
        for n in 0..3u32 {
            let s = enumerate_global(n, &one(), GlobalBoundary::Plus).unwrap();
            assert_eq!(s.total_multiplicity(), rat(1 << (2 * n + 1)));
        }
    }

    #[test]
    fn global_boundaries_match_the_energy_functions() {
        let p = InteractionProfile::symmetrized_periodic(&[ratq(1, 2), rat(3)], 6).unwrap();
        let window = Interval::symmetric(2);
        let mut plus = Spectrum::new();
        let mut pm = Spectrum::new();
        for bits in 0..32u64 {
            let cfg = SpinConfiguration::from_bits(window, bits);
            plus.add_term(global_energy_plus(&cfg, &p).unwrap(), rat(1));
            pm.add_term(global_energy_pm(&cfg, &p).unwrap(), rat(1));
        }
        assert_eq!(enumerate_global(2, &p, GlobalBoundary::Plus).unwrap(), plus);
        assert_eq!(enumerate_global(2, &p, GlobalBoundary::Pm).unwrap(), pm);
    }

    #[test]
    fn single_site_and_empty_windows() {
        let m = 3;
        let w = Interval::new(m, m).unwrap();
        assert_eq!(
            enumerate_window(w, &one(), BoundaryPair::PLUS_PLUS).unwrap(),
            spec(&[(rat(0), 1), (rat(2), 1)])
        );
        assert_eq!(
            enumerate_window(w, &one(), BoundaryPair::MINUS_PLUS).unwrap(),
            spec(&[(rat(1), 2)])
        );
        let empty = Interval::empty_at(m);
        assert_eq!(
            enumerate_window(empty, &one(), BoundaryPair::PLUS_MINUS).unwrap(),
            spec(&[(rat(1), 1)])
        );
        assert_eq!(
            enumerate_window(empty, &one(), BoundaryPair::PLUS_PLUS).unwrap(),
            spec(&[(rat(0), 1)])
        );
    }

    #[test]
    fn crystal_selects_fixed_counts() {
        // Distinct couplings I_m, I_{m+1}, I_{m+2} on a two-site window.
        let m = 0;
        let p = InteractionProfile::table(m, vec![rat(2), rat(3), rat(5)]).unwrap();
        let w = Interval::new(m, m + 1).unwrap();
        let both_down =
            enumerate_crystal(w, &p, BoundaryPair::PLUS_PLUS, 2, Spin::Down).unwrap();
        assert_eq!(both_down, spec(&[(rat(2 + 5), 1)]));
        let none_down =
            enumerate_crystal(w, &p, BoundaryPair::PLUS_PLUS, 0, Spin::Down).unwrap();
        assert_eq!(none_down, spec(&[(rat(0), 1)]));
        // The r-classes partition the configuration space.
        let mut total = Spectrum::new();
        for r in 0..=2 {
            let part = enumerate_crystal(w, &p, BoundaryPair::PLUS_PLUS, r, Spin::Down).unwrap();
            total = total.add(&part);
        }
        assert_eq!(
            total,
            enumerate_window(w, &p, BoundaryPair::PLUS_PLUS).unwrap()
        );
        assert!(matches!(
            enumerate_crystal(w, &p, BoundaryPair::PLUS_PLUS, 3, Spin::Down),
            Err(Error::CountOutOfRange { r: 3, len: 2 })
        ));
    }

    #[test]
    fn spin_flip_equivalence() {
        let p = InteractionProfile::table(-1, vec![ratq(1, 3), rat(2), ratq(5, 2), rat(1)])
            .unwrap();
        let w = Interval::new(-1, 1).unwrap();
        for r in 0..=3 {
            let minus = enumerate_crystal(w, &p, BoundaryPair::MINUS_MINUS, r, Spin::Up).unwrap();
            let plus = enumerate_crystal(w, &p, BoundaryPair::PLUS_PLUS, r, Spin::Down).unwrap();
            assert_eq!(minus, plus, "r = {r}");
        }
    }

    #[test]
    fn events_filter_configurations() {
        let w = Interval::new(2, 2).unwrap();
        let all = enumerate_event(w, &one(), BoundaryPair::PLUS_PLUS, |_| true).unwrap();
        assert_eq!(all, enumerate_window(w, &one(), BoundaryPair::PLUS_PLUS).unwrap());
        let none = enumerate_event(w, &one(), BoundaryPair::PLUS_PLUS, |_| false).unwrap();
        assert!(none.is_empty());
        let down = enumerate_event(w, &one(), BoundaryPair::PLUS_PLUS, |c| {
            c.spin_at(2).unwrap() == Spin::Down
        })
        .unwrap();
        assert_eq!(down, spec(&[(rat(2), 1)]));
    }

    #[test]
    fn cap_is_enforced() {
        let w = Interval::new(0, 24).unwrap();
        assert!(matches!(
            enumerate_window(w, &one(), BoundaryPair::PLUS_PLUS),
            Err(Error::EnumerationCapExceeded { sites: 25, cap: 24 })
        ));
        // A 4-site window passes under a tight custom cap of 4.
        let tight = Enumerator::with_cap(4);
        assert!(tight
            .window(Interval::new(0, 3).unwrap(), &one(), BoundaryPair::PLUS_PLUS)
            .is_ok());
        assert!(tight
            .window(Interval::new(0, 4).unwrap(), &one(), BoundaryPair::PLUS_PLUS)
            .is_err());
    }
}

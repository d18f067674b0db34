//! Couplings, intervals, boundary conditions, spin configurations, and the
//! energy functions they induce.
//!
//! A chain assigns a coupling I_x to every bond (x-1, x). A configuration σ
//! on an interval [m, n] pays I_x for every bond whose two spins disagree,
//! where the spins just outside the interval are pinned by the boundary
//! condition. All couplings and energies are exact rationals.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::exact::{format_rational, parse_rational};
use crate::{Error, Rational};

/// A single spin value, +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn value(self) -> i8 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    pub fn from_char(c: char) -> Option<Spin> {
        match c {
            '+' => Some(Spin::Up),
            '-' => Some(Spin::Down),
            _ => None,
        }
    }
}

impl std::fmt::Display for Spin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Spin::Up => "+",
            Spin::Down => "-",
        })
    }
}

/// Integer interval [m, n]. The case n = m-1 encodes the empty interval,
/// which the crystal recursions need as their base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    m: i64,
    n: i64,
}

impl Interval {
    pub fn new(m: i64, n: i64) -> Result<Self, Error> {
        if n >= m - 1 {
            Ok(Self { m, n })
        } else {
            Err(Error::InvalidInterval { m, n })
        }
    }

    /// The empty interval anchored at m, i.e. [m, m-1].
    pub fn empty_at(m: i64) -> Self {
        Self { m, n: m - 1 }
    }

    /// The symmetric interval [-n, n].
    pub fn symmetric(n: u32) -> Self {
        Self {
            m: -(n as i64),
            n: n as i64,
        }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn len(&self) -> usize {
        (self.n - self.m + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n < self.m
    }

    pub fn contains(&self, x: i64) -> bool {
        self.m <= x && x <= self.n
    }

    pub fn sites(&self) -> impl Iterator<Item = i64> {
        self.m..=self.n
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.m, self.n)
    }
}

/// The two pinned spins just outside a window: left at site m-1, right at
/// site n+1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundaryPair {
    pub left: Spin,
    pub right: Spin,
}

impl BoundaryPair {
    /// The "+" boundary condition (+1 on both sides).
    pub const PLUS_PLUS: BoundaryPair = BoundaryPair {
        left: Spin::Up,
        right: Spin::Up,
    };
    /// The "±" boundary condition (-1 on the left, +1 on the right).
    pub const MINUS_PLUS: BoundaryPair = BoundaryPair {
        left: Spin::Down,
        right: Spin::Up,
    };
    pub const PLUS_MINUS: BoundaryPair = BoundaryPair {
        left: Spin::Up,
        right: Spin::Down,
    };
    pub const MINUS_MINUS: BoundaryPair = BoundaryPair {
        left: Spin::Down,
        right: Spin::Down,
    };

    pub fn new(left: Spin, right: Spin) -> Self {
        Self { left, right }
    }

    pub fn flipped(self) -> Self {
        Self {
            left: self.left.flipped(),
            right: self.right.flipped(),
        }
    }

    /// Parse "++", "-+", "+-", or "--".
    pub fn parse(text: &str) -> Option<Self> {
        let mut chars = text.chars();
        let left = Spin::from_char(chars.next()?)?;
        let right = Spin::from_char(chars.next()?)?;
        if chars.next().is_some() {
            return None;
        }
        Some(Self { left, right })
    }
}

impl std::fmt::Display for BoundaryPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.left, self.right)
    }
}

/// An assignment of ±1 to every site of an interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinConfiguration {
    interval: Interval,
    spins: Vec<Spin>,
}

impl SpinConfiguration {
    pub fn new(interval: Interval, spins: Vec<Spin>) -> Result<Self, Error> {
        if spins.len() != interval.len() {
            return Err(Error::SpinCountMismatch {
                expected: interval.len(),
                got: spins.len(),
            });
        }
        Ok(Self { interval, spins })
    }

    pub fn all_plus(interval: Interval) -> Self {
        Self {
            spins: vec![Spin::Up; interval.len()],
            interval,
        }
    }

    /// Configuration whose i-th site is Down iff bit i of `bits` is set.
    /// Used by the enumeration oracle and by tests.
    pub fn from_bits(interval: Interval, bits: u64) -> Self {
        let spins = (0..interval.len())
            .map(|i| {
                if bits >> i & 1 == 1 {
                    Spin::Down
                } else {
                    Spin::Up
                }
            })
            .collect();
        Self { interval, spins }
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn spins(&self) -> &[Spin] {
        &self.spins
    }

    pub fn spin_at(&self, x: i64) -> Result<Spin, Error> {
        if !self.interval.contains(x) {
            return Err(Error::SiteOutOfRange {
                x,
                m: self.interval.m,
                n: self.interval.n,
            });
        }
        Ok(self.spins[(x - self.interval.m) as usize])
    }

    /// Count of sites carrying the value `epsilon`.
    pub fn count_of(&self, epsilon: Spin) -> usize {
        self.spins.iter().filter(|&&s| s == epsilon).count()
    }

    /// Every spin negated.
    pub fn flipped(&self) -> Self {
        Self {
            interval: self.interval,
            spins: self.spins.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// Reflected through the origin: site x takes the old value at -x, on
    /// the interval [-n, -m].
    pub fn mirrored(&self) -> Self {
        let interval = Interval {
            m: -self.interval.n,
            n: -self.interval.m,
        };
        let mut spins = self.spins.clone();
        spins.reverse();
        Self { interval, spins }
    }
}

/// Count of sites of `config` carrying the value `epsilon`.
pub fn minority_count(config: &SpinConfiguration, epsilon: Spin) -> usize {
    config.count_of(epsilon)
}

/// The coupling sequence I_x, one value per bond (x-1, x).
///
/// Three parameterizations: a single constant, a periodic repetition
/// (index normalized into [0, period) by euclidean remainder), or an
/// explicit finite table that rejects out-of-range lookups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProfileRepr", into = "ProfileRepr")]
pub enum InteractionProfile {
    Constant { value: Rational },
    Periodic { values: Vec<Rational> },
    Table { offset: i64, values: Vec<Rational> },
}

impl InteractionProfile {
    pub fn constant(value: Rational) -> Self {
        InteractionProfile::Constant { value }
    }

    pub fn periodic(values: Vec<Rational>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::EmptyProfile);
        }
        Ok(InteractionProfile::Periodic { values })
    }

    pub fn table(offset: i64, values: Vec<Rational>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::EmptyProfile);
        }
        Ok(InteractionProfile::Table { offset, values })
    }

    /// Table profile satisfying the mirror symmetry I_n = I_(-n+1) by
    /// construction: `base` gives I_1, I_2, ... cyclically for n >= 1 and
    /// the values for n <= 0 are the reflections. Covers indices
    /// [-(half_range) + 1, half_range].
    pub fn symmetrized_periodic(base: &[Rational], half_range: usize) -> Result<Self, Error> {
        if base.is_empty() {
            return Err(Error::EmptyProfile);
        }
        let at = |n: i64| -> Rational {
            let n = if n >= 1 { n } else { 1 - n };
            base[((n - 1) as usize) % base.len()].clone()
        };
        let lo = -(half_range as i64) + 1;
        let hi = half_range as i64;
        let values = (lo..=hi).map(at).collect();
        Ok(InteractionProfile::Table { offset: lo, values })
    }

    /// The coupling I_x. Constant and periodic profiles are total;
    /// table profiles reject x outside [offset, offset + len - 1].
    pub fn coupling_at(&self, x: i64) -> Result<&Rational, Error> {
        match self {
            InteractionProfile::Constant { value } => Ok(value),
            InteractionProfile::Periodic { values } => {
                let i = x.rem_euclid(values.len() as i64) as usize;
                Ok(&values[i])
            }
            InteractionProfile::Table { offset, values } => {
                let hi = offset + values.len() as i64 - 1;
                if x < *offset || x > hi {
                    return Err(Error::CouplingOutOfRange {
                        x,
                        lo: *offset,
                        hi,
                    });
                }
                Ok(&values[(x - offset) as usize])
            }
        }
    }

    /// The index range of an explicit table, if any.
    pub fn domain(&self) -> Option<(i64, i64)> {
        match self {
            InteractionProfile::Table { offset, values } => {
                Some((*offset, offset + values.len() as i64 - 1))
            }
            _ => None,
        }
    }

    /// Whether I_n = I_(-n+1) holds for every n with both indices inside
    /// `window`. Errors only if a required table lookup is out of range.
    pub fn is_symmetric(&self, window: Interval) -> Result<bool, Error> {
        match self.require_symmetric(window) {
            Ok(()) => Ok(true),
            Err(Error::AsymmetricProfile { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Like [`is_symmetric`](Self::is_symmetric), but reports the first
    /// violated pair.
    pub fn require_symmetric(&self, window: Interval) -> Result<(), Error> {
        if let InteractionProfile::Constant { .. } = self {
            return Ok(());
        }
        // The pair (n, -n+1) for n <= 0 duplicates the pair for n' = 1-n,
        // so scanning n >= 1 covers everything.
        let max_n = window.n().min(1 - window.m());
        for n in 1..=max_n {
            if self.coupling_at(n)? != self.coupling_at(-n + 1)? {
                return Err(Error::AsymmetricProfile { n });
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum ProfileRepr {
    Constant { value: String },
    Periodic { values: Vec<String> },
    Table { offset: i64, values: Vec<String> },
}

impl TryFrom<ProfileRepr> for InteractionProfile {
    type Error = Error;

    fn try_from(repr: ProfileRepr) -> Result<Self, Error> {
        let parse_all = |vs: Vec<String>| -> Result<Vec<Rational>, Error> {
            vs.iter().map(|v| parse_rational(v)).collect()
        };
        match repr {
            ProfileRepr::Constant { value } => {
                Ok(InteractionProfile::constant(parse_rational(&value)?))
            }
            ProfileRepr::Periodic { values } => InteractionProfile::periodic(parse_all(values)?),
            ProfileRepr::Table { offset, values } => {
                InteractionProfile::table(offset, parse_all(values)?)
            }
        }
    }
}

impl From<InteractionProfile> for ProfileRepr {
    fn from(p: InteractionProfile) -> Self {
        let fmt_all = |vs: &[Rational]| vs.iter().map(format_rational).collect();
        match p {
            InteractionProfile::Constant { value } => ProfileRepr::Constant {
                value: format_rational(&value),
            },
            InteractionProfile::Periodic { values } => ProfileRepr::Periodic {
                values: fmt_all(&values),
            },
            InteractionProfile::Table { offset, values } => ProfileRepr::Table {
                offset,
                values: fmt_all(&values),
            },
        }
    }
}

fn disagree(a: Spin, b: Spin) -> bool {
    a != b
}

/// Energy of a configuration on a window [m, n] with both outside spins
/// pinned by `boundary`: the bonds I_m .. I_{n+1} each cost their coupling
/// when the adjacent spins disagree. The empty window pays the single bond
/// I_m between the two boundary spins.
pub fn window_energy(
    config: &SpinConfiguration,
    profile: &InteractionProfile,
    boundary: BoundaryPair,
) -> Result<Rational, Error> {
    let iv = config.interval();
    let mut total = Rational::from_integer(0.into());
    if iv.is_empty() {
        if disagree(boundary.left, boundary.right) {
            total += profile.coupling_at(iv.m())?;
        }
        return Ok(total);
    }
    if disagree(boundary.left, config.spin_at(iv.m())?) {
        total += profile.coupling_at(iv.m())?;
    }
    for x in iv.m() + 1..=iv.n() {
        if disagree(config.spin_at(x - 1)?, config.spin_at(x)?) {
            total += profile.coupling_at(x)?;
        }
    }
    if disagree(config.spin_at(iv.n())?, boundary.right) {
        total += profile.coupling_at(iv.n() + 1)?;
    }
    Ok(total)
}

/// Energy of a configuration on [-n, n] under the all-plus boundary
/// condition: interior bonds I_{-n+1} .. I_n plus the two boundary terms
/// I_{-n}·1{σ(-n) ≠ +1} and I_{n+1}·1{σ(n) ≠ +1}.
pub fn global_energy_plus(
    config: &SpinConfiguration,
    profile: &InteractionProfile,
) -> Result<Rational, Error> {
    require_symmetric_interval(config.interval())?;
    window_energy(config, profile, BoundaryPair::PLUS_PLUS)
}

/// Energy under the "±" boundary condition: the "+" energy plus the
/// tilt term I_{-n}·σ(-n).
pub fn global_energy_pm(
    config: &SpinConfiguration,
    profile: &InteractionProfile,
) -> Result<Rational, Error> {
    require_symmetric_interval(config.interval())?;
    let iv = config.interval();
    let mut total = global_energy_plus(config, profile)?;
    let tilt = profile.coupling_at(iv.m())?;
    match config.spin_at(iv.m())?.value() {
        1 => total += tilt,
        _ => total -= tilt,
    }
    Ok(total)
}

fn require_symmetric_interval(iv: Interval) -> Result<(), Error> {
    if iv.m() != -iv.n() || iv.n() < 0 {
        return Err(Error::AsymmetricInterval { m: iv.m(), n: iv.n() });
    }
    Ok(())
}

/// Exhaustive per-site breakdown used by diagnostics: maps site index to
/// exact coupling, clamped to the profile's domain.
pub fn couplings_in(
    profile: &InteractionProfile,
    window: Interval,
) -> BTreeMap<i64, Rational> {
    window
        .sites()
        .filter_map(|x| profile.coupling_at(x).ok().map(|c| (x, c.clone())))
        .collect()
}

/// True when every coupling in `window` is nonnegative.
pub fn all_nonnegative(profile: &InteractionProfile, window: Interval) -> Result<bool, Error> {
    for x in window.sites() {
        if profile.coupling_at(x)?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

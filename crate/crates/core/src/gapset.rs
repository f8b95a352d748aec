//! Finite sets of positive integers, gapsets and m-extensions.
//!
//! A gapset is a finite `G` in the positive integers such that whenever
//! `z = x + y` with `z` in `G`, one of `x`, `y` is in `G`. An m-extension
//! contains `[1, m-1]`, avoids multiples of `m`, and every element above
//! `m` has its predecessor `a - m` in the set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("set elements must be positive, found 0")]
    NonPositive,
    #[error("set elements must be strictly increasing ({prev} then {next})")]
    NotIncreasing { prev: u32, next: u32 },
    #[error("duplicate element {0}")]
    Duplicate(u32),
    #[error("cannot parse {token:?} as a positive integer")]
    Parse { token: String },
}

/// Strictly increasing list of positive integers with a bitmask over
/// `[1, max]` for constant-time membership.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSet {
    elements: Vec<u32>,
    bits: Vec<u64>,
}

impl FiniteSet {
    pub fn new(elements: Vec<u32>) -> Result<Self, SetError> {
        if elements.first() == Some(&0) {
            return Err(SetError::NonPositive);
        }
        for w in elements.windows(2) {
            if w[0] >= w[1] {
                return Err(SetError::NotIncreasing {
                    prev: w[0],
                    next: w[1],
                });
            }
        }
        Ok(Self::from_sorted_unchecked(elements))
    }

    /// Sorts first; duplicates and zero are still rejected.
    pub fn from_unsorted(mut elements: Vec<u32>) -> Result<Self, SetError> {
        elements.sort_unstable();
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(SetError::Duplicate(w[0]));
        }
        Self::new(elements)
    }

    pub fn empty() -> Self {
        Self::from_sorted_unchecked(Vec::new())
    }

    /// `{1, 2, ..., n}`.
    pub fn interval(n: u32) -> Self {
        Self::from_sorted_unchecked((1..=n).collect())
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.first().is_none_or(|&e| e > 0));
        let max = elements.last().copied().unwrap_or(0) as usize;
        let mut bits = vec![0u64; max / 64 + 1];
        for &e in &elements {
            bits[e as usize / 64] |= 1 << (e % 64);
        }
        FiniteSet { elements, bits }
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let x = x as usize;
        self.bits
            .get(x / 64)
            .is_some_and(|word| word & (1 << (x % 64)) != 0)
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> Option<u32> {
        self.elements.last().copied()
    }

    /// Least positive integer outside the set.
    pub fn least_missing(&self) -> u32 {
        // Elements are strictly increasing and positive, so the first
        // position where elements[i] != i + 1 is the gap.
        self.elements
            .iter()
            .zip(1u32..)
            .find(|&(&e, i)| e != i)
            .map_or(self.elements.len() as u32 + 1, |(_, i)| i)
    }

    /// `max + 1`, or 0 for the empty set.
    pub fn conductor(&self) -> u32 {
        self.max().map_or(0, |m| m + 1)
    }
}

impl fmt::Debug for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.elements).finish()
    }
}

/// Comma-separated literal, e.g. `1,2,4,7,10`. The empty set prints as ``.
impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for FiniteSet {
    type Err = SetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s
            .trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim();
        if s.is_empty() {
            return Ok(FiniteSet::empty());
        }
        let elements = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>().map_err(|_| SetError::Parse {
                    token: tok.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if elements.contains(&0) {
            return Err(SetError::NonPositive);
        }
        FiniteSet::from_unsorted(elements)
    }
}

impl Serialize for FiniteSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.elements.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FiniteSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let elements = Vec::<u32>::deserialize(deserializer)?;
        FiniteSet::new(elements).map_err(serde::de::Error::custom)
    }
}

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

/// A set that passed the gapset check, with its four invariants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GapSet {
    elements: FiniteSet,
    genus: u32,
    multiplicity: u32,
    conductor: u32,
    depth: u32,
}

impl GapSet {
    pub fn elements(&self) -> &FiniteSet {
        &self.elements
    }
    pub fn genus(&self) -> u32 {
        self.genus
    }
    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }
    pub fn conductor(&self) -> u32 {
        self.conductor
    }
    pub fn depth(&self) -> u32 {
        self.depth
    }
    pub fn into_set(self) -> FiniteSet {
        self.elements
    }
}

/// Why a set is not a gapset: `z = x + y` with `z` in the set and neither
/// `x` nor `y` in it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("not a gapset: {z} = {x} + {y} with {x} and {y} both outside the set")]
pub struct NotGapset {
    pub z: u32,
    pub x: u32,
    pub y: u32,
}

/// Smallest violating `z`, and for it the smallest `x` (with `x <= y`).
pub fn gapset_witness(s: &FiniteSet) -> Option<NotGapset> {
    s.elements().iter().find_map(|&z| {
        (1..=z / 2).find_map(|x| {
            let y = z - x;
            (!s.contains(x) && !s.contains(y)).then_some(NotGapset { z, x, y })
        })
    })
}

/// Classifies `s` with the definitional pairwise check.
pub fn classify_gapset(s: &FiniteSet) -> Result<GapSet, NotGapset> {
    if let Some(w) = gapset_witness(s) {
        return Err(w);
    }
    let genus = s.len() as u32;
    let multiplicity = s.least_missing();
    let conductor = s.conductor();
    let depth = ceil_div(conductor, multiplicity);
    Ok(GapSet {
        elements: s.clone(),
        genus,
        multiplicity,
        conductor,
        depth,
    })
}

/// The m-extension conditions a set can fail, reported in this order:
/// modulus, the initial block `[1, m-1]`, then elements in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NotMExtension {
    #[error("modulus must be greater than 1, got {0}")]
    InvalidModulus(u32),
    #[error("{missing} is in [1, m-1] but not in the set")]
    MissingInitial { missing: u32 },
    #[error("{element} is a multiple of the modulus {modulus}")]
    MultipleOfModulus { element: u32, modulus: u32 },
    #[error("{element} is in the set but {element} - {modulus} is not")]
    MissingPredecessor { element: u32, modulus: u32 },
}

/// A finite set together with a modulus `m` for which it is an m-extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MExtension {
    elements: FiniteSet,
    modulus: u32,
    genus: u32,
    conductor: u32,
    depth: u32,
}

impl MExtension {
    /// Builds without checking; callers guarantee the m-extension property.
    pub(crate) fn new_unchecked(elements: FiniteSet, modulus: u32) -> Self {
        debug_assert_eq!(m_extension_violation(&elements, modulus), None);
        let genus = elements.len() as u32;
        let conductor = elements.conductor();
        let depth = ceil_div(conductor, modulus);
        MExtension {
            elements,
            modulus,
            genus,
            conductor,
            depth,
        }
    }

    pub fn elements(&self) -> &FiniteSet {
        &self.elements
    }
    pub fn modulus(&self) -> u32 {
        self.modulus
    }
    pub fn genus(&self) -> u32 {
        self.genus
    }
    pub fn conductor(&self) -> u32 {
        self.conductor
    }
    pub fn depth(&self) -> u32 {
        self.depth
    }
}

fn m_extension_violation(s: &FiniteSet, m: u32) -> Option<NotMExtension> {
    if m < 2 {
        return Some(NotMExtension::InvalidModulus(m));
    }
    if let Some(missing) = (1..m).find(|&i| !s.contains(i)) {
        return Some(NotMExtension::MissingInitial { missing });
    }
    s.elements().iter().find_map(|&a| {
        if a % m == 0 {
            Some(NotMExtension::MultipleOfModulus {
                element: a,
                modulus: m,
            })
        } else if a > m && !s.contains(a - m) {
            Some(NotMExtension::MissingPredecessor {
                element: a,
                modulus: m,
            })
        } else {
            None
        }
    })
}

pub fn classify_m_extension(s: &FiniteSet, m: u32) -> Result<MExtension, NotMExtension> {
    match m_extension_violation(s, m) {
        Some(v) => Err(v),
        None => Ok(MExtension::new_unchecked(s.clone(), m)),
    }
}

/// Whether the m-extension is also a gapset (then of multiplicity `m`).
pub fn is_gapset_also(a: &MExtension) -> bool {
    gapset_witness(a.elements()).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> FiniteSet {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_three_extension_with_witness() {
        let err = classify_gapset(&set("1,2,4,7,10")).unwrap_err();
        assert_eq!(err, NotGapset { z: 10, x: 5, y: 5 });
    }

    #[test]
    fn ordinary_gapset() {
        for g in 1..=12 {
            let gs = classify_gapset(&FiniteSet::interval(g)).unwrap();
            assert_eq!(gs.genus(), g);
            assert_eq!(gs.depth(), 1);
            assert_eq!(gs.multiplicity(), g + 1);
            assert_eq!(gs.conductor(), g + 1);
        }
    }

    #[test]
    fn genus_eleven_example() {
        let gs = classify_gapset(&set("1,2,3,5,6,7,9,10,11,13,14")).unwrap();
        assert_eq!(
            (gs.genus(), gs.conductor(), gs.depth(), gs.multiplicity()),
            (11, 15, 4, 4)
        );
    }

    #[test]
    fn empty_set_conventions() {
        let gs = classify_gapset(&FiniteSet::empty()).unwrap();
        assert_eq!(
            (gs.genus(), gs.conductor(), gs.depth(), gs.multiplicity()),
            (0, 0, 0, 1)
        );
    }

    #[test]
    fn one_must_be_present() {
        let err = classify_gapset(&set("2,3")).unwrap_err();
        assert_eq!(err, NotGapset { z: 2, x: 1, y: 1 });
    }

    #[test]
    fn hyperelliptic_depth_equals_genus() {
        for g in 1..=10u32 {
            let odd = FiniteSet::new((0..g).map(|i| 2 * i + 1).collect()).unwrap();
            let gs = classify_gapset(&odd).unwrap();
            assert_eq!((gs.genus(), gs.depth(), gs.multiplicity()), (g, g, 2));
        }
    }

    #[test]
    fn m_extension_examples() {
        let a = classify_m_extension(&set("1,2,4,7,10"), 3).unwrap();
        assert_eq!((a.genus(), a.conductor(), a.depth()), (5, 11, 4));
        assert!(!is_gapset_also(&a));

        for m in 2..10 {
            let a = classify_m_extension(&FiniteSet::interval(m - 1), m).unwrap();
            assert_eq!(a.depth(), 1);
            assert!(is_gapset_also(&a));
        }

        let g = classify_m_extension(&set("1,2,3,5,6,7,9,10,11,13,14"), 4).unwrap();
        assert!(is_gapset_also(&g));
    }

    #[test]
    fn m_extension_rejections() {
        assert_eq!(
            classify_m_extension(&set("1,2,6"), 3),
            Err(NotMExtension::MultipleOfModulus {
                element: 6,
                modulus: 3
            })
        );
        assert_eq!(
            classify_m_extension(&set("1,3"), 3),
            Err(NotMExtension::MissingInitial { missing: 2 })
        );
        assert_eq!(
            classify_m_extension(&set("1,2,7"), 3),
            Err(NotMExtension::MissingPredecessor {
                element: 7,
                modulus: 3
            })
        );
        assert_eq!(
            classify_m_extension(&set("1"), 1),
            Err(NotMExtension::InvalidModulus(1))
        );
    }

    #[test]
    fn set_literal_parsing() {
        assert_eq!(set("4, 1,2").elements(), &[1, 2, 4]);
        assert_eq!(set("{1,2}").to_string(), "1,2");
        assert!(set("").is_empty());
        assert_eq!("1,1".parse::<FiniteSet>(), Err(SetError::Duplicate(1)));
        assert_eq!("0,1".parse::<FiniteSet>(), Err(SetError::NonPositive));
        assert!(matches!(
            "1,x".parse::<FiniteSet>(),
            Err(SetError::Parse { .. })
        ));
        assert!(FiniteSet::new(vec![2, 1]).is_err());
    }

    #[test]
    fn membership_past_end() {
        let s = set("1,2,64,65,200");
        assert!(s.contains(64) && s.contains(200));
        assert!(!s.contains(0) && !s.contains(63) && !s.contains(201) && !s.contains(10_000));
        assert_eq!(s.least_missing(), 3);
    }

    /// Every set in [1, m-1] plus any subset of [m+1, 2m-1] is a gapset.
    #[test]
    fn shallow_m_extensions_are_gapsets() {
        for m in 2..=10u32 {
            let upper: Vec<u32> = (m + 1..2 * m).collect();
            for mask in 0u32..(1 << upper.len()) {
                let mut elems: Vec<u32> = (1..m).collect();
                elems.extend(
                    upper
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &e)| e),
                );
                let s = FiniteSet::new(elems).unwrap();
                let a = classify_m_extension(&s, m).unwrap();
                assert!(a.depth() <= 2);
                assert!(is_gapset_also(&a));
                let gs = classify_gapset(&s).unwrap();
                assert_eq!(gs.multiplicity(), m);
            }
        }
    }
}

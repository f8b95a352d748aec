//! Exhaustive, exact counting of gapsets by genus, depth and multiplicity.
//!
//! A gapset of genus `g` and multiplicity `m` is the same thing as a tiling
//! of a g-board into `m - 1` parts whose parts satisfy the Kunz system, and
//! its depth is the largest part. The census walks those tilings, pruning
//! by part size and part count at generation time, and counts the ones
//! that pass the system. Work is split into shards by the value of the
//! first part; shards are independent and their counts are summed.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gapset::{classify_gapset, FiniteSet, GapSet};
use crate::kunz::{from_kunz, kunz_violation, KunzVector};
use crate::sequences::{fibonacci, padovan, BigCount, SeqError};
use crate::tilings::CompositionShape;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("multiplicity filter must be at least 2, got {0}")]
    InvalidMultiplicity(u32),
    #[error("genus {0} is too large for a 64-bit m-extension count (limit 63)")]
    GenusTooLarge(u32),
    #[error("count overflows 64 bits")]
    Overflow,
    #[error(transparent)]
    Sequence(#[from] SeqError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthFilter {
    Any,
    Exact(u32),
    AtMost(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicityFilter {
    Any,
    Exact(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CensusQuery {
    pub genus: u32,
    pub depth: DepthFilter,
    pub multiplicity: MultiplicityFilter,
}

impl CensusQuery {
    /// All gapsets of genus `g`.
    pub fn genus(g: u32) -> Self {
        CensusQuery {
            genus: g,
            depth: DepthFilter::Any,
            multiplicity: MultiplicityFilter::Any,
        }
    }

    pub fn depth(mut self, q: u32) -> Self {
        self.depth = DepthFilter::Exact(q);
        self
    }

    pub fn max_depth(mut self, q: u32) -> Self {
        self.depth = DepthFilter::AtMost(q);
        self
    }

    pub fn multiplicity(mut self, m: u32) -> Self {
        self.multiplicity = MultiplicityFilter::Exact(m);
        self
    }

    pub fn validate(&self) -> Result<(), CensusError> {
        match self.multiplicity {
            MultiplicityFilter::Exact(m) if m < 2 => Err(CensusError::InvalidMultiplicity(m)),
            _ => Ok(()),
        }
    }

    /// Whether the empty gapset (genus 0, depth 0, multiplicity 1) matches.
    fn admits_empty(&self) -> bool {
        let depth_ok = match self.depth {
            DepthFilter::Any | DepthFilter::AtMost(_) => true,
            DepthFilter::Exact(q) => q == 0,
        };
        depth_ok && self.multiplicity == MultiplicityFilter::Any
    }

    fn shape(&self) -> CompositionShape {
        let bound = match self.depth {
            DepthFilter::Any => None,
            DepthFilter::Exact(q) | DepthFilter::AtMost(q) => Some(q),
        };
        let parts = match self.multiplicity {
            MultiplicityFilter::Any => None,
            MultiplicityFilter::Exact(m) => Some(m as usize - 1),
        };
        CompositionShape::new(self.genus)
            .max_part(bound)
            .parts(parts)
    }

    /// Whether a composition that already fits [`Self::shape`] is counted.
    #[inline]
    fn keeps(&self, parts: &[u32]) -> bool {
        if let DepthFilter::Exact(q) = self.depth {
            if !parts.contains(&q) {
                return false;
            }
        }
        kunz_violation(parts).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusResult {
    pub query: CensusQuery,
    pub count: u64,
    /// Present when enumeration was requested; then `items.len() == count`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub items: Option<Vec<GapSet>>,
    #[serde(rename = "elapsed_ms", serialize_with = "as_millis")]
    pub elapsed: Duration,
    pub shards: usize,
}

fn as_millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_millis() as u64)
}

/// Census runner. `shards` is the number of disjoint first-part groups the
/// work is split into; they run on the current rayon pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    shards: usize,
}

impl Default for Census {
    fn default() -> Self {
        Census::new(rayon::current_num_threads())
    }
}

impl Census {
    pub fn new(shards: usize) -> Self {
        Census {
            shards: shards.max(1),
        }
    }

    pub fn sequential() -> Self {
        Census::new(1)
    }

    pub fn shards(&self) -> usize {
        self.shards
    }

    pub fn count(&self, query: &CensusQuery) -> Result<CensusResult, CensusError> {
        query.validate()?;
        let start = Instant::now();
        let count = if query.genus == 0 {
            u64::from(query.admits_empty())
        } else {
            self.count_compositions(query)?
        };
        Ok(CensusResult {
            query: *query,
            count,
            items: None,
            elapsed: start.elapsed(),
            shards: self.shards,
        })
    }

    /// Like [`Census::count`] but also collects the gapsets, in
    /// lexicographic order of their Kunz coordinates. Runs as one shard.
    pub fn enumerate(&self, query: &CensusQuery) -> Result<CensusResult, CensusError> {
        query.validate()?;
        let start = Instant::now();
        let items: Vec<GapSet> = if query.genus == 0 {
            if query.admits_empty() {
                vec![classify_gapset(&FiniteSet::empty()).expect("empty set is a gapset")]
            } else {
                Vec::new()
            }
        } else {
            let mut out = Vec::new();
            let mut stream = query.shape().iter();
            while let Some(parts) = stream.next_parts() {
                if query.keeps(parts) {
                    out.push(gapset_from_coords(parts));
                }
            }
            out
        };
        Ok(CensusResult {
            query: *query,
            count: items.len() as u64,
            items: Some(items),
            elapsed: start.elapsed(),
            shards: 1,
        })
    }

    fn count_compositions(&self, query: &CensusQuery) -> Result<u64, CensusError> {
        let shape = query.shape();
        let top = shape.max_part.unwrap_or(shape.total).min(shape.total);
        let shards = self.shards;
        (0..shards)
            .into_par_iter()
            .map(|shard| {
                let mut n: u64 = 0;
                for first in (shard as u32 + 1..=top).step_by(shards) {
                    let mut stream = shape.first_part(Some(first)).iter();
                    while let Some(parts) = stream.next_parts() {
                        if query.keeps(parts) {
                            n = n.checked_add(1).ok_or(CensusError::Overflow)?;
                        }
                    }
                }
                Ok(n)
            })
            .try_reduce(|| 0, |a, b| a.checked_add(b).ok_or(CensusError::Overflow))
    }

    /// `profile[q]` is the number of gapsets of genus `g` and depth `q`,
    /// for `q` in `0..=g`, from a single pass over the tilings.
    pub fn depth_profile(&self, g: u32) -> Result<Vec<u64>, CensusError> {
        let len = g as usize + 1;
        if g == 0 {
            return Ok(vec![1]);
        }
        let shape = CompositionShape::new(g);
        let shards = self.shards;
        let profile = (0..shards)
            .into_par_iter()
            .map(|shard| {
                let mut hist = vec![0u64; len];
                for first in (shard as u32 + 1..=g).step_by(shards) {
                    let mut stream = shape.first_part(Some(first)).iter();
                    while let Some(parts) = stream.next_parts() {
                        if kunz_violation(parts).is_none() {
                            let q = parts.iter().copied().max().unwrap_or(0);
                            hist[q as usize] += 1;
                        }
                    }
                }
                hist
            })
            .reduce(
                || vec![0u64; len],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            );
        Ok(profile)
    }

    /// Number of m-extensions of genus `g` (all moduli), by walking every
    /// tiling of the g-board.
    pub fn count_m_extensions(&self, g: u32) -> Result<u64, CensusError> {
        if g >= 64 {
            return Err(CensusError::GenusTooLarge(g));
        }
        if g == 0 {
            return Ok(0);
        }
        let shape = CompositionShape::new(g);
        let shards = self.shards;
        (0..shards)
            .into_par_iter()
            .map(|shard| {
                let mut n: u64 = 0;
                for first in (shard as u32 + 1..=g).step_by(shards) {
                    let mut stream = shape.first_part(Some(first)).iter();
                    while stream.next_parts().is_some() {
                        n += 1;
                    }
                }
                Ok(n)
            })
            .try_reduce(
                || 0,
                |a: u64, b| a.checked_add(b).ok_or(CensusError::Overflow),
            )
    }
}

fn gapset_from_coords(parts: &[u32]) -> GapSet {
    let v = KunzVector::from_coords(parts.to_vec()).expect("composition parts are positive");
    let a = from_kunz(&v);
    classify_gapset(a.elements()).expect("Kunz system and the gapset definition agree")
}

pub fn count_gapsets(query: &CensusQuery) -> Result<CensusResult, CensusError> {
    Census::default().count(query)
}

/// `2^(g-1)` for `g >= 1`, by exhaustive enumeration.
pub fn count_m_extensions(g: u32) -> Result<u64, CensusError> {
    Census::default().count_m_extensions(g)
}

/// Number of gapsets of genus `g` and depth at most `k` (the empty gapset
/// counts at `g = 0`).
pub fn count_gapsets_depth_at_most(g: u32, k: u32) -> Result<u64, CensusError> {
    Ok(count_gapsets(&CensusQuery::genus(g).max_depth(k))?.count)
}

/// `#F(g, q, m)`: gapsets with genus `g`, depth `q`, multiplicity `m`.
pub fn count_by_depth_and_multiplicity(g: u32, q: u32, m: u32) -> Result<u64, CensusError> {
    Ok(count_gapsets(&CensusQuery::genus(g).depth(q).multiplicity(m))?.count)
}

/// `#F(g, q)`: gapsets with genus `g` and depth `q`.
pub fn count_by_depth(g: u32, q: u32) -> Result<u64, CensusError> {
    Ok(count_gapsets(&CensusQuery::genus(g).depth(q))?.count)
}

/// `n_g`.
pub fn count_by_genus(g: u32) -> Result<u64, CensusError> {
    Ok(count_gapsets(&CensusQuery::genus(g))?.count)
}

/// Whether `coords` has the depth-3 tiling pattern: for some position `a`,
/// every coordinate before it is 2 or 3, `k_a = 3`, and every coordinate
/// after it is 1 or 2.
pub fn matches_depth3_pattern(coords: &[u32]) -> bool {
    (0..coords.len()).any(|a| {
        coords[a] == 3
            && coords[..a].iter().all(|&k| k == 2 || k == 3)
            && coords[a + 1..].iter().all(|&k| k == 1 || k == 2)
    })
}

/// Kunz vectors of genus `g` with the depth-3 tiling pattern, each once, in
/// lexicographic order. Every one of them is a gapset of depth 3.
///
/// The pivot of a matching vector is always its last 3, so distinct
/// pattern instances give distinct vectors.
pub fn enumerate_depth3_family(g: u32) -> impl Iterator<Item = KunzVector> {
    let stream = (g >= 3).then(|| CompositionShape::new(g).max_part(Some(3)).iter());
    stream
        .into_iter()
        .flatten()
        .filter(|c| matches_depth3_pattern(c.parts()))
        .map(|c| KunzVector::from_coords(c.into()).expect("positive parts"))
}

/// Size of the depth-3 family, in closed form:
/// `F_{g-2} + sum_{n=2}^{g-3} P_n F_{g-2-n}` for `g >= 3`, and 0 below.
pub fn count_depth3_family(g: u32) -> Result<u64, CensusError> {
    if g < 3 {
        return Ok(0);
    }
    let mut total: BigCount = fibonacci(g - 2)?;
    for n in 2..=g - 3 {
        let term = padovan(i64::from(n))?
            .checked_mul(fibonacci(g - 2 - n)?)
            .ok_or(CensusError::Overflow)?;
        total = total.checked_add(term).ok_or(CensusError::Overflow)?;
    }
    let total = u64::try_from(total).map_err(|_| CensusError::Overflow)?;
    if cfg!(debug_assertions) && g <= 24 {
        debug_assert_eq!(enumerate_depth3_family(g).count() as u64, total);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_profile_matches_filtered_counts() {
        for g in 0..=13 {
            let profile = Census::new(3).depth_profile(g).unwrap();
            assert_eq!(profile.len(), g as usize + 1);
            for (q, &n) in profile.iter().enumerate() {
                assert_eq!(n, count_by_depth(g, q as u32).unwrap(), "g={g} q={q}");
            }
        }
        assert_eq!(Census::sequential().depth_profile(10).unwrap()[4], 24);
    }
    use crate::kunz::satisfies_kunz_system;

    #[test]
    fn known_genus_counts() {
        assert_eq!(count_by_genus(10).unwrap(), 204);
        assert_eq!(count_gapsets_depth_at_most(10, 3).unwrap(), 168);
        assert_eq!(count_by_depth_and_multiplicity(12, 6, 4).unwrap(), 9);
        assert_eq!(count_by_depth(18, 4).unwrap(), 1739);
    }

    #[test]
    fn depth_at_most_examples() {
        assert_eq!(count_gapsets_depth_at_most(9, 2).unwrap(), 55);
        assert_eq!(count_gapsets_depth_at_most(4, 2).unwrap(), 5);
        assert_eq!(count_gapsets_depth_at_most(0, 0).unwrap(), 1);
        assert_eq!(count_gapsets_depth_at_most(5, 0).unwrap(), 0);
    }

    #[test]
    fn genus_zero_conventions() {
        assert_eq!(count_by_genus(0).unwrap(), 1);
        assert_eq!(count_by_depth(0, 0).unwrap(), 1);
        assert_eq!(count_by_depth(0, 1).unwrap(), 0);
        assert_eq!(count_by_depth(3, 0).unwrap(), 0);
        assert_eq!(count_by_depth_and_multiplicity(0, 0, 2).unwrap(), 0);
    }

    #[test]
    fn rejects_multiplicity_below_two() {
        let q = CensusQuery::genus(4).multiplicity(1);
        assert_eq!(count_gapsets(&q), Err(CensusError::InvalidMultiplicity(1)));
    }

    #[test]
    fn m_extension_counts() {
        assert_eq!(count_m_extensions(1).unwrap(), 1);
        assert_eq!(count_m_extensions(8).unwrap(), 128);
        assert_eq!(count_m_extensions(20).unwrap(), 524_288);
        assert_eq!(count_m_extensions(64), Err(CensusError::GenusTooLarge(64)));
    }

    #[test]
    fn enumeration_matches_count_and_order() {
        let q = CensusQuery::genus(9).max_depth(4);
        let listed = Census::new(4).enumerate(&q).unwrap();
        let counted = Census::new(4).count(&q).unwrap();
        let items = listed.items.unwrap();
        assert_eq!(items.len() as u64, counted.count);
        assert_eq!(listed.shards, 1);
        for gs in &items {
            assert_eq!(gs.genus(), 9);
            assert!(gs.depth() <= 4);
        }
        let empty = Census::sequential()
            .enumerate(&CensusQuery::genus(0))
            .unwrap();
        assert_eq!(empty.count, 1);
        assert!(empty.items.unwrap()[0].elements().is_empty());
    }

    #[test]
    fn sharding_does_not_change_counts() {
        for g in 0..=14 {
            for query in [
                CensusQuery::genus(g),
                CensusQuery::genus(g).max_depth(3),
                CensusQuery::genus(g).depth(g / 2),
                CensusQuery::genus(g).multiplicity(4),
            ] {
                let base = Census::sequential().count(&query).unwrap().count;
                for shards in [2, 3, 5, 7, 32] {
                    assert_eq!(
                        Census::new(shards).count(&query).unwrap().count,
                        base,
                        "{query:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn depth3_family_examples() {
        let six: Vec<Vec<u32>> = enumerate_depth3_family(6)
            .map(|v| v.into_coords())
            .collect();
        assert_eq!(
            six,
            vec![
                vec![2, 3, 1],
                vec![3, 1, 1, 1],
                vec![3, 1, 2],
                vec![3, 2, 1],
                vec![3, 3]
            ]
        );
        assert_eq!(count_depth3_family(6).unwrap(), 5);
        let three: Vec<_> = enumerate_depth3_family(3).collect();
        assert_eq!(three.len(), 1);
        assert_eq!(three[0].coords(), &[3]);
        assert_eq!(count_depth3_family(3).unwrap(), 1);
        assert_eq!(count_depth3_family(10).unwrap() + 89, 135);
        assert_eq!(count_depth3_family(2).unwrap(), 0);
        assert_eq!(enumerate_depth3_family(2).count(), 0);
    }

    #[test]
    fn depth3_family_members_are_depth3_gapsets() {
        for g in 3..=16 {
            for v in enumerate_depth3_family(g) {
                assert!(satisfies_kunz_system(&v).is_ok(), "{v}");
                assert_eq!(v.depth(), 3);
                let gs = classify_gapset(from_kunz(&v).elements()).unwrap();
                assert_eq!(gs.depth(), 3);
            }
        }
    }

    #[test]
    fn pattern_has_a_single_pivot() {
        assert!(matches_depth3_pattern(&[3, 3]));
        assert!(matches_depth3_pattern(&[2, 3, 2, 1]));
        assert!(!matches_depth3_pattern(&[1, 3]));
        assert!(!matches_depth3_pattern(&[3, 1, 3]));
        assert!(!matches_depth3_pattern(&[2, 2]));
    }

    #[test]
    fn result_json_record() {
        let r = Census::sequential()
            .count(&CensusQuery::genus(5).max_depth(3))
            .unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["count"], 11);
        assert_eq!(v["shards"], 1);
        assert_eq!(v["query"]["depth"]["at_most"], 3);
        assert_eq!(v["query"]["multiplicity"], "any");
        assert!(v["elapsed_ms"].is_u64());
        assert!(v.get("items").is_none());
    }
}

//! Pseudo Apéry sets and pseudo Kunz coordinates of m-extensions, the
//! inequality system that singles out gapsets, and the bijection between
//! m-extensions and positive integer vectors of length `m - 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gapset::{FiniteSet, MExtension};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KunzError {
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u32),
    #[error("modulus {modulus} needs {expected} coordinates, got {found}")]
    WrongLength {
        modulus: u32,
        expected: usize,
        found: usize,
    },
    #[error("coordinate k_{index} must be positive")]
    NonPositive { index: usize },
    #[error("cannot parse Kunz vector {0:?}; expected \"m:k1,k2,...\"")]
    Parse(String),
}

/// `w_0 = 0` and, for `i >= 1`, `w_i = m + max{a in A : a = i mod m}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AperySet {
    pub modulus: u32,
    pub w: Vec<u32>,
}

/// Modulus `m` and coordinates `(k_1, ..., k_{m-1})`, all positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawKunzVector")]
pub struct KunzVector {
    modulus: u32,
    coords: Vec<u32>,
}

#[derive(Deserialize)]
struct RawKunzVector {
    modulus: u32,
    coords: Vec<u32>,
}

impl TryFrom<RawKunzVector> for KunzVector {
    type Error = KunzError;
    fn try_from(raw: RawKunzVector) -> Result<Self, Self::Error> {
        KunzVector::new(raw.modulus, raw.coords)
    }
}

impl KunzVector {
    pub fn new(modulus: u32, coords: Vec<u32>) -> Result<Self, KunzError> {
        if modulus < 2 {
            return Err(KunzError::InvalidModulus(modulus));
        }
        let expected = modulus as usize - 1;
        if coords.len() != expected {
            return Err(KunzError::WrongLength {
                modulus,
                expected,
                found: coords.len(),
            });
        }
        if let Some(i) = coords.iter().position(|&k| k == 0) {
            return Err(KunzError::NonPositive { index: i + 1 });
        }
        Ok(KunzVector { modulus, coords })
    }

    /// Modulus is the coordinate count plus one.
    pub fn from_coords(coords: Vec<u32>) -> Result<Self, KunzError> {
        Self::new(coords.len() as u32 + 1, coords)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `coords()[i - 1]` is `k_i`.
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }

    pub fn genus(&self) -> u32 {
        self.coords.iter().sum()
    }

    pub fn depth(&self) -> u32 {
        self.coords.iter().copied().max().unwrap_or(0)
    }

    pub fn apery(&self) -> AperySet {
        let m = self.modulus;
        let mut w = Vec::with_capacity(m as usize);
        w.push(0);
        w.extend(self.coords.iter().zip(1..).map(|(&k, i)| m * k + i));
        AperySet { modulus: m, w }
    }
}

/// `m:k1,k2,...`
impl fmt::Display for KunzVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.modulus)?;
        for (i, k) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for KunzVector {
    type Err = KunzError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || KunzError::Parse(s.to_string());
        let (m, rest) = s.trim().split_once(':').ok_or_else(bad)?;
        let m: u32 = m.trim().parse().map_err(|_| bad())?;
        let coords = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|t| t.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad())?
        };
        KunzVector::new(m, coords)
    }
}

/// Per-residue maxima, shifted by `m`.
pub fn pseudo_apery(a: &MExtension) -> AperySet {
    let m = a.modulus();
    let mut w = vec![0u32; m as usize];
    for &e in a.elements().elements() {
        let r = (e % m) as usize;
        w[r] = w[r].max(m + e);
    }
    AperySet { modulus: m, w }
}

/// `k_i` counted as the number of elements in residue class `i`.
pub fn pseudo_kunz(a: &MExtension) -> KunzVector {
    let m = a.modulus();
    let mut coords = vec![0u32; m as usize - 1];
    for &e in a.elements().elements() {
        coords[(e % m) as usize - 1] += 1;
    }
    if cfg!(debug_assertions) {
        // Counting and the max-scan through the Apéry set must agree.
        let ap = pseudo_apery(a);
        for (i, &k) in coords.iter().enumerate() {
            debug_assert_eq!(ap.w[i + 1], m * k + i as u32 + 1);
        }
    }
    KunzVector { modulus: m, coords }
}

/// The m-extension `union_j {j, j + m, ..., j + (k_j - 1) m}`.
pub fn from_kunz(v: &KunzVector) -> MExtension {
    let m = v.modulus();
    let depth = v.depth();
    let mut elements = Vec::with_capacity(v.genus() as usize);
    // Layer by layer keeps the output sorted.
    for layer in 0..depth {
        for (j, &k) in (1..).zip(v.coords()) {
            if layer < k {
                elements.push(j + layer * m);
            }
        }
    }
    MExtension::new_unchecked(FiniteSet::from_sorted_unchecked(elements), m)
}

/// A failed inequality of the Kunz system at indices `i <= j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum KunzViolation {
    #[error("k_{i} + k_{j} < k_{sum} (i + j < m)")]
    Direct { i: usize, j: usize, sum: usize },
    #[error("k_{i} + k_{j} + 1 < k_{wrapped} (i + j > m)")]
    Wrapped { i: usize, j: usize, wrapped: usize },
}

impl KunzViolation {
    pub fn indices(&self) -> (usize, usize) {
        match *self {
            KunzViolation::Direct { i, j, .. } | KunzViolation::Wrapped { i, j, .. } => (i, j),
        }
    }
}

/// Checks the Kunz system on raw coordinates (`coords[i - 1] = k_i`,
/// modulus `coords.len() + 1`). Returns the lexicographically least
/// failing pair `(i, j)`.
///
/// For `1 <= i <= j <= m - 1`:
/// `k_i + k_j >= k_{i+j}` when `i + j < m`, and
/// `k_i + k_j + 1 >= k_{i+j-m}` when `i + j > m`. `i + j = m` is free.
pub fn kunz_violation(coords: &[u32]) -> Option<KunzViolation> {
    let m = coords.len() + 1;
    let k = |idx: usize| coords[idx - 1];
    for i in 1..m {
        for j in i..m {
            let s = i + j;
            if s < m {
                if k(i) + k(j) < k(s) {
                    return Some(KunzViolation::Direct { i, j, sum: s });
                }
            } else if s > m && k(i) + k(j) + 1 < k(s - m) {
                return Some(KunzViolation::Wrapped {
                    i,
                    j,
                    wrapped: s - m,
                });
            }
        }
    }
    None
}

pub fn satisfies_kunz_system(v: &KunzVector) -> Result<(), KunzViolation> {
    match kunz_violation(v.coords()) {
        Some(violation) => Err(violation),
        None => Ok(()),
    }
}

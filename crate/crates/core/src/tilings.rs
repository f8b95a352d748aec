//! Integer compositions read as tilings of a `1 x g` board, and the
//! bijection between m-extensions of genus `g` and tilings of a g-board.
//!
//! Compositions are streamed in lexicographic order of their part lists
//! without materializing the whole family; memory stays `O(g)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gapset::MExtension;
use crate::kunz::{from_kunz, pseudo_kunz, KunzVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositionError {
    #[error("a composition needs a positive total, got {0}")]
    NonPositiveTotal(u32),
    #[error("a composition needs at least one part")]
    Empty,
    #[error("composition parts must be positive")]
    ZeroPart,
    #[error("part bound must be at least 1")]
    ZeroBound,
    #[error("cannot parse composition {0:?}; expected \"(b1,b2,...)\"")]
    Parse(String),
}

/// Ordered positive parts `(b_1, ..., b_n)`, `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self, CompositionError> {
        if parts.is_empty() {
            return Err(CompositionError::Empty);
        }
        if parts.contains(&0) {
            return Err(CompositionError::ZeroPart);
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest_part(&self) -> u32 {
        self.parts.iter().copied().max().unwrap_or(0)
    }
}

impl TryFrom<Vec<u32>> for Composition {
    type Error = CompositionError;
    fn try_from(parts: Vec<u32>) -> Result<Self, Self::Error> {
        Composition::new(parts)
    }
}

impl From<Composition> for Vec<u32> {
    fn from(c: Composition) -> Self {
        c.parts
    }
}

/// `(4,1)`
impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = CompositionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CompositionError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        Composition::new(parts)
    }
}

/// Constraints on a composition stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompositionShape {
    pub total: u32,
    /// Upper bound on every part, `None` for unbounded.
    pub max_part: Option<u32>,
    /// Exact number of parts, `None` for any.
    pub parts: Option<usize>,
    /// Fixes the first part; used to split a stream into disjoint shards.
    pub first_part: Option<u32>,
}

impl CompositionShape {
    pub fn new(total: u32) -> Self {
        CompositionShape {
            total,
            max_part: None,
            parts: None,
            first_part: None,
        }
    }

    pub fn max_part(mut self, bound: Option<u32>) -> Self {
        self.max_part = bound;
        self
    }

    pub fn parts(mut self, n: Option<usize>) -> Self {
        self.parts = n;
        self
    }

    pub fn first_part(mut self, v: Option<u32>) -> Self {
        self.first_part = v;
        self
    }

    fn bound(&self) -> u32 {
        self.max_part.unwrap_or(self.total).min(self.total)
    }

    pub fn iter(&self) -> Compositions {
        Compositions::new(*self)
    }
}

/// Lexicographic stream of compositions matching a [`CompositionShape`].
///
/// Yields borrowed part slices through [`Compositions::next_parts`] for the
/// census hot path, or owned [`Composition`]s through `Iterator`.
#[derive(Debug, Clone)]
pub struct Compositions {
    shape: CompositionShape,
    bound: u32,
    parts: Vec<u32>,
    /// Positions below this index never change.
    frozen: usize,
    state: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl Compositions {
    fn new(shape: CompositionShape) -> Self {
        Compositions {
            shape,
            bound: shape.bound(),
            parts: Vec::with_capacity(shape.total as usize),
            frozen: 0,
            state: State::Fresh,
        }
    }

    /// Whether `rest` can be written with `slots` more parts (or any number
    /// when the part count is free), each in `[1, bound]`.
    fn feasible(&self, rest: u32, slots: Option<usize>) -> bool {
        match slots {
            None => true,
            Some(t) => {
                let t = t as u64;
                t <= rest as u64 && rest as u64 <= t * self.bound as u64
            }
        }
    }

    fn slots_after(&self, len: usize) -> Option<usize> {
        self.shape.parts.map(|n| n - len)
    }

    /// Appends the lexicographically least completion of `rest`.
    fn complete(&mut self, mut rest: u32) {
        match self.shape.parts {
            None => self.parts.extend(std::iter::repeat_n(1, rest as usize)),
            Some(n) => {
                while self.parts.len() < n {
                    let later = (n - self.parts.len() - 1) as u32;
                    let part = rest.saturating_sub(later * self.bound).max(1);
                    self.parts.push(part);
                    rest -= part;
                }
                debug_assert_eq!(rest, 0);
            }
        }
    }

    fn start(&mut self) -> bool {
        let mut rest = self.shape.total;
        if rest == 0 {
            return false;
        }
        if let Some(v) = self.shape.first_part {
            if v == 0 || v > self.bound || v > rest {
                return false;
            }
            self.parts.push(v);
            self.frozen = 1;
            rest -= v;
        }
        if self.shape.parts.is_some_and(|n| n < self.parts.len()) {
            return false;
        }
        if !self.feasible(rest, self.slots_after(self.parts.len())) {
            return false;
        }
        self.complete(rest);
        true
    }

    /// Lexicographic successor: raise the rightmost part that can grow by
    /// one, then append the least completion of what is left.
    fn advance(&mut self) -> bool {
        // Sum of the parts from the current position to the end.
        let mut remaining: u32 = 0;
        while self.parts.len() > self.frozen {
            let p = self.parts.pop().unwrap();
            remaining += p;
            let raised = p + 1;
            if raised <= self.bound && raised <= remaining {
                let rest = remaining - raised;
                if self.feasible(rest, self.slots_after(self.parts.len() + 1)) {
                    self.parts.push(raised);
                    self.complete(rest);
                    return true;
                }
            }
        }
        false
    }

    /// Next part list, borrowed until the following call.
    pub fn next_parts(&mut self) -> Option<&[u32]> {
        let ok = match self.state {
            State::Done => false,
            State::Fresh => self.start(),
            State::Running => self.advance(),
        };
        if ok {
            self.state = State::Running;
            Some(&self.parts)
        } else {
            self.state = State::Done;
            None
        }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        self.next_parts().map(|p| Composition { parts: p.to_vec() })
    }
}

/// Every composition of `g` (parts at most `max_part` when bounded), in
/// lexicographic order.
pub fn enumerate_compositions(
    g: u32,
    max_part: Option<u32>,
) -> Result<Compositions, CompositionError> {
    if g == 0 {
        return Err(CompositionError::NonPositiveTotal(g));
    }
    if max_part == Some(0) {
        return Err(CompositionError::ZeroBound);
    }
    Ok(CompositionShape::new(g).max_part(max_part).iter())
}

/// The tiling whose parts are the pseudo Kunz coordinates of `a`.
pub fn sigma(a: &MExtension) -> Composition {
    Composition {
        parts: pseudo_kunz(a).into_coords(),
    }
}

/// The `(n+1)`-extension whose pseudo Kunz coordinates are the `n` parts.
pub fn sigma_inverse(c: &Composition) -> MExtension {
    let v = KunzVector::from_coords(c.parts.clone()).expect("composition parts are positive");
    from_kunz(&v)
}

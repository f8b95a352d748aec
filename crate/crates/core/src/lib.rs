//! Gapsets, m-extensions and their Kunz coordinates.
//!
//! The crate identifies m-extensions of genus `g` with tilings of a
//! `1 x g` board through their pseudo Kunz coordinates, counts gapsets by
//! genus, depth and multiplicity by filtering those tilings through the
//! Kunz inequality system, and evaluates the closed-form counts and bounds
//! that the census is checked against.

pub mod census;
pub mod formulas;
pub mod gapset;
pub mod kunz;
pub mod sequences;
pub mod tilings;

pub use census::{CensusQuery, CensusResult, DepthFilter, MultiplicityFilter};
pub use gapset::{FiniteSet, GapSet, MExtension};
pub use kunz::{AperySet, KunzVector};
pub use sequences::BigCount;
pub use tilings::Composition;

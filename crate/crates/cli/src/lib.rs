//! Library side of the `gapsets` command-line tool.

pub mod bfile;
pub mod cache;
pub mod commands;
pub mod render;
pub mod tables;

use gapsets::census::{Census, CensusError};
use gapsets::formulas::FormulaError;
use gapsets::sequences::SeqError;
use gapsets::CensusQuery;
use thiserror::Error;

use crate::bfile::BFileError;
use crate::cache::{CacheError, CountCache};

/// Largest genus a table or b-file comparison runs at without `--force`.
pub const GENUS_GUARD: u32 = 22;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    BFile(#[from] BFileError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Invariant(_) => 3,
            _ => 2,
        }
    }
}

/// Census access through an optional on-disk cache.
#[derive(Debug)]
pub struct Counter {
    pub census: Census,
    pub cache: Option<CountCache>,
}

impl Counter {
    pub fn new(census: Census, cache: Option<CountCache>) -> Self {
        Counter { census, cache }
    }

    /// The count and whether it came from the cache.
    pub fn count(&mut self, query: &CensusQuery) -> Result<(u64, bool), CliError> {
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(query)) {
            return Ok((hit, true));
        }
        let n = self.census.count(query)?.count;
        if let Some(cache) = self.cache.as_mut() {
            cache.insert(query, n);
        }
        Ok((n, false))
    }

    pub fn genus(&mut self, g: u32) -> Result<u64, CliError> {
        Ok(self.count(&CensusQuery::genus(g))?.0)
    }

    pub fn shallow(&mut self, g: u32) -> Result<u64, CliError> {
        Ok(self.count(&CensusQuery::genus(g).max_depth(3))?.0)
    }

    pub fn save(&mut self) -> Result<(), CliError> {
        if let Some(cache) = self.cache.as_mut() {
            cache.save()?;
        }
        Ok(())
    }
}

//! OEIS b-file ingestion and comparison against the census.

use std::path::Path;

use serde::Serialize;
use thiserror::Error;

/// First ten terms of A007323, used to sanity-check the index offset.
pub const ANCHOR: [u128; 10] = [1, 1, 2, 4, 7, 12, 23, 39, 67, 118];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BFileEntry {
    pub index: i64,
    pub value: u128,
}

#[derive(Debug, Error)]
pub enum BFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("line {line}: index {index} does not increase (previous {previous})")]
    NotIncreasing {
        line: usize,
        index: i64,
        previous: i64,
    },
    #[error("no entries")]
    Empty,
}

pub fn parse_bfile(text: &str) -> Result<Vec<BFileEntry>, BFileError> {
    let mut out: Vec<BFileEntry> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [index, value] = fields[..] else {
            return Err(BFileError::Parse {
                line,
                reason: format!("expected \"index value\", got {body:?}"),
            });
        };
        let index: i64 = index.parse().map_err(|_| BFileError::Parse {
            line,
            reason: format!("bad index {index:?}"),
        })?;
        let value: u128 = value.parse().map_err(|_| BFileError::Parse {
            line,
            reason: format!("bad value {value:?}"),
        })?;
        if let Some(prev) = out.last() {
            if index <= prev.index {
                return Err(BFileError::NotIncreasing {
                    line,
                    index,
                    previous: prev.index,
                });
            }
        }
        out.push(BFileEntry { index, value });
    }
    if out.is_empty() {
        return Err(BFileError::Empty);
    }
    Ok(out)
}

pub fn read_bfile(path: &Path) -> Result<Vec<BFileEntry>, BFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| BFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_bfile(&text)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Match,
    Mismatch { found: u128 },
    Missing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenusCheck {
    pub genus: u32,
    pub expected: u128,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub offset: i64,
    pub checks: Vec<GenusCheck>,
    /// Set when the file's first ten terms (under this offset) differ from
    /// the known anchor.
    pub anchor_warning: Option<String>,
}

impl Comparison {
    pub fn all_match(&self) -> bool {
        self.checks.iter().all(|c| c.verdict == Verdict::Match)
    }

    pub fn failures(&self) -> impl Iterator<Item = &GenusCheck> {
        self.checks.iter().filter(|c| c.verdict != Verdict::Match)
    }
}

fn lookup(entries: &[BFileEntry], index: i64) -> Option<u128> {
    entries
        .binary_search_by_key(&index, |e| e.index)
        .ok()
        .map(|i| entries[i].value)
}

/// Compares `expected(g)` with the entry at index `g + offset` for every
/// `g` in `0..=gmax`.
pub fn compare<E>(
    entries: &[BFileEntry],
    gmax: u32,
    offset: i64,
    mut expected: impl FnMut(u32) -> Result<u128, E>,
) -> Result<Comparison, E> {
    let anchor_terms: Vec<Option<u128>> = (0..ANCHOR.len() as i64)
        .map(|g| lookup(entries, g + offset))
        .collect();
    let anchor_warning = anchor_terms
        .iter()
        .zip(ANCHOR)
        .any(|(found, want)| found.is_some_and(|v| v != want))
        .then(|| {
            format!(
                "first terms under offset {offset} do not start 1,1,2,4,7,12,23,39,67,118; check --offset"
            )
        });
    let mut checks = Vec::with_capacity(gmax as usize + 1);
    for g in 0..=gmax {
        let want = expected(g)?;
        let verdict = match lookup(entries, i64::from(g) + offset) {
            None => Verdict::Missing,
            Some(v) if v == want => Verdict::Match,
            Some(found) => Verdict::Mismatch { found },
        };
        checks.push(GenusCheck {
            genus: g,
            expected: want,
            verdict,
        });
    }
    Ok(Comparison {
        offset,
        checks,
        anchor_warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let e = parse_bfile("# header\n\n0 1\n  1   1 \n2 2\n").unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e[2], BFileEntry { index: 2, value: 2 });
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_bfile("0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, BFileError::Parse { line: 2, .. }), "{err}");
        let err = parse_bfile("0 1\n1 1 1\n").unwrap_err();
        assert!(matches!(err, BFileError::Parse { line: 2, .. }));
        let err = parse_bfile("# c\n3 1\n3 2\n").unwrap_err();
        assert!(matches!(
            err,
            BFileError::NotIncreasing {
                line: 3,
                index: 3,
                previous: 3
            }
        ));
    }

    #[test]
    fn empty_file() {
        assert_eq!(parse_bfile("").unwrap_err().to_string(), "no entries");
        assert_eq!(
            parse_bfile("# only\n\n").unwrap_err().to_string(),
            "no entries"
        );
    }

    #[test]
    fn big_values() {
        let e = parse_bfile("5 340282366920938463463374607431768211455\n").unwrap();
        assert_eq!(e[0].value, u128::MAX);
    }

    #[test]
    fn comparison_verdicts() {
        let entries = parse_bfile("0 1\n1 1\n2 5\n4 7\n").unwrap();
        let truth = [1u128, 1, 2, 4, 7];
        let c = compare::<()>(&entries, 4, 0, |g| Ok(truth[g as usize])).unwrap();
        assert!(!c.all_match());
        let bad: Vec<_> = c.failures().map(|c| (c.genus, c.verdict)).collect();
        assert_eq!(
            bad,
            vec![(2, Verdict::Mismatch { found: 5 }), (3, Verdict::Missing)]
        );
        assert!(c.anchor_warning.is_some());
    }

    #[test]
    fn offset_shifts_indices() {
        let entries = parse_bfile("1 1\n2 1\n3 2\n").unwrap();
        let truth = [1u128, 1, 2];
        let c = compare::<()>(&entries, 2, 1, |g| Ok(truth[g as usize])).unwrap();
        assert!(c.all_match());
        assert!(c.anchor_warning.is_none());
    }
}

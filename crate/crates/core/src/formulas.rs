//! Closed-form counts and bounds for gapsets.
//!
//! Piecewise formulas are dispatched with integer cross-multiplication
//! only: a boundary such as `q = (2g + 1) / 5` is tested as `5q == 2g + 1`.
//! Each answer records which branch produced it.

use serde::Serialize;
use thiserror::Error;

use crate::census::{count_by_depth_and_multiplicity, CensusError};
use crate::sequences::{fibonacci, fibonacci_k, padovan, BigCount, SeqError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("{0} is outside the formula's domain")]
    Domain(&'static str),
    #[error("bound overflows 128-bit arithmetic")]
    Overflow,
    #[error(transparent)]
    Sequence(#[from] SeqError),
    #[error(transparent)]
    Census(#[from] CensusError),
}

/// Value of a piecewise formula, or a marker that `(g, q)` lies outside
/// the formula's hypotheses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum FormulaAnswer {
    Covered { value: u64, branch: &'static str },
    NotCovered,
}

impl FormulaAnswer {
    pub fn value(&self) -> Option<u64> {
        match *self {
            FormulaAnswer::Covered { value, .. } => Some(value),
            FormulaAnswer::NotCovered => None,
        }
    }

    pub fn branch(&self) -> Option<&'static str> {
        match *self {
            FormulaAnswer::Covered { branch, .. } => Some(branch),
            FormulaAnswer::NotCovered => None,
        }
    }

    fn covered(value: u64, branch: &'static str) -> Self {
        FormulaAnswer::Covered { value, branch }
    }
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// `#F(g, q, 3)` for `g >= 2`, `q >= 1`.
pub fn f_gq3(g: u32, q: u32) -> FormulaAnswer {
    if g < 2 || q < 1 {
        return FormulaAnswer::NotCovered;
    }
    let (g, q) = (u64::from(g), u64::from(q));
    let ans = FormulaAnswer::covered;
    if 2 * q < g {
        ans(0, "q < g/2")
    } else if 2 * q == g {
        ans(1, "q = g/2")
    } else if 3 * q <= 2 * g {
        // here 2q >= g + 1
        ans(2, "(g+1)/2 <= q <= 2g/3")
    } else if 3 * q == 2 * g + 1 {
        ans(1, "q = (2g+1)/3")
    } else {
        ans(0, "q > (2g+1)/3")
    }
}

/// `#F(g, q, 4)` for `g >= 7`, `q >= 1`.
///
/// Cases are tried in order. At `g = 8, q = 4` both `q = (2g+4)/5` and
/// `q = g/2` hold; the second one is the right count there.
pub fn f_gq4(g: u32, q: u32) -> FormulaAnswer {
    if g < 7 || q < 1 {
        return FormulaAnswer::NotCovered;
    }
    let (g, q) = (u64::from(g), u64::from(q));
    let ans = FormulaAnswer::covered;
    let fifth = |num: u64| {
        debug_assert_eq!(num % 5, 0);
        num / 5
    };
    if 3 * q < g {
        ans(0, "q < g/3")
    } else if 3 * q == g {
        ans(1, "q = g/3")
    } else if 5 * q <= 2 * g {
        ans(3 * (3 * q - g), "g/3 < q <= 2g/5")
    } else if 5 * q == 2 * g + 1 {
        ans(fifth(3 * g + 4), "q = (2g+1)/5")
    } else if 5 * q == 2 * g + 2 {
        ans(fifth(3 * g + 8), "q = (2g+2)/5")
    } else if 5 * q == 2 * g + 3 {
        ans(fifth(3 * g + 12), "q = (2g+3)/5")
    } else if 5 * q == 2 * g + 4 && g != 8 {
        ans(fifth(3 * g + 11), "q = (2g+4)/5")
    } else if 5 * q > 2 * g + 4 && 2 * q < g {
        // 2q <= g - 1
        ans((g + 2 * q) / 3 + 2, "(2g+4)/5 < q <= (g-1)/2")
    } else if 2 * q == g {
        ans((2 * g + 3) / 3, "q = g/2")
    } else if 2 * q == g + 1 {
        ans(g / 3, "q = (g+1)/2")
    } else {
        ans(0, "q > (g+1)/2")
    }
}

/// `#F(g, q)` where one of the closed-form items applies. At `g = 0` only
/// the `q = g` and `q > g` items are used.
///
/// Where two items apply (for example `q = 1 = g`) they agree; the first
/// listed is reported.
pub fn f_gq(g: u32, q: u32) -> FormulaAnswer {
    let items = f_gq_items(g, q);
    debug_assert!(
        items.windows(2).all(|w| w[0].value() == w[1].value()),
        "overlapping items disagree at g={g} q={q}: {items:?}"
    );
    items.first().copied().unwrap_or(FormulaAnswer::NotCovered)
}

/// Every closed-form item that applies at `(g, q)`.
pub fn f_gq_items(g: u32, q: u32) -> Vec<FormulaAnswer> {
    let mut out = Vec::new();
    let (g64, q64) = (u64::from(g), u64::from(q));
    let ans = FormulaAnswer::covered;
    if g == 0 {
        // the empty gapset has depth 0
        out.push(if q == 0 {
            ans(1, "(10) q = g")
        } else {
            ans(0, "(11) q > g")
        });
        return out;
    }
    if q == 1 {
        out.push(ans(1, "(1) q = 1"));
    }
    if q == 2 {
        if let Ok(f) = fibonacci(g + 1) {
            if let Ok(v) = u64::try_from(f - 1) {
                out.push(ans(v, "(2) q = 2"));
            }
        }
    }
    if 5 * q64 > 2 * g64 + 4 && 2 * q64 < g64 && g >= 23 {
        out.push(ans(
            (g64 + 2 * q64) / 3 + 2,
            "(3) (2g+4)/5 < q <= (g-1)/2, g >= 23",
        ));
    }
    if g.is_multiple_of(2) && g >= 8 && 2 * q64 == g64 {
        out.push(ans(2 * g64 / 3 + 2, "(4) q = g/2, g even, g >= 8"));
    }
    if g % 2 == 1 && g >= 5 && 2 * q64 == g64 + 1 {
        out.push(ans(g64 / 3 + 2, "(5) q = (g+1)/2, g odd, g >= 5"));
    }
    if g64 + 2 <= 2 * q64 && 3 * q64 <= 2 * g64 {
        out.push(ans(2, "(6) (g+2)/2 <= q <= 2g/3"));
    }
    if g % 3 == 1 && g >= 4 && 3 * q64 == 2 * g64 + 1 {
        out.push(ans(1, "(7) q = (2g+1)/3"));
    }
    if g % 3 == 2 && g >= 5 && 3 * q64 == 2 * g64 + 2 {
        out.push(ans(0, "(8) q = (2g+2)/3"));
    }
    if ceil_div(2 * g64, 3) < q64 && q64 < g64 {
        out.push(ans(0, "(9) ceil(2g/3) < q < g"));
    }
    if q == g {
        out.push(ans(1, "(10) q = g"));
    }
    if q > g {
        out.push(ans(0, "(11) q > g"));
    }
    out
}

/// `F_{g+2} - P_{g+1}`, a lower bound for the number of gapsets of genus
/// `g` and depth at most 3.
pub fn lower_bound_depth3(g: u32) -> Result<BigCount, FormulaError> {
    Ok(fibonacci(g + 2)? - padovan(i64::from(g) + 1)?)
}

/// Number of tilings of a g-board with parts at most `k`, `F^(k)_{g+1}`.
/// `k = 1` allows only the all-ones tiling.
pub fn bounded_tilings(k: u32, g: u32) -> Result<BigCount, FormulaError> {
    match k {
        0 => Ok(BigCount::from(g == 0)),
        1 => Ok(1),
        _ => Ok(fibonacci_k(k, i64::from(g) + 1)?),
    }
}

/// Source of `#F(g, q, m)` values for the upper bounds.
pub trait GapsetCounts {
    fn depth_multiplicity_count(&self, g: u32, q: u32, m: u32) -> Result<u64, FormulaError>;
}

/// Exact values from the exhaustive census.
#[derive(Debug, Clone, Copy, Default)]
pub struct CensusCounts;

impl GapsetCounts for CensusCounts {
    fn depth_multiplicity_count(&self, g: u32, q: u32, m: u32) -> Result<u64, FormulaError> {
        Ok(count_by_depth_and_multiplicity(g, q, m)?)
    }
}

/// Uses the multiplicity-2, -3 and -4 closed forms where their hypotheses
/// hold and falls back to `inner` everywhere else.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosedFormCounts<B>(pub B);

impl<B: GapsetCounts> GapsetCounts for ClosedFormCounts<B> {
    fn depth_multiplicity_count(&self, g: u32, q: u32, m: u32) -> Result<u64, FormulaError> {
        let closed = match m {
            // only the hyperelliptic gapset has multiplicity 2
            2 if g >= 1 => Some(u64::from(q == g)),
            3 => f_gq3(g, q).value(),
            4 => f_gq4(g, q).value(),
            _ => None,
        };
        match closed {
            Some(v) => Ok(v),
            None => self.0.depth_multiplicity_count(g, q, m),
        }
    }
}

fn sum_counts(
    counts: &impl GapsetCounts,
    g: u32,
    m: u32,
    depths: std::ops::RangeInclusive<u64>,
) -> Result<BigCount, FormulaError> {
    let mut total: BigCount = 0;
    for q in depths {
        let q = u32::try_from(q).map_err(|_| FormulaError::Overflow)?;
        total += BigCount::from(counts.depth_multiplicity_count(g, q, m)?);
    }
    Ok(total)
}

/// The general upper bound on `n_g` for a cut-off multiplicity `M >= 2`:
/// tilings with parts at most `K = ceil(2g/(M+1))`, plus
/// `sum_{m=2}^{M} sum_{q=K+1}^{ceil(2g/m)} #F(g, q, m)`.
pub fn upper_bound_ng_general(
    g: u32,
    big_m: u32,
    counts: &impl GapsetCounts,
) -> Result<BigCount, FormulaError> {
    if g < 1 {
        return Err(FormulaError::Domain("genus 0"));
    }
    if big_m < 2 {
        return Err(FormulaError::Domain("cut-off multiplicity below 2"));
    }
    let g64 = u64::from(g);
    let k = ceil_div(2 * g64, u64::from(big_m) + 1);
    let mut total = bounded_tilings(k as u32, g)?;
    for m in 2..=big_m {
        let hi = ceil_div(2 * g64, u64::from(m));
        total = total
            .checked_add(sum_counts(counts, g, m, k + 1..=hi)?)
            .ok_or(FormulaError::Overflow)?;
    }
    Ok(total)
}

/// Upper bound on `n_g` for cut-off multiplicity `M`.
///
/// For `M = 2, 3, 4` this is the simplified instantiation in which the
/// multiplicity-2 contribution is taken as 1 (the hyperelliptic gapset)
/// and, for `M = 4`, the multiplicity-3 depths run from `ceil(g/2)`:
///
/// * `M = 2`: `F^(ceil(2g/3))_{g+1} + 1`
/// * `M = 3`: `F^(ceil(g/2))_{g+1} + sum_{q=ceil(g/2)+1}^{ceil(2g/3)} #F(g,q,3) + 1`
/// * `M = 4`: `F^(ceil(2g/5))_{g+1} + sum_{q=ceil(2g/5)+1}^{ceil(g/2)} #F(g,q,4)
///   + sum_{q=ceil(g/2)}^{ceil(2g/3)} #F(g,q,3) + 1`
///
/// For `M >= 5` it is [`upper_bound_ng_general`].
pub fn upper_bound_ng(
    g: u32,
    big_m: u32,
    counts: &impl GapsetCounts,
) -> Result<BigCount, FormulaError> {
    if g < 1 {
        return Err(FormulaError::Domain("genus 0"));
    }
    let g64 = u64::from(g);
    let half = ceil_div(g64, 2);
    let two_thirds = ceil_div(2 * g64, 3);
    let two_fifths = ceil_div(2 * g64, 5);
    let tilings = |k: u64| bounded_tilings(k as u32, g);
    let total = match big_m {
        2 => tilings(two_thirds)? + 1,
        3 => tilings(half)? + sum_counts(counts, g, 3, half + 1..=two_thirds)? + 1,
        4 => {
            tilings(two_fifths)?
                + sum_counts(counts, g, 4, two_fifths + 1..=half)?
                + sum_counts(counts, g, 3, half..=two_thirds)?
                + 1
        }
        _ => return upper_bound_ng_general(g, big_m, counts),
    };
    Ok(total)
}

/// `N(2, g) = 1` for `g >= 1`.
pub fn n2(g: u32) -> Option<u64> {
    (g >= 1).then_some(1)
}

/// `N(3, g) = floor(g/3) + 1` for `g >= 2`.
pub fn n3(g: u32) -> Option<u64> {
    (g >= 2).then(|| u64::from(g) / 3 + 1)
}

/// `N(4, g) = floor((g^2 + 6g)/12)` for `g >= 4`.
pub fn n4(g: u32) -> Option<u64> {
    let g = u64::from(g);
    (g >= 4).then(|| (g * g + 6 * g) / 12)
}

/// `F^(ceil(2g/5))_{g+1} + N(4,g) + N(3,g) + N(2,g)` for `g >= 4`.
pub fn upper_bound_ng_closed_n(g: u32) -> Result<BigCount, FormulaError> {
    if g < 4 {
        return Err(FormulaError::Domain("genus below 4"));
    }
    let k = ceil_div(2 * u64::from(g), 5) as u32;
    let tail = n4(g).unwrap() + n3(g).unwrap() + n2(g).unwrap();
    bounded_tilings(k, g)?
        .checked_add(BigCount::from(tail))
        .ok_or(FormulaError::Overflow)
}

/// Depth range `[ceil(g/(m-1)), ceil(2g/m)]` of a gapset with genus `g >= 1`
/// and multiplicity `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DepthWindow {
    pub lo: u32,
    pub hi: u32,
}

impl DepthWindow {
    pub fn contains(&self, q: u32) -> bool {
        self.lo <= q && q <= self.hi
    }
}

pub fn depth_window(g: u32, m: u32) -> Result<DepthWindow, FormulaError> {
    if g < 1 || m < 2 {
        return Err(FormulaError::Domain("depth window needs g >= 1 and m >= 2"));
    }
    let lo = g.div_ceil(m - 1);
    let hi = (2 * g).div_ceil(m);
    Ok(DepthWindow { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicity_three_examples() {
        assert_eq!(f_gq3(12, 6).value(), Some(1));
        assert_eq!(f_gq3(5, 3).value(), Some(2));
        assert_eq!(f_gq3(7, 5).value(), Some(1));
        assert_eq!(f_gq3(7, 5).branch(), Some("q = (2g+1)/3"));
        assert_eq!(f_gq3(1, 1), FormulaAnswer::NotCovered);
        assert_eq!(f_gq3(5, 0), FormulaAnswer::NotCovered);
    }

    #[test]
    fn multiplicity_four_examples() {
        assert_eq!(f_gq4(8, 4).value(), Some(6));
        assert_eq!(f_gq4(8, 4).branch(), Some("q = g/2"));
        assert_eq!(f_gq4(12, 5).value(), Some(8));
        assert_eq!(f_gq4(12, 4).value(), Some(1));
        assert_eq!(f_gq4(11, 5).value(), Some(9));
        assert_eq!(f_gq4(6, 3), FormulaAnswer::NotCovered);
    }

    #[test]
    fn genus_depth_examples() {
        assert_eq!(f_gq(16, 8).value(), Some(12));
        assert_eq!(f_gq(15, 8).value(), Some(7));
        assert_eq!(f_gq(16, 11).value(), Some(1));
        assert_eq!(f_gq(10, 10).value(), Some(1));
        assert_eq!(f_gq(9, 4), FormulaAnswer::NotCovered);
        assert_eq!(f_gq(0, 0).value(), Some(1));
        assert_eq!(f_gq(0, 3).value(), Some(0));
        assert_eq!(f_gq(5, 0), FormulaAnswer::NotCovered);
    }

    #[test]
    fn item_three_needs_genus_23() {
        // at g = 21 the inequalities hold for q = 10 but the item is withheld
        assert!(f_gq_items(23, 11)
            .iter()
            .any(|a| a.branch().unwrap().starts_with("(3)")));
        assert_eq!(f_gq(23, 11).value(), Some((23 + 22) / 3 + 2));
        assert!(f_gq_items(21, 10)
            .iter()
            .all(|a| !a.branch().unwrap().starts_with("(3)")));
    }

    #[test]
    fn lower_bound_values() {
        assert_eq!(lower_bound_depth3(0).unwrap(), 1);
        assert_eq!(lower_bound_depth3(6).unwrap(), 18);
        assert_eq!(lower_bound_depth3(10).unwrap(), 135);
    }

    #[test]
    fn upper_bound_examples() {
        assert_eq!(upper_bound_ng(10, 4, &CensusCounts).unwrap(), 413);
        assert_eq!(upper_bound_ng(7, 3, &CensusCounts).unwrap(), 58);
        assert_eq!(upper_bound_ng(5, 2, &CensusCounts).unwrap(), 16);
        assert_eq!(upper_bound_ng(1, 2, &CensusCounts).unwrap(), 2);
        assert!(upper_bound_ng(0, 2, &CensusCounts).is_err());
        assert!(upper_bound_ng_general(3, 1, &CensusCounts).is_err());
    }

    #[test]
    fn closed_form_backend_agrees_with_census() {
        for g in 1..=14 {
            for big_m in 2..=6 {
                assert_eq!(
                    upper_bound_ng(g, big_m, &CensusCounts).unwrap(),
                    upper_bound_ng(g, big_m, &ClosedFormCounts(CensusCounts)).unwrap(),
                    "g={g} M={big_m}"
                );
                assert_eq!(
                    upper_bound_ng_general(g, big_m, &CensusCounts).unwrap(),
                    upper_bound_ng_general(g, big_m, &ClosedFormCounts(CensusCounts)).unwrap(),
                );
            }
        }
    }

    #[test]
    fn closed_n_bound() {
        assert_eq!(upper_bound_ng_closed_n(10).unwrap(), 419);
        assert_eq!(upper_bound_ng_closed_n(4).unwrap(), 11);
        assert!(upper_bound_ng_closed_n(3).is_err());
        assert_eq!(fibonacci_k(4, 11).unwrap(), 401);
    }

    #[test]
    fn depth_windows() {
        assert_eq!(depth_window(12, 4).unwrap(), DepthWindow { lo: 4, hi: 6 });
        assert_eq!(depth_window(5, 2).unwrap(), DepthWindow { lo: 5, hi: 5 });
        assert_eq!(depth_window(11, 3).unwrap(), DepthWindow { lo: 6, hi: 8 });
        assert!(depth_window(0, 3).is_err());
        assert!(depth_window(4, 1).is_err());
        for g in 1..=200 {
            for m in 2..=60 {
                let w = depth_window(g, m).unwrap();
                assert!(w.lo <= w.hi, "g={g} m={m}");
            }
        }
    }

    #[test]
    fn small_multiplicity_closed_forms() {
        assert_eq!(n3(2), Some(1));
        assert_eq!(n3(1), None);
        let table2_footer = [1u64, 3, 4, 6, 7, 9, 11, 13, 15, 18];
        for (g, &n) in (3..=12).zip(&table2_footer) {
            if let Some(v) = n4(g) {
                assert_eq!(v, n, "g={g}");
            }
        }
    }
}

//! The four reference tables, recomputed from the census and the formulas.

use clap::ValueEnum;
use gapsets::census::count_by_depth_and_multiplicity;
use gapsets::formulas::{f_gq, lower_bound_depth3, upper_bound_ng, CensusCounts, ClosedFormCounts};
use gapsets::sequences::fibonacci;

use crate::render::{Cell, Table};
use crate::{CliError, Counter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Lower bounds for the depth-3 count, with exact counts.
    T1,
    /// Multiplicity-4 counts by genus and depth.
    T2,
    /// Upper bounds for the genus count.
    T3,
    /// Counts by genus and depth; closed-form cells emphasized.
    T4,
}

impl Which {
    /// Largest `gmax` accepted without `--force`.
    pub fn guard(self) -> u32 {
        match self {
            Which::T2 => 60,
            _ => crate::GENUS_GUARD,
        }
    }
}

pub fn build(which: Which, gmax: u32, counter: &mut Counter) -> Result<Table, CliError> {
    match which {
        Which::T1 => bounds_below(gmax, counter),
        Which::T2 => multiplicity_four(gmax),
        Which::T3 => bounds_above(gmax, counter),
        Which::T4 => genus_by_depth(gmax, counter),
    }
}

fn headers(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn bounds_below(gmax: u32, counter: &mut Counter) -> Result<Table, CliError> {
    let mut t = Table::new(
        "Lower bounds and exact counts",
        headers(&[
            "g",
            "2F_g",
            "F_{g+2}-P_{g+1}",
            "n'_{g-1}+n'_{g-2}",
            "n'_g",
            "n_g",
        ]),
    );
    let shallow: Vec<u64> = (0..=gmax)
        .map(|g| counter.shallow(g))
        .collect::<Result<_, _>>()?;
    for g in 0..=gmax {
        let gi = g as usize;
        let (twice_fib, recurrence) = if g >= 2 {
            (
                Cell::from(2 * fibonacci(g)?),
                Cell::from(shallow[gi - 1] + shallow[gi - 2]),
            )
        } else {
            (Cell::from("-"), Cell::from("-"))
        };
        t.push(vec![
            Cell::from(g),
            twice_fib,
            Cell::from(lower_bound_depth3(g)?),
            recurrence,
            Cell::from(shallow[gi]),
            Cell::from(counter.genus(g)?),
        ]);
    }
    Ok(t)
}

fn multiplicity_four(gmax: u32) -> Result<Table, CliError> {
    if gmax < 3 {
        return Err(CliError::Usage(
            "table t2 needs --gmax of at least 3".into(),
        ));
    }
    let genera: Vec<u32> = (3..=gmax).collect();
    let mut head = vec!["q\\g".to_string()];
    head.extend(genera.iter().map(u32::to_string));
    let mut t = Table::new("Gapsets of multiplicity 4 by depth", head);
    let mut totals = vec![0u64; genera.len()];
    // depth of a multiplicity-4 gapset is at most ceil(g/2)
    for q in 1..=gmax.div_ceil(2) {
        let mut row = vec![Cell::from(q)];
        for (i, &g) in genera.iter().enumerate() {
            let n = count_by_depth_and_multiplicity(g, q, 4)?;
            totals[i] += n;
            row.push(if n == 0 { Cell::blank() } else { Cell::from(n) });
        }
        t.push(row);
    }
    let mut footer = vec![Cell::from("N(4,g)")];
    footer.extend(totals.into_iter().map(Cell::from));
    t.push(footer);
    Ok(t)
}

fn bounds_above(gmax: u32, counter: &mut Counter) -> Result<Table, CliError> {
    let mut t = Table::new(
        "Upper bounds for the number of gapsets",
        headers(&["g", "n_g", "UB M=4", "UB M=3", "UB M=2", "2^(g-1)"]),
    );
    let counts = ClosedFormCounts(CensusCounts);
    for g in 1..=gmax {
        let mut row = vec![Cell::from(g), Cell::from(counter.genus(g)?)];
        for big_m in [4, 3, 2] {
            row.push(Cell::from(upper_bound_ng(g, big_m, &counts)?));
        }
        row.push(Cell::from(1u128.checked_shl(g - 1).ok_or_else(|| {
            CliError::Usage(format!("2^(g-1) overflows at g = {g}"))
        })?));
        t.push(row);
    }
    Ok(t)
}

fn genus_by_depth(gmax: u32, counter: &mut Counter) -> Result<Table, CliError> {
    let mut head = headers(&["g", "0", "1", "2", "3", "n'_g"]);
    head.extend((4..=gmax).map(|q| q.to_string()));
    head.push("n_g".into());
    let mut t = Table::new("Gapsets by genus and depth", head);
    let columns: Vec<Option<u32>> = (0..=3)
        .map(Some)
        .chain([None])
        .chain((4..=gmax).map(Some))
        .collect();
    for g in 0..=gmax {
        let profile = counter.census.depth_profile(g)?;
        let shallow: u64 = profile.iter().take(4).sum();
        let total: u64 = profile.iter().sum();
        let mut row = vec![Cell::from(g)];
        for col in &columns {
            let Some(q) = *col else {
                row.push(Cell::from(shallow));
                continue;
            };
            if q > g || (q == 0 && g > 0) {
                row.push(Cell::blank());
                continue;
            }
            let n = profile[q as usize];
            match f_gq(g, q).value() {
                Some(v) if v != n => {
                    return Err(CliError::Invariant(format!(
                        "closed form gives {v} at g={g} q={q}, census gives {n}"
                    )))
                }
                Some(_) => row.push(Cell::emphasized(n)),
                None => row.push(Cell::from(n)),
            }
        }
        row.push(Cell::from(total));
        t.push(row);
    }
    Ok(t)
}

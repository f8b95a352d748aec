mod common;

use std::collections::BTreeMap;

use common::*;
use gapsets::census::{
    count_by_depth_and_multiplicity, count_by_genus, count_gapsets_depth_at_most, Census,
};
use gapsets::formulas::*;
use gapsets::CensusQuery;

fn depth_histogram(g: u32) -> BTreeMap<u32, u64> {
    let items = Census::default()
        .enumerate(&CensusQuery::genus(g))
        .unwrap()
        .items
        .unwrap();
    let mut hist = BTreeMap::new();
    for s in items {
        *hist.entry(s.depth()).or_insert(0) += 1;
    }
    hist
}

#[test]
fn genus_and_shallow_counts() {
    for row in genus_depth_rows() {
        assert_eq!(
            count_by_genus(row.genus).unwrap(),
            row.total,
            "g={}",
            row.genus
        );
        assert_eq!(
            count_gapsets_depth_at_most(row.genus, 3).unwrap(),
            row.shallow,
            "g={}",
            row.genus
        );
    }
}

#[test]
fn depth_columns() {
    for row in genus_depth_rows().into_iter().filter(|r| r.genus <= 15) {
        let hist = depth_histogram(row.genus);
        for &(q, v, _) in &row.cells {
            assert_eq!(
                hist.get(&q).copied().unwrap_or(0),
                v,
                "g={} q={q}",
                row.genus
            );
        }
        assert_eq!(hist.values().sum::<u64>(), row.total);
    }
}

#[test]
fn closed_form_cells_are_covered_and_correct() {
    for row in genus_depth_rows() {
        for &(q, v, bold) in &row.cells {
            let ans = f_gq(row.genus, q);
            if bold {
                assert_eq!(ans.value(), Some(v), "g={} q={q}", row.genus);
            } else if let Some(x) = ans.value() {
                assert_eq!(x, v, "g={} q={q}", row.genus);
            }
        }
    }
}

#[test]
fn multiplicity_four_grid() {
    for (i, g) in (3..=12).enumerate() {
        let mut column = 0;
        for q in 1..=g {
            let expected = MULTIPLICITY_FOUR.get(q as usize - 1).map_or(0, |r| r[i]);
            let got = count_by_depth_and_multiplicity(g, q, 4).unwrap();
            assert_eq!(got, expected, "g={g} q={q}");
            column += got;
        }
        assert_eq!(column, MULTIPLICITY_FOUR_TOTALS[i], "g={g}");
    }
}

#[test]
fn multiplicity_three_formula_matches_census() {
    for g in 2..=40 {
        for q in 1..=g {
            let census = count_by_depth_and_multiplicity(g, q, 3).unwrap();
            assert_eq!(f_gq3(g, q).value(), Some(census), "g={g} q={q}");
        }
    }
}

#[test]
fn multiplicity_four_formula_matches_census() {
    for g in 7..=30 {
        for q in 1..=g {
            let census = count_by_depth_and_multiplicity(g, q, 4).unwrap();
            assert_eq!(f_gq4(g, q).value(), Some(census), "g={g} q={q}");
        }
    }
}

#[test]
fn large_genus_items_match_census() {
    // item (3) first applies at g = 23
    for (g, q) in [(23, 10), (23, 11), (24, 11), (25, 11), (25, 12)] {
        if let Some(v) = f_gq(g, q).value() {
            let census = gapsets::census::count_by_depth(g, q).unwrap();
            assert_eq!(v, census, "g={g} q={q}");
        }
    }
}

#[test]
fn bounds_tables() {
    for (g, &lb) in LOWER_BOUNDS.iter().enumerate() {
        assert_eq!(lower_bound_depth3(g as u32).unwrap(), lb, "g={g}");
    }
    for (g, m4, m3, m2) in UPPER_BOUNDS {
        let counts = ClosedFormCounts(CensusCounts);
        assert_eq!(upper_bound_ng(g, 4, &counts).unwrap(), m4, "g={g}");
        assert_eq!(upper_bound_ng(g, 3, &counts).unwrap(), m3, "g={g}");
        assert_eq!(upper_bound_ng(g, 2, &counts).unwrap(), m2, "g={g}");
    }
}

#[test]
fn bounds_sandwich_census() {
    for g in 1..=14u32 {
        let ng = u128::from(count_by_genus(g).unwrap());
        let shallow = u128::from(count_gapsets_depth_at_most(g, 3).unwrap());
        assert!(lower_bound_depth3(g).unwrap() <= shallow, "g={g}");
        assert!(shallow <= ng);
        for big_m in 2..=8 {
            assert!(
                ng <= upper_bound_ng(g, big_m, &CensusCounts).unwrap(),
                "g={g} M={big_m}"
            );
            assert!(
                ng <= upper_bound_ng_general(g, big_m, &CensusCounts).unwrap(),
                "g={g} M={big_m}"
            );
        }
        if g >= 4 {
            assert!(ng <= upper_bound_ng_closed_n(g).unwrap(), "g={g}");
        }
    }
}

#[test]
fn depth_window_holds_and_is_not_always_sharp() {
    for g in 1..=12 {
        let items = Census::default()
            .enumerate(&CensusQuery::genus(g))
            .unwrap()
            .items
            .unwrap();
        for s in items {
            let w = depth_window(g, s.multiplicity()).unwrap();
            assert!(w.contains(s.depth()), "{s:?}");
        }
    }
    // multiplicity 3, g = 2 mod 3: the top of the window is empty
    for g in (5..=29).step_by(3) {
        let top = depth_window(g, 3).unwrap().hi;
        assert_eq!(
            count_by_depth_and_multiplicity(g, top, 3).unwrap(),
            0,
            "g={g}"
        );
    }
    // multiplicity 4: depth ceil(g/2) is reached from g = 4 on; at g = 3
    // the only such gapset is {1,2,3}
    assert_eq!(count_by_depth_and_multiplicity(3, 2, 4).unwrap(), 0);
    for g in 4..=20 {
        assert!(
            count_by_depth_and_multiplicity(g, g.div_ceil(2), 4).unwrap() >= 1,
            "g={g}"
        );
    }
}

#[test]
fn empty_depths_above_two_thirds() {
    for g in 1..=16u32 {
        for q in (2 * g).div_ceil(3) + 1..g {
            assert_eq!(
                gapsets::census::count_by_depth(g, q).unwrap(),
                0,
                "g={g} q={q}"
            );
        }
    }
}

#[test]
fn monotone_growth() {
    let counts: Vec<u64> = (0..=18).map(|g| count_by_genus(g).unwrap()).collect();
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
}

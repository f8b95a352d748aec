#![allow(dead_code)]

pub struct Row {
    pub genus: u32,
    pub shallow: u64,
    pub total: u64,
    /// (depth, count, closed form available)
    pub cells: Vec<(u32, u64, bool)>,
}

pub fn genus_depth_rows() -> Vec<Row> {
    include_str!("../data/genus_depth.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            let mut fields = line.split_whitespace();
            let mut next = || fields.next().unwrap().parse::<u64>().unwrap();
            let (genus, shallow, total) = (next() as u32, next(), next());
            let cells = line
                .split_whitespace()
                .skip(3)
                .map(|cell| {
                    let (q, v) = cell.split_once(':').unwrap();
                    let bold = v.ends_with('*');
                    (
                        q.parse().unwrap(),
                        v.trim_end_matches('*').parse().unwrap(),
                        bold,
                    )
                })
                .collect();
            Row {
                genus,
                shallow,
                total,
                cells,
            }
        })
        .collect()
}

/// Rows q = 1..=6, columns g = 3..=12; blank entries are zero.
pub const MULTIPLICITY_FOUR: [[u64; 10]; 6] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 3, 3, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 5, 5, 3, 1, 0, 0, 0],
    [0, 0, 0, 0, 2, 6, 7, 6, 3, 1],
    [0, 0, 0, 0, 0, 0, 3, 7, 9, 8],
    [0, 0, 0, 0, 0, 0, 0, 0, 3, 9],
];

pub const MULTIPLICITY_FOUR_TOTALS: [u64; 10] = [1, 3, 4, 6, 7, 9, 11, 13, 15, 18];

/// g = 1..=10: (M = 4, M = 3, M = 2) upper bounds.
pub const UPPER_BOUNDS: [(u32, u128, u128, u128); 10] = [
    (1, 2, 2, 2),
    (2, 3, 2, 3),
    (3, 6, 4, 4),
    (4, 8, 7, 8),
    (5, 12, 14, 16),
    (6, 28, 27, 30),
    (7, 50, 58, 62),
    (8, 112, 111, 126),
    (9, 216, 239, 249),
    (10, 413, 468, 505),
];

/// g = 0..=10.
pub const LOWER_BOUNDS: [u128; 11] = [1, 1, 2, 4, 6, 11, 18, 30, 50, 82, 135];

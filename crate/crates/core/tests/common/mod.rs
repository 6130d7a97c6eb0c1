//! Tables and measures printed in the reference examples, kept as plain
//! integers so they can be compared against computed values without
//! going through the library.
#![allow(dead_code)]

/// `Z^2`, `p = q = 1/2`: amplitude vectors on the nine-point ball.
pub const TABLE_2D: [([i64; 2], [i64; 4]); 9] = [
    ([0, 0], [2, 2, 2, 2]),
    ([0, 1], [1, 1, 0, 2]),
    ([1, 0], [0, 2, 1, 1]),
    ([0, -1], [1, 1, 2, 0]),
    ([-1, 0], [2, 0, 1, 1]),
    ([1, 1], [0, 1, 0, 1]),
    ([1, -1], [0, 1, 1, 0]),
    ([-1, -1], [1, 0, 1, 0]),
    ([-1, 1], [1, 0, 0, 1]),
];

/// `Z^3` Grover: amplitude vectors on the 27-point ball.
pub const TABLE_3D: [([i64; 3], [i64; 6]); 27] = [
    ([0, 0, 0], [4, 4, 4, 4, 4, 4]),
    ([0, 1, 0], [2, 2, 0, 4, 2, 2]),
    ([1, 0, 0], [0, 4, 2, 2, 2, 2]),
    ([0, -1, 0], [2, 2, 4, 0, 2, 2]),
    ([-1, 0, 0], [4, 0, 2, 2, 2, 2]),
    ([1, 1, 0], [0, 2, 0, 2, 1, 1]),
    ([1, -1, 0], [0, 2, 2, 0, 1, 1]),
    ([-1, -1, 0], [2, 0, 2, 0, 1, 1]),
    ([-1, 1, 0], [2, 0, 0, 2, 1, 1]),
    ([0, 0, -1], [2, 2, 2, 2, 4, 0]),
    ([0, 1, -1], [1, 1, 0, 2, 2, 0]),
    ([1, 0, -1], [0, 2, 1, 1, 2, 0]),
    ([0, -1, -1], [1, 1, 2, 0, 2, 0]),
    ([-1, 0, -1], [2, 0, 1, 1, 2, 0]),
    ([1, 1, -1], [0, 1, 0, 1, 1, 0]),
    ([1, -1, -1], [0, 1, 1, 0, 1, 0]),
    ([-1, -1, -1], [1, 0, 1, 0, 1, 0]),
    ([-1, 1, -1], [1, 0, 0, 1, 1, 0]),
    ([0, 0, 1], [2, 2, 2, 2, 0, 4]),
    ([0, 1, 1], [1, 1, 0, 2, 0, 2]),
    ([1, 0, 1], [0, 2, 1, 1, 0, 2]),
    ([0, -1, 1], [1, 1, 2, 0, 0, 2]),
    ([-1, 0, 1], [2, 0, 1, 1, 0, 2]),
    ([1, 1, 1], [0, 1, 0, 1, 0, 1]),
    ([1, -1, 1], [0, 1, 1, 0, 0, 1]),
    ([-1, -1, 1], [1, 0, 1, 0, 0, 1]),
    ([-1, 1, 1], [1, 0, 0, 1, 0, 1]),
];

/// Probability at `x` in the `Z^2` example, as `(num, den)`, by the number
/// of nonzero coordinates.
pub fn measure_2d(x: &[i64]) -> (i64, i64) {
    match x.iter().filter(|&&c| c != 0).count() {
        0 => (1, 3),
        1 => (1, 8),
        _ => (1, 24),
    }
}

/// Probability at `x` in the `Z^3` example. Corners (three nonzero
/// coordinates) and edges (two) carry different weights.
pub fn measure_3d(x: &[i64]) -> (i64, i64) {
    match x.iter().filter(|&&c| c != 0).count() {
        0 => (2, 9),
        1 => (2, 27),
        2 => (5, 216),
        _ => (1, 144),
    }
}

/// Squared-norm total of a table.
pub fn table_mass<const D: usize, const W: usize>(table: &[([i64; D], [i64; W])]) -> i64 {
    table
        .iter()
        .flat_map(|(_, a)| a.iter())
        .map(|v| v * v)
        .sum()
}

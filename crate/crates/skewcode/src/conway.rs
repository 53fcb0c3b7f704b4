//! Built-in Conway polynomials, low-to-high coefficients.

const TABLE: &[(u32, &[u32])] = &[
    (3, &[1, 1]),
    (3, &[2, 2, 1]),
    (3, &[1, 2, 0, 1]),
    (3, &[2, 0, 0, 2, 1]),
    (3, &[1, 2, 0, 0, 0, 1]),
    (3, &[2, 2, 1, 0, 2, 0, 1]),
    (5, &[3, 1]),
    (5, &[2, 4, 1]),
    (5, &[3, 3, 0, 1]),
    (5, &[2, 4, 4, 0, 1]),
    (5, &[3, 4, 0, 0, 0, 1]),
    (7, &[4, 1]),
    (7, &[3, 6, 1]),
    (7, &[4, 0, 6, 1]),
    (7, &[3, 4, 5, 0, 1]),
    (7, &[4, 1, 0, 0, 0, 1]),
    (7, &[4, 6, 0, 0, 0, 0, 0, 1]),
    (11, &[9, 1]),
    (11, &[2, 7, 1]),
    (11, &[9, 2, 0, 1]),
    (13, &[11, 1]),
    (13, &[2, 12, 1]),
    (13, &[11, 2, 0, 1]),
];

/// The Conway polynomial for `F_{p^m}`, when tabulated.
pub fn lookup(p: u32, m: usize) -> Option<Vec<u32>> {
    TABLE
        .iter()
        .find(|(q, c)| *q == p && c.len() == m + 1)
        .map(|(_, c)| c.to_vec())
}

/// The `(p, m)` pairs with a tabulated polynomial.
pub fn available() -> Vec<(u32, usize)> {
    TABLE.iter().map(|(p, c)| (*p, c.len() - 1)).collect()
}

//! Shared inputs for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use scn_core::{parse_expression, Matrix, SpaceDescriptor};

/// Products with known exact values, from cheap to rule-heavy.
pub const PRODUCTS: &[&str] = &[
    "S^2 x S^5 x S^7",
    "K(Z/2,3) x K(Z/3,3) x K(Z,5)",
    "CP^2 x CP^3",
    "L(5,3) x L(7,5)",
    "M(Z/2,2) x M(Z,4) x M(Z/12,7)",
];

pub fn product(expr: &str) -> Vec<SpaceDescriptor> {
    parse_expression(expr).expect("benchmark products parse").factors
}

/// Seeded square matrices with entries in `[-20, 20]`.
pub fn matrices(n: usize, count: usize, seed: u64) -> Vec<Matrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let rows: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-20..=20)).collect()).collect();
            Matrix::from_rows(&rows, n).expect("rows have n entries")
        })
        .collect()
}

//! Deterministic inputs shared by the benchmarks.

use fourfold_core::linalg::IntMatrix;
use num_bigint::BigInt;

/// An `n × n` matrix with entries in `-9..=9` from a fixed recurrence; rank
/// and torsion vary with `n`, so the Smith reduction does real work.
pub fn dense_matrix(n: usize) -> IntMatrix {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ n as u64;
    let entries = (0..n * n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            BigInt::from((state >> 33) as i64 % 19 - 9)
        })
        .collect();
    IntMatrix::from_entries(n, n, entries).expect("n * n entries")
}

//! Criterion benchmarks for the numerical kernels; see `benches/`.

/// Deterministic zero-mean test series of length `n`.
pub fn test_series(n: usize) -> Vec<f64> {
    (0..n).map(|k| ((k as f64) * 0.731).sin() + 0.3 * ((k as f64) * 2.17).cos()).collect()
}

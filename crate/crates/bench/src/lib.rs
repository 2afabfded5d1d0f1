//! Criterion benchmarks for `convinv-core`; see `benches/inversion.rs`.

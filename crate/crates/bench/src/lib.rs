//! Criterion benchmarks for `qdamp-core`; see `benches/qdamp.rs`.

//! Criterion benchmarks for `qcapelli`; see `benches/rewriting.rs`.

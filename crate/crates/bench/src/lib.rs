//! Criterion benchmarks for `barypoly`; run them with `cargo bench -p barypoly-bench`.

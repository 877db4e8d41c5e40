//! Generators, file formats and the benchmark harness.

pub mod bench;
pub mod gen;
pub mod io;

pub use bench::{run_bench, BenchRow, ColorsRule, BENCH_HEADER};
pub use gen::{gen_bounded_degree, gen_complete, gen_pipeline_friendly};
pub use io::{parse_coloring, parse_instance, write_coloring, write_instance, ParseError};

//! Benchmarks shaped like the article-size and checking-time tables:
//! gzip sizes in KB and median times per kernel version.

mod measure;
mod table;
mod units;

pub use measure::{measure, measure_one, size_pair, BenchError, BenchReport, BenchRow, Environment, SizePair, VERSIONS};
pub use table::{parse_csv, totals, CsvError, Format, Table, TableRow};
pub use units::{gzip_len, group_thousands, kb, median, BadTime, Centis, KB};

//! Seeded experiment runs over sampled block-model graphs, and the tables
//! they produce.

mod config;
mod run;
mod tables;

pub use config::{
    derive_seed, hash_json, resolve_network, BenchConfig, ExperimentConfig, LongPathSpec, Method, NetworkSpec,
};
pub use run::{
    draw_allocation, long_path_fraction, mean_std, run_experiment, CellSummary, ExperimentReport, LongPathReport,
    RunRecord, LONG_PATH_CAP,
};
pub use tables::{
    emit_tables, format_cell, format_stat, long_path_table, parse_size_csv, parse_timing_csv, size_rows_to_csv, Format,
    SizeRow, TimingRow, View,
};

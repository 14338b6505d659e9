//! Enumeration, filtering, persistence and verification of gem catalogues.

pub mod enumerate;
pub mod generate;
pub mod record;
pub mod verify;

pub use generate::{enumerate, meta_path, read_catalogue, records_for, run, write_catalogue, GenerateParams, Meta, RunOptions};
pub use record::{filter_counts, parse_filters, CatalogueRecord, Filter, GENERATOR_VERSION};
pub use verify::{verify_corpus, CheckRow, VerifyReport, CHECKS};

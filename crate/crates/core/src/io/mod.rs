//! Run configuration, snapshots and diagnostics output.

pub mod config;
pub mod diagnostics;
pub mod expr;
pub mod snapshot;

pub use config::{parse_config, RunConfig};
pub use diagnostics::{diagnostics_csv, diagnostics_json, CSV_HEADER};
pub use snapshot::{decode as decode_snapshot, encode as encode_snapshot};

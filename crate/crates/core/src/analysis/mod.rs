//! Observables over sampled ensembles and the on-disk formats.

mod alexander;
mod io;
mod observables;

pub use alexander::{alexander_determinant, alexander_determinant_along, PROJECTION_ATTEMPTS};
pub use io::{
    parse_knots, read_knots, read_records, write_knots, write_obj, write_records, write_stats,
    write_trace, KnotRecord, RecordHeader, StatsRecord, TraceRecord,
};
pub use observables::{radius_of_gyration, radius_of_gyration_sq};

use std::io::Write;

use serde::Serialize;

/// One row of experiment output. `None` fields serialize as empty cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub experiment_id: String,
    pub v: usize,
    pub algorithm: String,
    pub seed: u64,
    pub correlation: Option<f64>,
    pub mean_iterations: Option<f64>,
    pub exact_expectation: Option<f64>,
    pub upper_bound: Option<f64>,
    pub wall_clock_ns: u64,
    pub checksum: Option<f64>,
}

pub const HEADER: [&str; 10] = [
    "experiment_id",
    "v",
    "algorithm",
    "seed",
    "correlation",
    "mean_iterations",
    "exact_expectation",
    "upper_bound",
    "wall_clock_ns",
    "checksum",
];

/// Writes records with the fixed header, always emitting the header even when
/// there are no rows.
pub fn write_records<W: Write>(out: W, records: &[ExperimentRecord]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER)?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

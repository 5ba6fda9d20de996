use std::io::Write;

use crate::error::{Error, Result};
use crate::geometry::Point;

/// Column names of the trace CSV.
pub const CSV_HEADER: [&str; 6] = [
    "k",
    "f_value",
    "grad_calls",
    "inner_iters",
    "dist_to_oracle",
    "psi",
];

/// One row of a solver trace.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceRecord {
    pub k: usize,
    pub f_value: f64,
    /// Cumulative gradient evaluations, inner loops and warm starts included.
    pub grad_calls: u64,
    pub inner_iters: u64,
    pub dist_to_ref: Option<f64>,
    pub psi: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolverTrace {
    pub records: Vec<TraceRecord>,
}

impl SolverTrace {
    pub fn push(&mut self, r: TraceRecord) {
        self.records.push(r);
    }

    pub fn last(&self) -> Option<&TraceRecord> {
        self.records.last()
    }

    pub fn total_grad_calls(&self) -> u64 {
        self.last().map_or(0, |r| r.grad_calls)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Cumulative gradient calls at the first record with `f_value <= threshold`.
    pub fn calls_to_reach(&self, threshold: f64) -> Option<u64> {
        self.records
            .iter()
            .find(|r| r.f_value <= threshold)
            .map(|r| r.grad_calls)
    }

    /// Writes the trace as CSV. Floats use the shortest round-trip form and
    /// missing values are empty fields.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Io(e.to_string());
        let mut w = csv::Writer::from_writer(out);
        w.write_record(CSV_HEADER).map_err(io)?;
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.records {
            w.write_record([
                r.k.to_string(),
                r.f_value.to_string(),
                r.grad_calls.to_string(),
                r.inner_iters.to_string(),
                opt(r.dist_to_ref),
                opt(r.psi),
            ])
            .map_err(io)?;
        }
        w.flush().map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_csv_bytes(&self) -> Vec<u8> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        buf
    }
}

/// Options shared by every solver.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Reference minimizer; enables `dist_to_ref` and, for riemacon, `psi`.
    pub reference: Option<Point>,
    /// Keep the full riemacon state after every iteration.
    pub capture_states: bool,
}

impl RunOptions {
    pub fn with_reference(reference: Point) -> Self {
        RunOptions {
            reference: Some(reference),
            capture_states: false,
        }
    }
}

/// Final iterate and trace of a solver run.
#[derive(Clone, Debug)]
pub struct SolverOutput {
    pub point: Point,
    pub trace: SolverTrace,
}

//! Entanglement and quantum discord of a qubit-qutrit pair under local and
//! multilocal dephasing or amplitude-damping noise.
//!
//! The pipeline is: build the initial state ([`states::initial_state`]),
//! evolve it with Kraus channels ([`channels::evolve`]), then analyse it
//! ([`correlations::discord`]). [`sweep`] drives whole time sweeps and writes
//! CSV and gnuplot output; [`oracles`] holds closed-form and brute-force
//! cross-checks.

pub mod channels;
pub mod cmatrix;
pub mod correlations;
pub mod error;
pub mod oracles;
pub mod states;
pub mod sweep;

pub use channels::{
    evolve, Coupling, CouplingScenario, DecayInput, KrausChannel, NoiseKind, QutritDephasing,
};
pub use cmatrix::{ComplexMatrix, HermitianEigenResult, Subsystem};
pub use correlations::{discord, CorrelationReport, MeasurementAngles};
pub use error::{Error, Result};
pub use oracles::{OracleComparison, Reconciliation};
pub use states::{initial_state, DensityMatrix, StateParameter, ValidityReport};
pub use sweep::{Axis, CsvRow, FigurePreset, SweepConfig};

pub use num_complex::Complex64;

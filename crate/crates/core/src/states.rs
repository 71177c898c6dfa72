//! Density matrices on the qubit-qutrit space and the one-parameter initial family.

use std::fmt;

use crate::cmatrix::{jacobi, re, ComplexMatrix, HERMITIAN_TOL};
use crate::error::{Error, Result};

/// Composite dimension, 2 x 3.
pub const JOINT_DIM: usize = 6;

pub const TRACE_TOL: f64 = 1e-10;
/// Smallest eigenvalue tolerated before a state counts as non-positive.
pub const PSD_TOL: f64 = 1e-10;

/// Weight `p` of the initial family, restricted to `[0, 0.5]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct StateParameter(f64);

impl StateParameter {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&p) {
            return Err(Error::OutOfRange {
                name: "p",
                value: p,
                range: "[0, 0.5]",
            });
        }
        Ok(Self(p))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Hermiticity, trace and positivity diagnostics for a 6x6 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    pub hermiticity_defect: f64,
    pub trace_defect: f64,
    pub min_eigenvalue: f64,
}

impl ValidityReport {
    pub fn passes(&self) -> bool {
        self.hermiticity_defect <= HERMITIAN_TOL
            && self.trace_defect <= TRACE_TOL
            && self.min_eigenvalue >= -PSD_TOL
    }
}

impl fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "hermiticity defect {:e}, trace defect {:e}, min eigenvalue {:e}",
            self.hermiticity_defect, self.trace_defect, self.min_eigenvalue
        )
    }
}

/// Diagnoses any 6x6 matrix. Non-square or wrongly sized input reports
/// infinite defects rather than erroring.
pub fn validate(rho: &ComplexMatrix) -> ValidityReport {
    if rho.shape() != (JOINT_DIM, JOINT_DIM) {
        return ValidityReport {
            hermiticity_defect: f64::INFINITY,
            trace_defect: f64::INFINITY,
            min_eigenvalue: f64::NEG_INFINITY,
        };
    }
    let tr = rho.trace();
    let trace_defect = (tr - re(1.0)).norm();
    // the spectrum is taken of the Hermitian part so a defect is reported, not raised
    let min_eigenvalue = jacobi::eigenvalues_unchecked(&rho.hermitian_part())
        .map(|v| v[0])
        .unwrap_or(f64::NEG_INFINITY);
    ValidityReport {
        hermiticity_defect: rho.hermiticity_defect(),
        trace_defect,
        min_eigenvalue,
    }
}

/// A validated qubit-qutrit density matrix in the `|q r>` qubit-major basis.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Accepts `matrix` only if it is 6x6 and passes [`validate`].
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.shape() != (JOINT_DIM, JOINT_DIM) {
            return Err(Error::WrongDimension {
                op: "DensityMatrix::new",
                expected: JOINT_DIM,
                found: matrix.shape(),
            });
        }
        let report = validate(&matrix);
        if !report.passes() {
            return Err(Error::InvalidState(report));
        }
        Ok(Self(matrix))
    }

    /// `rho_a (x) rho_b` for a qubit state and a qutrit state.
    pub fn product(rho_a: &ComplexMatrix, rho_b: &ComplexMatrix) -> Result<Self> {
        if rho_a.shape() != (2, 2) || rho_b.shape() != (3, 3) {
            return Err(Error::DimensionMismatch {
                op: "DensityMatrix::product",
                left: rho_a.shape(),
                right: rho_b.shape(),
            });
        }
        Self::new(rho_a.kron(rho_b))
    }

    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix::identity(JOINT_DIM).scale(re(1.0 / JOINT_DIM as f64)))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn report(&self) -> ValidityReport {
        validate(&self.0)
    }
}

impl AsRef<ComplexMatrix> for DensityMatrix {
    fn as_ref(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// The initial family
///
/// ```text
/// p/2 (|00><00| + |01><01| + |11><11| + |12><12| + |01><11| + |11><01| + |00><12| + |12><00|)
///   + (1-2p)/2 (|02><02| + |10><10| + |02><10| + |10><02|)
/// ```
///
/// which is separable only at `p = 1/3`.
pub fn initial_state(p: StateParameter) -> DensityMatrix {
    let p = p.value();
    let a = p / 2.0;
    let b = (1.0 - 2.0 * p) / 2.0;
    let mut m = ComplexMatrix::zeros(JOINT_DIM, JOINT_DIM);
    // indices: |00>=0 |01>=1 |02>=2 |10>=3 |11>=4 |12>=5
    for (i, j, v) in [
        (0, 0, a),
        (1, 1, a),
        (4, 4, a),
        (5, 5, a),
        (1, 4, a),
        (4, 1, a),
        (0, 5, a),
        (5, 0, a),
        (2, 2, b),
        (3, 3, b),
        (2, 3, b),
        (3, 2, b),
    ] {
        m[(i, j)] = re(v);
    }
    DensityMatrix(m)
}

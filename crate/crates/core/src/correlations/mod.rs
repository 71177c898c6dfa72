//! Negativity, von Neumann entropies, mutual information, and the one-way
//! (qubit-measured) classical correlation and quantum discord.
//!
//! All entropies are in bits.

mod optimize;

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::cmatrix::{
    c, hermitian_eigenvalues, jacobi_eigenvalues_in_place, partial_trace, partial_transpose, re,
    ComplexMatrix, Subsystem, QUBIT_QUTRIT,
};
use crate::error::{Error, Result};
use crate::states::{DensityMatrix, PSD_TOL, TRACE_TOL};

pub use optimize::{minimize_over_angles, GRID_PHI, GRID_THETA};

/// Measurement outcomes rarer than this are dropped from the conditional entropy.
pub const MIN_OUTCOME_PROBABILITY: f64 = 1e-14;

/// Discord values in `(-DISCORD_CLAMP, 0)` are reported as zero.
pub const DISCORD_CLAMP: f64 = 1e-8;

/// Direction `n = (sin t cos f, sin t sin f, cos t)` of a projective qubit measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    theta: f64,
    phi: f64,
}

impl MeasurementAngles {
    /// `theta` in `[0, pi]`, `phi` in `[0, 2 pi)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
                range: "[0, pi]",
            });
        }
        if !(0.0..TAU).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
                range: "[0, 2 pi)",
            });
        }
        Ok(Self { theta, phi })
    }

    /// Maps any real pair onto an equivalent measurement with `theta` in
    /// `[0, pi/2]` and `phi` in `[0, 2 pi)`. Reflections through the pole and
    /// the outcome swap `n -> -n` leave the conditional entropy unchanged.
    pub fn canonical(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(TAU);
        let mut phi = phi;
        if theta > PI {
            theta = TAU - theta;
            phi += PI;
        }
        if theta > PI / 2.0 {
            theta = PI - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn bloch_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Negativity, total/classical/quantum correlations and the optimal measurement for one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub negativity: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub discord: f64,
    pub argmin: MeasurementAngles,
}

fn entropy_of_spectrum(values: impl IntoIterator<Item = f64>) -> f64 {
    values
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `sum_i (|l_i| - l_i)` over the spectrum of the partial transpose on the qubit.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    let pt = partial_transpose(rho.matrix(), QUBIT_QUTRIT, Subsystem::Qubit)?;
    let vals = hermitian_eigenvalues(&pt)?;
    Ok(vals.iter().map(|l| l.abs() - l).sum())
}

/// `-Tr(rho log2 rho)`, with `0 log 0 = 0`.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let vals = hermitian_eigenvalues(rho)?;
    let trace: f64 = vals.iter().sum();
    if (trace - 1.0).abs() > TRACE_TOL || vals[0] < -PSD_TOL {
        return Err(Error::OutOfRange {
            name: "density-matrix trace/min eigenvalue",
            value: if vals[0] < -PSD_TOL { vals[0] } else { trace },
            range: "unit trace, eigenvalues >= -1e-10",
        });
    }
    Ok(entropy_of_spectrum(vals))
}

/// `S(rho_A) + S(rho_B) - S(rho_AB)`.
pub fn mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let m = rho.matrix();
    let sa = von_neumann_entropy(&partial_trace(m, QUBIT_QUTRIT, Subsystem::Qubit)?)?;
    let sb = von_neumann_entropy(&partial_trace(m, QUBIT_QUTRIT, Subsystem::Qutrit)?)?;
    let sab = von_neumann_entropy(m)?;
    Ok(sa + sb - sab)
}

/// `Pi_{1,2} = (I +- n.sigma) / 2`.
pub fn measurement_projectors(angles: MeasurementAngles) -> [ComplexMatrix; 2] {
    let [nx, ny, nz] = angles.bloch_vector();
    let n_sigma = ComplexMatrix::new(2, 2, vec![re(nz), c(nx, -ny), c(nx, ny), re(-nz)])
        .expect("finite Bloch vector");
    let id = ComplexMatrix::identity(2);
    [
        (&id + &n_sigma).scale(re(0.5)),
        (&id - &n_sigma).scale(re(0.5)),
    ]
}

/// Conditional entropy after measuring the qubit, as a function of the angles.
///
/// Since `Pi` acts on the qubit only,
/// `Tr_A[(Pi (x) I) rho (Pi (x) I)] = sum_{a,b} Pi_{ab} rho^{(b,a)}` with
/// `rho^{(b,a)}` the 3x3 block `<b| rho |a>`, so the four blocks are
/// extracted once and each evaluation costs two 3x3 eigen-solves.
#[derive(Debug, Clone)]
pub struct ConditionalLandscape {
    blocks: [[[Complex64; 9]; 2]; 2],
    marginal_b: [Complex64; 9],
}

impl ConditionalLandscape {
    pub fn new(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let mut blocks = [[[Complex64::default(); 9]; 2]; 2];
        for (a, row) in blocks.iter_mut().enumerate() {
            for (b, block) in row.iter_mut().enumerate() {
                for i in 0..3 {
                    for j in 0..3 {
                        block[i * 3 + j] = m[(a * 3 + i, b * 3 + j)];
                    }
                }
            }
        }
        let mut marginal_b = [Complex64::default(); 9];
        for k in 0..9 {
            marginal_b[k] = blocks[0][0][k] + blocks[1][1][k];
        }
        Self { blocks, marginal_b }
    }

    /// `sum_k p_k S(rho_k^B)` at raw angles (any real values).
    pub fn eval(&self, theta: f64, phi: f64) -> f64 {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        // Pi_1 entries
        let p00 = re(0.5 * (1.0 + ct));
        let p11 = re(0.5 * (1.0 - ct));
        let p01 = c(0.5 * st * cp, -0.5 * st * sp);
        let p10 = p01.conj();

        let b = &self.blocks;
        let mut first = [Complex64::default(); 9];
        let mut second = [Complex64::default(); 9];
        for k in 0..9 {
            first[k] = p00 * b[0][0][k] + p01 * b[1][0][k] + p10 * b[0][1][k] + p11 * b[1][1][k];
            second[k] = self.marginal_b[k] - first[k];
        }
        outcome_entropy(&mut first) + outcome_entropy(&mut second)
    }
}

/// `p S(sigma / p)` for an unnormalised 3x3 conditional state `sigma` with `p = Tr sigma`.
fn outcome_entropy(sigma: &mut [Complex64; 9]) -> f64 {
    let p = sigma[0].re + sigma[4].re + sigma[8].re;
    if p < MIN_OUTCOME_PROBABILITY {
        return 0.0;
    }
    for i in 0..3 {
        sigma[i * 3 + i].im = 0.0;
        for j in (i + 1)..3 {
            let h = (sigma[i * 3 + j] + sigma[j * 3 + i].conj()) * 0.5;
            sigma[i * 3 + j] = h;
            sigma[j * 3 + i] = h.conj();
        }
    }
    jacobi_eigenvalues_in_place(sigma, 3, None);
    p * entropy_of_spectrum((0..3).map(|i| sigma[i * 3 + i].re / p))
}

/// `sum_k p_k S(rho_k^B)` for the projective qubit measurement along `angles`.
pub fn conditional_entropy(rho: &DensityMatrix, angles: MeasurementAngles) -> f64 {
    ConditionalLandscape::new(rho).eval(angles.theta, angles.phi)
}

/// `S(rho_B) - min_angles sum_k p_k S(rho_k^B)` and the minimising angles.
pub fn classical_correlation(rho: &DensityMatrix) -> Result<(f64, MeasurementAngles)> {
    let sb = von_neumann_entropy(&partial_trace(
        rho.matrix(),
        QUBIT_QUTRIT,
        Subsystem::Qutrit,
    )?)?;
    let (min, angles) = minimize_over_angles(rho)?;
    Ok((sb - min, angles))
}

/// Full report: negativity, mutual information, classical correlation, discord.
///
/// Discord in `(-1e-8, 0)` is clamped to zero (and the classical correlation
/// to the mutual information, so the three stay consistent); anything more
/// negative means the minimiser missed and is an error.
pub fn discord(rho: &DensityMatrix) -> Result<CorrelationReport> {
    let negativity = negativity(rho)?.max(0.0);
    let mutual_information = mutual_information(rho)?.max(0.0);
    let (classical, argmin) = classical_correlation(rho)?;
    let mut classical = classical.max(0.0);
    let mut discord = mutual_information - classical;
    if discord < 0.0 {
        if discord <= -DISCORD_CLAMP {
            return Err(Error::NegativeDiscord { value: discord });
        }
        classical = mutual_information;
        discord = 0.0;
    }
    Ok(CorrelationReport {
        negativity,
        mutual_information,
        classical_correlation: classical,
        discord,
        argmin,
    })
}

//! Dephasing and amplitude-damping Kraus channels for the qubit and the qutrit,
//! their lifting to the joint space, and local/multilocal evolution.
//!
//! Time enters only through the dimensionless product `t * Gamma` of each side
//! ([`DecayInput`]). Operators are rebuilt for every time point.

use std::fmt;

use crate::cmatrix::{re, ComplexMatrix, Subsystem};
use crate::error::{Error, Result};
use crate::states::{DensityMatrix, JOINT_DIM};

/// Above this the exponentials are evaluated at the clamp, which is already the
/// asymptotic channel in double precision.
const DECAY_CLAMP: f64 = 700.0;

pub const COMPLETENESS_TOL: f64 = 1e-12;

/// Dimensionless decay product `t * Gamma` for one subsystem.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct DecayInput(f64);

impl DecayInput {
    pub const ZERO: DecayInput = DecayInput(0.0);

    pub fn new(t_gamma: f64) -> Result<Self> {
        if t_gamma.is_nan() || t_gamma < 0.0 {
            return Err(Error::OutOfRange {
                name: "t_gamma",
                value: t_gamma,
                range: "[0, inf)",
            });
        }
        Ok(Self(t_gamma))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `exp(-t_gamma)`, clamped so huge inputs give the limit cleanly.
    pub fn survival(self) -> f64 {
        (-self.0.min(DECAY_CLAMP)).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NoiseKind {
    Dephasing,
    AmplitudeDamping,
}

impl NoiseKind {
    pub fn label(self) -> &'static str {
        match self {
            NoiseKind::Dephasing => "dephasing",
            NoiseKind::AmplitudeDamping => "amplitude",
        }
    }
}

impl fmt::Display for NoiseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coupling {
    QubitOnly,
    QutritOnly,
    Multilocal,
}

impl Coupling {
    pub fn label(self) -> &'static str {
        match self {
            Coupling::QubitOnly => "qubit-only",
            Coupling::QutritOnly => "qutrit-only",
            Coupling::Multilocal => "multilocal",
        }
    }
}

impl fmt::Display for Coupling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How the qutrit dephasing operators `diag(1, g, g)`, ... are parametrised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum QutritDephasing {
    /// `g = exp(-t Gamma_B)`: identity at `t = 0`, full dephasing as `t -> inf`.
    #[default]
    Reconciled,
    /// `g = 1 - exp(-t Gamma_B)` substituted literally into the operators,
    /// which dephases completely at `t = 0` and is the identity as `t -> inf`.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelLabel {
    pub noise: NoiseKind,
    pub subsystem: Subsystem,
}

/// Ordered Kraus operators `{E_i}` acting on a space of dimension `dim`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
    dim: usize,
    label: ChannelLabel,
}

impl KrausChannel {
    fn from_parts(operators: Vec<ComplexMatrix>, label: ChannelLabel) -> Self {
        let dim = operators[0].rows();
        debug_assert!(operators.iter().all(|e| e.shape() == (dim, dim)));
        Self {
            operators,
            dim,
            label,
        }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> ChannelLabel {
        self.label
    }

    /// Largest entry of `sum_i E_i^dagger E_i - I`.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.operators {
            sum = &sum + &(&e.dagger() * e);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim))
    }

    /// `sum_i E_i rho E_i^dagger`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch {
                op: "KrausChannel::apply",
                left: (self.dim, self.dim),
                right: rho.shape(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for e in &self.operators {
            out = &out + &(&(e * rho) * &e.dagger());
        }
        Ok(out)
    }
}

/// Dephasing strength `1 - exp(-t_gamma)`, in `[0, 1]`.
pub fn dephasing_strength(t_gamma: DecayInput) -> f64 {
    1.0 - t_gamma.survival()
}

fn diag(values: &[f64]) -> ComplexMatrix {
    ComplexMatrix::diag_real(values)
}

/// `diag(1, sqrt(1 - gamma))`, `diag(0, sqrt(gamma))`; the qubit coherence
/// decays as `sqrt(1 - gamma) = exp(-t_gamma / 2)`.
pub fn qubit_dephasing(t_gamma: DecayInput) -> KrausChannel {
    let gamma = dephasing_strength(t_gamma);
    KrausChannel::from_parts(
        vec![
            diag(&[1.0, (1.0 - gamma).sqrt()]),
            diag(&[0.0, gamma.sqrt()]),
        ],
        ChannelLabel {
            noise: NoiseKind::Dephasing,
            subsystem: Subsystem::Qubit,
        },
    )
}

/// `diag(1, g, g)`, `diag(0, sqrt(1 - g^2), 0)`, `diag(0, 0, sqrt(1 - g^2))`
/// with `g = exp(-t_gamma)`.
pub fn qutrit_dephasing(t_gamma: DecayInput) -> KrausChannel {
    qutrit_dephasing_with(t_gamma, QutritDephasing::Reconciled)
}

pub fn qutrit_dephasing_with(t_gamma: DecayInput, convention: QutritDephasing) -> KrausChannel {
    let g = match convention {
        QutritDephasing::Reconciled => t_gamma.survival(),
        QutritDephasing::Literal => dephasing_strength(t_gamma),
    };
    let h = (1.0 - g * g).max(0.0).sqrt();
    KrausChannel::from_parts(
        vec![
            diag(&[1.0, g, g]),
            diag(&[0.0, h, 0.0]),
            diag(&[0.0, 0.0, h]),
        ],
        ChannelLabel {
            noise: NoiseKind::Dephasing,
            subsystem: Subsystem::Qutrit,
        },
    )
}

/// `[[1, 0], [0, sqrt(1 - beta)]]`, `[[0, sqrt(beta)], [0, 0]]`, `beta = 1 - exp(-t_gamma)`.
pub fn qubit_amplitude(t_gamma: DecayInput) -> KrausChannel {
    let beta = 1.0 - t_gamma.survival();
    let mut e1 = ComplexMatrix::zeros(2, 2);
    e1[(0, 1)] = re(beta.sqrt());
    KrausChannel::from_parts(
        vec![diag(&[1.0, (1.0 - beta).sqrt()]), e1],
        ChannelLabel {
            noise: NoiseKind::AmplitudeDamping,
            subsystem: Subsystem::Qubit,
        },
    )
}

/// Both excited qutrit levels decay into `|0>`:
/// `diag(1, sqrt(1 - beta), sqrt(1 - beta))`, `sqrt(beta) |0><1|`, `sqrt(beta) |0><2|`.
pub fn qutrit_amplitude(t_gamma: DecayInput) -> KrausChannel {
    let beta = 1.0 - t_gamma.survival();
    let keep = (1.0 - beta).sqrt();
    let mut e1 = ComplexMatrix::zeros(3, 3);
    e1[(0, 1)] = re(beta.sqrt());
    let mut e2 = ComplexMatrix::zeros(3, 3);
    e2[(0, 2)] = re(beta.sqrt());
    KrausChannel::from_parts(
        vec![diag(&[1.0, keep, keep]), e1, e2],
        ChannelLabel {
            noise: NoiseKind::AmplitudeDamping,
            subsystem: Subsystem::Qutrit,
        },
    )
}

/// Tensors each operator with the identity on the other side:
/// `E (x) I_3` for the qubit, `I_2 (x) E` for the qutrit.
pub fn lift(channel: &KrausChannel, subsystem: Subsystem) -> Result<KrausChannel> {
    if channel.dim != subsystem.dim() {
        return Err(Error::ChannelMismatch {
            channel_dim: channel.dim,
            subsystem: subsystem.name(),
            expected: subsystem.dim(),
        });
    }
    let operators = match subsystem {
        Subsystem::Qubit => {
            let id = ComplexMatrix::identity(3);
            channel.operators.iter().map(|e| e.kron(&id)).collect()
        }
        Subsystem::Qutrit => {
            let id = ComplexMatrix::identity(2);
            channel.operators.iter().map(|e| id.kron(e)).collect()
        }
    };
    Ok(KrausChannel::from_parts(operators, channel.label))
}

/// Noise kind, which sides couple, and the decay product on each side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingScenario {
    pub noise: NoiseKind,
    pub coupling: Coupling,
    /// Ignored for qutrit-only coupling.
    pub t_gamma_a: DecayInput,
    /// Ignored for qubit-only coupling.
    pub t_gamma_b: DecayInput,
    pub qutrit_dephasing: QutritDephasing,
}

impl CouplingScenario {
    pub fn new(
        noise: NoiseKind,
        coupling: Coupling,
        t_gamma_a: DecayInput,
        t_gamma_b: DecayInput,
    ) -> Self {
        Self {
            noise,
            coupling,
            t_gamma_a,
            t_gamma_b,
            qutrit_dephasing: QutritDephasing::default(),
        }
    }

    pub fn with_qutrit_dephasing(mut self, convention: QutritDephasing) -> Self {
        self.qutrit_dephasing = convention;
        self
    }

    /// Local channel on the qubit, `None` when the qubit is uncoupled.
    pub fn qubit_channel(&self) -> Option<KrausChannel> {
        if self.coupling == Coupling::QutritOnly {
            return None;
        }
        Some(match self.noise {
            NoiseKind::Dephasing => qubit_dephasing(self.t_gamma_a),
            NoiseKind::AmplitudeDamping => qubit_amplitude(self.t_gamma_a),
        })
    }

    /// Local channel on the qutrit, `None` when the qutrit is uncoupled.
    pub fn qutrit_channel(&self) -> Option<KrausChannel> {
        if self.coupling == Coupling::QubitOnly {
            return None;
        }
        Some(match self.noise {
            NoiseKind::Dephasing => qutrit_dephasing_with(self.t_gamma_b, self.qutrit_dephasing),
            NoiseKind::AmplitudeDamping => qutrit_amplitude(self.t_gamma_b),
        })
    }
}

/// `rho(t) = sum_{j,k} (E_Bj E_Ak) rho(0) (E_Ak^dagger E_Bj^dagger)` with lifted
/// operators; an uncoupled side contributes the identity.
pub fn evolve(rho0: &DensityMatrix, scenario: &CouplingScenario) -> Result<DensityMatrix> {
    let report = rho0.report();
    if !report.passes() {
        return Err(Error::InvalidState(report));
    }
    let mut rho = rho0.matrix().clone();
    if let Some(ch) = scenario.qubit_channel() {
        rho = lift(&ch, Subsystem::Qubit)?.apply(&rho)?;
    }
    if let Some(ch) = scenario.qutrit_channel() {
        rho = lift(&ch, Subsystem::Qutrit)?.apply(&rho)?;
    }
    debug_assert_eq!(rho.rows(), JOINT_DIM);
    DensityMatrix::new(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::c;
    use crate::states::{initial_state, StateParameter};

    fn t(x: f64) -> DecayInput {
        DecayInput::new(x).unwrap()
    }

    fn all_families(x: f64) -> Vec<KrausChannel> {
        vec![
            qubit_dephasing(t(x)),
            qutrit_dephasing(t(x)),
            qutrit_dephasing_with(t(x), QutritDephasing::Literal),
            qubit_amplitude(t(x)),
            qutrit_amplitude(t(x)),
        ]
    }

    fn qubit_state() -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![re(0.6), c(0.2, -0.3), c(0.2, 0.3), re(0.4)]).unwrap()
    }

    fn qutrit_state() -> ComplexMatrix {
        ComplexMatrix::new(
            3,
            3,
            vec![
                re(0.5),
                c(0.1, 0.05),
                c(-0.05, 0.1),
                c(0.1, -0.05),
                re(0.3),
                c(0.02, 0.07),
                c(-0.05, -0.1),
                c(0.02, -0.07),
                re(0.2),
            ],
        )
        .unwrap()
    }

    #[test]
    fn decay_input_rejects_negative() {
        assert!(DecayInput::new(-0.1).is_err());
        assert!(DecayInput::new(f64::NAN).is_err());
        assert!(DecayInput::new(0.0).is_ok());
    }

    #[test]
    fn strength_examples() {
        assert_eq!(dephasing_strength(t(0.0)), 0.0);
        assert!((dephasing_strength(t(1e6)) - 1.0).abs() < 1e-12);
        assert!((dephasing_strength(t(std::f64::consts::LN_2)) - 0.5).abs() < 1e-15);
        assert_eq!(
            dephasing_strength(t(1e6)),
            dephasing_strength(t(DECAY_CLAMP))
        );
    }

    #[test]
    fn completeness_on_grid() {
        for k in 0..=100 {
            for ch in all_families(k as f64 * 0.1) {
                assert!(ch.completeness_defect() < COMPLETENESS_TOL);
                let lifted = lift(&ch, ch.label().subsystem).unwrap();
                assert_eq!(lifted.dim(), 6);
                assert!(lifted.completeness_defect() < COMPLETENESS_TOL);
            }
        }
        assert!(qutrit_amplitude(t(-(0.63f64).ln())).completeness_defect() < COMPLETENESS_TOL);
    }

    #[test]
    fn identity_at_zero() {
        let q = qubit_state();
        let r = qutrit_state();
        assert!(qubit_dephasing(t(0.0)).apply(&q).unwrap().max_abs_diff(&q) < 1e-15);
        assert!(qubit_amplitude(t(0.0)).apply(&q).unwrap().max_abs_diff(&q) < 1e-15);
        assert!(qutrit_dephasing(t(0.0)).apply(&r).unwrap().max_abs_diff(&r) < 1e-15);
        assert!(qutrit_amplitude(t(0.0)).apply(&r).unwrap().max_abs_diff(&r) < 1e-15);
    }

    #[test]
    fn qubit_dephasing_scales_coherence() {
        for x in [0.3, 1.0, 4.0] {
            let q = qubit_state();
            let out = qubit_dephasing(t(x)).apply(&q).unwrap();
            let f = (-x / 2.0).exp();
            assert!((out[(0, 1)] - q[(0, 1)] * f).norm() < 1e-15);
            assert!((out[(1, 0)] - q[(1, 0)] * f).norm() < 1e-15);
            assert!((out[(0, 0)] - q[(0, 0)]).norm() < 1e-15);
            assert!((out[(1, 1)] - q[(1, 1)]).norm() < 1e-15);
        }
    }

    #[test]
    fn qutrit_dephasing_scales_coherences() {
        for x in [0.3, 1.0, 4.0] {
            let r = qutrit_state();
            let out = qutrit_dephasing(t(x)).apply(&r).unwrap();
            let g = (-x).exp();
            assert!((out[(0, 1)] - r[(0, 1)] * g).norm() < 1e-15);
            assert!((out[(0, 2)] - r[(0, 2)] * g).norm() < 1e-15);
            assert!((out[(1, 2)] - r[(1, 2)] * g * g).norm() < 1e-15);
            for i in 0..3 {
                assert!((out[(i, i)] - r[(i, i)]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn literal_qutrit_dephasing_inverts_limits() {
        let r = qutrit_state();
        let at_zero = qutrit_dephasing_with(t(0.0), QutritDephasing::Literal)
            .apply(&r)
            .unwrap();
        assert!(at_zero[(0, 1)].norm() < 1e-15 && at_zero[(1, 2)].norm() < 1e-15);
        let late = qutrit_dephasing_with(t(1e6), QutritDephasing::Literal)
            .apply(&r)
            .unwrap();
        assert!(late.max_abs_diff(&r) < 1e-15);
    }

    #[test]
    fn amplitude_damping_populations() {
        for x in [0.2f64, 1.5] {
            let beta = 1.0 - (-x).exp();
            let q = qubit_state();
            let out = qubit_amplitude(t(x)).apply(&q).unwrap();
            assert!((out[(1, 1)].re - (1.0 - beta) * 0.4).abs() < 1e-15);
            assert!((out[(0, 0)].re - (0.6 + beta * 0.4)).abs() < 1e-15);
        }
        let excited = ComplexMatrix::diag_real(&[0.0, 1.0]);
        let out = qubit_amplitude(t(1e6)).apply(&excited).unwrap();
        assert!(out.max_abs_diff(&ComplexMatrix::diag_real(&[1.0, 0.0])) < 1e-15);

        let out = qutrit_amplitude(t(1e6))
            .apply(&ComplexMatrix::diag_real(&[0.2, 0.3, 0.5]))
            .unwrap();
        assert!(out.max_abs_diff(&ComplexMatrix::diag_real(&[1.0, 0.0, 0.0])) < 1e-15);
    }

    #[test]
    fn lift_checks_dimension() {
        assert!(matches!(
            lift(&qubit_dephasing(t(1.0)), Subsystem::Qutrit),
            Err(Error::ChannelMismatch { .. })
        ));
        let id = lift(&qubit_dephasing(t(0.0)), Subsystem::Qubit).unwrap();
        let rho = initial_state(StateParameter::new(0.2).unwrap());
        assert!(id.apply(rho.matrix()).unwrap().max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn lifted_qubit_decay_leaves_qutrit() {
        // |12><12| under qubit amplitude damping -> (1-beta)|12><12| + beta|02><02|
        let x = 0.8f64;
        let beta = 1.0 - (-x).exp();
        let mut rho = ComplexMatrix::zeros(6, 6);
        rho[(5, 5)] = re(1.0);
        let out = lift(&qubit_amplitude(t(x)), Subsystem::Qubit)
            .unwrap()
            .apply(&rho)
            .unwrap();
        let mut expected = ComplexMatrix::zeros(6, 6);
        expected[(5, 5)] = re(1.0 - beta);
        expected[(2, 2)] = re(beta);
        assert!(out.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn evolve_identity_and_dephasing_structure() {
        let rho = initial_state(StateParameter::new(0.23).unwrap());
        for noise in [NoiseKind::Dephasing, NoiseKind::AmplitudeDamping] {
            for coupling in [
                Coupling::QubitOnly,
                Coupling::QutritOnly,
                Coupling::Multilocal,
            ] {
                let s = CouplingScenario::new(noise, coupling, t(0.0), t(0.0));
                let out = evolve(&rho, &s).unwrap();
                assert!(out.matrix().max_abs_diff(rho.matrix()) < 1e-12);
            }
        }

        let x = 1.3;
        let s = CouplingScenario::new(NoiseKind::Dephasing, Coupling::QubitOnly, t(x), t(0.0));
        let out = evolve(&rho, &s).unwrap();
        let f = (-x / 2.0).exp();
        for i in 0..6 {
            for j in 0..6 {
                let expected = if i == j {
                    rho.matrix()[(i, j)]
                } else {
                    rho.matrix()[(i, j)] * f
                };
                assert!((out.matrix()[(i, j)] - expected).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn complete_amplitude_decay_reaches_ground() {
        let rho = initial_state(StateParameter::new(0.15).unwrap());
        let s = CouplingScenario::new(
            NoiseKind::AmplitudeDamping,
            Coupling::Multilocal,
            t(1e3),
            t(1e3),
        );
        let out = evolve(&rho, &s).unwrap();
        let mut ground = ComplexMatrix::zeros(6, 6);
        ground[(0, 0)] = re(1.0);
        assert!(out.matrix().max_abs_diff(&ground) < 1e-12);
    }

    #[test]
    fn side_channels_commute() {
        let rho = initial_state(StateParameter::new(0.3).unwrap());
        for noise in [NoiseKind::Dephasing, NoiseKind::AmplitudeDamping] {
            let s = CouplingScenario::new(noise, Coupling::Multilocal, t(0.7), t(1.9));
            let a = lift(&s.qubit_channel().unwrap(), Subsystem::Qubit).unwrap();
            let b = lift(&s.qutrit_channel().unwrap(), Subsystem::Qutrit).unwrap();
            let ab = b.apply(&a.apply(rho.matrix()).unwrap()).unwrap();
            let ba = a.apply(&b.apply(rho.matrix()).unwrap()).unwrap();
            assert!(ab.max_abs_diff(&ba) < 1e-12);
        }
    }

    #[test]
    fn evolve_keeps_states_physical() {
        for p in [0.0, 0.15, 0.23, 1.0 / 3.0, 0.5] {
            let rho = initial_state(StateParameter::new(p).unwrap());
            for noise in [NoiseKind::Dephasing, NoiseKind::AmplitudeDamping] {
                for coupling in [
                    Coupling::QubitOnly,
                    Coupling::QutritOnly,
                    Coupling::Multilocal,
                ] {
                    for k in 0..=20 {
                        let x = k as f64 * 0.5;
                        let s = CouplingScenario::new(noise, coupling, t(x), t(x));
                        let r = evolve(&rho, &s).unwrap().report();
                        assert!(r.trace_defect < 1e-10 && r.min_eigenvalue >= -1e-10);
                    }
                }
            }
        }
    }
}

//! Time sweeps over the coupling scenarios, figure presets, and their CSV and
//! gnuplot output.

mod csv;
mod plot;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::channels::{evolve, Coupling, CouplingScenario, DecayInput, NoiseKind, QutritDephasing};
use crate::correlations::discord;
use crate::error::{Error, Result};
use crate::states::{initial_state, StateParameter};

pub use csv::{emit_csv, format_number, write_csv, CSV_HEADER};
pub use plot::{emit_plot_script, plot_script, Curve, Measure};

pub const DEFAULT_STEPS: usize = 200;
pub const DEFAULT_AXIS_MAX: f64 = 10.0;

/// Which decay product varies along the sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    /// `t Gamma_A`, the qubit side.
    A,
    /// `t Gamma_B`, the qutrit side.
    B,
}

impl Axis {
    pub fn label(self) -> &'static str {
        match self {
            Axis::A => "A",
            Axis::B => "B",
        }
    }
}

/// One sweep segment: a scenario template, the `p` values, and the time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    /// Written to the `scenario` column.
    pub label: String,
    pub noise: NoiseKind,
    pub coupling: Coupling,
    pub p_values: Vec<StateParameter>,
    pub axis: Axis,
    pub axis_max: f64,
    pub steps: usize,
    /// Decay product of the non-axis side; multilocal coupling only.
    pub fixed_t_gamma: f64,
    pub qutrit_dephasing: QutritDephasing,
}

impl SweepConfig {
    /// A segment with default grid, axis matching the coupled side, and the
    /// coupling name as label.
    pub fn new(noise: NoiseKind, coupling: Coupling, p_values: &[f64]) -> Result<Self> {
        let p_values = p_values
            .iter()
            .map(|&p| StateParameter::new(p))
            .collect::<Result<Vec<_>>>()?;
        let axis = match coupling {
            Coupling::QutritOnly => Axis::B,
            _ => Axis::A,
        };
        Ok(Self {
            label: coupling.label().to_string(),
            noise,
            coupling,
            p_values,
            axis,
            axis_max: DEFAULT_AXIS_MAX,
            steps: DEFAULT_STEPS,
            fixed_t_gamma: 0.0,
            qutrit_dephasing: QutritDephasing::default(),
        })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.steps < 2 {
            return bad(format!("steps must be at least 2, got {}", self.steps));
        }
        if !(self.axis_max > 0.0 && self.axis_max.is_finite()) {
            return bad(format!("axis-max must be positive, got {}", self.axis_max));
        }
        if self.p_values.is_empty() {
            return bad("at least one p value is required".into());
        }
        if !(self.fixed_t_gamma >= 0.0 && self.fixed_t_gamma.is_finite()) {
            return bad(format!(
                "fixed decay product must be >= 0, got {}",
                self.fixed_t_gamma
            ));
        }
        match (self.coupling, self.axis) {
            (Coupling::QubitOnly, Axis::B) => {
                return bad("qubit-only coupling is swept along axis A".into())
            }
            (Coupling::QutritOnly, Axis::A) => {
                return bad("qutrit-only coupling is swept along axis B".into())
            }
            _ => {}
        }
        if self.coupling != Coupling::Multilocal && self.fixed_t_gamma != 0.0 {
            return bad(format!(
                "a fixed decay product only applies to multilocal coupling, not {}",
                self.coupling
            ));
        }
        if self.label.is_empty() || self.label.contains([',', '"', '\n']) {
            return bad(format!("scenario label {:?} is not CSV-safe", self.label));
        }
        Ok(())
    }

    /// `steps` equally spaced values over `[0, axis_max]`.
    pub fn axis_values(&self) -> Vec<f64> {
        let n = self.steps - 1;
        (0..self.steps)
            .map(|i| {
                if i == n {
                    self.axis_max
                } else {
                    self.axis_max * i as f64 / n as f64
                }
            })
            .collect()
    }

    fn scenario_at(&self, t: f64) -> Result<CouplingScenario> {
        let (a, b) = match self.axis {
            Axis::A => (t, self.fixed_t_gamma),
            Axis::B => (self.fixed_t_gamma, t),
        };
        Ok(CouplingScenario::new(
            self.noise,
            self.coupling,
            DecayInput::new(a)?,
            DecayInput::new(b)?,
        )
        .with_qutrit_dephasing(self.qutrit_dephasing))
    }
}

/// One output line.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvRow {
    pub scenario: String,
    pub noise: NoiseKind,
    pub p: f64,
    pub t_gamma_a: f64,
    pub t_gamma_b: f64,
    pub negativity: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub discord: f64,
    pub theta_opt: f64,
    pub phi_opt: f64,
}

impl CsvRow {
    pub fn is_well_formed(&self) -> bool {
        [
            self.p,
            self.t_gamma_a,
            self.t_gamma_b,
            self.negativity,
            self.mutual_information,
            self.classical_correlation,
            self.discord,
            self.theta_opt,
            self.phi_opt,
        ]
        .iter()
        .all(|x| x.is_finite())
            && self.discord >= 0.0
    }

    /// The swept decay product for a segment along `axis`.
    pub fn axis_value(&self, axis: Axis) -> f64 {
        match axis {
            Axis::A => self.t_gamma_a,
            Axis::B => self.t_gamma_b,
        }
    }
}

fn evaluate(config: &SweepConfig, p: StateParameter, t: f64) -> Result<CsvRow> {
    let scenario = config.scenario_at(t)?;
    let annotate = |e: Error| Error::SweepPoint {
        p: p.value(),
        t_gamma_a: scenario.t_gamma_a.value(),
        t_gamma_b: scenario.t_gamma_b.value(),
        source: Box::new(e),
    };
    let rho = evolve(&initial_state(p), &scenario).map_err(annotate)?;
    let report = discord(&rho).map_err(annotate)?;
    Ok(CsvRow {
        scenario: config.label.clone(),
        noise: config.noise,
        p: p.value(),
        t_gamma_a: scenario.t_gamma_a.value(),
        t_gamma_b: scenario.t_gamma_b.value(),
        negativity: report.negativity,
        mutual_information: report.mutual_information,
        classical_correlation: report.classical_correlation,
        discord: report.discord,
        theta_opt: report.argmin.theta(),
        phi_opt: report.argmin.phi(),
    })
}

/// Evolves and analyses every `(p, t)` point; rows come back ordered by `p`
/// (as listed) and then by axis value, whatever the evaluation order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<CsvRow>> {
    config.validate()?;
    let ts = config.axis_values();
    let jobs: Vec<(StateParameter, f64)> = config
        .p_values
        .iter()
        .flat_map(|&p| ts.iter().map(move |&t| (p, t)))
        .collect();
    jobs.into_par_iter()
        .map(|(p, t)| evaluate(config, p, t))
        .collect()
}

/// Runs segments in order and concatenates their rows.
pub fn run_segments(segments: &[SweepConfig]) -> Result<Vec<CsvRow>> {
    let mut rows = Vec::new();
    for s in segments {
        rows.extend(run_sweep(s)?);
    }
    Ok(rows)
}

/// Sweep setups behind each published figure panel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigurePreset {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 7] = [
        FigurePreset::Fig1a,
        FigurePreset::Fig1b,
        FigurePreset::Fig2,
        FigurePreset::Fig3a,
        FigurePreset::Fig3b,
        FigurePreset::Fig4a,
        FigurePreset::Fig4b,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigurePreset::Fig1a => "fig1a",
            FigurePreset::Fig1b => "fig1b",
            FigurePreset::Fig2 => "fig2",
            FigurePreset::Fig3a => "fig3a",
            FigurePreset::Fig3b => "fig3b",
            FigurePreset::Fig4a => "fig4a",
            FigurePreset::Fig4b => "fig4b",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            FigurePreset::Fig1a => "Dephasing, qubit coupled only",
            FigurePreset::Fig1b => "Dephasing, multilocal, tG_B = 2",
            FigurePreset::Fig2 => "Dephasing, multilocal, tG_A = 2",
            FigurePreset::Fig3a => "Amplitude damping, one side coupled, p = 0.15",
            FigurePreset::Fig3b => "Amplitude damping, one side coupled, p = 0.23",
            FigurePreset::Fig4a => "Amplitude damping, multilocal, p = 0.15",
            FigurePreset::Fig4b => "Amplitude damping, multilocal, p = 0.23",
        }
    }

    fn segment(
        label: &str,
        noise: NoiseKind,
        coupling: Coupling,
        p: &[f64],
        axis: Axis,
        fixed: f64,
    ) -> SweepConfig {
        let mut s = SweepConfig::new(noise, coupling, p).expect("preset p values are in range");
        s.label = label.to_string();
        s.axis = axis;
        s.fixed_t_gamma = fixed;
        s
    }

    /// The segments making up this panel, in output order.
    pub fn segments(self) -> Vec<SweepConfig> {
        use Coupling::*;
        use NoiseKind::*;
        let both = [0.15, 0.23];
        match self {
            FigurePreset::Fig1a => vec![Self::segment(
                "qubit-only",
                Dephasing,
                QubitOnly,
                &both,
                Axis::A,
                0.0,
            )],
            FigurePreset::Fig1b => vec![Self::segment(
                "multilocal",
                Dephasing,
                Multilocal,
                &both,
                Axis::A,
                2.0,
            )],
            FigurePreset::Fig2 => vec![Self::segment(
                "multilocal",
                Dephasing,
                Multilocal,
                &both,
                Axis::B,
                2.0,
            )],
            FigurePreset::Fig3a | FigurePreset::Fig3b => {
                let p = [self.p()];
                vec![
                    Self::segment("qubit-only", AmplitudeDamping, QubitOnly, &p, Axis::A, 0.0),
                    Self::segment(
                        "qutrit-only",
                        AmplitudeDamping,
                        QutritOnly,
                        &p,
                        Axis::B,
                        0.0,
                    ),
                ]
            }
            // The negativity and discord curves against tG_B use different
            // fixed tG_A (2 and 0.2), so each gets its own segment.
            FigurePreset::Fig4a | FigurePreset::Fig4b => {
                let p = [self.p()];
                vec![
                    Self::segment(
                        "multilocal-vsA-B2",
                        AmplitudeDamping,
                        Multilocal,
                        &p,
                        Axis::A,
                        2.0,
                    ),
                    Self::segment(
                        "multilocal-vsB-A2",
                        AmplitudeDamping,
                        Multilocal,
                        &p,
                        Axis::B,
                        2.0,
                    ),
                    Self::segment(
                        "multilocal-vsB-A0.2",
                        AmplitudeDamping,
                        Multilocal,
                        &p,
                        Axis::B,
                        0.2,
                    ),
                ]
            }
        }
    }

    fn p(self) -> f64 {
        match self {
            FigurePreset::Fig3a | FigurePreset::Fig4a => 0.15,
            FigurePreset::Fig3b | FigurePreset::Fig4b => 0.23,
            _ => f64::NAN,
        }
    }

    /// Curves in legend order.
    pub fn curves(self) -> Vec<Curve> {
        use Measure::*;
        let c = |segment: &str, p: f64, measure, axis, color: &str, dash: u8| Curve {
            segment: segment.to_string(),
            p,
            measure,
            axis,
            title: format!("{} vs tG_{}, p = {}", measure.symbol(), axis.label(), p),
            color: color.to_string(),
            dash_type: dash,
        };
        match self {
            FigurePreset::Fig1a | FigurePreset::Fig1b | FigurePreset::Fig2 => {
                let seg = &self.segments()[0];
                let (label, axis) = (seg.label.as_str(), seg.axis);
                vec![
                    c(label, 0.15, Negativity, axis, "blue", 3),
                    c(label, 0.23, Negativity, axis, "dark-green", 4),
                    c(label, 0.15, Discord, axis, "black", 1),
                    c(label, 0.23, Discord, axis, "red", 2),
                ]
            }
            FigurePreset::Fig3a | FigurePreset::Fig3b => {
                let p = self.p();
                vec![
                    c("qubit-only", p, Negativity, Axis::A, "dark-green", 3),
                    c("qutrit-only", p, Negativity, Axis::B, "blue", 4),
                    c("qubit-only", p, Discord, Axis::A, "black", 1),
                    c("qutrit-only", p, Discord, Axis::B, "red", 2),
                ]
            }
            FigurePreset::Fig4a | FigurePreset::Fig4b => {
                let p = self.p();
                vec![
                    c("multilocal-vsA-B2", p, Negativity, Axis::A, "dark-green", 3),
                    c("multilocal-vsB-A2", p, Negativity, Axis::B, "blue", 4),
                    c("multilocal-vsA-B2", p, Discord, Axis::A, "black", 1),
                    c("multilocal-vsB-A0.2", p, Discord, Axis::B, "red", 2),
                ]
            }
        }
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FigurePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown figure {s:?}")))
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use qtcorr_core::sweep::{emit_csv, emit_plot_script, run_segments};
use qtcorr_core::{oracles, Axis, Coupling, FigurePreset, NoiseKind, QutritDephasing, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NoiseArg {
    Dephasing,
    Amplitude,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CouplingArg {
    Qubit,
    Qutrit,
    Multilocal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AxisArg {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FigureArg {
    Fig1a,
    Fig1b,
    Fig2,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
}

impl From<FigureArg> for FigurePreset {
    fn from(f: FigureArg) -> Self {
        match f {
            FigureArg::Fig1a => FigurePreset::Fig1a,
            FigureArg::Fig1b => FigurePreset::Fig1b,
            FigureArg::Fig2 => FigurePreset::Fig2,
            FigureArg::Fig3a => FigurePreset::Fig3a,
            FigureArg::Fig3b => FigurePreset::Fig3b,
            FigureArg::Fig4a => FigurePreset::Fig4a,
            FigureArg::Fig4b => FigurePreset::Fig4b,
        }
    }
}

/// Negativity and quantum discord of a qubit-qutrit state under dephasing or
/// amplitude-damping noise, swept over time.
#[derive(Debug, Parser)]
#[command(name = "qtcorr", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "dephasing")]
    noise: NoiseArg,

    #[arg(long, value_enum, default_value = "qubit")]
    coupling: CouplingArg,

    /// State parameters in [0, 0.5], comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [0.15, 0.23])]
    p: Vec<f64>,

    /// Swept side; defaults to the coupled side (A for multilocal).
    #[arg(long, value_enum)]
    axis: Option<AxisArg>,

    #[arg(long, default_value_t = qtcorr_core::sweep::DEFAULT_AXIS_MAX)]
    axis_max: f64,

    #[arg(long, default_value_t = qtcorr_core::sweep::DEFAULT_STEPS)]
    steps: usize,

    /// Decay product held fixed on the other side (multilocal only).
    #[arg(long)]
    fixed: Option<f64>,

    /// CSV output path [default: <figure>.csv or sweep.csv].
    #[arg(long)]
    out: Option<PathBuf>,

    /// Reproduce a figure panel; overrides the sweep flags.
    #[arg(long, value_enum)]
    figure: Option<FigureArg>,

    /// gnuplot script path [default with --figure: CSV path with .gp extension].
    #[arg(long)]
    plot: Option<PathBuf>,

    /// Use gamma = 1 - exp(-t Gamma_B) for the qutrit dephasing strength.
    #[arg(long)]
    qutrit_dephasing_literal: bool,

    /// Print the closed-form versus numerical table for qubit-only dephasing and exit.
    #[arg(long)]
    oracle_report: bool,
}

const REPORT_P: [f64; 4] = [0.0, 0.15, 0.23, 1.0 / 3.0];
const REPORT_T: [f64; 6] = [0.0, 0.5, 1.0, 2.0, 5.0, 10.0];

fn custom_segment(cli: &Cli) -> Result<SweepConfig> {
    let noise = match cli.noise {
        NoiseArg::Dephasing => NoiseKind::Dephasing,
        NoiseArg::Amplitude => NoiseKind::AmplitudeDamping,
    };
    let coupling = match cli.coupling {
        CouplingArg::Qubit => Coupling::QubitOnly,
        CouplingArg::Qutrit => Coupling::QutritOnly,
        CouplingArg::Multilocal => Coupling::Multilocal,
    };
    if cli.fixed.is_some() && coupling != Coupling::Multilocal {
        bail!("--fixed only applies to --coupling multilocal");
    }
    let mut s = SweepConfig::new(noise, coupling, &cli.p)?;
    if let Some(axis) = cli.axis {
        s.axis = match axis {
            AxisArg::A => Axis::A,
            AxisArg::B => Axis::B,
        };
    }
    s.axis_max = cli.axis_max;
    s.steps = cli.steps;
    s.fixed_t_gamma = cli.fixed.unwrap_or(0.0);
    s.validate()?;
    Ok(s)
}

fn plan(cli: &Cli) -> Result<(Vec<SweepConfig>, Option<FigurePreset>)> {
    let (mut segments, preset) = match cli.figure {
        Some(f) => {
            let preset = FigurePreset::from(f);
            (preset.segments(), Some(preset))
        }
        None => (vec![custom_segment(cli)?], None),
    };
    if cli.qutrit_dephasing_literal {
        for s in &mut segments {
            s.qutrit_dephasing = QutritDephasing::Literal;
        }
    }
    Ok((segments, preset))
}

fn run(cli: &Cli) -> Result<()> {
    if cli.oracle_report {
        print!("{}", oracles::discrepancy_report(&REPORT_P, &REPORT_T)?);
        return Ok(());
    }
    let (segments, preset) = plan(cli)?;
    let out = cli.out.clone().unwrap_or_else(|| {
        PathBuf::from(format!(
            "{}.csv",
            preset.map_or("sweep", FigurePreset::name)
        ))
    });
    let rows = run_segments(&segments)?;
    emit_csv(&rows, &out).with_context(|| format!("writing {}", out.display()))?;
    eprintln!("wrote {} rows to {}", rows.len(), out.display());

    let plot = cli
        .plot
        .clone()
        .or_else(|| preset.map(|_| out.with_extension("gp")));
    if let Some(plot) = plot {
        emit_plot_script(&rows, preset, Path::new(&out), &plot)?;
        eprintln!("wrote plot script {}", plot.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

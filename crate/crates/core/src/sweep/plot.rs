use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{Axis, CsvRow, FigurePreset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Negativity,
    Discord,
}

impl Measure {
    /// 1-based CSV column.
    fn column(self) -> usize {
        match self {
            Measure::Negativity => 6,
            Measure::Discord => 9,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Measure::Negativity => "N",
            Measure::Discord => "D",
        }
    }
}

/// One plotted line: rows of `segment` at `p`, `measure` against the `axis` column.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub segment: String,
    pub p: f64,
    pub measure: Measure,
    pub axis: Axis,
    pub title: String,
    pub color: String,
    /// gnuplot `dashtype` index.
    pub dash_type: u8,
}

fn axis_column(axis: Axis) -> usize {
    match axis {
        Axis::A => 4,
        Axis::B => 5,
    }
}

/// Negativity and discord for every `(segment, p)` seen in `rows`, in order of appearance.
fn default_curves(rows: &[CsvRow]) -> Vec<Curve> {
    let palette = [
        "blue",
        "dark-green",
        "black",
        "red",
        "orange",
        "purple",
        "brown",
        "cyan",
    ];
    let mut keys: Vec<(String, f64, Axis)> = Vec::new();
    for r in rows {
        if keys.iter().any(|(s, p, _)| *s == r.scenario && *p == r.p) {
            continue;
        }
        let axis = if r.scenario.starts_with("qutrit") {
            Axis::B
        } else {
            Axis::A
        };
        keys.push((r.scenario.clone(), r.p, axis));
    }
    let mut curves = Vec::new();
    for measure in [Measure::Negativity, Measure::Discord] {
        for (segment, p, axis) in &keys {
            let k = curves.len();
            curves.push(Curve {
                segment: segment.clone(),
                p: *p,
                measure,
                axis: *axis,
                title: format!("{} {segment}, p = {p}", measure.symbol()),
                color: palette[k % palette.len()].to_string(),
                dash_type: if measure == Measure::Negativity { 3 } else { 1 },
            });
        }
    }
    curves
}

/// gnuplot script plotting `csv_name`. With a preset the curves follow the
/// figure legend; otherwise every `(segment, p)` in `rows` gets a negativity
/// and a discord curve, plotted against `t_gamma_A` unless the segment label
/// starts with `qutrit`.
pub fn plot_script(rows: &[CsvRow], preset: Option<FigurePreset>, csv_name: &str) -> String {
    let curves = match preset {
        Some(f) => f.curves(),
        None => default_curves(rows),
    };
    let title = preset.map_or("Correlation dynamics", FigurePreset::title);
    let xlabel = match (
        curves.iter().all(|c| c.axis == Axis::A),
        curves.iter().all(|c| c.axis == Axis::B),
    ) {
        (true, _) => "t Gamma_A",
        (_, true) => "t Gamma_B",
        _ => "t Gamma_i",
    };

    let mut s = String::new();
    let _ = writeln!(s, "# {title}");
    let _ = writeln!(s, "set datafile separator \",\"");
    let _ = writeln!(s, "set title \"{title}\"");
    let _ = writeln!(s, "set xlabel \"{xlabel}\"");
    let _ = writeln!(s, "set ylabel \"negativity / discord (bits)\"");
    let _ = writeln!(s, "set key top right");
    let _ = writeln!(s, "set yrange [0:*]");
    let _ = writeln!(s, "datafile = \"{}\"", csv_name.replace('"', "\\\""));
    if curves.is_empty() {
        let _ = writeln!(s, "# no rows to plot");
        return s;
    }
    let _ = writeln!(s, "plot \\");
    for (k, c) in curves.iter().enumerate() {
        let sep = if k + 1 == curves.len() { "" } else { ", \\" };
        let _ = writeln!(
            s,
            "  datafile skip 1 using ((strcol(1) eq \"{}\" && abs($3 - {}) < 1e-9) ? ${} : 1/0):{} \
             with lines lw 2 dt {} lc rgb \"{}\" title \"{}\"{}",
            c.segment,
            c.p,
            axis_column(c.axis),
            c.measure.column(),
            c.dash_type,
            c.color,
            c.title,
            sep
        );
    }
    s
}

pub fn emit_plot_script(
    rows: &[CsvRow],
    preset: Option<FigurePreset>,
    csv_path: &Path,
    path: &Path,
) -> Result<()> {
    let csv_name = csv_path.to_string_lossy();
    fs::write(path, plot_script(rows, preset, &csv_name)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::CsvRow;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "scenario,noise,p,t_gamma_A,t_gamma_B,negativity,mutual_information,classical_correlation,discord,theta_opt,phi_opt";

const SIGNIFICANT: usize = 12;

/// `%.12g`-style formatting: 12 significant digits, trailing zeros dropped,
/// scientific notation outside `[1e-5, 1e12)`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIGNIFICANT - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= SIGNIFICANT as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (SIGNIFICANT as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_csv<W: Write>(rows: &[CsvRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.scenario,
            r.noise.label(),
            format_number(r.p),
            format_number(r.t_gamma_a),
            format_number(r.t_gamma_b),
            format_number(r.negativity),
            format_number(r.mutual_information),
            format_number(r.classical_correlation),
            format_number(r.discord),
            format_number(r.theta_opt),
            format_number(r.phi_opt),
        )?;
    }
    out.flush()
}

pub fn emit_csv(rows: &[CsvRow], path: &Path) -> Result<()> {
    let io_err = |source| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_csv(rows, BufWriter::new(file)).map_err(io_err)
}

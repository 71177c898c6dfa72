//! Closed-form cross-checks for qubit-only dephasing and a brute-force
//! conditional-entropy oracle.
//!
//! The published closed forms write the coherence decay as `exp(-t Gamma_A / 4)`,
//! whereas the qubit dephasing Kraus operators produce `exp(-t Gamma_A / 2)`.
//! Both readings are available through [`Reconciliation`]; the as-printed form
//! is exactly the reconciled form evaluated at half the decay product.
//! The closed-form mutual information is only ever reported next to the
//! numerical value, never used in its place.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::channels::{evolve, Coupling, CouplingScenario, DecayInput, NoiseKind};
use crate::correlations::{
    mutual_information, negativity, ConditionalLandscape, MeasurementAngles,
};
use crate::error::{Error, Result};
use crate::states::{initial_state, DensityMatrix, StateParameter, JOINT_DIM};

/// Resolution of [`dense_grid_discord`]: `pi / 720` in both angles.
pub const DENSE_THETA: usize = 721;
pub const DENSE_PHI: usize = 1440;

const EXPONENT_CLAMP: f64 = 700.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reconciliation {
    /// Coherences decay as `exp(-t_gamma / 4)`.
    AsPrinted,
    /// Coherences decay as `exp(-t_gamma / 2)`, matching the Kraus operators.
    ExponentReconciled,
}

impl Reconciliation {
    /// Exponent `a` in the coherence factor `exp(-a)`.
    fn exponent(self, t_gamma: DecayInput) -> f64 {
        let t = t_gamma.value().min(EXPONENT_CLAMP);
        match self {
            Reconciliation::AsPrinted => t / 4.0,
            Reconciliation::ExponentReconciled => t / 2.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Reconciliation::AsPrinted => "as-printed",
            Reconciliation::ExponentReconciled => "exponent-reconciled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleComparison {
    pub analytic_value: f64,
    pub numeric_value: f64,
    pub abs_diff: f64,
    pub reconciliation: Reconciliation,
}

impl OracleComparison {
    fn new(analytic_value: f64, numeric_value: f64, reconciliation: Reconciliation) -> Self {
        Self {
            analytic_value,
            numeric_value,
            abs_diff: (analytic_value - numeric_value).abs(),
            reconciliation,
        }
    }
}

/// The qubit-dephased initial state: populations untouched, every coherence
/// multiplied by the reconciliation's decay factor.
pub fn dephased_state_closed_form(
    p: StateParameter,
    t_gamma_a: DecayInput,
    reconciliation: Reconciliation,
) -> DensityMatrix {
    let factor = (-reconciliation.exponent(t_gamma_a)).exp();
    let mut m = initial_state(p).into_matrix();
    for i in 0..JOINT_DIM {
        for j in 0..JOINT_DIM {
            if i != j {
                m[(i, j)] *= factor;
            }
        }
    }
    DensityMatrix::new(m).expect("dephasing a valid state keeps it valid")
}

/// `N = e^{-a}/2 [ (1 - e^a)(1 - p) + |(2 + e^a) p - 1| + |p - e^a (1 - 2p)| ]`
/// with `a` the reconciliation's exponent.
pub fn negativity_closed_form(
    p: StateParameter,
    t_gamma_a: DecayInput,
    reconciliation: Reconciliation,
) -> f64 {
    let p = p.value();
    let a = reconciliation.exponent(t_gamma_a);
    let ea = a.exp();
    0.5 * (-a).exp()
        * ((1.0 - ea) * (1.0 - p) + ((2.0 + ea) * p - 1.0).abs() + (p - ea * (1.0 - 2.0 * p)).abs())
}

fn atanh_checked(x: f64, what: &str) -> Result<f64> {
    if x.abs() >= 1.0 {
        return Err(Error::OracleDomain(format!(
            "atanh({what}) with argument {x}"
        )));
    }
    Ok(x.atanh())
}

fn ln_checked(x: f64, what: &str) -> Result<f64> {
    if x <= 0.0 || !x.is_finite() {
        return Err(Error::OracleDomain(format!(
            "log({what}) with argument {x}"
        )));
    }
    Ok(x.ln())
}

/// The published closed-form mutual information, natural logarithms throughout,
/// evaluated literally with `c = exp(-t_gamma / 4)`:
///
/// ```text
/// I = 1/log4 [ 2c (atanh c - p atanh(p c)) + 4 atanh(p / (3p - 2))
///              - p (log4 + 4 log(1 - 2p) - 2 log(p + p^2))
///              + log(4 + 4 (p^2 - 1) / (c^2 - p^2)) ]
/// ```
///
/// Any step outside its domain (e.g. `atanh(1)` at `t = 0`) is an error.
pub fn mutual_information_closed_form(p: StateParameter, t_gamma_a: DecayInput) -> Result<f64> {
    let p = p.value();
    let c = (-Reconciliation::AsPrinted.exponent(t_gamma_a)).exp();
    let c2 = (-t_gamma_a.value().min(EXPONENT_CLAMP) / 2.0).exp();
    let ln4 = 4f64.ln();

    let first =
        2.0 * c * (atanh_checked(c, "e^{-tG/4}")? - p * atanh_checked(p * c, "p e^{-tG/4}")?);
    let second = 4.0 * atanh_checked(p / (3.0 * p - 2.0), "p/(3p-2)")?;
    let third = -p
        * (ln4 + 4.0 * ln_checked(1.0 - 2.0 * p, "1-2p")? - 2.0 * ln_checked(p + p * p, "p+p^2")?);
    let denom = c2 - p * p;
    if denom == 0.0 {
        return Err(Error::OracleDomain(
            "division by e^{-tG/2} - p^2 = 0".into(),
        ));
    }
    let fourth = ln_checked(
        4.0 + 4.0 * (p * p - 1.0) / denom,
        "4 + 4(p^2-1)/(e^{-tG/2}-p^2)",
    )?;
    Ok((first + second + third + fourth) / ln4)
}

fn qubit_dephased(p: StateParameter, t_gamma_a: DecayInput) -> Result<DensityMatrix> {
    let scenario = CouplingScenario::new(
        NoiseKind::Dephasing,
        Coupling::QubitOnly,
        t_gamma_a,
        DecayInput::ZERO,
    );
    evolve(&initial_state(p), &scenario)
}

/// Closed-form negativity against the numerical pipeline for qubit-only dephasing.
pub fn compare_negativity(
    p: StateParameter,
    t_gamma_a: DecayInput,
    reconciliation: Reconciliation,
) -> Result<OracleComparison> {
    let numeric = negativity(&qubit_dephased(p, t_gamma_a)?)?;
    Ok(OracleComparison::new(
        negativity_closed_form(p, t_gamma_a, reconciliation),
        numeric,
        reconciliation,
    ))
}

/// Closed-form (as printed) mutual information against the numerical value.
pub fn compare_mutual_information(
    p: StateParameter,
    t_gamma_a: DecayInput,
) -> Result<OracleComparison> {
    let numeric = mutual_information(&qubit_dephased(p, t_gamma_a)?)?;
    let analytic = mutual_information_closed_form(p, t_gamma_a)?;
    Ok(OracleComparison::new(
        analytic,
        numeric,
        Reconciliation::AsPrinted,
    ))
}

/// Plain-text table of closed form versus numerics over a `(p, t_gamma_A)` grid.
pub fn discrepancy_report(p_values: &[f64], t_values: &[f64]) -> Result<String> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>8} {:>8} | {:>12} {:>12} {:>12} {:>10} | {:>10} {:>12} {:>10}",
        "p",
        "tG_A",
        "N_numeric",
        "N_printed",
        "N_reconc",
        "|dN_rec|",
        "I_numeric",
        "I_printed",
        "|dI|"
    );
    for &p in p_values {
        let sp = StateParameter::new(p)?;
        for &t in t_values {
            let dt = DecayInput::new(t)?;
            let printed = compare_negativity(sp, dt, Reconciliation::AsPrinted)?;
            let reconciled = compare_negativity(sp, dt, Reconciliation::ExponentReconciled)?;
            let numeric_mi = mutual_information(&qubit_dephased(sp, dt)?)?;
            let (mi_printed, mi_diff) = match mutual_information_closed_form(sp, dt) {
                Ok(v) => (
                    format!("{v:12.6}"),
                    format!("{:10.3e}", (v - numeric_mi).abs()),
                ),
                Err(_) => (format!("{:>12}", "undefined"), format!("{:>10}", "-")),
            };
            let _ = writeln!(
                out,
                "{:>8.4} {:>8.3} | {:>12.8} {:>12.8} {:>12.8} {:>10.2e} | {:>10.6} {} {}",
                p,
                t,
                reconciled.numeric_value,
                printed.analytic_value,
                reconciled.analytic_value,
                reconciled.abs_diff,
                numeric_mi,
                mi_printed,
                mi_diff
            );
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
struct GridPoint {
    value: f64,
    i: usize,
    j: usize,
}

fn grid_order(a: &GridPoint, b: &GridPoint) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.i.cmp(&b.i))
        .then(a.j.cmp(&b.j))
}

/// Brute-force minimum of the conditional entropy on `n_theta` points over
/// `[0, pi]` (endpoints included) times `n_phi` points over `[0, 2 pi)`.
/// Ties go to the smallest theta, then phi.
pub fn dense_grid_minimum(
    rho: &DensityMatrix,
    n_theta: usize,
    n_phi: usize,
) -> Result<(f64, MeasurementAngles)> {
    if n_theta < 2 || n_phi < 1 {
        return Err(Error::InvalidConfig(format!(
            "dense grid needs n_theta >= 2 and n_phi >= 1, got {n_theta} x {n_phi}"
        )));
    }
    let landscape = ConditionalLandscape::new(rho);
    let d_theta = PI / (n_theta - 1) as f64;
    let d_phi = TAU / n_phi as f64;
    let best = (0..n_theta)
        .into_par_iter()
        .flat_map_iter(|i| {
            let theta = i as f64 * d_theta;
            let landscape = &landscape;
            (0..n_phi).map(move |j| GridPoint {
                value: landscape.eval(theta, j as f64 * d_phi),
                i,
                j,
            })
        })
        .min_by(grid_order)
        .expect("grid is non-empty");
    let angles = MeasurementAngles::new(best.i as f64 * d_theta, best.j as f64 * d_phi)?;
    Ok((best.value, angles))
}

/// Minimum conditional entropy on the fixed `721 x 1440` grid (step `pi/720`),
/// with no refinement. Slow; meant as an oracle for the optimiser.
pub fn dense_grid_discord(rho: &DensityMatrix) -> Result<(f64, MeasurementAngles)> {
    dense_grid_minimum(rho, DENSE_THETA, DENSE_PHI)
}

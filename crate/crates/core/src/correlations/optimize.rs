//! Global minimisation of the conditional entropy over measurement directions.
//!
//! The outcome swap `(theta, phi) -> (pi - theta, phi + pi)` halves the domain
//! to `theta in [0, pi/2]`. A coarse grid is scanned, then a Nelder-Mead
//! simplex is run from each of the best few grid points. The simplex works on
//! unconstrained reals: any `(theta, phi)` is a valid direction, and the
//! winner is mapped back with [`MeasurementAngles::canonical`].

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use rayon::prelude::*;

use super::{ConditionalLandscape, MeasurementAngles};
use crate::error::Result;
use crate::states::DensityMatrix;

/// Coarse grid resolution: `GRID_THETA` points over `[0, pi/2]` (endpoints
/// included) by `GRID_PHI` points over `[0, 2 pi)`.
pub const GRID_THETA: usize = 64;
pub const GRID_PHI: usize = 128;
const STARTS: usize = 4;

const ANGLE_TOL: f64 = 1e-9;
const VALUE_TOL: f64 = 1e-12;
const MAX_ITERATIONS: usize = 5000;

#[derive(Debug, Clone, Copy)]
struct Point {
    theta: f64,
    phi: f64,
    value: f64,
}

/// Orders by value, ties broken by smaller theta then smaller phi.
fn by_value(a: &Point, b: &Point) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.theta.total_cmp(&b.theta))
        .then(a.phi.total_cmp(&b.phi))
}

fn nelder_mead(f: &ConditionalLandscape, start: Point, step: (f64, f64)) -> Point {
    let eval = |theta: f64, phi: f64| Point {
        theta,
        phi,
        value: f.eval(theta, phi),
    };
    let mut simplex = [
        start,
        eval(start.theta + step.0, start.phi),
        eval(start.theta, start.phi + step.1),
    ];

    for _ in 0..MAX_ITERATIONS {
        simplex.sort_by(by_value);
        let [best, mid, worst] = simplex;

        let size = simplex[1..]
            .iter()
            .map(|p| (p.theta - best.theta).abs().max((p.phi - best.phi).abs()))
            .fold(0.0, f64::max);
        if size < ANGLE_TOL && worst.value - best.value < VALUE_TOL {
            break;
        }

        let ct = 0.5 * (best.theta + mid.theta);
        let cp = 0.5 * (best.phi + mid.phi);
        let along = |k: f64| eval(ct + k * (worst.theta - ct), cp + k * (worst.phi - cp));

        let reflected = along(-1.0);
        if reflected.value < best.value {
            let expanded = along(-2.0);
            simplex[2] = if expanded.value < reflected.value {
                expanded
            } else {
                reflected
            };
            continue;
        }
        if reflected.value < mid.value {
            simplex[2] = reflected;
            continue;
        }
        let contracted = if reflected.value < worst.value {
            along(-0.5)
        } else {
            along(0.5)
        };
        if contracted.value < worst.value.min(reflected.value) {
            simplex[2] = contracted;
            continue;
        }
        // shrink toward the best vertex
        for p in &mut simplex[1..] {
            *p = eval(
                best.theta + 0.5 * (p.theta - best.theta),
                best.phi + 0.5 * (p.phi - best.phi),
            );
        }
    }
    simplex.sort_by(by_value);
    simplex[0]
}

/// Minimum of `sum_k p_k S(rho_k^B)` over qubit measurement directions, and
/// where it is attained (`theta` in `[0, pi/2]`).
///
/// The result is never above the best coarse-grid value. Grid evaluation is
/// parallel; the reduction is order-independent.
pub fn minimize_over_angles(rho: &DensityMatrix) -> Result<(f64, MeasurementAngles)> {
    let landscape = ConditionalLandscape::new(rho);
    let d_theta = (PI / 2.0) / (GRID_THETA - 1) as f64;
    let d_phi = TAU / GRID_PHI as f64;

    let mut grid: Vec<Point> = (0..GRID_THETA * GRID_PHI)
        .into_par_iter()
        .map(|k| {
            let theta = (k / GRID_PHI) as f64 * d_theta;
            let phi = (k % GRID_PHI) as f64 * d_phi;
            Point {
                theta,
                phi,
                value: landscape.eval(theta, phi),
            }
        })
        .collect();
    grid.sort_by(by_value);
    let coarse_best = grid[0];

    let refined = grid[..STARTS]
        .par_iter()
        .map(|&start| nelder_mead(&landscape, start, (d_theta, d_phi)))
        .collect::<Vec<_>>();

    let mut best = coarse_best;
    for candidate in refined {
        let angles = MeasurementAngles::canonical(candidate.theta, candidate.phi);
        let p = Point {
            theta: angles.theta(),
            phi: angles.phi(),
            value: landscape.eval(angles.theta(), angles.phi()),
        };
        if by_value(&p, &best) == Ordering::Less {
            best = p;
        }
    }
    Ok((
        best.value,
        MeasurementAngles::canonical(best.theta, best.phi),
    ))
}

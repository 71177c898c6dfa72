//! Cyclic Jacobi diagonalisation of complex Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with
//! `diag(1, e^{-i arg a_pq})` and then applies the classical real Jacobi
//! rotation, so the combined unitary on the `(p, q)` plane is
//!
//! ```text
//!   [  c              s           ]
//!   [ -s e^{-i a}     c e^{-i a}  ]
//! ```

use num_complex::Complex64;

use super::{ComplexMatrix, HERMITIAN_TOL};
use crate::error::{Error, Result};

/// Sweeps stop once every off-diagonal modulus is below this (scaled by the matrix norm when > 1).
const OFF_DIAGONAL_TOL: f64 = 1e-13;
const MAX_SWEEPS: usize = 100;

#[derive(Debug, Clone)]
pub struct HermitianEigenResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `i` is the eigenvector of `eigenvalues[i]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigenResult {
    /// `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n, n);
        let v = &self.eigenvectors;
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = (0..n)
                    .map(|k| v[(i, k)] * self.eigenvalues[k] * v[(j, k)].conj())
                    .sum();
            }
        }
        out
    }
}

fn off_diagonal_max(a: &[Complex64], n: usize) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max(a[i * n + j].norm());
        }
    }
    worst
}

/// Diagonalises the Hermitian `n x n` row-major matrix in `a`, leaving the
/// eigenvalues (unsorted) on its diagonal. When `vectors` is given it must
/// hold an `n x n` unitary (usually the identity) that is right-multiplied by
/// every rotation. Returns the final off-diagonal residual and whether it met
/// the tolerance.
pub(crate) fn jacobi_eigenvalues_in_place(
    a: &mut [Complex64],
    n: usize,
    mut vectors: Option<&mut [Complex64]>,
) -> (f64, bool) {
    debug_assert_eq!(a.len(), n * n);
    let scale = a.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);
    let tol = OFF_DIAGONAL_TOL * scale;

    for _ in 0..MAX_SWEEPS {
        let residual = off_diagonal_max(a, n);
        if residual < tol {
            return (residual, true);
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r == 0.0 {
                    continue;
                }
                let phase = apq / r; // e^{i alpha}
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;

                let u_pp = Complex64::new(cs, 0.0);
                let u_pq = Complex64::new(sn, 0.0);
                let u_qp = -phase.conj() * sn;
                let u_qq = phase.conj() * cs;

                // A <- A U (columns p, q)
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * u_pp + akq * u_qp;
                    a[k * n + q] = akp * u_pq + akq * u_qq;
                }
                // A <- U^dagger A (rows p, q)
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[p * n + q] = Complex64::default();
                a[q * n + p] = Complex64::default();
                a[p * n + p] = Complex64::new(app - t * r, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * r, 0.0);

                if let Some(v) = vectors.as_deref_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * u_pp + vkq * u_qp;
                        v[k * n + q] = vkp * u_pq + vkq * u_qq;
                    }
                }
            }
        }
    }
    let residual = off_diagonal_max(a, n);
    (residual, residual < tol)
}

fn prepare(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::WrongDimension {
            op: "hermitian_eigen",
            expected: m.rows().max(m.cols()),
            found: m.shape(),
        });
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian {
            max_asymmetry: defect,
        });
    }
    Ok(m.hermitian_part())
}

/// Full eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// The input is symmetrised as `(M + M^dagger) / 2` before iterating. Equal
/// eigenvalues come back in no particular order.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigenResult> {
    let sym = prepare(m)?;
    hermitian_eigen_unchecked(&sym)
}

pub(crate) fn hermitian_eigen_unchecked(sym: &ComplexMatrix) -> Result<HermitianEigenResult> {
    let n = sym.rows();
    let mut a = sym.as_slice().to_vec();
    let mut v = ComplexMatrix::identity(n).as_slice().to_vec();
    let (residual, converged) = jacobi_eigenvalues_in_place(&mut a, n, Some(&mut v));
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));

    let eigenvalues = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vecs = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vecs[(row, col)] = v[row * n + src];
        }
    }
    Ok(HermitianEigenResult {
        eigenvalues,
        eigenvectors: vecs,
    })
}

/// Ascending eigenvalues only.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let sym = prepare(m)?;
    eigenvalues_unchecked(&sym)
}

pub(crate) fn eigenvalues_unchecked(sym: &ComplexMatrix) -> Result<Vec<f64>> {
    let n = sym.rows();
    let mut a = sym.as_slice().to_vec();
    let (residual, converged) = jacobi_eigenvalues_in_place(&mut a, n, None);
    if !converged {
        return Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual,
        });
    }
    let mut vals: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmatrix::{c, re};
    use proptest::prelude::*;

    fn assert_spectrum(got: &[f64], expected: &[f64], tol: f64) {
        let mut e = expected.to_vec();
        e.sort_by(f64::total_cmp);
        assert_eq!(got.len(), e.len());
        for (g, x) in got.iter().zip(&e) {
            assert!((g - x).abs() < tol, "{got:?} vs {e:?}");
        }
    }

    #[test]
    fn diagonal_input() {
        let r = hermitian_eigen(&ComplexMatrix::diag_real(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(r.eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert_spectrum(&hermitian_eigenvalues(&x).unwrap(), &[-1.0, 1.0], 1e-14);
    }

    #[test]
    fn rank_one_block() {
        // [[p/2, p/2], [p/2, p/2]] has characteristic polynomial l (l - p)
        for p in [0.0, 0.15, 0.23, 0.5] {
            let h = p / 2.0;
            let m = ComplexMatrix::from_real(2, 2, &[h, h, h, h]).unwrap();
            assert_spectrum(&hermitian_eigenvalues(&m).unwrap(), &[0.0, p], 1e-14);
        }
    }

    #[test]
    fn complex_pivot() {
        // Pauli-Y: eigenvalues -1, 1 with eigenvectors (1, +-i)/sqrt2
        let y =
            ComplexMatrix::new(2, 2, vec![re(0.0), c(0.0, -1.0), c(0.0, 1.0), re(0.0)]).unwrap();
        let r = hermitian_eigen(&y).unwrap();
        assert_spectrum(&r.eigenvalues, &[-1.0, 1.0], 1e-14);
        assert!(r.reconstruct().max_abs_diff(&y) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.5, 0.0]).unwrap();
        match hermitian_eigen(&m) {
            Err(Error::NotHermitian { max_asymmetry }) => {
                assert!((max_asymmetry - 0.5).abs() < 1e-15)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(hermitian_eigen(&ComplexMatrix::zeros(2, 3)).is_err());
    }

    fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n * n).prop_map(move |d| {
            let m =
                ComplexMatrix::new(n, n, d.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap();
            m.hermitian_part()
        })
    }

    proptest! {
        #[test]
        fn decomposition_invariants(m in (1usize..=6).prop_flat_map(hermitian)) {
            let n = m.rows();
            let r = hermitian_eigen(&m).unwrap();
            prop_assert!(r.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(r.reconstruct().max_abs_diff(&m) < 1e-10);

            let v = &r.eigenvectors;
            let vv = v.dagger().matmul(v).unwrap();
            prop_assert!(vv.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-10);

            let mv = m.matmul(v).unwrap();
            for k in 0..n {
                for i in 0..n {
                    prop_assert!((mv[(i, k)] - v[(i, k)] * r.eigenvalues[k]).norm() < 1e-10);
                }
            }
            let vals = hermitian_eigenvalues(&m).unwrap();
            for (a, b) in vals.iter().zip(&r.eigenvalues) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }
    }
}

//! State reconstruction from count records.

use crate::error::{Error, Result};
use crate::optimize::NelderMead;
use crate::qcore::{c64, herm_eig, kron_all, ComplexMatrix, C64};
use crate::states::{pauli_x, pauli_y, pauli_z, DensityMatrix};

use super::record::TomographyRecord;

/// Tensor products of `{I, X, Y, Z}` over `qubits` factors, identity first.
fn pauli_basis(qubits: usize) -> Vec<ComplexMatrix> {
    let singles = [ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()];
    (0..4usize.pow(qubits as u32))
        .map(|mut k| {
            let mut factors = vec![0; qubits];
            for slot in factors.iter_mut().rev() {
                *slot = k % 4;
                k /= 4;
            }
            let refs: Vec<&ComplexMatrix> = factors.iter().map(|&i| &singles[i]).collect();
            kron_all(&refs)
        })
        .collect()
}

/// Least-squares estimate of `rho = (I + sum_k c_k B_k) / d` from the
/// observed frequencies. Hermitian with unit trace by construction; may
/// have negative eigenvalues under shot noise.
pub fn linear_inversion(record: &TomographyRecord) -> Result<ComplexMatrix> {
    let qubits = record.qubits();
    let d = record.dim();
    let basis = pauli_basis(qubits);
    let unknowns = basis.len() - 1;
    let inv_d = 1.0 / d as f64;

    let kets: Vec<ComplexMatrix> = record.settings.iter().map(|s| s.ket()).collect();
    let design: Vec<Vec<f64>> = kets
        .iter()
        .map(|k| {
            let bra = k.adjoint();
            basis[1..].iter().map(|b| (&(&bra * b) * k).get(0, 0).re * inv_d).collect()
        })
        .collect();
    let rhs: Vec<f64> = record.frequencies().iter().map(|f| f - inv_d).collect();

    // Normal equations, solved through the eigendecomposition so that rank
    // deficiency is detected rather than amplified.
    let normal = ComplexMatrix::from_fn(unknowns, unknowns, |i, j| {
        c64(design.iter().map(|row| row[i] * row[j]).sum(), 0.0)
    });
    let projected: Vec<f64> = (0..unknowns).map(|i| design.iter().zip(&rhs).map(|(row, b)| row[i] * b).sum()).collect();
    let eig = herm_eig(&normal)?;
    let largest = eig.eigenvalues.last().copied().unwrap_or(0.0);
    let rank = eig.eigenvalues.iter().filter(|&&l| l > 1e-10 * largest.max(f64::MIN_POSITIVE)).count();
    if rank < unknowns {
        return Err(Error::NotInformationallyComplete { rank, required: unknowns });
    }
    let v = &eig.eigenvectors;
    let coeffs: Vec<f64> = (0..unknowns)
        .map(|i| {
            (0..unknowns)
                .map(|k| {
                    let vk_dot_b: f64 = (0..unknowns).map(|j| v.get(j, k).re * projected[j]).sum();
                    v.get(i, k).re * vk_dot_b / eig.eigenvalues[k]
                })
                .sum()
        })
        .collect();

    let mut rho = ComplexMatrix::identity(d);
    for (c, b) in coeffs.iter().zip(&basis[1..]) {
        rho = &rho + &b.scale_real(*c);
    }
    Ok(rho.scale_real(inv_d).hermitize())
}

#[derive(Clone, Debug)]
pub struct MleOptions {
    pub max_evaluations: usize,
    /// Stop when a full restart of the simplex improves the
    /// log-likelihood by less than this.
    pub tolerance: f64,
}

impl Default for MleOptions {
    fn default() -> Self {
        Self { max_evaluations: 100_000, tolerance: 1e-9 }
    }
}

#[derive(Clone, Debug)]
pub struct MleFit {
    pub state: DensityMatrix,
    /// `sum_s [n_s ln(N p_s) - N p_s]` at the optimum.
    pub log_likelihood: f64,
    pub evaluations: usize,
}

/// Lower-triangular `T` with real diagonal, parameterized by `d^2` reals:
/// the diagonal first, then (re, im) of each strictly-lower entry row by row.
fn cholesky_factor(params: &[f64], d: usize) -> ComplexMatrix {
    let mut t = ComplexMatrix::zeros(d, d);
    for i in 0..d {
        t[(i, i)] = c64(params[i], 0.0);
    }
    let mut k = d;
    for i in 1..d {
        for j in 0..i {
            t[(i, j)] = c64(params[k], params[k + 1]);
            k += 2;
        }
    }
    t
}

fn factor_params(t: &ComplexMatrix) -> Vec<f64> {
    let d = t.rows();
    let mut out: Vec<f64> = (0..d).map(|i| t.get(i, i).re).collect();
    for i in 1..d {
        for j in 0..i {
            out.push(t.get(i, j).re);
            out.push(t.get(i, j).im);
        }
    }
    out
}

/// Lower-triangular `L` with `m = L L†`; `m` must be positive definite.
fn cholesky(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = m.rows();
    let mut l = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let diag = m.get(j, j).re - (0..j).map(|k| l.get(j, k).norm_sqr()).sum::<f64>();
        if diag <= 0.0 {
            return Err(Error::Numeric("Cholesky factorization of a singular matrix".into()));
        }
        let ljj = diag.sqrt();
        l[(j, j)] = c64(ljj, 0.0);
        for i in j + 1..n {
            let s: C64 = (0..j).map(|k| l.get(i, k) * l.get(j, k).conj()).sum();
            l[(i, j)] = (m.get(i, j) - s) / ljj;
        }
    }
    Ok(l)
}

/// Lower-triangular `T` with `rho = T† T`.
fn reverse_cholesky(rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = rho.rows();
    let flipped = ComplexMatrix::from_fn(n, n, |i, j| rho.get(n - 1 - i, n - 1 - j));
    let l = cholesky(&flipped)?;
    Ok(ComplexMatrix::from_fn(n, n, |i, j| l.get(n - 1 - j, n - 1 - i).conj()))
}

fn state_from_params(params: &[f64], d: usize) -> Result<DensityMatrix> {
    let t = cholesky_factor(params, d);
    DensityMatrix::from_unnormalized(&(&t.adjoint() * &t))
}

/// Maximum-likelihood state under Poisson statistics, parameterized as
/// `T† T / Tr(T† T)` so every iterate is physical.
pub fn mle_reconstruct(record: &TomographyRecord, initial: Option<&ComplexMatrix>) -> Result<DensityMatrix> {
    mle_reconstruct_with(record, initial, &MleOptions::default()).map(|fit| fit.state)
}

pub fn mle_reconstruct_with(
    record: &TomographyRecord,
    initial: Option<&ComplexMatrix>,
    options: &MleOptions,
) -> Result<MleFit> {
    let d = record.dim();
    let start = match initial {
        Some(m) => m.clone(),
        None => linear_inversion(record)?,
    };
    if start.rows() != d || !start.is_square() {
        return Err(Error::Dimension(format!("initial guess is {}x{}, record needs {d}x{d}", start.rows(), start.cols())));
    }
    let mut guess = DensityMatrix::project_physical(&start)?.into_matrix();
    if herm_eig(&guess)?.eigenvalues[0] < 1e-8 {
        let eps = 1e-6;
        guess = &guess.scale_real(1.0 - eps) + &ComplexMatrix::identity(d).scale_real(eps / d as f64);
    }
    let x0 = factor_params(&reverse_cholesky(&guess)?);

    let kets: Vec<Vec<C64>> = record.settings.iter().map(|s| s.ket().as_slice().to_vec()).collect();
    let total = record.total_per_setting;
    let counts = record.counts.clone();
    let log_likelihood = move |x: &[f64]| -> f64 {
        let t = cholesky_factor(x, d);
        let norm: f64 = x.iter().map(|v| v * v).sum();
        let mut ll = 0.0;
        for (ket, &n) in kets.iter().zip(&counts) {
            let mut amp_sq = 0.0;
            for i in 0..d {
                let mut a = C64::default();
                for (j, k) in ket.iter().enumerate().take(i + 1) {
                    a += t.get(i, j) * k;
                }
                amp_sq += a.norm_sqr();
            }
            let mean = total * amp_sq / norm;
            if n > 0.0 {
                ll += n * mean.max(f64::MIN_POSITIVE).ln();
            }
            ll -= mean;
        }
        ll
    };
    // The likelihood is invariant under rescaling T; the penalty pins the scale.
    let objective = |x: &[f64]| {
        let norm: f64 = x.iter().map(|v| v * v).sum();
        -log_likelihood(x) + (norm - 1.0).powi(2)
    };

    let nm = NelderMead {
        initial_step: 0.05,
        f_tol: options.tolerance,
        x_tol: 1e-7,
        max_evaluations: options.max_evaluations,
        max_restarts: 50,
    };
    let m = nm.minimize(objective, &x0);
    let state = state_from_params(&m.x, d)?;
    let ll = log_likelihood(&m.x);
    if !m.converged {
        return Err(Error::NonConvergence { evaluations: m.evaluations, log_likelihood: ll, best: Box::new(state) });
    }
    Ok(MleFit { state, log_likelihood: ll, evaluations: m.evaluations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::fidelity;
    use crate::states::random_density_matrix;
    use crate::tomography::record::{
        expected_counts, single_qubit_settings, two_qubit_minimal_settings, two_qubit_settings, MeasurementSetting,
        Polarization,
    };
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_inversion_recovers_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for settings in [single_qubit_settings(), two_qubit_settings(), two_qubit_minimal_settings()] {
            let d = 1 << settings[0].qubits();
            let rho = random_density_matrix(d, &mut rng);
            let rec = expected_counts(&rho, &settings, 1e4).unwrap();
            let est = linear_inversion(&rec).unwrap();
            assert!(est.approx_eq(rho.matrix(), 1e-10));
        }
    }

    #[test]
    fn maximally_mixed_inverts_exactly() {
        let rho = DensityMatrix::maximally_mixed(4);
        let rec = expected_counts(&rho, &two_qubit_settings(), 1e4).unwrap();
        assert!(linear_inversion(&rec).unwrap().approx_eq(rho.matrix(), 1e-12));
    }

    #[test]
    fn noisy_inversion_keeps_unit_trace() {
        let rho = DensityMatrix::maximally_mixed(4);
        let rec = crate::tomography::record::simulate_counts(&rho, &two_qubit_settings(), 100.0, 5).unwrap();
        let est = linear_inversion(&rec).unwrap();
        assert!((est.trace().re - 1.0).abs() < 1e-9);
        assert!(est.is_hermitian(0.0));
    }

    #[test]
    fn incomplete_settings_rejected() {
        let settings: Vec<MeasurementSetting> =
            [Polarization::H, Polarization::V, Polarization::D].iter().map(|&p| MeasurementSetting(vec![p])).collect();
        let rec = expected_counts(&DensityMatrix::maximally_mixed(2), &settings, 100.0).unwrap();
        assert!(matches!(
            linear_inversion(&rec),
            Err(Error::NotInformationallyComplete { rank: 2, required: 3 })
        ));
    }

    #[test]
    fn cholesky_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let rho = random_density_matrix(4, &mut rng);
        let t = reverse_cholesky(rho.matrix()).unwrap();
        for i in 0..4 {
            for j in i + 1..4 {
                assert_eq!(t.get(i, j), C64::default());
            }
        }
        assert!((&t.adjoint() * &t).approx_eq(rho.matrix(), 1e-12));
        let back = state_from_params(&factor_params(&t), 4).unwrap();
        assert!(back.matrix().approx_eq(rho.matrix(), 1e-12));
    }

    #[test]
    fn noiseless_mle_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (d, settings) in [(2, single_qubit_settings()), (4, two_qubit_settings())] {
            let rho = random_density_matrix(d, &mut rng);
            let rec = expected_counts(&rho, &settings, 1e4).unwrap();
            let est = mle_reconstruct(&rec, None).unwrap();
            assert!(fidelity(&est, &rho).unwrap() > 1.0 - 1e-6);
        }
    }

    #[test]
    fn iteration_cap_reports_best_iterate() {
        let rho = DensityMatrix::maximally_mixed(4);
        let rec = crate::tomography::record::simulate_counts(&rho, &two_qubit_settings(), 1e3, 1).unwrap();
        let opts = MleOptions { max_evaluations: 40, ..Default::default() };
        match mle_reconstruct_with(&rec, None, &opts) {
            Err(Error::NonConvergence { best, evaluations, .. }) => {
                assert!(evaluations >= 40);
                assert_eq!(best.dim(), 4);
            }
            other => panic!("expected non-convergence, got {other:?}"),
        }
    }

    #[test]
    fn initial_guess_dimension_checked() {
        let rec = expected_counts(&DensityMatrix::maximally_mixed(2), &single_qubit_settings(), 10.0).unwrap();
        assert!(matches!(
            mle_reconstruct(&rec, Some(&ComplexMatrix::identity(4))),
            Err(Error::Dimension(_))
        ));
    }
}

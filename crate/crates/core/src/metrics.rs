//! Fidelity, numerically and in closed form for the two noise models.
//!
//! All fidelities use the root convention `F = Tr sqrt(sqrt(rho) sigma sqrt(rho))`,
//! so `F = |<psi|phi>|` for pure states.

use crate::error::{Error, Result};
use crate::qcore::{herm_eig, rounding_floor, sqrt_psd, ComplexMatrix, PSD_FLOOR};
use crate::states::DensityMatrix;

/// Uhlmann fidelity on raw matrices.
///
/// `rho` must be positive semidefinite; `sigma` only needs
/// `sqrt(rho) sigma sqrt(rho)` to be, which lets a slightly unphysical
/// measured matrix be compared against a valid reference state.
pub fn uhlmann_fidelity(rho: &ComplexMatrix, sigma: &ComplexMatrix) -> Result<f64> {
    if !rho.is_square() || rho.rows() != sigma.rows() || rho.cols() != sigma.cols() {
        return Err(Error::Dimension(format!(
            "fidelity between {}x{} and {}x{} operators",
            rho.rows(),
            rho.cols(),
            sigma.rows(),
            sigma.cols()
        )));
    }
    let root = sqrt_psd(rho)?;
    let inner = (&(&root * sigma) * &root).hermitize();
    let eig = herm_eig(&inner)?;
    if eig.eigenvalues[0] < -PSD_FLOOR {
        return Err(Error::NotPsd { min_eigenvalue: eig.eigenvalues[0] });
    }
    let floor = rounding_floor(&eig);
    Ok(eig.eigenvalues.iter().filter(|&&l| l > floor).map(|l| l.sqrt()).sum())
}

pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    uhlmann_fidelity(rho.matrix(), sigma.matrix())
}

/// Qubit-only closed form `sqrt(Tr(rho sigma) + 2 sqrt(det rho det sigma))`.
/// Independent of the eigensolver; used as a cross-check.
pub fn qubit_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 2 || sigma.dim() != 2 {
        return Err(Error::Dimension("qubit fidelity needs two 2x2 states".into()));
    }
    let det = |m: &ComplexMatrix| (m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0)).re.max(0.0);
    let overlap = (rho.matrix() * sigma.matrix()).trace().re;
    Ok((overlap + 2.0 * (det(rho.matrix()) * det(sigma.matrix())).sqrt()).max(0.0).sqrt())
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} = {x} outside [0, 1]")))
    }
}

/// Fidelity of the prepared state with the target when the singlet is
/// depolarized with strength `p`: `(sqrt((1+r)(1+pr)) + sqrt((1-r)(1-pr)))/2`.
pub fn fidelity_depolarizing_closed(r: f64, p: f64) -> Result<f64> {
    check_unit("r", r)?;
    check_unit("p", p)?;
    Ok(0.5 * (((1.0 + r) * (1.0 + p * r)).sqrt() + ((1.0 - r) * (1.0 - p * r)).sqrt()))
}

/// The three invariants entering the dephasing fidelity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DephasingFidelityTerms {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl DephasingFidelityTerms {
    pub fn new(r: f64, theta: f64, p: f64) -> Self {
        let c2 = (2.0 * theta).cos();
        let alpha = ((1.0 + p) * (1.0 + r).powi(2) + (1.0 - p) * (1.0 + r) * (1.0 + r * c2)) / 8.0;
        let beta = ((1.0 + p) * (1.0 - r).powi(2) + (1.0 - p) * (1.0 - r) * (1.0 - r * c2)) / 8.0;
        let gamma = r * (1.0 - p) * (1.0 - r * r).max(0.0).sqrt() * (2.0 * theta).sin() / 8.0;
        Self { alpha, beta, gamma }
    }

    /// `sqrt(m + d) + sqrt(m - d)` with `m = (alpha+beta)/2` and
    /// `d = sqrt(((alpha-beta)/2)^2 + gamma^2)`.
    pub fn fidelity(&self) -> Result<f64> {
        let mean = 0.5 * (self.alpha + self.beta);
        let spread = (0.25 * (self.alpha - self.beta).powi(2) + self.gamma * self.gamma).sqrt();
        let lower = mean - spread;
        if lower < -1e-12 {
            return Err(Error::Numeric(format!("negative radicand {lower:.3e} in dephasing fidelity")));
        }
        Ok((mean + spread).sqrt() + lower.max(0.0).sqrt())
    }
}

/// Fidelity for the dephased singlet. Does not depend on `phi`.
pub fn fidelity_dephasing_closed(r: f64, theta: f64, p: f64) -> Result<f64> {
    check_unit("r", r)?;
    check_unit("p", p)?;
    if !(0.0..=std::f64::consts::PI).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} outside [0, pi]")));
    }
    DephasingFidelityTerms::new(r, theta, p).fidelity()
}

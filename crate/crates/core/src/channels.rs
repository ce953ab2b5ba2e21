//! Noisy versions of the shared singlet.
//!
//! Noise is represented by the state it leaves behind when applied to
//! `|Psi-><Psi-|`, as an explicit mixture, rather than by Kraus operators.

use crate::error::{Error, Result};
use crate::qcore::{c64, ComplexMatrix};
use crate::states::{bell_psi_minus, DensityMatrix};

/// A weighted list of two-qubit states.
#[derive(Clone, Debug)]
pub struct MixtureChannel {
    components: Vec<(f64, DensityMatrix)>,
}

impl MixtureChannel {
    pub fn new(components: Vec<(f64, DensityMatrix)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidState("mixture channel needs at least one component".into()));
        }
        for (w, rho) in &components {
            if !(0.0..=1.0).contains(w) {
                return Err(Error::Domain(format!("weight {w} outside [0, 1]")));
            }
            if rho.dim() != 4 {
                return Err(Error::Dimension(format!("channel components must be 4x4, got {}", rho.dim())));
            }
        }
        let total: f64 = components.iter().map(|(w, _)| w).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("weights sum to {total}")));
        }
        Ok(Self { components })
    }

    pub fn components(&self) -> &[(f64, DensityMatrix)] {
        &self.components
    }

    /// The shared state after noise.
    pub fn state(&self) -> Result<DensityMatrix> {
        let parts: Vec<(f64, &DensityMatrix)> = self.components.iter().map(|(w, r)| (*w, r)).collect();
        DensityMatrix::mixture(&parts)
    }
}

fn check_p(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::Domain(format!("channel parameter p = {p} outside [0, 1]")))
    }
}

/// Werner mixture of the singlet with white noise.
pub fn depolarizing(p: f64) -> Result<MixtureChannel> {
    check_p(p)?;
    MixtureChannel::new(vec![(p, bell_psi_minus()), (1.0 - p, DensityMatrix::maximally_mixed(4))])
}

/// Mixture of the singlet with the anticorrelated classical state.
pub fn dephasing(p: f64) -> Result<MixtureChannel> {
    check_p(p)?;
    let classical = DensityMatrix::new(ComplexMatrix::diag_real(&[0.0, 0.5, 0.5, 0.0]))?;
    MixtureChannel::new(vec![(p, bell_psi_minus()), (1.0 - p, classical)])
}

/// `p |Psi-><Psi-| + (1-p) I/4`.
pub fn depolarized_bell(p: f64) -> Result<DensityMatrix> {
    depolarizing(p)?.state()
}

/// `p |Psi-><Psi-| + (1-p)/2 (|01><01| + |10><10|)`.
pub fn dephased_bell(p: f64) -> Result<DensityMatrix> {
    dephasing(p)?.state()
}

/// Two-photon polarization state reconstructed from the source at `p = 0.9`,
/// exactly as published (H = |0>, V = |1>). Not Hermitian as printed.
pub fn spdc_fixture_raw() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[
        [c64(0.001875, 0.0), c64(-0.018531, 0.013719), c64(0.002594, 0.017125), c64(0.01, -0.015437)],
        [c64(-0.018531, 0.013719), c64(0.50125, 0.0), c64(-0.435688, 0.002406), c64(-0.007469, 0.007281)],
        [c64(0.002594, 0.017125), c64(-0.435688, 0.002406), c64(0.494375, 0.0), c64(-0.007281, 0.005813)],
        [c64(0.01, 0.015438), c64(-0.007469, 0.007281), c64(-0.007281, 0.005813), c64(0.0025, 0.0)],
    ])
}

/// `(M + M†)/2` of the published matrix. Unit trace, but it has one
/// eigenvalue near -0.017, so it is not a valid [`DensityMatrix`].
pub fn spdc_fixture_hermitized() -> ComplexMatrix {
    spdc_fixture_raw().hermitize()
}

/// The published matrix hermitized and projected onto the nearest physical
/// state (negative eigenvalues clamped, trace renormalized).
pub fn spdc_fixture() -> DensityMatrix {
    DensityMatrix::project_physical(&spdc_fixture_hermitized()).expect("fixture has positive trace")
}

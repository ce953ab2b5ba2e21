//! The preparation procedure itself.
//!
//! Alice holds `A`, Bob holds `B`, and `a` is Alice's ancilla, initialised
//! to `|0>`. The joint register is ordered `A ⊗ B ⊗ a` with `A` the most
//! significant factor. Alice
//!
//! 1. rotates `A` by `U(theta, phi)†`,
//! 2. applies a CNOT from `A` onto `a`,
//! 3. rotates `A` by `U(r)`,
//! 4. measures `A` in the computational basis,
//! 5. announces the result.
//!
//! On result 1 Bob holds the target state (exactly, for a noiseless
//! singlet). Steps 2 and 3 together implement the POVM from
//! [`crate::states::povm_elements`].

use crate::error::{Error, Result};
use crate::qcore::{c64, kron_all, partial_trace, ComplexMatrix, C64};
use crate::states::{pauli_x, pauli_y, pauli_z, BlochVector, DensityMatrix};

const MIN_POSTSELECTION: f64 = 1e-15;

/// `[[cos θ/2, -e^{-iφ} sin θ/2], [e^{iφ} sin θ/2, cos θ/2]]`; maps `|0>` to
/// `|psi(theta, phi)>`.
pub fn u_theta_phi(theta: f64, phi: f64) -> ComplexMatrix {
    let (s, c) = (0.5 * theta).sin_cos();
    let e = C64::from_polar(1.0, phi);
    ComplexMatrix::from_rows(&[[c64(c, 0.0), -e.conj() * s], [e * s, c64(c, 0.0)]])
}

/// Real rotation that sets the POVM weights `(1 ± r)/2`.
pub fn u_r(r: f64) -> Result<ComplexMatrix> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("mixedness parameter r = {r} outside [0, 1]")));
    }
    let a = ((1.0 + r) / 2.0).sqrt();
    let b = ((1.0 - r) / 2.0).sqrt();
    Ok(ComplexMatrix::from_real_rows(&[[a, -b], [b, a]]))
}

/// CNOT with the first factor as control.
pub fn cnot_a_to_ancilla() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
}

/// Bob's state conditioned on one announced result, with its probability.
#[derive(Clone, Debug)]
pub struct RspOutcome {
    pub conditional_state: DensityMatrix,
    pub success_probability: f64,
}

/// The two single-qubit unitaries Alice applies to `A`.
///
/// `rotation` is step 1 (ideally `U(theta, phi)†`) and `povm_rotation` is
/// step 3 (ideally `U(r)`). Waveplate approximations can be dropped in here.
#[derive(Clone, Debug)]
pub struct AliceSettings {
    pub rotation: ComplexMatrix,
    pub povm_rotation: ComplexMatrix,
}

impl AliceSettings {
    pub fn for_target(target: &BlochVector) -> Result<Self> {
        let t = target.canonical();
        Ok(Self { rotation: u_theta_phi(t.theta, t.phi).adjoint(), povm_rotation: u_r(t.r)? })
    }
}

/// Both branches of Alice's measurement. A branch is `None` when its
/// probability is below `1e-15`.
#[derive(Clone, Debug)]
pub struct RspBranches {
    pub result0: Option<RspOutcome>,
    pub result1: Option<RspOutcome>,
}

impl RspBranches {
    pub fn probability(&self, result: usize) -> f64 {
        let branch = if result == 0 { &self.result0 } else { &self.result1 };
        branch.as_ref().map_or(0.0, |o| o.success_probability)
    }
}

/// Runs the five steps on `channel_state` (ordered `A ⊗ B`) and returns both
/// measurement branches.
pub fn run_with_settings(channel_state: &DensityMatrix, settings: &AliceSettings) -> Result<RspBranches> {
    if channel_state.dim() != 4 {
        return Err(Error::Dimension(format!("shared state must be 4x4, got {}", channel_state.dim())));
    }
    let i2 = ComplexMatrix::identity(2);
    let ancilla0 = ComplexMatrix::diag_real(&[1.0, 0.0]);
    let mut joint = channel_state.matrix().kron(&ancilla0);

    let step1 = kron_all(&[&settings.rotation, &i2, &i2]);
    // CNOT between the outer factors A and a; B passes through.
    let p0 = ComplexMatrix::diag_real(&[1.0, 0.0]);
    let p1 = ComplexMatrix::diag_real(&[0.0, 1.0]);
    let step2 = &kron_all(&[&p0, &i2, &i2]) + &kron_all(&[&p1, &i2, &pauli_x()]);
    let step3 = kron_all(&[&settings.povm_rotation, &i2, &i2]);
    for u in [&step1, &step2, &step3] {
        joint = joint.conjugate_by(u);
    }

    let branch = |proj: &ComplexMatrix| -> Result<Option<RspOutcome>> {
        let p = kron_all(&[proj, &i2, &i2]);
        let projected = &(&p * &joint) * &p;
        let probability = projected.trace().re;
        if probability < MIN_POSTSELECTION {
            return Ok(None);
        }
        let bob = partial_trace(&projected, &[2, 2, 2], &[1])?;
        Ok(Some(RspOutcome {
            conditional_state: DensityMatrix::from_unnormalized(&bob)?,
            success_probability: probability,
        }))
    };
    Ok(RspBranches { result0: branch(&p0)?, result1: branch(&p1)? })
}

/// Remote preparation of `target` over `channel_state`, post-selected on
/// Alice's result 1.
pub fn rsp_run(channel_state: &DensityMatrix, target: &BlochVector) -> Result<RspOutcome> {
    let settings = AliceSettings::for_target(target)?;
    let branches = run_with_settings(channel_state, &settings)?;
    let probability = branches.probability(1);
    branches.result1.ok_or(Error::DegeneratePostselection { probability })
}

/// State families for which Bob can repair a result-0 announcement without
/// knowing the state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ensemble {
    /// Targets in the x-z plane (`phi = 0` or `pi`).
    PolarGreatCircle,
    /// Targets in the x-y plane (`theta = pi/2`).
    EquatorialGreatCircle,
    /// Anything else. Flipping an unknown state would need a universal NOT.
    Unrestricted,
}

impl Ensemble {
    /// Correction unitary, if one exists.
    pub fn correction(self) -> Option<ComplexMatrix> {
        match self {
            // Inverts x and z, fixes y.
            Ensemble::PolarGreatCircle => Some(pauli_y().scale(c64(0.0, 1.0))),
            // Inverts x and y, fixes z.
            Ensemble::EquatorialGreatCircle => Some(pauli_z()),
            Ensemble::Unrestricted => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Ensemble::PolarGreatCircle => "polar great circle",
            Ensemble::EquatorialGreatCircle => "equatorial great circle",
            Ensemble::Unrestricted => "unrestricted",
        }
    }
}

/// Bob's repair of a result-0 outcome: conjugation by the ensemble's
/// correction unitary.
pub fn correct_result0(ensemble: Ensemble, state: &DensityMatrix) -> Result<DensityMatrix> {
    if state.dim() != 2 {
        return Err(Error::Dimension(format!("expected a qubit state, got dimension {}", state.dim())));
    }
    let u = ensemble.correction().ok_or_else(|| Error::UnsupportedCorrection(ensemble.name().into()))?;
    state.evolve(&u)
}

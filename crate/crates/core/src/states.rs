//! Qubit states: Bloch parameterization, the pure basis pairs used by the
//! protocol, the singlet, and the two-element POVM Alice realizes.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::qcore::{c64, herm_eig, ComplexMatrix, C64, HERMITIAN_TOL, PSD_FLOOR};

const RADIUS_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-9;

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]])
}

pub fn pauli_y() -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[c64(0.0, 0.0), c64(0.0, -1.0)], [c64(0.0, 1.0), c64(0.0, 0.0)]])
}

pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diag_real(&[1.0, -1.0])
}

pub fn ket0() -> ComplexMatrix {
    ComplexMatrix::column(&[c64(1.0, 0.0), c64(0.0, 0.0)])
}

pub fn ket1() -> ComplexMatrix {
    ComplexMatrix::column(&[c64(0.0, 0.0), c64(1.0, 0.0)])
}

/// `<a|b>` for column vectors.
pub fn inner(a: &ComplexMatrix, b: &ComplexMatrix) -> C64 {
    (&a.adjoint() * b).get(0, 0)
}

/// Target coordinates `(r, theta, phi)`.
///
/// A negative radius stands for the antipodal direction; call
/// [`BlochVector::canonical`] before handing the vector to anything that
/// expects `r >= 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector {
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

impl BlochVector {
    pub fn new(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(r.is_finite() && theta.is_finite() && phi.is_finite()) {
            return Err(Error::Domain(format!("non-finite Bloch coordinates ({r}, {theta}, {phi})")));
        }
        if r.abs() > 1.0 + RADIUS_TOL {
            return Err(Error::Domain(format!("Bloch radius {r} outside [-1, 1]")));
        }
        if !(-RADIUS_TOL..=PI + RADIUS_TOL).contains(&theta) {
            return Err(Error::Domain(format!("polar angle {theta} outside [0, pi]")));
        }
        Ok(Self { r: r.clamp(-1.0, 1.0), theta: theta.clamp(0.0, PI), phi: phi.rem_euclid(TAU) })
    }

    pub fn from_degrees(r: f64, theta_deg: f64, phi_deg: f64) -> Result<Self> {
        Self::new(r, theta_deg.to_radians(), phi_deg.to_radians())
    }

    /// Maps a negative radius to `(|r|, pi - theta, phi + pi)`.
    pub fn canonical(self) -> Self {
        if self.r >= 0.0 {
            self
        } else {
            Self { r: -self.r, theta: PI - self.theta, phi: (self.phi + PI).rem_euclid(TAU) }
        }
    }

    pub fn cartesian(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [self.r * st * cp, self.r * st * sp, self.r * ct]
    }
}

/// A validated density operator: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    /// Validates `m` and stores its hermitized form.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!("density matrix must be square, got {}x{}", m.rows(), m.cols())));
        }
        let deviation = m.hermitian_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let m = m.hermitize();
        let tr = m.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = herm_eig(&m)?.eigenvalues[0];
        if min < -PSD_FLOOR {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
        Ok(Self(m))
    }

    /// Normalizes a positive semidefinite operator by its trace.
    pub fn from_unnormalized(m: &ComplexMatrix) -> Result<Self> {
        let tr = m.trace().re;
        if tr <= 0.0 || !tr.is_finite() {
            return Err(Error::InvalidState(format!("cannot normalize operator with trace {tr}")));
        }
        Self::new(m.scale_real(1.0 / tr))
    }

    /// Closest physical state in the eigenbasis of `(m + m†)/2`: negative
    /// eigenvalues are set to zero and the result renormalized.
    pub fn project_physical(m: &ComplexMatrix) -> Result<Self> {
        let eig = herm_eig(m)?;
        let clamped = eig.apply(|l| l.max(0.0));
        Self::from_unnormalized(&clamped)
    }

    /// `|v><v| / <v|v>`.
    pub fn from_ket(ket: &ComplexMatrix) -> Result<Self> {
        if ket.cols() != 1 {
            return Err(Error::Dimension("expected a column vector".into()));
        }
        Self::from_unnormalized(&ComplexMatrix::projector(ket))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// Convex combination of equally sized states.
    pub fn mixture(components: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = components.first().ok_or_else(|| Error::InvalidState("empty mixture".into()))?;
        let dim = first.dim();
        let mut acc = ComplexMatrix::zeros(dim, dim);
        let mut total = 0.0;
        for &(w, rho) in components {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::Domain(format!("mixture weight {w} outside [0, 1]")));
            }
            if rho.dim() != dim {
                return Err(Error::Dimension("mixture components differ in dimension".into()));
            }
            acc = &acc + &rho.0.scale_real(w);
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("mixture weights sum to {total}")));
        }
        Self::new(acc)
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn purity(&self) -> f64 {
        (&self.0 * &self.0).trace().re
    }

    /// `U rho U†`.
    pub fn evolve(&self, unitary: &ComplexMatrix) -> Result<Self> {
        Self::new(self.0.conjugate_by(unitary))
    }

    /// `Tr(P rho)` clipped below at zero.
    pub fn probability(&self, projector: &ComplexMatrix) -> f64 {
        (&self.0 * projector).trace().re.max(0.0)
    }

    /// Expectation values of `(sigma_x, sigma_y, sigma_z)`. Qubits only.
    pub fn bloch_coordinates(&self) -> Result<[f64; 3]> {
        if self.dim() != 2 {
            return Err(Error::Dimension(format!("Bloch coordinates need a qubit, got dimension {}", self.dim())));
        }
        let expect = |p: ComplexMatrix| (&self.0 * &p).trace().re;
        Ok([expect(pauli_x()), expect(pauli_y()), expect(pauli_z())])
    }
}

/// `(I + r_vec . sigma) / 2`. Negative radii are canonicalized first.
pub fn bloch_to_rho(v: &BlochVector) -> Result<DensityMatrix> {
    if v.r.abs() > 1.0 + RADIUS_TOL {
        return Err(Error::Domain(format!("Bloch radius {} outside [-1, 1]", v.r)));
    }
    let [x, y, z] = v.canonical().cartesian();
    let m = ComplexMatrix::from_rows(&[
        [c64(0.5 * (1.0 + z), 0.0), c64(0.5 * x, -0.5 * y)],
        [c64(0.5 * x, 0.5 * y), c64(0.5 * (1.0 - z), 0.0)],
    ]);
    DensityMatrix::new(m)
}

/// The pure states the protocol is written in terms of, for one direction
/// `(theta, phi)`.
///
/// `psi_prime` is `psi` rotated by pi about the z axis. Each `*_perp` is
/// the orthogonal partner, with the sign convention `psi_perp = -U(theta, phi)|1>`.
#[derive(Clone, Debug)]
pub struct PureKets {
    pub psi: ComplexMatrix,
    pub psi_perp: ComplexMatrix,
    pub psi_prime: ComplexMatrix,
    pub psi_prime_perp: ComplexMatrix,
}

pub fn pure_kets(theta: f64, phi: f64) -> PureKets {
    let (s, c) = (0.5 * theta).sin_cos();
    let e = C64::from_polar(1.0, phi);
    PureKets {
        psi: ComplexMatrix::column(&[c64(c, 0.0), e * s]),
        psi_perp: ComplexMatrix::column(&[e.conj() * s, c64(-c, 0.0)]),
        psi_prime: ComplexMatrix::column(&[c64(c, 0.0), -e * s]),
        psi_prime_perp: ComplexMatrix::column(&[e.conj() * s, c64(c, 0.0)]),
    }
}

/// `|Psi-> = (|01> - |10>)/sqrt(2)`.
pub fn psi_minus_ket() -> ComplexMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    ComplexMatrix::column(&[c64(0.0, 0.0), c64(s, 0.0), c64(-s, 0.0), c64(0.0, 0.0)])
}

pub fn bell_psi_minus() -> DensityMatrix {
    DensityMatrix(ComplexMatrix::projector(&psi_minus_ket()))
}

#[derive(Clone, Debug)]
pub struct PovmPair {
    pub pi0: ComplexMatrix,
    pub pi1: ComplexMatrix,
}

/// `Pi1 = (1-r)/2 |0><0| + (1+r)/2 |1><1|`, `Pi0 = I - Pi1`.
pub fn povm_elements(r: f64) -> Result<PovmPair> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("POVM mixedness parameter {r} outside [0, 1]")));
    }
    let pi1 = ComplexMatrix::diag_real(&[(1.0 - r) / 2.0, (1.0 + r) / 2.0]);
    let pi0 = &ComplexMatrix::identity(2) - &pi1;
    Ok(PovmPair { pi0, pi1 })
}

/// Random full-rank state from the Ginibre ensemble.
pub fn random_density_matrix(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| c64(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    DensityMatrix::from_unnormalized(&(&g * &g.adjoint())).expect("Ginibre sample is positive definite")
}

/// Haar-random pure state.
pub fn random_pure_state(dim: usize, rng: &mut impl Rng) -> DensityMatrix {
    let ket = ComplexMatrix::from_fn(dim, 1, |_, _| c64(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    DensityMatrix::from_ket(&ket).expect("nonzero Gaussian vector")
}

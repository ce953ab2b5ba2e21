//! Jones matrices for half- and quarter-wave plates and a solver for the
//! plate angles that realize a requested single-qubit rotation.

use std::f64::consts::PI;

use crate::error::Result;
use crate::optimize::NelderMead;
use crate::protocol::{u_theta_phi, AliceSettings};
use crate::qcore::{c64, ComplexMatrix};
use crate::states::BlochVector;

/// Two degrees: angular precision of a manually set waveplate mount.
pub const TWO_DEGREES: f64 = PI / 90.0;

/// `[[cos 2h, sin 2h], [sin 2h, -cos 2h]]`.
pub fn jones_hwp(angle: f64) -> ComplexMatrix {
    let (s, c) = (2.0 * angle).sin_cos();
    ComplexMatrix::from_real_rows(&[[c, s], [s, -c]])
}

/// Quarter-wave plate with fast axis at `angle` from horizontal.
pub fn jones_qwp(angle: f64) -> ComplexMatrix {
    let (s, c) = angle.sin_cos();
    let off = c64(1.0, -1.0) * (s * c);
    ComplexMatrix::from_rows(&[[c64(c * c, s * s), off], [off, c64(s * s, c * c)]])
}

/// A quarter-wave plate followed by a half-wave plate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveplateSetting {
    pub qwp_angle: f64,
    pub hwp_angle: f64,
    /// Angle granularity; `0` means continuous.
    pub quantization: f64,
}

impl WaveplateSetting {
    pub fn new(qwp_angle: f64, hwp_angle: f64, quantization: f64) -> Self {
        Self {
            qwp_angle: quantize(qwp_angle, quantization),
            hwp_angle: quantize(hwp_angle, quantization),
            quantization,
        }
    }

    /// `HWP(h) · QWP(q)`.
    pub fn unitary(&self) -> ComplexMatrix {
        &jones_hwp(self.hwp_angle) * &jones_qwp(self.qwp_angle)
    }
}

fn quantize(angle: f64, step: f64) -> f64 {
    if step > 0.0 {
        (angle / step).round() * step
    } else {
        angle
    }
}

/// How closely a plate combination must match the target.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WaveplateObjective {
    /// Equal up to one global phase: `1 - |Tr(T† M)|/2`.
    Unitary,
    /// Equal up to an independent phase on each output basis state,
    /// `1 - (|(M T†)_00| + |(M T†)_11|)/2`. This is all that matters when
    /// the plates are followed by a computational-basis measurement or a
    /// CNOT copy of that basis.
    #[default]
    Projective,
}

impl WaveplateObjective {
    pub fn residual(self, target: &ComplexMatrix, achieved: &ComplexMatrix) -> f64 {
        match self {
            WaveplateObjective::Unitary => 1.0 - (&target.adjoint() * achieved).trace().norm() / 2.0,
            WaveplateObjective::Projective => {
                let m = achieved * &target.adjoint();
                1.0 - (m.get(0, 0).norm() + m.get(1, 1).norm()) / 2.0
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct WaveplateSolution {
    pub setting: WaveplateSetting,
    /// Residual at the returned (possibly rounded) angles.
    pub residual: f64,
    /// Residual of the continuous optimum before rounding.
    pub unquantized_residual: f64,
}

/// Plate angles `(q, h)` minimizing `objective` for `HWP(h)·QWP(q)` against
/// `target`: a coarse grid over `[0, pi)^2`, Nelder-Mead refinement, then
/// rounding to `quantization`.
pub fn solve_waveplate_angles(
    target: &ComplexMatrix,
    quantization: f64,
    objective: WaveplateObjective,
) -> WaveplateSolution {
    let cost = |q: f64, h: f64| objective.residual(target, &(&jones_hwp(h) * &jones_qwp(q)));

    const GRID: usize = 60;
    let mut start = (f64::INFINITY, 0.0, 0.0);
    for i in 0..GRID {
        for j in 0..GRID {
            let (q, h) = (PI * i as f64 / GRID as f64, PI * j as f64 / GRID as f64);
            let v = cost(q, h);
            if v < start.0 {
                start = (v, q, h);
            }
        }
    }
    let nm = NelderMead { initial_step: PI / GRID as f64, f_tol: 1e-15, x_tol: 1e-11, ..Default::default() };
    let m = nm.minimize(|x| cost(x[0], x[1]), &[start.1, start.2]);
    let (q, h) = if m.value < start.0 { (m.x[0], m.x[1]) } else { (start.1, start.2) };
    let unquantized_residual = cost(q, h).max(0.0);

    let setting = WaveplateSetting::new(q.rem_euclid(PI), h.rem_euclid(PI), quantization);
    let residual = cost(setting.qwp_angle, setting.hwp_angle).max(0.0);
    WaveplateSolution { setting, residual, unquantized_residual }
}

/// Half-wave plate angle whose Jones matrix matches the POVM rotation `U(r)`
/// up to a phase on the `|1>` output: `HWP(h) = diag(1, -1) U(r)`.
pub fn hwp_angle_for_mixedness(r: f64) -> f64 {
    let a = ((1.0 + r) / 2.0).sqrt();
    let b = ((1.0 - r) / 2.0).sqrt();
    -0.5 * b.atan2(a)
}

/// Alice's two rotations as realized by plates set to `quantization`:
/// QWP·HWP for the target rotation, a single HWP for the POVM rotation.
/// Also returns the rotation's residual under the projective objective.
pub fn waveplate_alice_settings(target: &BlochVector, quantization: f64) -> Result<(AliceSettings, WaveplateSolution)> {
    let t = target.canonical();
    let solution =
        solve_waveplate_angles(&u_theta_phi(t.theta, t.phi).adjoint(), quantization, WaveplateObjective::Projective);
    let hwp = WaveplateSetting::new(0.0, hwp_angle_for_mixedness(t.r), quantization).hwp_angle;
    let settings = AliceSettings { rotation: solution.setting.unitary(), povm_rotation: jones_hwp(hwp) };
    Ok((settings, solution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::u_r;
    use crate::states::{ket0, pure_kets};

    fn is_unitary(u: &ComplexMatrix) -> bool {
        (&u.adjoint() * u).approx_eq(&ComplexMatrix::identity(2), 1e-12)
    }

    #[test]
    fn plate_matrices() {
        assert!(jones_hwp(0.0).approx_eq(&ComplexMatrix::diag_real(&[1.0, -1.0]), 0.0));
        let q0 = ComplexMatrix::from_rows(&[[c64(1.0, 0.0), c64(0.0, 0.0)], [c64(0.0, 0.0), c64(0.0, 1.0)]]);
        assert!(jones_qwp(0.0).approx_eq(&q0, 0.0));
        let diag = &jones_hwp(PI / 8.0) * &ket0();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!(diag.approx_eq(&ComplexMatrix::column(&[c64(s, 0.0), c64(s, 0.0)]), 1e-15));
        for k in 0..20 {
            let a = k as f64 * 0.31;
            assert!(is_unitary(&jones_hwp(a)));
            assert!(is_unitary(&jones_qwp(a)));
        }
    }

    #[test]
    fn plant_and_recover() {
        let target = &jones_hwp(PI / 8.0) * &jones_qwp(PI / 4.0);
        for objective in [WaveplateObjective::Unitary, WaveplateObjective::Projective] {
            let sol = solve_waveplate_angles(&target, 0.0, objective);
            assert!(sol.residual < 1e-6, "{objective:?}: {}", sol.residual);
        }
    }

    #[test]
    fn identity_is_reachable_only_up_to_output_phases() {
        let id = ComplexMatrix::identity(2);
        let sol = solve_waveplate_angles(&id, 0.0, WaveplateObjective::Projective);
        assert!(sol.residual < 1e-6);
        // A QWP·HWP pair always carries a relative quarter-wave retardance,
        // so it cannot equal the identity up to a single global phase.
        let strict = solve_waveplate_angles(&id, 0.0, WaveplateObjective::Unitary);
        assert!(strict.residual > 0.25);
    }

    #[test]
    fn rounding_never_helps() {
        for k in 0..12 {
            let target = u_theta_phi(0.27 * k as f64, 0.53 * k as f64).adjoint();
            for objective in [WaveplateObjective::Unitary, WaveplateObjective::Projective] {
                let sol = solve_waveplate_angles(&target, TWO_DEGREES, objective);
                assert!(sol.residual >= sol.unquantized_residual - 1e-12);
                let steps = sol.setting.qwp_angle / TWO_DEGREES;
                assert!((steps - steps.round()).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn analyser_maps_target_to_horizontal() {
        // The projective optimum sends |psi> to |0> up to phase.
        for k in 0..10 {
            let (theta, phi) = (0.31 * k as f64, 0.6 * k as f64);
            let sol = solve_waveplate_angles(&u_theta_phi(theta, phi).adjoint(), 0.0, WaveplateObjective::Projective);
            let out = &sol.setting.unitary() * &pure_kets(theta, phi).psi;
            assert!((out.get(0, 0).norm() - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn hwp_realizes_povm_rotation() {
        for r in [0.0, 0.3, 0.5, 0.85, 1.0] {
            let h = jones_hwp(hwp_angle_for_mixedness(r));
            let want = &ComplexMatrix::diag_real(&[1.0, -1.0]) * &u_r(r).unwrap();
            assert!(h.approx_eq(&want, 1e-14));
        }
        assert_eq!(hwp_angle_for_mixedness(1.0), 0.0);
    }

    #[test]
    fn continuous_plates_prepare_exactly() {
        use crate::channels::dephased_bell;
        use crate::metrics::fidelity;
        use crate::protocol::run_with_settings;
        use crate::states::bloch_to_rho;
        let shared = dephased_bell(1.0).unwrap();
        for (r, theta, phi) in [(1.0, 0.4, 0.0), (0.6, 2.0, 1.3), (0.3, 1.1, 4.0)] {
            let target = BlochVector::new(r, theta, phi).unwrap();
            let (settings, _) = waveplate_alice_settings(&target, 0.0).unwrap();
            let out = run_with_settings(&shared, &settings).unwrap().result1.unwrap();
            assert!((out.success_probability - 0.5).abs() < 1e-9);
            let f = fidelity(&bloch_to_rho(&target).unwrap(), &out.conditional_state).unwrap();
            assert!(f > 1.0 - 1e-9, "{f}");
        }
    }
}

//! Simulated polarization optics and state tomography.
//!
//! Record file format ([`TomographyRecord::to_text`]):
//!
//! ```text
//! # tomography record
//! # total_per_setting = 10000
//! # seed = 42
//! # algorithm = chacha8-poisson
//! HH 9987
//! HV 12
//! ...
//! ```
//!
//! Each data line is the analyser label per photon (`H V D A R L`) followed
//! by the count. Counts from noiseless records may be fractional.

mod reconstruct;
mod record;
mod waveplates;

pub use reconstruct::{linear_inversion, mle_reconstruct, mle_reconstruct_with, MleFit, MleOptions};
pub use record::{
    expected_counts, simulate_counts, single_qubit_settings, standard_settings, two_qubit_minimal_settings,
    two_qubit_settings, MeasurementSetting, Polarization, TomographyRecord, EXACT_ALGORITHM, RNG_ALGORITHM,
};
pub use waveplates::{
    hwp_angle_for_mixedness, jones_hwp, jones_qwp, solve_waveplate_angles, waveplate_alice_settings, WaveplateObjective, WaveplateSetting,
    WaveplateSolution, TWO_DEGREES,
};

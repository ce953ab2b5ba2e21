//! Remote preparation of qubit states over noisy shared entanglement.
//!
//! The crate simulates the ancilla-assisted preparation procedure exactly on
//! density matrices, compares it with closed-form fidelities for
//! depolarizing and dephasing noise, and models the photonic realization:
//! waveplate settings with finite angular precision, Poissonian coincidence
//! counts, and tomographic reconstruction.
//!
//! # Layout
//!
//! - [`qcore`]: small dense complex matrices, partial trace, Hermitian
//!   eigendecomposition, PSD square root.
//! - [`states`]: Bloch vectors, density matrices, the singlet, the POVM.
//! - [`channels`]: depolarized and dephased singlets, the published source
//!   matrix.
//! - [`protocol`]: the five-step procedure and result-0 corrections.
//! - [`metrics`]: Uhlmann fidelity and the closed forms.
//! - [`tomography`]: waveplates, count simulation, linear inversion and
//!   maximum-likelihood reconstruction.
//! - [`sweep`]: parameter sweeps, channel comparison and the tomography
//!   pipeline behind the `rsp` binary.
//!
//! # Quick start
//!
//! ```
//! use rsp_core::{channels, metrics, protocol, states::{bloch_to_rho, BlochVector}};
//!
//! let target = BlochVector::new(0.8, 1.0, 0.5).unwrap();
//! let shared = channels::dephased_bell(0.9).unwrap();
//! let outcome = protocol::rsp_run(&shared, &target).unwrap();
//! let f = metrics::fidelity(&bloch_to_rho(&target).unwrap(), &outcome.conditional_state).unwrap();
//! let closed = metrics::fidelity_dephasing_closed(0.8, 1.0, 0.9).unwrap();
//! assert!((f - closed).abs() < 1e-10);
//! assert!((outcome.success_probability - 0.5).abs() < 1e-12);
//! ```

pub mod channels;
pub mod error;
pub mod metrics;
pub mod optimize;
pub mod protocol;
pub mod qcore;
pub mod states;
pub mod sweep;
pub mod tomography;

pub use error::{Error, Result};
pub use qcore::{ComplexMatrix, C64};
pub use states::{BlochVector, DensityMatrix};

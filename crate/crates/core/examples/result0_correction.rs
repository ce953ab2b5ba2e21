//! When Alice announces result 0, Bob holds the antipodal state. For
//! targets on a known great circle a fixed unitary repairs it.

use rsp_core::metrics::fidelity;
use rsp_core::protocol::{correct_result0, run_with_settings, AliceSettings, Ensemble};
use rsp_core::states::{bell_psi_minus, bloch_to_rho, BlochVector};

fn main() -> rsp_core::Result<()> {
    let singlet = bell_psi_minus();
    let cases = [
        (Ensemble::PolarGreatCircle, BlochVector::from_degrees(1.0, 70.0, 0.0)?),
        (Ensemble::EquatorialGreatCircle, BlochVector::from_degrees(1.0, 90.0, 130.0)?),
        (Ensemble::Unrestricted, BlochVector::from_degrees(1.0, 40.0, 75.0)?),
    ];
    for (ensemble, target) in cases {
        let branches = run_with_settings(&singlet, &AliceSettings::for_target(&target)?)?;
        let raw = branches.result0.expect("result 0 has probability 1/2").conditional_state;
        let want = bloch_to_rho(&target)?;
        print!("{ensemble:?}: before correction F = {:.4}", fidelity(&want, &raw)?);
        match correct_result0(ensemble, &raw) {
            Ok(fixed) => println!(", after F = {:.12}", fidelity(&want, &fixed)?),
            Err(e) => println!(", {e}"),
        }
    }
    Ok(())
}

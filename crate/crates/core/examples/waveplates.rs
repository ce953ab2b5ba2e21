//! Plate angles for Alice's rotations and the cost of setting them to the
//! nearest two degrees.

use std::f64::consts::PI;

use rsp_core::metrics::fidelity;
use rsp_core::protocol::run_with_settings;
use rsp_core::states::{bell_psi_minus, bloch_to_rho, BlochVector};
use rsp_core::tomography::{waveplate_alice_settings, TWO_DEGREES};

fn main() -> rsp_core::Result<()> {
    let singlet = bell_psi_minus();
    println!("{:>7} {:>9} {:>9} {:>11} {:>12}", "theta", "QWP deg", "HWP deg", "residual", "1 - F");
    for k in 0..=12 {
        let target = BlochVector::new(1.0, PI * k as f64 / 12.0, 0.0)?;
        let (settings, plates) = waveplate_alice_settings(&target, TWO_DEGREES)?;
        let out = run_with_settings(&singlet, &settings)?.result1.expect("result 1 has probability 1/2");
        let f = fidelity(&bloch_to_rho(&target)?, &out.conditional_state)?;
        println!(
            "{:>7.2} {:>9.1} {:>9.1} {:>11.2e} {:>12.2e}",
            target.theta.to_degrees(),
            plates.setting.qwp_angle.to_degrees(),
            plates.setting.hwp_angle.to_degrees(),
            plates.residual,
            1.0 - f
        );
    }
    Ok(())
}

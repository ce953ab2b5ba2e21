//! Remote preparation over a perfect singlet: Bob receives the target
//! exactly whenever Alice announces result 1.

use rsp_core::metrics::fidelity;
use rsp_core::protocol::rsp_run;
use rsp_core::states::{bell_psi_minus, bloch_to_rho, BlochVector};

fn main() -> rsp_core::Result<()> {
    let singlet = bell_psi_minus();
    println!("{:>5} {:>8} {:>8} {:>10} {:>8}   Bob's Bloch vector", "r", "theta", "phi", "fidelity", "P(1)");
    for (r, theta_deg, phi_deg) in [(1.0, 0.0, 0.0), (1.0, 60.0, 45.0), (0.5, 120.0, 270.0), (0.0, 0.0, 0.0)] {
        let target = BlochVector::from_degrees(r, theta_deg, phi_deg)?;
        let outcome = rsp_run(&singlet, &target)?;
        let f = fidelity(&bloch_to_rho(&target)?, &outcome.conditional_state)?;
        let [x, y, z] = outcome.conditional_state.bloch_coordinates()?;
        println!(
            "{r:>5.2} {theta_deg:>8.1} {phi_deg:>8.1} {f:>10.8} {:>8.4}   ({x:+.4}, {y:+.4}, {z:+.4})",
            outcome.success_probability
        );
    }
    Ok(())
}

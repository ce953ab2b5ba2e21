//! Fidelity of remotely prepared states when the shared singlet has passed
//! through depolarizing or dephasing noise, simulated and in closed form.

use std::f64::consts::PI;

use rsp_core::channels::{dephased_bell, depolarized_bell};
use rsp_core::metrics::{fidelity, fidelity_dephasing_closed, fidelity_depolarizing_closed};
use rsp_core::protocol::rsp_run;
use rsp_core::states::{bloch_to_rho, BlochVector};

fn main() -> rsp_core::Result<()> {
    let p = 0.7;
    let depol = depolarized_bell(p)?;
    let deph = dephased_bell(p)?;
    println!("p = {p}");
    println!("{:>5} {:>7} {:>12} {:>12} {:>12} {:>12}", "r", "theta", "depol sim", "depol eq", "deph sim", "deph eq");
    for r in [1.0, 0.5] {
        for k in 0..=4 {
            let theta = PI * k as f64 / 4.0;
            let target = BlochVector::new(r, theta, 0.3)?;
            let rho = bloch_to_rho(&target)?;
            let f1 = fidelity(&rho, &rsp_run(&depol, &target)?.conditional_state)?;
            let f2 = fidelity(&rho, &rsp_run(&deph, &target)?.conditional_state)?;
            println!(
                "{r:>5.2} {theta:>7.4} {f1:>12.9} {:>12.9} {f2:>12.9} {:>12.9}",
                fidelity_depolarizing_closed(r, p)?,
                fidelity_dephasing_closed(r, theta, p)?
            );
        }
    }
    Ok(())
}

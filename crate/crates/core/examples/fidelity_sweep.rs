//! Sweeps the seven target families through a dephased channel and prints
//! a one-line summary for each. Pass a path to also write set 1 as CSV.

use rsp_core::sweep::{run_sweep, write_sweep_csv, Channel, Mode, StateSet, SweepSpec, SweepSummary};

fn main() -> rsp_core::Result<()> {
    for p in [0.9, 0.7] {
        println!("dephasing, p = {p}");
        for set in 1..=7 {
            let spec =
                SweepSpec { channel: Channel::Dephasing, p, state_set: StateSet::named(set)?, resolution: 91, mode: Mode::Exact };
            let rows = run_sweep(&spec)?;
            println!("  set {set}: {}", SweepSummary::of(&rows));
        }
    }

    if let Some(path) = std::env::args().nth(1) {
        let spec =
            SweepSpec { channel: Channel::Dephasing, p: 0.7, state_set: StateSet::Named(1), resolution: 181, mode: Mode::Exact };
        write_sweep_csv(&run_sweep(&spec)?, std::fs::File::create(&path)?)?;
        println!("wrote {path}");
    }
    Ok(())
}

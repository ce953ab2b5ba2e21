//! The measured two-photon source matrix against the dephased singlet.

use rsp_core::channels::{dephased_bell, spdc_fixture, spdc_fixture_hermitized};
use rsp_core::metrics::{fidelity, uhlmann_fidelity};
use rsp_core::qcore::herm_eig;
use rsp_core::sweep::format_fixture;

fn main() -> rsp_core::Result<()> {
    print!("{}", format_fixture());
    let herm = spdc_fixture_hermitized();
    let eig = herm_eig(&herm)?;
    println!("eigenvalues: {:?}", eig.eigenvalues.iter().map(|l| (l * 1e4).round() / 1e4).collect::<Vec<_>>());

    let reference = dephased_bell(0.9)?;
    println!("F(dephased p=0.9, hermitized)        = {:.6}", uhlmann_fidelity(reference.matrix(), &herm)?);
    println!("F(dephased p=0.9, clamped physical)  = {:.6}", fidelity(&reference, &spdc_fixture())?);

    let best = (0..=100)
        .map(|k| k as f64 / 100.0)
        .map(|p| (p, uhlmann_fidelity(dephased_bell(p).unwrap().matrix(), &herm).unwrap()))
        .fold((0.0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    println!("best dephasing parameter on a 0.01 grid: p = {:.2} (F = {:.6})", best.0, best.1);
    Ok(())
}

//! Builds the ansatz connection from the instanton seed and checks the ASD
//! residuals, then shows a seed that is rejected.

use h5::ansatz::{build_connection, HarmonicSeed};
use h5::exactalg::{Context, MatRF};
use h5::gauge::asd_residuals;
use h5::heisenberg::FieldId;
use h5::Error;

fn main() -> h5::Result<()> {
    let seed = HarmonicSeed::from_spec("inst")?;
    let phit = MatRF::from_ints(&Context::heisenberg(), &[&[2, -1], &[3, 5]])?;
    let phi = build_connection(&seed, Some(phit))?;
    println!("Phi(V00') = {}", phi.block(FieldId::V00));
    let r = asd_residuals(&phi)?;
    println!("residuals vanish: {}", r.is_zero());

    match HarmonicSeed::from_spec("y00p*y11p") {
        Err(Error::NonHarmonicSeed(lap)) => println!("y00p*y11p rejected, Delta_b = {lap}"),
        other => println!("unexpected: {:?}", other.map(|_| ())),
    }
    Ok(())
}

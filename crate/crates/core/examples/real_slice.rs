//! Real slice: contact structure, SD/ASD splitting, and the two curvature
//! routes on the instanton connection.

use h5::ansatz::{build_connection, HarmonicSeed};
use h5::realslice::{
    hv_split, phi_real, real_curvature_split_formula, real_sub_laplacian, s_basis, star_contract, two_path_check, RealForm,
    S_NAMES,
};

fn main() -> h5::Result<()> {
    let (sd, asd) = s_basis();
    for (name, f) in S_NAMES.iter().zip(sd.iter().chain(asd.iter())) {
        let sign = if star_contract(f) == *f { "+1" } else { "-1" };
        println!("{name} = {f}   eigenvalue {sign}");
    }

    let w = RealForm::basis(0).wedge(&RealForm::basis(4));
    let split = hv_split(&w);
    println!("dx1^ds: horizontal {} | vertical {}", split.horizontal, split.vertical);

    println!("Delta_b phi_R = {}", real_sub_laplacian(&phi_real())?);

    let phi = build_connection(&HarmonicSeed::from_spec("inst")?, None)?;
    println!("F_H+ = 0: {}", real_curvature_split_formula(&phi)?.fh_plus_zero());
    println!("formula and form routes agree: {}", two_path_check(&phi)?);
    Ok(())
}

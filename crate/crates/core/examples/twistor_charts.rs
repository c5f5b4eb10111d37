//! Twistor projection, chart transition and alpha-planes.

use h5::exactalg::CRational;
use h5::heisenberg::GroupPoint;
use h5::twistor::{alpha_plane_point, chart_transition, diagram_check, eta, numeric_roundtrip, TransitionVariant};

fn main() -> h5::Result<()> {
    let x = GroupPoint::from_ints([1, 2, 3, 4, 5]);
    let zeta = CRational::ratio(1, 2);
    let p = eta(&x, &zeta);
    println!("eta(x, 1/2) = {:?}", p.to_array().map(|c| c.to_string()));
    let q = chart_transition(&p)?;
    println!("in the other chart: {:?}", q.to_array().map(|c| c.to_string()));

    let y = alpha_plane_point(&p, &CRational::from_int(3), &CRational::from_int(-1));
    println!("a point on the alpha-plane maps back: {}", eta(&y, &zeta).same_as(&p));

    for variant in [TransitionVariant::Derived, TransitionVariant::Printed] {
        let pass = diagram_check(variant)?.iter().all(|c| c.pass);
        println!("diagram commutes with {variant:?} transition: {pass}");
    }
    let st = numeric_roundtrip(200, 7)?;
    println!("numeric roundtrip over {} samples, max error {:.1e}", st.samples, st.max_transition_error.max(st.max_plane_error));
    Ok(())
}

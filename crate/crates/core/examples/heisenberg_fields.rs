//! Group law, left-invariant fields and the sub-Laplacian.

use h5::exactalg::{parse_rational_function, Context};
use h5::heisenberg::{apply_commutator, apply_field, group_mul, sub_laplacian, FieldId, GroupPoint};

fn main() -> h5::Result<()> {
    let a = GroupPoint::from_ints([1, 0, 2, -1, 3]);
    let b = GroupPoint::from_ints([0, 4, 1, 1, -2]);
    println!("a * b = {:?}", group_mul(&a, &b).to_array().map(|c| c.to_string()));

    let ctx = Context::heisenberg();
    let f = parse_rational_function("y00p*y11p^2 - y10p*t", &ctx)?;
    for id in FieldId::ALL {
        println!("{id} f = {}", apply_field(id, &f)?);
    }
    println!("[V00', V11'] f = {}", apply_commutator(FieldId::V00, FieldId::V11, &f)?);
    println!("T f = {}", apply_field(FieldId::T, &f)?);

    let phi = parse_rational_function("1/((y00p*y11p - y10p*y01p)^2 - t^2)", &ctx)?;
    println!("Delta_b phi = {}", sub_laplacian(&phi)?);
    Ok(())
}

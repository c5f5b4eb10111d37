//! Matrix model of the group inside SO(6, C) and its coset checks.

use h5::heisenberg::{group_mul, GroupPoint};
use h5::so6model::{h_matrix, h_matrix_coordinates, in_subgroup, verify_all, H_ALG_MASK};

fn main() {
    let a = GroupPoint::from_ints([1, -2, 0, 3, 1]);
    let b = GroupPoint::from_ints([2, 1, 1, 0, -4]);
    let h = h_matrix(&a);
    println!("H(a) =\n{h}");
    let prod = h.mul(&h_matrix(&b)).expect("square matrices");
    println!("H(a)H(b) = H(a*b): {}", h_matrix_coordinates(&prod) == group_mul(&a, &b));
    println!("H(a) has its log in the h pattern: {}", in_subgroup(&h, &H_ALG_MASK));

    for c in verify_all() {
        println!("{:<14} {}", c.name, if c.pass { "pass" } else { "FAIL" });
    }
}

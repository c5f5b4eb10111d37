//! Finite differences against the exact field derivatives.

use h5::exactalg::Context;
use h5::heisenberg::FieldId;
use h5::numcheck::{fd_field_check, inst_convergence_slope, oracle_functions, SamplePlan, Stencil};

fn main() -> h5::Result<()> {
    let plan = SamplePlan::default();
    for (name, f) in oracle_functions(&Context::heisenberg())? {
        let mut worst = 0f64;
        for id in FieldId::ALL {
            worst = worst.max(fd_field_check(id, &f, &plan)?.max_rel_error);
        }
        println!("{name:<10} max relative error {worst:.2e}");
    }
    for stencil in [Stencil::RealAxis, Stencil::Wirtinger] {
        println!("{stencil:?} convergence slope {:.2}", inst_convergence_slope(&plan, 7, stencil)?);
    }
    Ok(())
}

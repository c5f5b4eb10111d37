//! Exact rational functions over Q(i): parsing, arithmetic, derivatives.

use h5::exactalg::{parse_rational_function, Context};

fn main() -> h5::Result<()> {
    let ctx = Context::new(&["x", "y"]);
    let f = parse_rational_function("(x^2 - y^2)/(x - y)", &ctx)?;
    let g = parse_rational_function("x + y", &ctx)?;
    println!("f = {f}");
    println!("f == x + y: {}", f == g);

    let h = parse_rational_function("(2 + 3*i)*x*y/(1 + x^2)", &ctx)?;
    println!("h = {h}");
    println!("dh/dx = {}", h.derivative(0));
    println!("h * h^-1 = {}", &h * &h.inv()?);
    Ok(())
}

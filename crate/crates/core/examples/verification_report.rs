//! Runs every suite and prints the text report.

use h5::report::{run_suite, Options, Suite};

fn main() {
    let rep = run_suite(Suite::All, &Options::default());
    print!("{}", rep.to_text());
    for e in &rep.errata {
        println!("erratum {}: {}", e.id, e.note);
    }
    std::process::exit(if rep.passed { 0 } else { 1 });
}

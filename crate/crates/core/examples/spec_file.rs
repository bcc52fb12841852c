//! An algebra and a module read from a spec file, checked in-process.

use lieconf::cli::parse_spec;
use lieconf::conformal::check_algebra;
use lieconf::repr::check_module;

const SPEC: &str = r#"
[constants]
a = "3/2"

[algebra]
name = "B(1) to grade 2"
generators = ["L0", "L1", "L2"]
grades = [0, 1, 2]
truncation = 2
p_00 = "d + 2*l"
p_01 = "d + 3*l"
p_02 = "d + 4*l"
p_11 = "2*d + 4*l"

[module.V]
theorem = "a1-not-two"
delta = "a"
c = "0"
"#;

fn main() {
    let spec = parse_spec(SPEC).unwrap();
    println!("{}", check_algebra(&spec.algebra));
    for m in &spec.modules {
        println!("{}", check_module(&spec.algebra, m).unwrap());
    }
    match parse_spec("[algebra]\ngenerators = [\"L\"]\np_00 = \"d + + l\"\n") {
        Err(e) => println!("{e}"),
        Ok(_) => unreachable!(),
    }
}

//! Explicit Killing bases through the function-dictionary ansatz.
//!
//! Run with: cargo run --release --example killing_basis

use homsurf::connection::ChristoffelSpec;
use homsurf::killing::{killing_basis, standard_dictionary};
use homsurf::rat::{rat, rat_int};

fn show(label: &str, s: &ChristoffelSpec, params: &[homsurf::Rat]) {
    let dict = standard_dictionary(s, params);
    let fields = killing_basis(s, &dict).unwrap();
    println!("{label} (dictionary size {}):", dict.len());
    for f in &fields {
        println!("   {f}");
    }
    println!();
}

fn main() {
    // Quadratic symmetries: symbols (0,0,2,0,-2,0,1,0).
    show(
        "constant symbols with torsion (2,0)",
        &ChristoffelSpec::type_a([
            rat_int(0),
            rat_int(0),
            rat_int(2),
            rat_int(0),
            rat_int(-2),
            rat_int(0),
            rat_int(1),
            rat_int(0),
        ]),
        &[],
    );

    // Logarithms appear for 1/x¹ symbols (0,1,0,1,0,-1,0,0).
    show(
        "half-plane spec with torsion (0,1)",
        &ChristoffelSpec::type_b([
            rat_int(0),
            rat_int(1),
            rat_int(0),
            rat_int(1),
            rat_int(0),
            rat_int(-1),
            rat_int(0),
            rat_int(0),
        ]),
        &[],
    );

    // Rational powers of x¹ come from the family parameter: spec
    // (-1+c, 0, 0, c, 0, c, 0, 0)/x¹ at c = -1/2.
    let c = rat(-1, 2);
    show(
        "shear-family spec at c = -1/2, torsion free",
        &ChristoffelSpec::type_b([
            rat_int(-1) + c.clone(),
            rat_int(0),
            rat_int(0),
            c.clone(),
            rat_int(0),
            c.clone(),
            rat_int(0),
            rat_int(0),
        ]),
        &[c],
    );
}

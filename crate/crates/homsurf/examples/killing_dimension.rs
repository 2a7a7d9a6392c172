//! Exact dimension of the affine Killing algebra by jet prolongation:
//! how torsion eats symmetries.
//!
//! Run with: cargo run --release --example killing_dimension

use homsurf::connection::ChristoffelSpec;
use homsurf::killing::killing_dimension;
use homsurf::rat::{rat_int, Rat};

fn dim_of(label: &str, s: &ChristoffelSpec) {
    println!("{label:<46} dim K = {}", killing_dimension(s).unwrap());
}

fn main() {
    // The flat plane carries the full 6-dimensional affine symmetry.
    dim_of("flat plane", &ChristoffelSpec::flat());

    // Constant torsion on the flat core: 6 -> 4.
    let xi = |v: [i64; 8]| -> [Rat; 8] { v.map(rat_int) };
    dim_of(
        "flat core + constant torsion (1,2)",
        &ChristoffelSpec::type_a(xi([0, 0, 1, 2, -1, -2, 0, 0])),
    );

    // A dim-6 family with symbols (1,0,0,1,0,1,0,0): adding torsion in the
    // second slot keeps 4 fields, torsion in the first kills all but 2.
    dim_of(
        "dim-6 core, torsion-free",
        &ChristoffelSpec::type_a(xi([1, 0, 0, 1, 0, 1, 0, 0])),
    );
    dim_of(
        "same core, T2 = 2",
        &ChristoffelSpec::type_a(xi([1, 0, 0, 3, 0, -1, 0, 0])),
    );
    dim_of(
        "same core, T1 = 1",
        &ChristoffelSpec::type_a(xi([1, 0, 1, 1, -1, 1, 0, 0])),
    );

    // The hyperbolic plane (1/x¹ symbols): 3 isometric-affine symmetries,
    // and any torsion reduces them to the half-plane pair.
    dim_of(
        "hyperbolic plane",
        &ChristoffelSpec::type_b(xi([-1, 0, 0, -1, 0, -1, 1, 0])),
    );
    dim_of(
        "hyperbolic plane + torsion (1,0)",
        &ChristoffelSpec::type_b(xi([-1, 0, 1, -1, -1, -1, 1, 0])),
    );

    // A generic spec keeps only the two translations.
    dim_of(
        "generic constant symbols",
        &ChristoffelSpec::type_a(xi([1, -2, 3, 1, 5, 7, -1, 2])),
    );
}

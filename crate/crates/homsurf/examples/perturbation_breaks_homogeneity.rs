//! Adding torsion to a homogeneous torsion-free surface need not leave a
//! homogeneous surface: a 1/x¹ torsion on a constant-symbol core can drop
//! the symmetry algebra from 6 dimensions to 3 — with no two fields that
//! span the tangent plane everywhere — or even to 1.
//!
//! Run with: cargo run --release --example perturbation_breaks_homogeneity

use homsurf::connection::{perturb, ChristoffelSpec, Coeff, TorsionVector};
use homsurf::killing::{killing_basis, killing_dimension, standard_dictionary};
use homsurf::rat::rat_int;

fn main() {
    // Constant-symbol core (1, 0, 0, 1, 0, 1, 0, 0): dim 6.
    let core = ChristoffelSpec::type_a([
        rat_int(1),
        rat_int(0),
        rat_int(0),
        rat_int(1),
        rat_int(0),
        rat_int(1),
        rat_int(0),
        rat_int(0),
    ]);
    println!("core: dim K = {}", killing_dimension(&core).unwrap());

    // Perturb by the half-plane torsion T2 = 1/x¹.
    let mixed = perturb(
        &core,
        &TorsionVector::new(Coeff::over_x1(rat_int(0)), Coeff::over_x1(rat_int(1))),
    )
    .unwrap();
    println!(
        "with T2 = 1/x1: kind {:?}, dim K = {}",
        mixed.kind(),
        killing_dimension(&mixed).unwrap()
    );
    let fields = killing_basis(&mixed, &standard_dictionary(&mixed, &[])).unwrap();
    for f in &fields {
        println!("   {f}");
    }
    // Every surviving field is proportional to d2 at each point: the
    // algebra has no pair of fields independent at a point, so the flow
    // cannot act transitively.
    println!("all fields point along d2: the perturbed surface is not homogeneous");

    // Torsion in the first slot instead: only d2 survives.
    let mixed1 = perturb(
        &core,
        &TorsionVector::new(Coeff::over_x1(rat_int(1)), Coeff::over_x1(rat_int(0))),
    )
    .unwrap();
    println!(
        "with T1 = 1/x1: dim K = {}",
        killing_dimension(&mixed1).unwrap()
    );
    for f in killing_basis(&mixed1, &standard_dictionary(&mixed1, &[])).unwrap() {
        println!("   {f}");
    }
}

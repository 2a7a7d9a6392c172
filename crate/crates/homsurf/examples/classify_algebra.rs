//! Lie-algebra classification by exact invariants: derived dimension,
//! Killing-form signature, and the discriminant of the quotient action.
//!
//! Run with: cargo run --release --example classify_algebra

use homsurf::connection::ChristoffelSpec;
use homsurf::killing::{killing_basis, standard_dictionary};
use homsurf::liealg::{classify_with_details, structure_constants, LieAlgebra};
use homsurf::rat::{rat, rat_int};

fn report(label: &str, l: &LieAlgebra) {
    let d = classify_with_details(l).unwrap();
    let delta = d
        .delta
        .as_ref()
        .map(homsurf::rat::rat_to_string)
        .unwrap_or_else(|| "-".into());
    println!(
        "{label:<34} tag {:<9} derived dim {}  signature ({},{},{})  delta {}",
        d.tag.as_str(),
        d.derived_dim,
        d.signature.0,
        d.signature.1,
        d.signature.2,
        delta
    );
}

fn main() {
    // The named bracket tables.
    let one = rat_int(1);
    report(
        "rotation algebra",
        &LieAlgebra::from_brackets(
            3,
            &[
                (1, 2, vec![(3, one.clone())]),
                (2, 3, vec![(1, one.clone())]),
                (3, 1, vec![(2, one.clone())]),
            ],
        ),
    );
    report(
        "lorentz algebra",
        &LieAlgebra::from_brackets(
            3,
            &[
                (1, 2, vec![(1, one.clone())]),
                (2, 3, vec![(3, one.clone())]),
                (3, 1, vec![(2, rat_int(2))]),
            ],
        ),
    );
    report(
        "nilpotent-center dim 4",
        &LieAlgebra::from_brackets(
            4,
            &[
                (2, 3, vec![(1, one.clone())]),
                (1, 4, vec![(1, one.clone())]),
                (2, 4, vec![(2, one.clone())]),
            ],
        ),
    );
    report(
        "rotation-action dim 4",
        &LieAlgebra::from_brackets(
            4,
            &[
                (1, 3, vec![(1, one.clone())]),
                (2, 3, vec![(2, one.clone())]),
                (1, 4, vec![(2, rat_int(-1))]),
                (2, 4, vec![(1, one.clone())]),
            ],
        ),
    );

    // Classified end to end from a spec: the Killing algebra of the
    // trig family (1,0,1,0,-1,0,1+c²,2c) at c = 1/2 with torsion (1,0).
    let c = rat(1, 2);
    let spec = ChristoffelSpec::type_a([
        rat_int(1),
        rat_int(0),
        rat_int(1),
        rat_int(0),
        rat_int(-1),
        rat_int(0),
        rat_int(1) + &c * &c,
        rat_int(2) * c.clone(),
    ]);
    let basis = killing_basis(&spec, &standard_dictionary(&spec, &[c])).unwrap();
    let l = structure_constants(&basis).unwrap();
    report("killing algebra of trig family", &l);
}

//! Splitting a connection into its torsion-free part and its torsion, and
//! putting it back together.
//!
//! Run with: cargo run --release --example torsion_decomposition

use homsurf::connection::{perturb, symmetrize, torsion, ChristoffelSpec, Coeff};
use homsurf::rat::{rat, rat_int};

fn main() {
    // A connection with constant symbols and an antisymmetric part:
    // Γ₁₂¹ = 3/2, Γ₂₁¹ = -1/2 differ, so the torsion is nonzero.
    let spec = ChristoffelSpec::type_a([
        rat_int(1),
        rat_int(0),
        rat(3, 2),
        rat_int(2),
        rat(-1, 2),
        rat_int(0),
        rat_int(0),
        rat_int(-1),
    ]);
    println!("spec document: {}", spec.to_json());

    let t = torsion(&spec);
    println!("torsion: T1 = {}, T2 = {}", t.t1.to_text(), t.t2.to_text());

    let sym = symmetrize(&spec);
    assert!(torsion(&sym).is_zero());
    println!("symmetrized: {}", sym.to_json());

    let back = perturb(&sym, &t).expect("symmetrization is torsion free");
    assert_eq!(back, spec);
    println!("perturb(symmetrize(s), torsion(s)) == s: exact round trip");

    // A mixed perturbation: add a 1/x¹ torsion to the same torsion-free
    // core. The result lives on the half-plane x¹ > 0.
    let mixed = perturb(
        &sym,
        &homsurf::connection::TorsionVector::new(
            Coeff::over_x1(rat_int(1)),
            Coeff::new(rat(1, 3), rat(-1, 2)),
        ),
    )
    .unwrap();
    println!("mixed-kind perturbation: kind = {:?}", mixed.kind());
    println!("  Γ₁₂¹ = {}", mixed.gamma(1, 2, 1).to_text());
    println!("  Γ₂₁¹ = {}", mixed.gamma(2, 1, 1).to_text());
}

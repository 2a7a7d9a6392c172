//! Curvature of half-plane connections: the dim-6 families are flat, the
//! hyperbolic planes are not, and torsion never enters the flatness of
//! the symmetric part.
//!
//! Run with: cargo run --release --example curvature_flatness

use homsurf::catalog::Catalog;
use homsurf::connection::curvature_at;
use homsurf::rat::{rat, rat_int, rat_to_string};

fn main() {
    let cat = Catalog::builtin();
    let t0 = (rat_int(0), rat_int(0));
    let points = [
        (rat_int(1), rat_int(0)),
        (rat(1, 2), rat_int(1)),
        (rat_int(3), rat(-2, 3)),
    ];

    println!("dim-6 half-plane families at T = 0:");
    for i in 0..=6 {
        let entry = cat.entry(&format!("B.N6.{i}")).unwrap();
        let params = entry.param_sample_maps().unwrap().remove(0);
        let spec = entry.instantiate(&params, &t0).unwrap().spec;
        let flat = points
            .iter()
            .all(|p| curvature_at(&spec, p).unwrap().is_zero());
        println!("   {:<8} flat everywhere sampled: {flat}", entry.id);
    }

    println!("\nhyperbolic planes at T = 0:");
    for id in ["B.N3.3", "B.N3.4"] {
        let spec = cat
            .entry(id)
            .unwrap()
            .instantiate(&Default::default(), &t0)
            .unwrap()
            .spec;
        let r = curvature_at(&spec, &(rat_int(1), rat_int(0))).unwrap();
        println!(
            "   {:<8} R^1_212 = {:>3}   R^2_112 = {:>3}",
            id,
            rat_to_string(&r.component(1, 2, 1, 2)),
            rat_to_string(&r.component(2, 1, 1, 2)),
        );
    }
}

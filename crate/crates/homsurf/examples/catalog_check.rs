//! Verifies every family in the shipped catalog: recomputed dimension,
//! basis span, algebra tag, and symmetrization inclusion for each torsion
//! branch, plus the dimension-2 degeneration off the branches.

use homsurf::catalog::{verify_catalog, Catalog, VerifyOptions};

fn main() {
    let catalog = Catalog::builtin();
    let reports = verify_catalog(catalog, &VerifyOptions::default()).expect("verification ran");
    let mut failures = 0;
    for r in &reports {
        let status = if r.all_ok() { "ok " } else { "FAIL" };
        if !r.all_ok() {
            failures += 1;
        }
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        println!(
            "[{status}] {:8} {:24} dim {} basis {} tag {} inclusion {}",
            r.id,
            params.join(" "),
            r.dim_ok,
            r.basis_ok,
            r.tag_ok,
            r.inclusion_ok
        );
    }
    println!("{} reports, {} failures", reports.len(), failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

//! Closed-form radial measures and their moment verification: the measure
//! must satisfy ∫ Jⁿ dν = εₙ!·d(n) for the resolution of identity to hold.
//!
//! ```bash
//! cargo run --example moment_measures
//! ```

use gkcs::measures::{closed_form_measure, verify_moments};
use gkcs::models::{example1_build, example3_build, gk_linear_build};

fn main() -> gkcs::Result<()> {
    for model in [
        gk_linear_build(1.0),
        example1_build(1.0),
        example3_build(1.0, 1.0, 1.0, 0.1),
    ] {
        let measure = model.measure.as_ref().expect("closed form exists");
        println!(
            "{}: density {:?}, atoms {:?}{}",
            model.tag,
            measure.density,
            measure.atoms,
            if measure.nonpositive_somewhere {
                "  [signed]"
            } else {
                ""
            }
        );
        let report = verify_moments(measure, &model.spectrum, &model.degeneracy, 12, 128, 1e-8)?;
        for row in report.rows.iter().take(6) {
            println!(
                "  n = {:>2}: ∫Jⁿdν = {:>18.8} target {:>18.8} rel err {:.1e}",
                row.n, row.computed, row.target, row.rel_error
            );
        }
        println!(
            "  … max rel error over n ≤ 12: {:.2e} ({} Gauss-Laguerre nodes) → {}\n",
            report.max_rel_error,
            report.quad_nodes,
            if report.pass { "PASS" } else { "FAIL" }
        );
    }

    println!("example2 has no closed form:");
    match closed_form_measure("example2") {
        Err(e) => println!("  {e}  → fall back to the Laguerre reconstruction"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

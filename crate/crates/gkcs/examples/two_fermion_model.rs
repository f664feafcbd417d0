//! The boson-two-fermion model: sector diagonalization, the level-merging
//! inequalities, and branch vector coherent states with their matrix kernel.
//!
//! ```bash
//! cargo run --example two_fermion_model
//! ```

use gkcs::kernels::matrix_kernel;
use gkcs::models::{degeneracy_free_check, two_fermion_spectrum, TwoFermionParams};
use gkcs::states::branch_vcs;

fn main() -> gkcs::Result<()> {
    let params = TwoFermionParams {
        omega: 1.0,
        eps1: 0.2,
        eps2: 0.45,
        g1: 0.1,
        g2: 0.1,
    };
    let table = two_fermion_spectrum(params);
    println!("sector table (E_n = ωn + E₀):");
    for row in &table.rows {
        println!(
            "  (k,l) = ({},{}): E₀ = {:>8.5}, ε_kl = {:.2}, shift g_kl/ω = {:.2}",
            row.k,
            row.l,
            row.e0,
            row.eps_kl,
            row.g_kl / params.omega
        );
    }

    let check = degeneracy_free_check(params);
    println!(
        "\nlevel merging (disjoint-sector construction): degeneracy-free = {}",
        check.free
    );
    if let Some(merged) = check.merged_spectrum(params.omega) {
        let head: Vec<f64> = (0..9).map(|n| merged.eps(n)).collect();
        println!("  merged ε-sequence: {head:?} …");
    }

    let branches = table.branch_set();
    branches.validate(16)?;
    let j_diag = [1.0, 0.8, 1.2, 0.5];
    let g_diag = [0.0, 0.3, 0.7, 1.1];
    println!("\nbranch states (each a canonical coherent state on its shifted mode):");
    let mut bundles = Vec::new();
    for b in 0..branches.len() {
        let bundle = branch_vcs(&branches, b, &j_diag, &g_diag, 1e-12)?;
        println!(
            "  branch {}: J = {}, norm = {:.12}",
            branches.label(b),
            j_diag[b],
            bundle.ket.norm()
        );
        bundles.push(bundle);
    }
    println!("\noverlap matrix ⟨j|k⟩ (δ_jk expected):");
    for a in &bundles {
        let row: Vec<String> = bundles
            .iter()
            .map(|b| format!("{:+.2e}", a.ket.inner(&b.ket).norm()))
            .collect();
        println!("  [{}]", row.join(", "));
    }

    let k = matrix_kernel(
        &branches,
        (&j_diag, &g_diag),
        (&[0.5, 0.8, 2.0, 0.1], &[1.0, 0.3, 0.0, 0.2]),
        1e-12,
    )?;
    println!("\nmatrix kernel K(x;y) is diagonal by the one-hot structure:");
    for j in 0..branches.len() {
        println!(
            "  K_{{{j}{j}}} = {:+.6} {:+.6}i   (off-diagonals exactly 0)",
            k[(j, j)].re,
            k[(j, j)].im
        );
    }
    Ok(())
}

//! Degeneracy-extended states |J, γ, θ⟩ for the three shipped models:
//! boson⊗fermion (d = 1,2,2,…), the planar oscillator (d = ⌊n/2⌋+1) and
//! the 3D charged oscillator (d = (n+1)(n+2)/2).
//!
//! ```bash
//! cargo run --example degenerate_families
//! ```

use gkcs::models::{example1_build, example2_build, example3_build};
use gkcs::states::{degenerate_state, energy_expectation, evolve};

fn main() -> gkcs::Result<()> {
    let models = [
        example1_build(1.0),
        example2_build(1.0, 1.0),
        example3_build(1.0, 1.0, 1.0, 0.1),
    ];
    let (j, gamma, theta) = (1.5, 0.3, 1.0);
    for model in &models {
        let d: Vec<u64> = (0..8).map(|n| model.degeneracy.d(n)).collect();
        println!("{}: d(n) = {:?} …", model.tag, d);
        let ket = degenerate_state(&model.spectrum, &model.degeneracy, j, gamma, theta, 1e-12)?;
        let (energy, tail) = energy_expectation(&ket, &model.spectrum)?;
        println!(
            "  |J={j}, γ={gamma}, θ={theta}⟩: {} coefficients over (n, j) labels, norm = {:.12}",
            ket.len(),
            ket.norm()
        );
        println!(
            "  ⟨H⟩/ω = {:.12} (target J = {j}, tail est {:.1e})",
            energy / model.omega(),
            tail
        );
        let t = 2.0;
        let evolved = evolve(&ket, &model.spectrum, t)?;
        let direct = degenerate_state(
            &model.spectrum,
            &model.degeneracy,
            j,
            gamma + model.omega() * t,
            theta,
            1e-12,
        )?;
        println!(
            "  temporal stability residual at t = {t}: {:.2e}\n",
            evolved.max_coeff_distance(&direct)
        );
    }
    Ok(())
}

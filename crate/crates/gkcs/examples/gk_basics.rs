//! Plain coherent states from a linear spectrum: normalization,
//! temporal stability, and the action identity.
//!
//! ```bash
//! cargo run --example gk_basics
//! ```

use gkcs::spectrum::EnergySpectrum;
use gkcs::states::{energy_expectation, evolve, gk_state};

fn main() -> gkcs::Result<()> {
    let spec = EnergySpectrum::linear(1.0);

    println!("normalization 𝒩(J) = Σ Jⁿ/εₙ! (linear spectrum ⇒ e^J):");
    for j in [0.1, 1.0, 5.0] {
        let n = spec.normalization(j, 1e-13)?;
        println!(
            "  J = {j:>4}: 𝒩 = {:.12e}  (depth {}, tail ≤ {:.2e}, vs e^J rel err {:.2e})",
            n.value,
            n.depth,
            n.tail_bound,
            (n.value - j.exp()).abs() / j.exp()
        );
    }

    let (j, gamma) = (2.0, 0.7);
    let ket = gk_state(&spec, j, gamma, 1e-12)?;
    println!(
        "\n|J={j}, γ={gamma}⟩: {} coefficients, norm = {:.15}, tail ≤ {:.2e}",
        ket.len(),
        ket.norm(),
        ket.tail_bound
    );

    let t = 1.3;
    let evolved = evolve(&ket, &spec, t)?;
    let direct = gk_state(&spec, j, gamma + t, 1e-12)?;
    println!(
        "temporal stability: max |evolve(|J,γ⟩, t) - |J,γ+ωt⟩| = {:.2e} at t = {t}",
        evolved.max_coeff_distance(&direct)
    );

    println!("\naction identity ⟨H⟩ = ωJ:");
    for j in [0.5, 1.0, 2.0, 5.0] {
        let ket = gk_state(&spec, j, 0.3, 1e-13)?;
        let (energy, tail) = energy_expectation(&ket, &spec)?;
        println!(
            "  J = {j}: ⟨H⟩ = {energy:.12}  (|⟨H⟩ - ωJ| = {:.2e}, tail est {:.2e})",
            (energy - j).abs(),
            tail
        );
    }
    Ok(())
}

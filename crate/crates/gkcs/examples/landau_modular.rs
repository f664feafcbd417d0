//! The planar-electron double Fock space: commuting operator pairs, the
//! thermal vector, the modular triple (J_β, Δ_β, S_β) and the KMS boundary
//! condition checked on the truncation.
//!
//! ```bash
//! cargo run --example landau_modular
//! ```

use num_complex::Complex64;

use gkcs::landau::{
    build_operators, displacement, kms_check, modular_involution_check, modular_triple,
    thermal_two_point, thermal_vector, Mode,
};

fn main() -> gkcs::Result<()> {
    let (beta, omega) = (1.0, 1.0);

    let ops = build_operators(8, omega);
    let comm_q1p1 = (&ops.q1.mat * &ops.p1.mat - &ops.p1.mat * &ops.q1.mat)[(0, 0)];
    let comm_q1q2 = (&ops.q1.mat * &ops.q2.mat - &ops.q2.mat * &ops.q1.mat).norm();
    println!("operator algebra at K = 8:");
    println!("  [Q₁,P₁] ground entry = {comm_q1p1} (i expected)");
    println!("  ‖[Q₁,Q₂]‖ = {comm_q1q2} (cross-mode operators commute exactly)");
    println!(
        "  H Ψ_(3,1): eigenvalue {} (ω(n-ℓ) = 2)",
        ops.h.entry(3, 1, 3, 1).re
    );

    let u1 = displacement(Complex64::new(0.4, 0.1), Mode::One, 12, 1e-6)?;
    let u2 = displacement(Complex64::new(0.2, -0.3), Mode::Two, 12, 1e-6)?;
    let comm = (&u1.mat * &u2.mat - &u2.mat * &u1.mat).norm();
    println!("  ‖[U₁(z), U₂(z')]‖ = {comm} (commutant relation on the truncation)");

    let k_max = 30;
    let tv = thermal_vector(beta, omega, k_max);
    println!("\nthermal vector Φ_β at ωβ = 1, K = {k_max}:");
    println!("  ‖Φ_β‖² = {:.15} (= 1 - e^(-(K+1)ωβ))", tv.norm2());
    println!("  λ₂/λ₀ = {:.12} (= e^(-2ωβ))", tv.lambda[2] / tv.lambda[0]);

    let triple = modular_triple(beta, omega, k_max);
    println!("\nmodular triple:");
    println!(
        "  Δ_β = e^(-βH) entrywise: max deviation {}",
        triple.delta_equals_exp_beta_h()
    );
    println!(
        "  S_β = J_β Δ_β^(1/2) vs direct λ-ratio action: residual {}",
        triple.polar_decomposition_residual()
    );

    let zs = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(0.2, -0.4),
    ];
    let res = modular_involution_check(&zs, beta, omega, k_max, 1e-6)?;
    println!("  involution ‖S_β U₁(z)Φ_β - U₁(-z)Φ_β‖ per sample: {res:?}");

    println!("\nKMS boundary condition F(t+iβ) = ⟨α_t[B]A⟩ for A = U₁(0.3), B = U₁(0.2i):");
    let (z_a, z_b, t) = (Complex64::new(0.3, 0.0), Complex64::new(0.0, 0.2), 0.7);
    for k in [10usize, 20, 30] {
        let r = kms_check(z_a, z_b, beta, omega, t, k, 1e-2)?;
        println!(
            "  K = {k:>2}: continuation residual {:.2e}, truncation error vs closed form {:.2e}",
            r.continuation_residual, r.truncation_error
        );
    }
    println!("  (the truncated weights satisfy the boundary identity exactly; only the");
    println!("   distance to the untruncated two-point function shrinks with K)");
    let exact = thermal_two_point(z_a, z_b, beta, omega, Complex64::new(t, 0.0));
    println!("  closed-form F(t) = {exact}");
    Ok(())
}

//! The planar eigenfunctions Ψ_{nℓ}(x, y) through displacement matrix
//! elements, their grid orthonormality, and the finite-difference check
//! that Q₁ = -i∂ₓ + y/2 and P₁ = -i∂_y - x/2 act like the mode-1 ladder.
//!
//! ```bash
//! cargo run --example wigner_intertwining
//! ```

use gkcs::landau::{intertwining_check, wigner_eval, wigner_inner_grid};

fn main() -> gkcs::Result<()> {
    println!("Ψ₀₀(x, y) = (2π)^(-1/2) e^(-(x²+y²)/4):");
    for (x, y) in [(0.0, 0.0), (1.0, 0.0), (1.0, -2.0)] {
        let v = wigner_eval(0, 0, x, y);
        let gauss = (-(x * x + y * y) / 4.0).exp() / (std::f64::consts::TAU).sqrt();
        println!("  Ψ₀₀({x}, {y}) = {:+.8} (Gaussian {gauss:+.8})", v.re);
    }

    println!("\ngrid orthonormality on [-8, 8]² with h = 0.05 (trapezoid):");
    for (n1, l1, n2, l2) in [(0, 0, 0, 0), (1, 0, 1, 0), (0, 0, 1, 0), (1, 1, 0, 1)] {
        let v = wigner_inner_grid(n1, l1, n2, l2, 8.0, 0.05);
        println!("  ⟨Ψ_{n1}{l1}|Ψ_{n2}{l2}⟩ ≈ {:+.8} {:+.2e}i", v.re, v.im);
    }

    println!("\nintertwining: central differences vs ladder action,");
    println!("residual is O(h²):");
    let pairs = [(0, 0), (1, 0), (1, 1)];
    let points = [(0.3, -0.2), (1.0, 0.5), (-0.7, 1.1), (0.0, 0.0)];
    for h in [0.04, 0.02, 0.01] {
        let r = intertwining_check(&pairs, &points, h)?;
        println!("  h = {h}: max residual {r:.3e}");
    }
    Ok(())
}

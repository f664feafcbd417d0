//! Function-space side of the basis identification Ψ_{nℓ} ↔ |φₙ⟩⟨φ_ℓ|.
//!
//! The planar eigenfunctions are evaluated through single-mode displacement
//! matrix elements, `Ψ_{nℓ}(x, y) = (2π)^{-1/2} ⟨φ_ℓ| U(x,y)* |φₙ⟩` with
//! `z = (y - ix)/√2`, and the intertwining of the planar operators
//! `Q₁ = -i∂ₓ + y/2`, `P₁ = -i∂_y - x/2` with the ladder action is checked
//! by central finite differences on these closed-form values.

use num_complex::Complex64;

use super::mode;
use crate::{Error, Result};

/// `Ψ_{nℓ}(x, y) = (2π)^{-1/2} ⟨φ_ℓ|D(-z)|φₙ⟩`, z = (y - ix)/√2.
pub fn wigner_eval(n: usize, l: usize, x: f64, y: f64) -> Complex64 {
    let z = Complex64::new(y, -x) / 2f64.sqrt();
    mode::disp_element(l, n, -z) / (std::f64::consts::TAU).sqrt()
}

/// Ladder prediction for Q₁Ψ_{nℓ}: (√n Ψ_{n-1,ℓ} + √(n+1) Ψ_{n+1,ℓ})/√2.
fn q1_ladder(n: usize, l: usize, x: f64, y: f64) -> Complex64 {
    let mut v = ((n + 1) as f64).sqrt() * wigner_eval(n + 1, l, x, y);
    if n > 0 {
        v += (n as f64).sqrt() * wigner_eval(n - 1, l, x, y);
    }
    v / 2f64.sqrt()
}

/// Ladder prediction for P₁Ψ_{nℓ}: -i(√n Ψ_{n-1,ℓ} - √(n+1) Ψ_{n+1,ℓ})/√2.
fn p1_ladder(n: usize, l: usize, x: f64, y: f64) -> Complex64 {
    let mut v = ((n + 1) as f64).sqrt() * wigner_eval(n + 1, l, x, y);
    if n > 0 {
        v -= (n as f64).sqrt() * wigner_eval(n - 1, l, x, y);
    }
    Complex64::new(0.0, 1.0) * v / 2f64.sqrt()
}

/// Applies Q₁ = -i∂ₓ + y/2 and P₁ = -i∂_y - x/2 by central differences to
/// Ψ_{nℓ} at the sample points and returns the max deviation from the
/// ladder-action prediction (O(h²) by construction).
pub fn intertwining_check(
    pairs: &[(usize, usize)],
    points: &[(f64, f64)],
    h: f64,
) -> Result<f64> {
    if h > 0.05 {
        return Err(Error::GridTooCoarse {
            h,
            reason: "central differences need h ≤ 0.05 for the O(h²) bound to bite".into(),
        });
    }
    let i = Complex64::new(0.0, 1.0);
    let mut worst = 0.0f64;
    for &(n, l) in pairs {
        for &(x, y) in points {
            let ddx = (wigner_eval(n, l, x + h, y) - wigner_eval(n, l, x - h, y)) / (2.0 * h);
            let ddy = (wigner_eval(n, l, x, y + h) - wigner_eval(n, l, x, y - h)) / (2.0 * h);
            let psi = wigner_eval(n, l, x, y);
            let q1 = -i * ddx + 0.5 * y * psi;
            let p1 = -i * ddy - 0.5 * x * psi;
            worst = worst.max((q1 - q1_ladder(n, l, x, y)).norm());
            worst = worst.max((p1 - p1_ladder(n, l, x, y)).norm());
        }
    }
    Ok(worst)
}

/// Grid inner product `⟨Ψ_{n₁ℓ₁}|Ψ_{n₂ℓ₂}⟩` by the 2D trapezoid rule on
/// [-w, w]² with spacing h.
pub fn wigner_inner_grid(
    n1: usize,
    l1: usize,
    n2: usize,
    l2: usize,
    half_width: f64,
    h: f64,
) -> Complex64 {
    let steps = (2.0 * half_width / h).round() as usize;
    let mut acc = Complex64::new(0.0, 0.0);
    for ix in 0..=steps {
        let x = -half_width + ix as f64 * h;
        let wx = if ix == 0 || ix == steps { 0.5 } else { 1.0 };
        for iy in 0..=steps {
            let y = -half_width + iy as f64 * h;
            let wy = if iy == 0 || iy == steps { 0.5 } else { 1.0 };
            acc += wx * wy * wigner_eval(n1, l1, x, y).conj() * wigner_eval(n2, l2, x, y);
        }
    }
    acc * h * h
}

//! Single-mode Fock-space building blocks.
//!
//! Displacement matrix elements use the associated-Laguerre closed form
//! `⟨m|D(z)|n⟩ = √(n!/m!) z^{m-n} e^{-|z|²/2} Lₙ^{(m-n)}(|z|²)` (m ≥ n),
//! which is numerically stable on a truncation; the dense exponential of
//! the generator is kept as a test oracle only. Entries produced this way
//! are exact submatrix elements of the untruncated operator, so adjoints
//! and products against diagonal operators behave exactly.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Associated Laguerre polynomial Lₙ^{(α)}(x), integer α ≥ 0.
pub fn assoc_laguerre(n: usize, alpha: usize, x: f64) -> f64 {
    let a = alpha as f64;
    if n == 0 {
        return 1.0;
    }
    let mut lm1 = 1.0f64;
    let mut l = 1.0 + a - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + a - x) * l - (kf + a) * lm1) / (kf + 1.0);
        lm1 = l;
        l = next;
    }
    l
}

pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Single matrix element ⟨m|D(z)|n⟩ of the displacement operator.
pub fn disp_element(m: usize, n: usize, z: Complex64) -> Complex64 {
    let s = z.norm_sqr();
    let gauss = (-0.5 * s).exp();
    if m >= n {
        let amp = (0.5 * (ln_factorial(n) - ln_factorial(m))).exp();
        let lag = assoc_laguerre(n, m - n, s);
        z.powu((m - n) as u32) * amp * gauss * lag
    } else {
        let amp = (0.5 * (ln_factorial(m) - ln_factorial(n))).exp();
        let lag = assoc_laguerre(m, n - m, s);
        (-z.conj()).powu((n - m) as u32) * amp * gauss * lag
    }
}

/// Truncated displacement matrix with entries `⟨m|D(z)|n⟩`, m, n ≤ k_max.
pub fn displacement_matrix(z: Complex64, k_max: usize) -> DMatrix<Complex64> {
    let dim = k_max + 1;
    DMatrix::from_fn(dim, dim, |m, n| disp_element(m, n, z))
}

/// Annihilation matrix `a|n⟩ = √n |n-1⟩` on the truncation.
pub fn annihilation_matrix(k_max: usize) -> DMatrix<Complex64> {
    let dim = k_max + 1;
    let mut a = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// Column-wise norm deficits `1 - Σ_m |u_{mn}|²` of a truncated matrix:
/// the mass each column loses beyond the cut.
pub fn column_deficits(u: &DMatrix<Complex64>) -> Vec<f64> {
    (0..u.ncols())
        .map(|n| {
            let col_norm2: f64 = (0..u.nrows()).map(|m| u[(m, n)].norm_sqr()).sum();
            1.0 - col_norm2
        })
        .collect()
}

/// Upper tail `P(X > k)` of a Poisson(λ) variable: the vacuum-column mass a
/// displacement by z with λ = |z|² leaks past the truncation.
pub fn poisson_tail(lambda: f64, k: usize) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    let mut term = (-lambda).exp();
    let mut cdf = term;
    for m in 1..=k {
        term *= lambda / m as f64;
        cdf += term;
    }
    (1.0 - cdf).max(0.0)
}

/// Thermal weights λₙ = (1 - e^{-ωβ}) e^{-nωβ} for n = 0..=k_max.
pub fn thermal_weights(beta: f64, omega: f64, k_max: usize) -> Vec<f64> {
    let q = (-omega * beta).exp();
    let head = 1.0 - q;
    (0..=k_max).map(|n| head * q.powi(n as i32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    /// Dense matrix exponential of z a† - z̄ a by scaling-free Taylor sum;
    /// oracle only (the closed form is the production path).
    fn displacement_by_exponential(z: Complex64, k_max: usize) -> DMatrix<Complex64> {
        let dim = k_max + 1;
        let a = annihilation_matrix(k_max);
        let gen = &a.adjoint() * z - &a * z.conj();
        let mut out = DMatrix::<Complex64>::identity(dim, dim);
        let mut power = DMatrix::<Complex64>::identity(dim, dim);
        for k in 1..120 {
            power = (&power * &gen) / Complex64::new(k as f64, 0.0);
            out += &power;
        }
        out
    }

    #[test]
    fn displacement_zero_is_identity() {
        let u = displacement_matrix(Complex64::new(0.0, 0.0), 6);
        for m in 0..=6 {
            for n in 0..=6 {
                let expect = if m == n { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(u[(m, n)].re, expect, epsilon = 1e-15);
                assert_abs_diff_eq!(u[(m, n)].im, 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn displacement_vacuum_column_is_coherent_state() {
        let z = Complex64::new(0.6, -0.3);
        let u = displacement_matrix(z, 20);
        let gauss = (-0.5 * z.norm_sqr()).exp();
        for m in 0..=10usize {
            let expect = z.powu(m as u32) * gauss / ln_factorial(m).exp().sqrt();
            assert_abs_diff_eq!((u[(m, 0)] - expect).norm(), 0.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn closed_form_matches_dense_exponential_oracle() {
        // inner block of the truncated exponential converges to the exact
        // matrix elements; compare away from the cut
        let z = Complex64::new(0.4, 0.25);
        let k_max = 24;
        let u = displacement_matrix(z, k_max);
        let o = displacement_by_exponential(z, k_max);
        for m in 0..=10 {
            for n in 0..=10 {
                assert_abs_diff_eq!((u[(m, n)] - o[(m, n)]).norm(), 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn displacement_is_unitary_up_to_leakage() {
        let z = Complex64::new(1.0, 0.0);
        let u = displacement_matrix(z, 40);
        let deficits = column_deficits(&u);
        for n in 0..=10 {
            assert!(deficits[n].abs() <= 1e-10, "column {n}: {}", deficits[n]);
        }
        // columns near the cut genuinely leak
        assert!(deficits[40] > 1e-2);
    }

    #[test]
    fn adjoint_equals_negated_argument() {
        let z = Complex64::new(0.3, 0.7);
        let u = displacement_matrix(z, 16);
        let v = displacement_matrix(-z, 16);
        let diff = (&u.adjoint() - &v).norm();
        assert_abs_diff_eq!(diff, 0.0, epsilon = 1e-13);
    }

    #[test]
    fn poisson_tail_matches_complement() {
        assert_abs_diff_eq!(poisson_tail(0.25, 20), 0.0, epsilon = 1e-15);
        let lam = 2.0f64;
        // direct complement for a small cut
        let direct: f64 = 1.0
            - (0..=3)
                .map(|m| (-lam).exp() * lam.powi(m) / (1..=m as usize).map(|k| k as f64).product::<f64>())
                .sum::<f64>();
        assert_relative_eq!(poisson_tail(lam, 3), direct, max_relative = 1e-12);
    }

    #[test]
    fn thermal_weights_sum_geometrically() {
        let w = thermal_weights(1.0, 1.0, 30);
        let total: f64 = w.iter().sum();
        assert_relative_eq!(total, 1.0 - (-31.0f64).exp(), max_relative = 1e-13);
        assert_relative_eq!(w[2] / w[0], (-2.0f64).exp(), max_relative = 1e-14);
    }
}

//! Reproducing kernels and resolution-of-identity verification.
//!
//! The angle average over the almost-periodic scalar product is never
//! materialized as an integral: its defining limit
//! `(1/2T)∫_{-T}^{T} e^{i(ε_a-ε_b)γ} dγ → δ_{ε_a,ε_b}` is realized as the
//! analytic rule [`phase_average`]. For integer spectra this coincides with
//! averaging γ over [0, 2π) with normalized Lebesgue measure. The θ-average
//! over the degeneracy index is exact finite Fourier orthogonality, so all
//! off-diagonal terms of a resolution-of-identity check vanish analytically;
//! what remains to verify numerically is the diagonal moment condition
//! `rₙ = (∫ Jⁿ dν) / (εₙ!·d(n)) = 1`, and that is what the reports contain.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::measures::{target_moments, RadialMeasure};
use crate::quad;
use crate::spectrum::{BranchSet, DegeneracySequence, EnergySpectrum};
use crate::{Error, Result};

/// Kronecker delta on frequencies: 1 if ε_a = ε_b (within `freq_tol`), else 0.
///
/// This is the artifact's realization of the symbolic angle measure; it is
/// symmetric and idempotent as an indicator.
pub fn phase_average_with_tol(eps_a: f64, eps_b: f64, freq_tol: f64) -> f64 {
    if (eps_a - eps_b).abs() <= freq_tol {
        1.0
    } else {
        0.0
    }
}

/// [`phase_average_with_tol`] with exact frequency matching.
pub fn phase_average(eps_a: f64, eps_b: f64) -> f64 {
    phase_average_with_tol(eps_a, eps_b, 0.0)
}

/// Long-T numerical mean `(1/2T)∫_{-T}^{T} e^{iΔγ}dγ = sin(ΔT)/(ΔT)`.
///
/// Diagnostic only: for incommensurate spectra the defining limit is a
/// Besicovitch mean whose convergence rate carries no contract here.
pub fn phase_average_numeric(eps_a: f64, eps_b: f64, t_max: f64) -> f64 {
    let delta = eps_a - eps_b;
    if delta == 0.0 {
        1.0
    } else {
        (delta * t_max).sin() / (delta * t_max)
    }
}

/// A kernel evaluation with its point pair and truncation metadata.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct KernelValue {
    pub value: Complex64,
    /// The (J, γ) points the kernel was evaluated at.
    pub x: (f64, f64),
    pub y: (f64, f64),
    pub truncation: usize,
    pub tail_bound: f64,
}

/// Scalar reproducing kernel
/// `K((J,γ),(J',γ')) = Σₙ (JJ')^{n/2} e^{iεₙ(γ-γ')} / εₙ!`,
/// truncated with a certified tail bound ≤ tol on the absolute series.
pub fn kernel_eval(
    spec: &EnergySpectrum,
    x: (f64, f64),
    y: (f64, f64),
    tol: f64,
) -> Result<KernelValue> {
    let (j1, gamma1) = x;
    let (j2, gamma2) = y;
    if j1 < 0.0 || j2 < 0.0 {
        return Err(Error::OutsideConvergenceDomain {
            j: j1.min(j2),
            radius: f64::INFINITY,
        });
    }
    // |terms| form the normalization series at the geometric mean action
    let j_eff = (j1 * j2).sqrt();
    let magnitude = spec.normalization(j_eff, tol)?;
    let dgamma = gamma1 - gamma2;
    let mut value = Complex64::new(0.0, 0.0);
    let ln_j = if j_eff > 0.0 { j_eff.ln() } else { 0.0 };
    for n in 0..=magnitude.depth {
        let f = spec.eps_factorial(n)?;
        let amp = if j_eff == 0.0 && n == 0 {
            1.0
        } else {
            (n as f64 * ln_j - f.ln).exp()
        };
        value += Complex64::from_polar(amp, spec.eps(n) * dgamma);
    }
    Ok(KernelValue {
        value,
        x,
        y,
        truncation: magnitude.depth,
        tail_bound: magnitude.tail_bound,
    })
}

/// Matrix-valued kernel of the branch construction: entry (j, k) is the
/// overlap of the normalized branch states; the one-hot structure makes it
/// diagonal, and the off-diagonal entries are exactly zero by construction.
pub fn matrix_kernel(
    branches: &BranchSet,
    x: (&[f64], &[f64]),
    y: (&[f64], &[f64]),
    tol: f64,
) -> Result<DMatrix<Complex64>> {
    let n = branches.len();
    let (jx, gx) = x;
    let (jy, gy) = y;
    assert!(jx.len() == n && gx.len() == n && jy.len() == n && gy.len() == n);
    let mut out = DMatrix::zeros(n, n);
    for j in 0..n {
        let spec = branches.branch(j)?;
        let kv = kernel_eval(spec, (jx[j], gx[j]), (jy[j], gy[j]), tol)?;
        let nx = spec.normalization(jx[j], tol)?.value;
        let ny = spec.normalization(jy[j], tol)?.value;
        out[(j, j)] = kv.value / (nx * ny).sqrt();
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ResolutionStatus {
    Pass,
    Fail,
    /// No measure is available; the identity holds only in the weak sense of
    /// the truncated-series pairing, so no pass/fail is claimed.
    WeakSenseOnly,
}

/// Outcome of a resolution-of-identity check, reduced to diagonal moment
/// ratios (the off-diagonals vanish analytically via [`phase_average`]).
#[derive(Debug, Clone, Serialize)]
pub struct ResolutionReport {
    pub model: String,
    /// rₙ = (∫ Jⁿ dν)/(εₙ!·d(n)) for n = 0..=n_max.
    pub ratios: Vec<f64>,
    pub max_ratio_deviation: f64,
    /// Certified analytically by the angle averages, not by quadrature.
    pub max_offdiag: f64,
    pub quad_nodes: usize,
    pub tol: f64,
    pub status: ResolutionStatus,
}

/// Verifies the resolution of identity for a model in the weak sense: the
/// γ- and θ-averages kill all off-diagonal matrix elements analytically,
/// leaving the diagonal condition rₙ = 1, computed by quadrature.
///
/// With `measure = None` the report carries [`ResolutionStatus::WeakSenseOnly`].
pub fn resolution_check(
    model: &str,
    spec: &EnergySpectrum,
    deg: &DegeneracySequence,
    measure: Option<&RadialMeasure>,
    n_max: usize,
    quad_nodes: usize,
    tol: f64,
) -> Result<ResolutionReport> {
    let Some(measure) = measure else {
        return Ok(ResolutionReport {
            model: model.to_string(),
            ratios: Vec::new(),
            max_ratio_deviation: f64::NAN,
            max_offdiag: 0.0,
            quad_nodes: 0,
            tol,
            status: ResolutionStatus::WeakSenseOnly,
        });
    };
    let rule = quad::gauss_laguerre(quad_nodes);
    let mut ratios = Vec::with_capacity(n_max + 1);
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let target = target_moments(spec, deg, n)?;
        let r = measure.moment(n, &rule) / target;
        worst = worst.max((r - 1.0).abs());
        ratios.push(r);
    }
    Ok(ResolutionReport {
        model: model.to_string(),
        ratios,
        max_ratio_deviation: worst,
        max_offdiag: 0.0,
        quad_nodes,
        tol,
        status: if worst <= tol {
            ResolutionStatus::Pass
        } else {
            ResolutionStatus::Fail
        },
    })
}

/// Checks the reproducing property `K(x,y) = ∫ K(x,z) K(z,y) dμ(z) dν(z)`
/// over a sample of point pairs. The γ-part of the z-integral is evaluated
/// analytically by [`phase_average`] (exact for integer spectra), reducing
/// the double sum to matched frequencies; the J-part inserts the quadrature
/// moments, so the residual measures `Σₙ tₙ(x,y)(rₙ - 1)`.
pub fn kernel_idempotency(
    spec: &EnergySpectrum,
    deg: &DegeneracySequence,
    measure: &RadialMeasure,
    points: &[((f64, f64), (f64, f64))],
    quad_nodes: usize,
    tol: f64,
) -> Result<f64> {
    // the analytic γ-average is an exact finite-period average only when the
    // frequencies are integers
    for n in 0..32 {
        let e = spec.eps(n);
        if (e - e.round()).abs() > 1e-12 {
            return Err(Error::ConfigInvalid(format!(
                "kernel idempotency needs an integer spectrum; ε_{n} = {e}"
            )));
        }
    }
    let rule = quad::gauss_laguerre(quad_nodes);
    let mut worst = 0.0f64;
    for &(x, y) in points {
        let lhs = kernel_eval(spec, x, y, tol)?;
        let j_eff = (x.0 * y.0).sqrt();
        let dgamma = x.1 - y.1;
        let ln_j = if j_eff > 0.0 { j_eff.ln() } else { 0.0 };
        let mut rhs = Complex64::new(0.0, 0.0);
        for n in 0..=lhs.truncation {
            let f = spec.eps_factorial(n)?;
            let amp = if j_eff == 0.0 && n == 0 {
                1.0
            } else {
                (n as f64 * ln_j - f.ln).exp()
            };
            let target = target_moments(spec, deg, n)?;
            let r = measure.moment(n, &rule) / target;
            rhs += Complex64::from_polar(amp * r, spec.eps(n) * dgamma);
        }
        worst = worst.max((lhs.value - rhs).norm());
    }
    Ok(worst)
}

/// Smallest eigenvalue of the hermitian Gram matrix `[K(xᵢ, xⱼ)]` over a
/// sample point set (positive semi-definiteness probe).
pub fn gram_min_eigenvalue(spec: &EnergySpectrum, points: &[(f64, f64)], tol: f64) -> Result<f64> {
    let m = points.len();
    let mut gram = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            gram[(i, j)] = kernel_eval(spec, points[i], points[j], tol)?.value;
        }
    }
    // enforce exact hermiticity before the eigensolve
    let herm = (gram.clone() + gram.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    Ok(eig
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &v| acc.min(v)))
}

/// Deterministic sample of (J, γ) points in [0, j_max] × [0, 2π), for Gram
/// and idempotency sweeps (plain LCG; the seed is part of the provenance).
pub fn sample_points(seed: u64, count: usize, j_max: f64) -> Vec<(f64, f64)> {
    let mut state = seed
        .wrapping_mul(6364136223846793005)
        .wrapping_add(1442695040888963407);
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    (0..count)
        .map(|_| (next() * j_max, next() * std::f64::consts::TAU))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::closed_form_measure;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn linear() -> EnergySpectrum {
        EnergySpectrum::linear(1.0)
    }

    #[test]
    fn phase_average_is_frequency_delta() {
        assert_eq!(phase_average(3.0, 3.0), 1.0);
        assert_eq!(phase_average(3.0, 5.0), 0.0);
        let spec = linear();
        for a in 0..6 {
            for b in 0..6 {
                let expect = if a == b { 1.0 } else { 0.0 };
                assert_eq!(phase_average(spec.eps(a), spec.eps(b)), expect);
            }
        }
    }

    #[test]
    fn phase_average_numeric_decays() {
        let v = phase_average_numeric(1.0, 2.0, 1e4);
        assert!(v.abs() < 1e-3);
        assert_eq!(phase_average_numeric(2.0, 2.0, 1e4), 1.0);
    }

    #[test]
    fn kernel_diagonal_equals_normalization() {
        let spec = linear();
        let j = 1.7;
        let k = kernel_eval(&spec, (j, 0.4), (j, 0.4), 1e-13).unwrap();
        let n = spec.normalization(j, 1e-13).unwrap();
        assert_eq!(k.value.im, 0.0);
        assert_eq!(k.value.re, n.value);
        assert_eq!(k.truncation, n.depth);
    }

    #[test]
    fn kernel_exponential_closed_form() {
        let spec = linear();
        let (x, y) = ((1.0, 0.2), (2.0, 1.1));
        let k = kernel_eval(&spec, x, y, 1e-14).unwrap();
        let z = Complex64::from_polar((x.0 * y.0).sqrt(), x.1 - y.1);
        let expected = z.exp();
        assert_abs_diff_eq!((k.value - expected).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn kernel_hermitian_symmetry() {
        let spec = linear();
        let k1 = kernel_eval(&spec, (1.0, 0.2), (2.0, 1.1), 1e-13).unwrap();
        let k2 = kernel_eval(&spec, (2.0, 1.1), (1.0, 0.2), 1e-13).unwrap();
        assert_abs_diff_eq!((k1.value - k2.value.conj()).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn matrix_kernel_structure() {
        let branches = BranchSet::new(
            vec![linear(), linear(), linear()],
            vec!["a".into(), "b".into(), "c".into()],
        );
        let jx = [1.0, 2.0, 0.5];
        let gx = [0.1, 0.9, 0.0];
        let k_same = matrix_kernel(&branches, (&jx, &gx), (&jx, &gx), 1e-13).unwrap();
        for j in 0..3 {
            for l in 0..3 {
                if j == l {
                    assert!(k_same[(j, j)].re > 0.0);
                    assert_abs_diff_eq!(k_same[(j, j)].im, 0.0, epsilon = 1e-14);
                    // normalized kernel at equal arguments has unit diagonal
                    assert_relative_eq!(k_same[(j, j)].re, 1.0, max_relative = 1e-12);
                } else {
                    assert_eq!(k_same[(j, l)], Complex64::new(0.0, 0.0));
                }
            }
        }
        let jy = [0.3, 1.5, 2.5];
        let gy = [1.0, 0.4, 0.2];
        let kxy = matrix_kernel(&branches, (&jx, &gx), (&jy, &gy), 1e-13).unwrap();
        let kyx = matrix_kernel(&branches, (&jy, &gy), (&jx, &gx), 1e-13).unwrap();
        for j in 0..3 {
            for l in 0..3 {
                assert_abs_diff_eq!(
                    (kxy[(j, l)] - kyx[(l, j)].conj()).norm(),
                    0.0,
                    epsilon = 1e-13
                );
            }
        }
    }

    #[test]
    fn resolution_gk_linear_passes() {
        let spec = linear();
        let deg = DegeneracySequence::constant_one();
        let m = closed_form_measure("gk-linear").unwrap();
        let report = resolution_check("gk-linear", &spec, &deg, Some(&m), 12, 128, 1e-8).unwrap();
        assert_eq!(report.status, ResolutionStatus::Pass);
        for r in &report.ratios {
            assert_relative_eq!(*r, 1.0, max_relative = 1e-8);
        }
    }

    #[test]
    fn resolution_example1_passes() {
        let spec = linear();
        let deg = DegeneracySequence::boson_fermion();
        let m = closed_form_measure("example1").unwrap();
        let report = resolution_check("example1", &spec, &deg, Some(&m), 12, 128, 1e-8).unwrap();
        assert_eq!(report.status, ResolutionStatus::Pass);
    }

    #[test]
    fn resolution_example3_passes() {
        let spec = linear();
        let deg = DegeneracySequence::triangular();
        let m = closed_form_measure("example3").unwrap();
        let report = resolution_check("example3", &spec, &deg, Some(&m), 10, 128, 1e-8).unwrap();
        assert_eq!(report.status, ResolutionStatus::Pass);
        assert_eq!(report.max_offdiag, 0.0);
    }

    #[test]
    fn resolution_without_measure_is_weak_sense_only() {
        let spec = linear();
        let deg = DegeneracySequence::half_step();
        let report = resolution_check("example2", &spec, &deg, None, 10, 128, 1e-8).unwrap();
        assert_eq!(report.status, ResolutionStatus::WeakSenseOnly);
    }

    #[test]
    fn idempotency_residual_small_on_samples() {
        let spec = linear();
        let deg = DegeneracySequence::constant_one();
        let m = closed_form_measure("gk-linear").unwrap();
        let points = vec![
            ((1.0, 0.0), (1.0, 0.0)),
            ((2.0, 0.3), (1.5, 1.2)),
            ((0.5, 2.0), (0.5, 2.0)),
        ];
        let residual = kernel_idempotency(&spec, &deg, &m, &points, 128, 1e-13).unwrap();
        assert!(residual <= 1e-10, "residual {residual}");
    }

    #[test]
    fn idempotency_rejects_non_integer_spectrum() {
        let spec = EnergySpectrum::custom(1.0, |n| n as f64 * 0.7, "scaled");
        let deg = DegeneracySequence::constant_one();
        let m = closed_form_measure("gk-linear").unwrap();
        assert!(matches!(
            kernel_idempotency(&spec, &deg, &m, &[((1.0, 0.0), (1.0, 0.0))], 64, 1e-12),
            Err(Error::ConfigInvalid(_))
        ));
    }

    #[test]
    fn idempotency_two_term_exact_reduction() {
        // two-level hand computation at γ = 0 and perfect-square actions in
        // exact rational arithmetic: K(x,y) = 1 + √(JxJy) = 7 and the
        // reduced double sum with exact unit moment ratios is identical
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let int = |n: i64| BigRational::from_integer(BigInt::from(n));
        let sqrt_jxjy = int(6); // √(4·9)
        let lhs = int(1) + &sqrt_jxjy;
        let ratios = [int(1), int(1)];
        let rhs = &ratios[0] + &sqrt_jxjy * &ratios[1];
        assert_eq!(lhs, rhs);
        // the floating evaluation agrees to rounding
        let spec = EnergySpectrum::explicit(1.0, vec![0.0, 1.0]);
        let k = kernel_eval(&spec, (4.0, 0.0), (9.0, 0.0), 1e-12).unwrap();
        assert_abs_diff_eq!(k.value.re, 7.0, epsilon = 4e-15);
        assert_eq!(k.value.im, 0.0);
    }

    #[test]
    fn gram_matrices_positive_semidefinite() {
        let spec = linear();
        let points = sample_points(7, 10, 3.0);
        let min_eig = gram_min_eigenvalue(&spec, &points, 1e-12).unwrap();
        assert!(min_eig >= -1e-10, "min eigenvalue {min_eig}");
    }

    #[test]
    fn resolution_matches_moment_verification() {
        // the analytic reduction makes these literally the same numbers
        let spec = linear();
        let deg = DegeneracySequence::boson_fermion();
        let m = closed_form_measure("example1").unwrap();
        let report = resolution_check("example1", &spec, &deg, Some(&m), 8, 128, 1e-8).unwrap();
        let moments = crate::measures::verify_moments(&m, &spec, &deg, 8, 128, 1e-8).unwrap();
        for (row, r) in moments.rows.iter().zip(&report.ratios) {
            assert_relative_eq!(row.computed / row.target, *r, max_relative = 1e-15);
        }
    }
}

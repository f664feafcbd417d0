//! Truncated double-Fock realization of the planar-electron model: the two
//! commuting oscillator operator pairs, the thermal vector, the modular
//! triple, KMS checks, and the coherent states built from all of them.
//!
//! The basis is `{Ψ_{nℓ} : n, ℓ ≤ K}` with flat index `n·(K+1) + ℓ`; mode-1
//! operators act on n, mode-2 operators on ℓ. Mode-2 displacements follow
//! the conjugate convention `U₂(z') = I ⊗ D(z')ᵀ = I ⊗ D(-z̄')`.
//!
//! Truncation safety: every displacement-based operation carries a leakage
//! estimate (Poisson tail of |z|² past K plus the explicit column deficits)
//! and refuses rather than silently corrupt when it exceeds the tolerance.

pub mod mode;
pub mod modular;
pub mod wigner;

pub use modular::{
    kms_check, kms_cs, kms_cs_photon_added, modular_involution_check, modular_triple,
    overlap_law, thermal_two_point, thermal_vector, KmsCheckResult, ModularTriple, OverlapLaw,
    ThermalVector,
};
pub use wigner::{intertwining_check, wigner_eval, wigner_inner_grid};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::{Error, Result};

/// Dense complex matrix on the truncated (n, ℓ) basis.
#[derive(Debug, Clone)]
pub struct DoubleFockOperator {
    pub name: String,
    /// Per-mode truncation K; the matrix dimension is (K+1)².
    pub k_max: usize,
    pub mat: DMatrix<Complex64>,
}

impl DoubleFockOperator {
    pub fn dim(&self) -> usize {
        (self.k_max + 1) * (self.k_max + 1)
    }

    pub fn flat(&self, n: usize, l: usize) -> usize {
        n * (self.k_max + 1) + l
    }

    /// Entry ⟨Ψ_{nℓ}| M |Ψ_{n'ℓ'}⟩.
    pub fn entry(&self, n: usize, l: usize, np: usize, lp: usize) -> Complex64 {
        self.mat[(self.flat(n, l), self.flat(np, lp))]
    }

    /// Builds `m ⊗ I` (acts on the first index).
    pub fn from_mode1(name: impl Into<String>, k_max: usize, m: &DMatrix<Complex64>) -> Self {
        let dim = k_max + 1;
        assert_eq!(m.nrows(), dim);
        let mat = DMatrix::from_fn(dim * dim, dim * dim, |row, col| {
            let (n, l) = (row / dim, row % dim);
            let (np, lp) = (col / dim, col % dim);
            if l == lp {
                m[(n, np)]
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        DoubleFockOperator {
            name: name.into(),
            k_max,
            mat,
        }
    }

    /// Builds `I ⊗ m` (acts on the second index).
    pub fn from_mode2(name: impl Into<String>, k_max: usize, m: &DMatrix<Complex64>) -> Self {
        let dim = k_max + 1;
        assert_eq!(m.nrows(), dim);
        let mat = DMatrix::from_fn(dim * dim, dim * dim, |row, col| {
            let (n, l) = (row / dim, row % dim);
            let (np, lp) = (col / dim, col % dim);
            if n == np {
                m[(l, lp)]
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        DoubleFockOperator {
            name: name.into(),
            k_max,
            mat,
        }
    }

    pub fn adjoint(&self, name: impl Into<String>) -> Self {
        DoubleFockOperator {
            name: name.into(),
            k_max: self.k_max,
            mat: self.mat.adjoint(),
        }
    }

    /// Frobenius norm of `AB - BA` restricted to the inner block
    /// {n, ℓ ≤ K - 1} (an upper bound for the spectral norm there).
    pub fn commutator_inner_norm(&self, other: &Self) -> f64 {
        let comm = &self.mat * &other.mat - &other.mat * &self.mat;
        let dim = self.k_max + 1;
        let mut sum = 0.0f64;
        for n in 0..dim - 1 {
            for l in 0..dim - 1 {
                for np in 0..dim - 1 {
                    for lp in 0..dim - 1 {
                        sum += comm[(n * dim + l, np * dim + lp)].norm_sqr();
                    }
                }
            }
        }
        sum.sqrt()
    }

    /// Row-major dense dump with interleaved re/im, for external
    /// cross-checking.
    pub fn csv_dump(&self) -> String {
        let mut out = String::new();
        for row in 0..self.mat.nrows() {
            let mut cells = Vec::with_capacity(2 * self.mat.ncols());
            for col in 0..self.mat.ncols() {
                let v = self.mat[(row, col)];
                cells.push(format!("{:e}", v.re));
                cells.push(format!("{:e}", v.im));
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// The operator set of the two commuting oscillator pairs.
pub struct LandauOps {
    pub a1: DoubleFockOperator,
    pub a1_dag: DoubleFockOperator,
    pub a2: DoubleFockOperator,
    pub a2_dag: DoubleFockOperator,
    pub q1: DoubleFockOperator,
    pub p1: DoubleFockOperator,
    pub q2: DoubleFockOperator,
    pub p2: DoubleFockOperator,
    pub h1: DoubleFockOperator,
    pub h2: DoubleFockOperator,
    /// H = H₁ - H₂ with eigenvalue ω(n - ℓ) on Ψ_{nℓ}.
    pub h: DoubleFockOperator,
}

/// Builds A₁, A₂ and adjoints, the quadratures Qᵢ = (Aᵢ+Aᵢ†)/√2,
/// Pᵢ = (Aᵢ-Aᵢ†)/(i√2), and H₁ = ω(A₁†A₁ + ½), H₂ = ω(A₂†A₂ + ½),
/// H = H₁ - H₂.
pub fn build_operators(k_max: usize, omega: f64) -> LandauOps {
    assert!(k_max >= 2);
    let a = mode::annihilation_matrix(k_max);
    let a1 = DoubleFockOperator::from_mode1("A1", k_max, &a);
    let a2 = DoubleFockOperator::from_mode2("A2", k_max, &a);
    let a1_dag = a1.adjoint("A1+");
    let a2_dag = a2.adjoint("A2+");
    let sqrt2_inv = Complex64::new(1.0 / 2f64.sqrt(), 0.0);
    let i_sqrt2_inv = Complex64::new(0.0, -1.0 / 2f64.sqrt());
    let mk = |name: &str, m: DMatrix<Complex64>| DoubleFockOperator {
        name: name.into(),
        k_max,
        mat: m,
    };
    let q1 = mk("Q1", (&a1.mat + &a1_dag.mat) * sqrt2_inv);
    let p1 = mk("P1", (&a1.mat - &a1_dag.mat) * i_sqrt2_inv);
    let q2 = mk("Q2", (&a2.mat + &a2_dag.mat) * sqrt2_inv);
    let p2 = mk("P2", (&a2.mat - &a2_dag.mat) * i_sqrt2_inv);
    let dim = k_max + 1;
    let diag = |name: &str, f: &dyn Fn(usize, usize) -> f64| {
        let mat = DMatrix::from_fn(dim * dim, dim * dim, |row, col| {
            if row == col {
                Complex64::new(f(row / dim, row % dim), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        mk(name, mat)
    };
    let h1 = diag("H1", &|n, _| omega * (n as f64 + 0.5));
    let h2 = diag("H2", &|_, l| omega * (l as f64 + 0.5));
    let h = diag("H", &|n, l| omega * (n as f64 - l as f64));
    LandauOps {
        a1,
        a1_dag,
        a2,
        a2_dag,
        q1,
        p1,
        q2,
        p2,
        h1,
        h2,
        h,
    }
}

/// Which mode a displacement acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    One,
    Two,
}

/// Truncation-safety probe for |z| at truncation K: enforces the warning
/// threshold |z|² ≤ K/4 and a Poisson-tail leakage estimate ≤ leak_tol.
pub fn check_truncation_safe(z: Complex64, k_max: usize, leak_tol: f64) -> Result<f64> {
    let lambda = z.norm_sqr();
    if lambda > k_max as f64 / 4.0 {
        return Err(Error::TruncationUnsafe {
            k: k_max,
            reason: format!("|z|² = {lambda} exceeds the K/4 safety threshold"),
        });
    }
    let tail = mode::poisson_tail(lambda, k_max);
    if tail > leak_tol {
        return Err(Error::TruncationUnsafe {
            k: k_max,
            reason: format!("vacuum-column leakage {tail} exceeds {leak_tol}"),
        });
    }
    Ok(tail)
}

/// Displacement operator on the chosen mode: `U₁(z) = D(z) ⊗ I` or
/// `U₂(z) = I ⊗ D(-z̄)` (conjugate convention for the second mode).
pub fn displacement(
    z: Complex64,
    which: Mode,
    k_max: usize,
    leak_tol: f64,
) -> Result<DoubleFockOperator> {
    check_truncation_safe(z, k_max, leak_tol)?;
    match which {
        Mode::One => {
            let u = mode::displacement_matrix(z, k_max);
            Ok(DoubleFockOperator::from_mode1(
                format!("U1({z})"),
                k_max,
                &u,
            ))
        }
        Mode::Two => {
            let u = mode::displacement_matrix(-z.conj(), k_max);
            Ok(DoubleFockOperator::from_mode2(
                format!("U2({z})"),
                k_max,
                &u,
            ))
        }
    }
}

/// Report of a block resolution-of-identity quadrature.
#[derive(Debug, Clone, Serialize)]
pub struct BlockResolutionReport {
    pub block: usize,
    pub radius: f64,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    /// Max |entry - δδ| over the block.
    pub max_dev_identity: f64,
    /// Max deviation from the analytic limit of the integral. For the
    /// thermal family this limit is `I ⊗ ρ_β`, not the identity.
    pub max_dev_analytic: f64,
}

/// Quadrature of `(1/2π)∫_{|z|≤R} |z,z̄,β⟩⟨z,z̄,β| dx dy` projected on the
/// block {n, ℓ ≤ block}.
///
/// Displacing only mode 1 leaves the mode-2 thermal correlations of Φ_β in
/// place, so the integral converges to `I ⊗ ρ_β` on the block — not to the
/// identity. The report carries the deviation from both, so the gap
/// `1 - λ_ℓ` against the plain identity is visible rather than hidden.
pub fn kms_cs_block_resolution(
    beta: f64,
    omega: f64,
    block: usize,
    radius: f64,
    radial_nodes: usize,
    angular_nodes: usize,
) -> BlockResolutionReport {
    let lambda = mode::thermal_weights(beta, omega, block);
    let b = block + 1;
    let mut acc = vec![vec![Complex64::new(0.0, 0.0); b * b]; b * b];
    let radial = crate::quad::gauss_legendre_on(radial_nodes, 0.0, radius);
    for (&s, &ws) in radial.nodes.iter().zip(&radial.weights) {
        for a in 0..angular_nodes {
            let phi = a as f64 * std::f64::consts::TAU / angular_nodes as f64;
            let z = Complex64::from_polar(s, phi);
            // dx dy = 2 d²z; angular trapezoid weight 2π/M
            let w = ws * s * 2.0 * std::f64::consts::TAU / angular_nodes as f64
                / std::f64::consts::TAU;
            let mut coeff = vec![Complex64::new(0.0, 0.0); b * b];
            for n in 0..b {
                for l in 0..b {
                    coeff[n * b + l] = mode::disp_element(n, l, z) * lambda[l].sqrt();
                }
            }
            for (i, &ci) in coeff.iter().enumerate() {
                for (jj, &cj) in coeff.iter().enumerate() {
                    acc[i][jj] += ci * cj.conj() * w;
                }
            }
        }
    }
    let mut dev_identity = 0.0f64;
    let mut dev_analytic = 0.0f64;
    for n in 0..b {
        for l in 0..b {
            for np in 0..b {
                for lp in 0..b {
                    let v = acc[n * b + l][np * b + lp];
                    let id = if n == np && l == lp { 1.0 } else { 0.0 };
                    let th = if n == np && l == lp { lambda[l] } else { 0.0 };
                    dev_identity = dev_identity.max((v - Complex64::new(id, 0.0)).norm());
                    dev_analytic = dev_analytic.max((v - Complex64::new(th, 0.0)).norm());
                }
            }
        }
    }
    BlockResolutionReport {
        block,
        radius,
        radial_nodes,
        angular_nodes,
        max_dev_identity: dev_identity,
        max_dev_analytic: dev_analytic,
    }
}

/// Quadrature of the z-form vector-family resolution
/// `(1/2π)² Σ_ℓ ∫∫ |z,z̄';ℓ⟩⟨z,z̄';ℓ| dx dy dx' dy'` on the block
/// {n, ℓ ≤ block}; the z and z' integrals factorize exactly, so the check
/// runs two planar quadratures. The analytic limit here *is* the identity.
pub fn vcs1_block_resolution(
    block: usize,
    radius: f64,
    radial_nodes: usize,
    angular_nodes: usize,
) -> BlockResolutionReport {
    let b = block + 1;
    // z-part: M_{nn'} = (1/2π)∫ e^{-|z|²} zⁿ z̄^{n'} / √(n! n'!) dx dy
    let mut m_z = vec![vec![Complex64::new(0.0, 0.0); b]; b];
    // z'-part per ℓ: w_ℓ = (1/2π)∫ e^{-|z'|²} |z'|^{2ℓ} / ℓ! dx' dy'
    let mut w_l = vec![0.0f64; b];
    let radial = crate::quad::gauss_legendre_on(radial_nodes, 0.0, radius);
    for (&s, &ws) in radial.nodes.iter().zip(&radial.weights) {
        let gauss = (-s * s).exp();
        for a in 0..angular_nodes {
            let phi = a as f64 * std::f64::consts::TAU / angular_nodes as f64;
            let z = Complex64::from_polar(s, phi);
            let w = ws * s * 2.0 / angular_nodes as f64;
            for n in 0..b {
                for np in 0..b {
                    let amp = (-0.5 * (mode::ln_factorial(n) + mode::ln_factorial(np))).exp();
                    m_z[n][np] += z.powu(n as u32) * z.conj().powu(np as u32) * gauss * amp * w;
                }
            }
        }
        for (l, wl) in w_l.iter_mut().enumerate() {
            // angular integral of |z'|^{2ℓ} is trivial
            *wl += ws * s * 2.0 * gauss * (s * s).powi(l as i32) / mode::ln_factorial(l).exp();
        }
    }
    let mut dev = 0.0f64;
    for n in 0..b {
        for l in 0..b {
            for np in 0..b {
                for lp in 0..b {
                    let v = if l == lp {
                        m_z[n][np] * w_l[l]
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    let id = if n == np && l == lp { 1.0 } else { 0.0 };
                    dev = dev.max((v - Complex64::new(id, 0.0)).norm());
                }
            }
        }
    }
    BlockResolutionReport {
        block,
        radius,
        radial_nodes,
        angular_nodes,
        max_dev_identity: dev,
        max_dev_analytic: dev,
    }
}

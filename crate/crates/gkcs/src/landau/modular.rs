//! Thermal vector, modular triple, and the KMS machinery.
//!
//! Everything here reduces to single-mode arithmetic: the thermal vector is
//! diagonal, mode-1 displacements factor through the first index, and the
//! Heisenberg rotation of a displacement is a phase rotation of its
//! argument. Two-point functions are therefore finite spectral sums
//! `Σ_{n,m≤K} λₙ (u_A)_{nm} (u_B)_{mn} e^{itω(m-n)}`, on which the analytic
//! continuation `t ↦ t + iβ` acts exactly termwise.
//!
//! A consequence worth stating: the truncated weights satisfy
//! `λₙ e^{-βω(m-n)} = λₘ` exactly, so the truncated pair (F, F-swapped)
//! fulfills the KMS boundary condition identically — the continuation
//! residual measures floating-point rounding, not truncation. Truncation
//! error lives in the distance between the finite sum and the untruncated
//! two-point function [`thermal_two_point`], which decreases with K.

use num_complex::Complex64;
use serde::Serialize;

use super::mode;
use crate::states::{Label, LabeledKet, StateFamily, StateParams};
use crate::Result;

/// Thermal purification Φ_β = Σ λₙ^{1/2} Ψ_{nn} with
/// λₙ = (1 - e^{-ωβ}) e^{-nωβ}, truncated at K.
#[derive(Debug, Clone, Serialize)]
pub struct ThermalVector {
    pub beta: f64,
    pub omega: f64,
    pub k_max: usize,
    pub lambda: Vec<f64>,
    /// Discarded mass Σ_{n>K} λₙ = e^{-(K+1)ωβ}, exactly geometric.
    pub tail_bound: f64,
}

impl ThermalVector {
    /// ‖Φ_β‖² = 1 - e^{-(K+1)ωβ} exactly.
    pub fn norm2(&self) -> f64 {
        1.0 - (-(self.k_max as f64 + 1.0) * self.omega * self.beta).exp()
    }

    /// The vector as a labeled ket on the (n, ℓ) basis.
    pub fn ket(&self) -> LabeledKet {
        let labels: Vec<Label> = (0..=self.k_max).map(|n| Label::NL { n, l: n }).collect();
        let coeffs: Vec<Complex64> = self
            .lambda
            .iter()
            .map(|&l| Complex64::new(l.sqrt(), 0.0))
            .collect();
        LabeledKet::from_parts(
            labels,
            coeffs,
            self.k_max,
            self.tail_bound,
            StateParams {
                family: StateFamily::KmsCs {
                    z: Complex64::new(0.0, 0.0),
                    beta: self.beta,
                },
                omega: self.omega,
                spectrum: "linear".into(),
                recorded_shift: 0.0,
            },
        )
    }
}

pub fn thermal_vector(beta: f64, omega: f64, k_max: usize) -> ThermalVector {
    assert!(beta > 0.0 && omega > 0.0);
    let lambda = mode::thermal_weights(beta, omega, k_max);
    ThermalVector {
        beta,
        omega,
        k_max,
        tail_bound: (-(k_max as f64 + 1.0) * omega * beta).exp(),
        lambda,
    }
}

/// The modular data (J_β, Δ_β, S_β) on the truncation: J_β conjugates and
/// swaps (n, ℓ) ↦ (ℓ, n); Δ_β is diagonal with entries λₙ/λ_ℓ = e^{-βω(n-ℓ)}
/// (equal to e^{-βH} with H = H₁ - H₂); S_β = J_β Δ_β^{1/2}.
#[derive(Debug, Clone)]
pub struct ModularTriple {
    pub beta: f64,
    pub omega: f64,
    pub k_max: usize,
}

impl ModularTriple {
    /// β·ω·(n - ℓ), the single shared exponent of all diagonal routes.
    fn exponent(&self, n: usize, l: usize) -> f64 {
        self.beta * (self.omega * (n as f64 - l as f64))
    }

    /// Δ_β entry at (n, ℓ).
    pub fn delta_entry(&self, n: usize, l: usize) -> f64 {
        (-self.exponent(n, l)).exp()
    }

    /// Antiunitary J_β on a coefficient matrix c[(n, ℓ)]: conjugate, swap.
    pub fn apply_j(&self, coeff: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let dim = coeff.len();
        (0..dim)
            .map(|n| (0..dim).map(|l| coeff[l][n].conj()).collect())
            .collect()
    }

    /// Δ_β^{p} (diagonal) on a coefficient matrix.
    pub fn apply_delta_pow(&self, coeff: &[Vec<Complex64>], p: f64) -> Vec<Vec<Complex64>> {
        coeff
            .iter()
            .enumerate()
            .map(|(n, row)| {
                row.iter()
                    .enumerate()
                    .map(|(l, &c)| c * (-p * self.exponent(n, l)).exp())
                    .collect()
            })
            .collect()
    }

    /// S_β = J_β Δ_β^{1/2} via the polar decomposition.
    pub fn apply_s(&self, coeff: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        self.apply_j(&self.apply_delta_pow(coeff, 0.5))
    }

    /// Direct action S_β Ψ_{ji} = √(λ_j/λ_i) Ψ_{ij} (antilinear), the
    /// second route for validating the polar decomposition.
    pub fn apply_s_direct(&self, coeff: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
        let dim = coeff.len();
        let mut out = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for (j, row) in coeff.iter().enumerate() {
            for (i, &c) in row.iter().enumerate() {
                let factor = (-0.5 * self.exponent(j, i)).exp();
                out[i][j] += c.conj() * factor;
            }
        }
        out
    }

    /// Max deviation between the polar-decomposition route and the direct
    /// λ-ratio action over all basis matrices up to the truncation.
    pub fn polar_decomposition_residual(&self) -> f64 {
        let dim = self.k_max + 1;
        let mut worst = 0.0f64;
        for j in 0..dim {
            for i in 0..dim {
                let mut basis = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
                basis[j][i] = Complex64::new(1.0, 0.0);
                let via_polar = self.apply_s(&basis);
                let direct = self.apply_s_direct(&basis);
                for n in 0..dim {
                    for l in 0..dim {
                        worst = worst.max((via_polar[n][l] - direct[n][l]).norm());
                    }
                }
            }
        }
        worst
    }

    /// Δ_β as a dense diagonal operator, for export and cross-checking.
    pub fn delta_operator(&self) -> super::DoubleFockOperator {
        let dim = self.k_max + 1;
        let mat = nalgebra::DMatrix::from_fn(dim * dim, dim * dim, |row, col| {
            if row == col {
                Complex64::new(self.delta_entry(row / dim, row % dim), 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        super::DoubleFockOperator {
            name: format!("Delta(beta={})", self.beta),
            k_max: self.k_max,
            mat,
        }
    }

    /// Max |Δ_β entry - e^{-β·(H entry)}| over the truncation; both are the
    /// same diagonal in exact arithmetic.
    pub fn delta_equals_exp_beta_h(&self) -> f64 {
        let dim = self.k_max + 1;
        let mut worst = 0.0f64;
        for n in 0..dim {
            for l in 0..dim {
                let h = self.omega * (n as f64 - l as f64);
                worst = worst.max((self.delta_entry(n, l) - (-(self.beta * h)).exp()).abs());
            }
        }
        worst
    }
}

pub fn modular_triple(beta: f64, omega: f64, k_max: usize) -> ModularTriple {
    assert!(beta > 0.0 && omega > 0.0);
    ModularTriple {
        beta,
        omega,
        k_max,
    }
}

/// Coefficient matrix of `U₁(z) Φ_β`: c[(j, i)] = λᵢ^{1/2} u(z)_{ji}.
fn displaced_thermal_matrix(z: Complex64, tv: &ThermalVector) -> Vec<Vec<Complex64>> {
    let dim = tv.k_max + 1;
    let u = mode::displacement_matrix(z, tv.k_max);
    (0..dim)
        .map(|j| {
            (0..dim)
                .map(|i| u[(j, i)] * tv.lambda[i].sqrt())
                .collect()
        })
        .collect()
}

/// Residual `‖S_β U₁(z)Φ_β - U₁(-z)Φ_β‖` per z-sample.
pub fn modular_involution_check(
    z_samples: &[Complex64],
    beta: f64,
    omega: f64,
    k_max: usize,
    leak_tol: f64,
) -> Result<Vec<f64>> {
    let tv = thermal_vector(beta, omega, k_max);
    let triple = modular_triple(beta, omega, k_max);
    let mut residuals = Vec::with_capacity(z_samples.len());
    for &z in z_samples {
        super::check_truncation_safe(z, k_max, leak_tol)?;
        let displaced = displaced_thermal_matrix(z, &tv);
        let s_applied = triple.apply_s(&displaced);
        let reflected = displaced_thermal_matrix(-z, &tv);
        let mut sum2 = 0.0f64;
        for n in 0..=k_max {
            for l in 0..=k_max {
                sum2 += (s_applied[n][l] - reflected[n][l]).norm_sqr();
            }
        }
        residuals.push(sum2.sqrt());
    }
    Ok(residuals)
}

/// Result of one KMS boundary-condition check.
#[derive(Debug, Clone, Serialize)]
pub struct KmsCheckResult {
    /// For the two-point function F(t) = ⟨φ_β; A α_t[B]⟩ on the truncation.
    pub f_t: Complex64,
    /// Termwise-exact continuation F(t + iβ).
    pub f_continued: Complex64,
    /// Swapped-order correlation ⟨φ_β; α_t[B] A⟩.
    pub swapped: Complex64,
    /// |F(t+iβ) - swapped|: rounding-level on any truncation (the truncated
    /// weights satisfy the KMS ratio identity exactly).
    pub continuation_residual: f64,
    /// |⟨φ_β; α_t[A]⟩ - ⟨φ_β; A⟩| (diagonal-in-energy invariance).
    pub invariance_residual: f64,
    /// |F(t) - untruncated two-point function|: the genuine truncation
    /// error, monotone decreasing in K.
    pub truncation_error: f64,
}

/// Checks the KMS boundary condition for A = U₁(z_a), B = U₁(z_b): builds
/// F(t) as a finite spectral sum over H₁, continues it termwise to t + iβ,
/// and compares with the swapped-order correlation.
pub fn kms_check(
    z_a: Complex64,
    z_b: Complex64,
    beta: f64,
    omega: f64,
    t: f64,
    k_max: usize,
    leak_tol: f64,
) -> Result<KmsCheckResult> {
    super::check_truncation_safe(z_a, k_max, leak_tol)?;
    super::check_truncation_safe(z_b, k_max, leak_tol)?;
    let lambda = mode::thermal_weights(beta, omega, k_max);
    let u_a = mode::displacement_matrix(z_a, k_max);
    let u_b = mode::displacement_matrix(z_b, k_max);
    let mut f_t = Complex64::new(0.0, 0.0);
    let mut f_cont = Complex64::new(0.0, 0.0);
    let mut swapped = Complex64::new(0.0, 0.0);
    for n in 0..=k_max {
        for m in 0..=k_max {
            let pair = u_a[(n, m)] * u_b[(m, n)];
            let rot = Complex64::cis(omega * t * (m as f64 - n as f64));
            f_t += lambda[n] * pair * rot;
            // e^{iω(t+iβ)(m-n)} = e^{iωt(m-n)} e^{-ωβ(m-n)}
            let damp = (-omega * beta * (m as f64 - n as f64)).exp();
            f_cont += lambda[n] * pair * rot * damp;
            let pair_swapped = u_b[(n, m)] * u_a[(m, n)];
            let rot_swapped = Complex64::cis(omega * t * (n as f64 - m as f64));
            swapped += lambda[n] * pair_swapped * rot_swapped;
        }
    }
    // invariance: ⟨α_t[A]⟩ via the rotated matrix vs ⟨A⟩ directly
    let mut inv_rot = Complex64::new(0.0, 0.0);
    let mut inv_plain = Complex64::new(0.0, 0.0);
    for n in 0..=k_max {
        inv_rot += lambda[n] * u_a[(n, n)] * Complex64::cis(omega * t * 0.0);
        inv_plain += lambda[n] * u_a[(n, n)];
    }
    let exact = thermal_two_point(z_a, z_b, beta, omega, Complex64::new(t, 0.0));
    Ok(KmsCheckResult {
        f_t,
        f_continued: f_cont,
        swapped,
        continuation_residual: (f_cont - swapped).norm(),
        invariance_residual: (inv_rot - inv_plain).norm(),
        truncation_error: (f_t - exact).norm(),
    })
}

/// Untruncated thermal two-point function of two displacements,
/// `⟨U(z_a) U(z_b e^{iωt})⟩_{ρ_β}`, holomorphic in complex t:
/// with c = coth(ωβ/2), β(t) = z_b e^{iωt} and β̄(t) = z̄_b e^{-iωt},
/// `F = exp[(α β̄ - ᾱ β)/2 - c(|α|² + β β̄ + ᾱ β + α β̄)/2]`.
pub fn thermal_two_point(
    z_a: Complex64,
    z_b: Complex64,
    beta: f64,
    omega: f64,
    t: Complex64,
) -> Complex64 {
    let c = 1.0 / (0.5 * omega * beta).tanh();
    let rot = (Complex64::new(0.0, 1.0) * omega * t).exp();
    let rot_bar = (Complex64::new(0.0, -1.0) * omega * t).exp();
    let b = z_b * rot;
    let b_bar = z_b.conj() * rot_bar;
    let alpha = z_a;
    let alpha_bar = z_a.conj();
    let phase = (alpha * b_bar - alpha_bar * b) * 0.5;
    let damp = (alpha * alpha_bar + b * b_bar + alpha_bar * b + alpha * b_bar) * (0.5 * c);
    (phase - damp).exp()
}

/// KMS coherent state `|z, z̄, β⟩ = U₁(z) Φ_β` as a labeled ket.
pub fn kms_cs(
    z: Complex64,
    beta: f64,
    omega: f64,
    k_max: usize,
    leak_tol: f64,
) -> Result<LabeledKet> {
    super::check_truncation_safe(z, k_max, leak_tol)?;
    let tv = thermal_vector(beta, omega, k_max);
    let coeff = displaced_thermal_matrix(z, &tv);
    let mut labels = Vec::with_capacity((k_max + 1) * (k_max + 1));
    let mut values = Vec::with_capacity(labels.capacity());
    let mut norm2 = 0.0f64;
    for (n, row) in coeff.iter().enumerate() {
        for (l, &c) in row.iter().enumerate() {
            labels.push(Label::NL { n, l });
            values.push(c);
            norm2 += c.norm_sqr();
        }
    }
    Ok(LabeledKet::from_parts(
        labels,
        values,
        k_max,
        (1.0 - norm2).max(0.0),
        StateParams {
            family: StateFamily::KmsCs { z, beta },
            omega,
            spectrum: "linear".into(),
            recorded_shift: 0.0,
        },
    ))
}

/// Second route to the same state, through photon-added states:
/// `Σₙ √(1-q) q^{n/2} (A₁† - z̄)ⁿ/√(n!) · U₁(z)Ψ_{0n}`. The repeated
/// truncated ladder applications make this route lose mass near the cut,
/// which is exactly what the route comparison is for.
pub fn kms_cs_photon_added(
    z: Complex64,
    beta: f64,
    omega: f64,
    k_max: usize,
    leak_tol: f64,
) -> Result<LabeledKet> {
    super::check_truncation_safe(z, k_max, leak_tol)?;
    let dim = k_max + 1;
    let q = (-omega * beta).exp();
    let head = (1.0 - q).sqrt();
    let u = mode::displacement_matrix(z, k_max);
    let mut coeff = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for n in 0..dim {
        // v = U₁(z) Ψ_{0n} restricted to the first index (column 0 of u)
        let mut v: Vec<Complex64> = (0..dim).map(|m| u[(m, 0)]).collect();
        // apply (A₁† - z̄) n times
        for _ in 0..n {
            let mut next = vec![Complex64::new(0.0, 0.0); dim];
            for m in 0..dim {
                if m > 0 {
                    next[m] += Complex64::new((m as f64).sqrt(), 0.0) * v[m - 1];
                }
                next[m] -= z.conj() * v[m];
            }
            v = next;
        }
        let weight = head * q.powf(n as f64 / 2.0) / (0.5 * mode::ln_factorial(n)).exp();
        for m in 0..dim {
            coeff[m][n] += weight * v[m];
        }
    }
    let mut labels = Vec::with_capacity(dim * dim);
    let mut values = Vec::with_capacity(dim * dim);
    let mut norm2 = 0.0f64;
    for (n, row) in coeff.iter().enumerate() {
        for (l, &c) in row.iter().enumerate() {
            labels.push(Label::NL { n, l });
            values.push(c);
            norm2 += c.norm_sqr();
        }
    }
    Ok(LabeledKet::from_parts(
        labels,
        values,
        k_max,
        (1.0 - norm2).max(0.0),
        StateParams {
            family: StateFamily::KmsCs { z, beta },
            omega,
            spectrum: "linear".into(),
            recorded_shift: 0.0,
        },
    ))
}

/// Overlap of displaced Fock columns against its closed form.
#[derive(Debug, Clone, Serialize)]
pub struct OverlapLaw {
    pub computed: Complex64,
    /// `e^{-(|z|²+|z'|²)/2} e^{z̄z'} δₙₘ`.
    pub closed_form: Complex64,
    pub residual: f64,
}

/// `⟨U₁(z)Ψ_{0n} | U₁(z')Ψ_{0m}⟩` computed on the truncation and compared
/// with the closed form.
pub fn overlap_law(
    z: Complex64,
    n: usize,
    z2: Complex64,
    m: usize,
    k_max: usize,
    leak_tol: f64,
) -> Result<OverlapLaw> {
    super::check_truncation_safe(z, k_max, leak_tol)?;
    super::check_truncation_safe(z2, k_max, leak_tol)?;
    let u = mode::displacement_matrix(z, k_max);
    let v = mode::displacement_matrix(z2, k_max);
    // the second index is untouched: ⟨·⟩ = δₙₘ · (column 0 inner product)
    let mut inner = Complex64::new(0.0, 0.0);
    if n == m {
        for p in 0..=k_max {
            inner += u[(p, 0)].conj() * v[(p, 0)];
        }
    }
    let closed = if n == m {
        ((-0.5) * (z.norm_sqr() + z2.norm_sqr()) + (z.conj() * z2).re).exp()
            * Complex64::cis((z.conj() * z2).im)
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok(OverlapLaw {
        computed: inner,
        closed_form: closed,
        residual: (inner - closed).norm(),
    })
}

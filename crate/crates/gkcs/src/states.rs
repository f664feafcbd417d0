//! Coherent-state families as truncated coefficient vectors.
//!
//! Every constructor returns a [`LabeledKet`]: a finite complex coefficient
//! array over a labeled basis, the truncation depth, a certified bound on
//! the discarded norm², and the parameters that produced it. Constructors
//! return normalized states; the non-normalized η-vectors used for kernel
//! work are available via [`gk_eta`].
//!
//! Component conventions differ between the families and are easy to trip
//! over:
//!
//! - branch states are normalized per branch, and distinct branches are
//!   exactly orthogonal;
//! - the infinite-degeneracy family `vcs1`/`vcs2` leaves the individual
//!   components non-normalized; only the sum over components has norm 1;
//! - `bcs` is normalized to unity.
//!
//! Infinite-degeneracy families accept either `(J, γ, J', γ')` or complex
//! `(z, z')` with `z = √J e^{-iγ}`; see [`action_to_z`] / [`z_to_action`].

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::series;
use crate::spectrum::{BranchSet, DegeneracySequence, EnergySpectrum};
use crate::{Error, Result};

/// Basis label of one coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    /// Single level |n⟩.
    N { n: usize },
    /// Degenerate level |n, j⟩ with j = 1..=d(n).
    NJ { n: usize, j: usize },
    /// Branch level φ_{jk}.
    Branch { branch: usize, k: usize },
    /// Double-Fock |n, ℓ⟩.
    NL { n: usize, l: usize },
}

/// Which family a ket belongs to, with the parameters that built it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum StateFamily {
    Gk { j: f64, gamma: f64 },
    GkEta { j: f64, gamma: f64 },
    Degenerate { j: f64, gamma: f64, theta: f64 },
    BranchVcs { branch: usize, j: f64, gamma: f64 },
    Vcs1 { j: f64, gamma: f64, j2: f64, gamma2: f64, component: usize },
    Vcs2 { j: f64, gamma: f64, j2: f64, gamma2: f64, component: usize },
    Bcs { j: f64, gamma: f64, j2: f64, gamma2: f64 },
    KmsCs { z: Complex64, beta: f64 },
}

/// Parameters carried by every ket for evolution and bookkeeping.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateParams {
    pub family: StateFamily,
    pub omega: f64,
    pub spectrum: String,
    /// Shift recorded by the spectrum (`ε₀` of the pre-shift levels).
    pub recorded_shift: f64,
}

/// Finite complex coefficient array over a labeled basis, with truncation
/// metadata and a certified tail bound on the discarded norm².
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledKet {
    pub labels: Vec<Label>,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
    pub truncation: usize,
    pub tail_bound: f64,
    pub params: StateParams,
}

impl LabeledKet {
    pub fn from_parts(
        labels: Vec<Label>,
        coeffs: Vec<Complex64>,
        truncation: usize,
        tail_bound: f64,
        params: StateParams,
    ) -> Self {
        LabeledKet {
            labels,
            re: coeffs.iter().map(|c| c.re).collect(),
            im: coeffs.iter().map(|c| c.im).collect(),
            truncation,
            tail_bound,
            params,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn coeff(&self, i: usize) -> Complex64 {
        Complex64::new(self.re[i], self.im[i])
    }

    pub fn coeffs(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.re
            .iter()
            .zip(&self.im)
            .map(|(&r, &i)| Complex64::new(r, i))
    }

    /// Coefficient of a specific label, zero if absent.
    pub fn coeff_of(&self, label: Label) -> Complex64 {
        self.labels
            .iter()
            .position(|&l| l == label)
            .map(|i| self.coeff(i))
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    pub fn norm2(&self) -> f64 {
        self.coeffs().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm2().sqrt()
    }

    /// ⟨self | other⟩, matching coefficients by label (missing labels
    /// contribute zero).
    pub fn inner(&self, other: &LabeledKet) -> Complex64 {
        let map: HashMap<Label, Complex64> =
            other.labels.iter().copied().zip(other.coeffs()).collect();
        self.labels
            .iter()
            .zip(self.coeffs())
            .map(|(l, c)| {
                map.get(l)
                    .map(|&oc| c.conj() * oc)
                    .unwrap_or_else(|| Complex64::new(0.0, 0.0))
            })
            .sum()
    }

    /// Max |cᵢ - c'ᵢ| over shared labels plus the mass of unshared ones.
    pub fn max_coeff_distance(&self, other: &LabeledKet) -> f64 {
        let map: HashMap<Label, Complex64> =
            other.labels.iter().copied().zip(other.coeffs()).collect();
        let mut worst = 0.0f64;
        for (l, c) in self.labels.iter().zip(self.coeffs()) {
            let oc = map
                .get(l)
                .copied()
                .unwrap_or_else(|| Complex64::new(0.0, 0.0));
            worst = worst.max((c - oc).norm());
        }
        for (l, oc) in other.labels.iter().zip(other.coeffs()) {
            if !self.labels.contains(l) {
                worst = worst.max(oc.norm());
            }
        }
        worst
    }

    /// CSV of the coefficient profile: label indices, re, im, modulus².
    pub fn csv_profile(&self) -> String {
        let mut out = String::from("label_1,label_2,re,im,modulus2\n");
        for (l, c) in self.labels.iter().zip(self.coeffs()) {
            let (a, b) = match *l {
                Label::N { n } => (n as i64, -1i64),
                Label::NJ { n, j } => (n as i64, j as i64),
                Label::Branch { branch, k } => (branch as i64, k as i64),
                Label::NL { n, l } => (n as i64, l as i64),
            };
            let line = format!("{a},{b},{:e},{:e},{:e}\n", c.re, c.im, c.norm_sqr());
            out.push_str(&line);
        }
        out
    }
}

/// `z = √J e^{-iγ}`.
pub fn action_to_z(j: f64, gamma: f64) -> Complex64 {
    Complex64::from_polar(j.sqrt(), -gamma)
}

/// Inverse of [`action_to_z`]: `J = |z|²`, `γ = -arg z`.
pub fn z_to_action(z: Complex64) -> (f64, f64) {
    (z.norm_sqr(), -z.arg())
}

fn require_shifted(spec: &EnergySpectrum) -> Result<()> {
    if spec.eps(0) != 0.0 {
        return Err(Error::UnshiftedSpectrum { eps0: spec.eps(0) });
    }
    Ok(())
}

/// Gazeau-Klauder state |J, γ⟩ with coefficients
/// `𝒩(J)^{-1/2} J^{n/2} e^{-iεₙγ} / √(εₙ!)`, truncated so the discarded
/// norm² is ≤ tol.
pub fn gk_state(spec: &EnergySpectrum, j: f64, gamma: f64, tol: f64) -> Result<LabeledKet> {
    build_gk(spec, j, gamma, tol, true)
}

/// Non-normalized η-vector of the same family (no 𝒩^{-1/2} factor); used
/// for reproducing-kernel work.
pub fn gk_eta(spec: &EnergySpectrum, j: f64, gamma: f64, tol: f64) -> Result<LabeledKet> {
    build_gk(spec, j, gamma, tol, false)
}

fn build_gk(
    spec: &EnergySpectrum,
    j: f64,
    gamma: f64,
    tol: f64,
    normalized: bool,
) -> Result<LabeledKet> {
    require_shifted(spec)?;
    let norm = spec.normalization(j, tol)?;
    let ln_norm = if normalized { norm.value.ln() } else { 0.0 };
    let mut labels = Vec::with_capacity(norm.depth + 1);
    let mut coeffs = Vec::with_capacity(norm.depth + 1);
    for n in 0..=norm.depth {
        let f = spec.eps_factorial(n)?;
        let ln_amp = if j == 0.0 && n == 0 {
            -0.5 * ln_norm
        } else {
            0.5 * (n as f64 * j.ln() - f.ln - ln_norm)
        };
        labels.push(Label::N { n });
        coeffs.push(Complex64::from_polar(ln_amp.exp(), -spec.eps(n) * gamma));
    }
    let family = if normalized {
        StateFamily::Gk { j, gamma }
    } else {
        StateFamily::GkEta { j, gamma }
    };
    let tail = if normalized {
        norm.tail_bound / norm.value
    } else {
        norm.tail_bound
    };
    Ok(LabeledKet::from_parts(
        labels,
        coeffs,
        norm.depth,
        tail,
        StateParams {
            family,
            omega: spec.omega(),
            spectrum: spec.descriptor().to_string(),
            recorded_shift: spec.recorded_shift(),
        },
    ))
}

/// Degeneracy-extended state |J, γ, θ⟩ over labels (n, j), j = 1..=d(n),
/// with coefficients `𝒩^{-1/2} J^{n/2} e^{-iεₙγ} e^{-ijθ} / √(εₙ!·d(n))`.
///
/// The j-range starts at 1, so a trivial degeneracy d ≡ 1 reproduces the
/// plain family up to the overall phase `e^{-iθ}`.
pub fn degenerate_state(
    spec: &EnergySpectrum,
    deg: &DegeneracySequence,
    j: f64,
    gamma: f64,
    theta: f64,
    tol: f64,
) -> Result<LabeledKet> {
    require_shifted(spec)?;
    let norm = spec.normalization(j, tol)?;
    let ln_norm = norm.value.ln();
    let mut labels = Vec::new();
    let mut coeffs = Vec::new();
    for n in 0..=norm.depth {
        let f = spec.eps_factorial(n)?;
        let d = deg.d(n);
        let ln_amp = if j == 0.0 && n == 0 {
            -0.5 * ((d as f64).ln() + ln_norm)
        } else {
            0.5 * (n as f64 * j.ln() - f.ln - (d as f64).ln() - ln_norm)
        };
        let amp = ln_amp.exp();
        let phase_n = -spec.eps(n) * gamma;
        for jj in 1..=d as usize {
            labels.push(Label::NJ { n, j: jj });
            coeffs.push(Complex64::from_polar(amp, phase_n - jj as f64 * theta));
        }
    }
    Ok(LabeledKet::from_parts(
        labels,
        coeffs,
        norm.depth,
        norm.tail_bound / norm.value,
        StateParams {
            family: StateFamily::Degenerate { j, gamma, theta },
            omega: spec.omega(),
            spectrum: spec.descriptor().to_string(),
            recorded_shift: spec.recorded_shift(),
        },
    ))
}

/// A branch state with the diagonal parameter bundles it came from.
#[derive(Debug, Clone)]
pub struct VCSBundle {
    pub branch: usize,
    pub ket: LabeledKet,
    pub j_diag: Vec<f64>,
    pub gamma_diag: Vec<f64>,
}

/// Branch vector coherent state: a ket supported on branch `branch` only
/// (the one-hot structure of the vector construction), normalized within
/// its branch. `j_diag` and `gamma_diag` are the diagonal parameter bundles
/// 𝐉 and 𝛄; only the `branch` entries enter the state.
pub fn branch_vcs(
    branches: &BranchSet,
    branch: usize,
    j_diag: &[f64],
    gamma_diag: &[f64],
    tol: f64,
) -> Result<VCSBundle> {
    if branch >= branches.len() {
        return Err(Error::BranchOutOfRange {
            index: branch,
            count: branches.len(),
        });
    }
    assert_eq!(j_diag.len(), branches.len());
    assert_eq!(gamma_diag.len(), branches.len());
    let spec = branches.branch(branch)?;
    require_shifted(spec)?;
    let j = j_diag[branch];
    let gamma = gamma_diag[branch];
    let norm = spec.normalization(j, tol)?;
    let ln_norm = norm.value.ln();
    let mut labels = Vec::with_capacity(norm.depth + 1);
    let mut coeffs = Vec::with_capacity(norm.depth + 1);
    for k in 0..=norm.depth {
        let f = spec.eps_factorial(k)?;
        let ln_amp = if j == 0.0 && k == 0 {
            -0.5 * ln_norm
        } else {
            0.5 * (k as f64 * j.ln() - f.ln - ln_norm)
        };
        labels.push(Label::Branch { branch, k });
        coeffs.push(Complex64::from_polar(ln_amp.exp(), -spec.eps(k) * gamma));
    }
    let ket = LabeledKet::from_parts(
        labels,
        coeffs,
        norm.depth,
        norm.tail_bound / norm.value,
        StateParams {
            family: StateFamily::BranchVcs { branch, j, gamma },
            omega: spec.omega(),
            spectrum: spec.descriptor().to_string(),
            recorded_shift: spec.recorded_shift(),
        },
    );
    Ok(VCSBundle {
        branch,
        ket,
        j_diag: j_diag.to_vec(),
        gamma_diag: gamma_diag.to_vec(),
    })
}

/// ℓ-th component of the first infinite-degeneracy vector family:
/// `Ψ_ℓ(J',γ') / √(𝒩𝒩') · Σₙ J^{n/2} e^{-iεₙγ} / √(εₙ!) |n, ℓ⟩`.
///
/// Individual components are **not** normalized; the norms² over all ℓ sum
/// to one. This differs from the per-branch normalization of [`branch_vcs`].
pub fn vcs1(
    spec: &EnergySpectrum,
    j: f64,
    gamma: f64,
    j2: f64,
    gamma2: f64,
    component_l: usize,
    tol: f64,
) -> Result<LabeledKet> {
    require_shifted(spec)?;
    let ns1 = spec.normalization(j, tol)?;
    let ns2 = spec.normalization(j2, tol)?;
    let f_l = spec.eps_factorial(component_l)?;
    // Ψ_ℓ(J', γ') = J'^{ℓ/2} e^{+iε_ℓ γ'} / √(ε_ℓ!)
    let ln_pref = if component_l == 0 {
        0.0
    } else if j2 == 0.0 {
        f64::NEG_INFINITY
    } else {
        0.5 * (component_l as f64 * j2.ln() - f_l.ln)
    };
    let pref = Complex64::from_polar(
        (ln_pref - 0.5 * (ns1.value.ln() + ns2.value.ln())).exp(),
        spec.eps(component_l) * gamma2,
    );
    let mut labels = Vec::with_capacity(ns1.depth + 1);
    let mut coeffs = Vec::with_capacity(ns1.depth + 1);
    for n in 0..=ns1.depth {
        let f = spec.eps_factorial(n)?;
        let ln_amp = if j == 0.0 && n == 0 {
            0.0
        } else {
            0.5 * (n as f64 * j.ln() - f.ln)
        };
        labels.push(Label::NL { n, l: component_l });
        coeffs.push(pref * Complex64::from_polar(ln_amp.exp(), -spec.eps(n) * gamma));
    }
    Ok(LabeledKet::from_parts(
        labels,
        coeffs,
        ns1.depth,
        (ns1.tail_bound / ns1.value) + (ns2.tail_bound / ns2.value),
        StateParams {
            family: StateFamily::Vcs1 {
                j,
                gamma,
                j2,
                gamma2,
                component: component_l,
            },
            omega: spec.omega(),
            spectrum: spec.descriptor().to_string(),
            recorded_shift: spec.recorded_shift(),
        },
    ))
}

/// n-th component of the second vector family, symmetric to [`vcs1`] under
/// (n ↔ ℓ) with `(J, γ, J', γ') ↦ (J', -γ', J, -γ)`.
pub fn vcs2(
    spec: &EnergySpectrum,
    j: f64,
    gamma: f64,
    j2: f64,
    gamma2: f64,
    component_n: usize,
    tol: f64,
) -> Result<LabeledKet> {
    require_shifted(spec)?;
    let ns1 = spec.normalization(j, tol)?;
    let ns2 = spec.normalization(j2, tol)?;
    let f_n = spec.eps_factorial(component_n)?;
    let ln_pref = if component_n == 0 {
        0.0
    } else if j == 0.0 {
        f64::NEG_INFINITY
    } else {
        0.5 * (component_n as f64 * j.ln() - f_n.ln)
    };
    let pref = Complex64::from_polar(
        (ln_pref - 0.5 * (ns1.value.ln() + ns2.value.ln())).exp(),
        -spec.eps(component_n) * gamma,
    );
    let mut labels = Vec::with_capacity(ns2.depth + 1);
    let mut coeffs = Vec::with_capacity(ns2.depth + 1);
    for l in 0..=ns2.depth {
        let f = spec.eps_factorial(l)?;
        let ln_amp = if j2 == 0.0 && l == 0 {
            0.0
        } else {
            0.5 * (l as f64 * j2.ln() - f.ln)
        };
        labels.push(Label::NL { n: component_n, l });
        coeffs.push(pref * Complex64::from_polar(ln_amp.exp(), spec.eps(l) * gamma2));
    }
    Ok(LabeledKet::from_parts(
        labels,
        coeffs,
        ns2.depth,
        (ns1.tail_bound / ns1.value) + (ns2.tail_bound / ns2.value),
        StateParams {
            family: StateFamily::Vcs2 {
                j,
                gamma,
                j2,
                gamma2,
                component: component_n,
            },
            omega: spec.omega(),
            spectrum: spec.descriptor().to_string(),
            recorded_shift: spec.recorded_shift(),
        },
    ))
}

/// Bi-coherent state over all (n, ℓ), normalized to unity:
/// `(𝒩𝒩')^{-1/2} Σ J^{n/2} J'^{ℓ/2} e^{-i(εₙγ - ε_ℓγ')} / √(εₙ! ε_ℓ!)`.
pub fn bcs(
    spec: &EnergySpectrum,
    j: f64,
    gamma: f64,
    j2: f64,
    gamma2: f64,
    tol: f64,
) -> Result<LabeledKet> {
    require_shifted(spec)?;
    let ns1 = spec.normalization(j, tol)?;
    let ns2 = spec.normalization(j2, tol)?;
    let ln_norm = ns1.value.ln() + ns2.value.ln();
    let mut labels = Vec::with_capacity((ns1.depth + 1) * (ns2.depth + 1));
    let mut coeffs = Vec::with_capacity((ns1.depth + 1) * (ns2.depth + 1));
    for n in 0..=ns1.depth {
        let fn_ = spec.eps_factorial(n)?;
        let ln_n = if j == 0.0 && n == 0 {
            0.0
        } else {
            0.5 * (n as f64 * j.ln() - fn_.ln)
        };
        let phase_n = -spec.eps(n) * gamma;
        for l in 0..=ns2.depth {
            let fl = spec.eps_factorial(l)?;
            let ln_l = if j2 == 0.0 && l == 0 {
                0.0
            } else {
                0.5 * (l as f64 * j2.ln() - fl.ln)
            };
            labels.push(Label::NL { n, l });
            coeffs.push(Complex64::from_polar(
                (ln_n + ln_l - 0.5 * ln_norm).exp(),
                phase_n + spec.eps(l) * gamma2,
            ));
        }
    }
    Ok(LabeledKet::from_parts(
        labels,
        coeffs,
        ns1.depth.max(ns2.depth),
        (ns1.tail_bound / ns1.value) + (ns2.tail_bound / ns2.value),
        StateParams {
            family: StateFamily::Bcs {
                j,
                gamma,
                j2,
                gamma2,
            },
            omega: spec.omega(),
            spectrum: spec.descriptor().to_string(),
            recorded_shift: spec.recorded_shift(),
        },
    ))
}

/// Time evolution under the family's own Hamiltonian: multiplies the
/// coefficient at level n by `e^{-iωεₙt}` (branch levels use their branch
/// spectrum; the bi-family evolves under the level difference εₙ - ε_ℓ,
/// the second vector family under ε_ℓ). For spectra carrying a recorded
/// shift the global phase `e^{-iω·ε₀·t}` is applied as well, restoring
/// evolution under the original, unshifted Hamiltonian.
pub fn evolve(ket: &LabeledKet, spec: &EnergySpectrum, t: f64) -> Result<LabeledKet> {
    if ket.params.spectrum != spec.descriptor() || ket.params.omega != spec.omega() {
        return Err(Error::SpectrumMismatch {
            expected: format!("{} (ω = {})", ket.params.spectrum, ket.params.omega),
            found: format!("{} (ω = {})", spec.descriptor(), spec.omega()),
        });
    }
    let omega = spec.omega();
    let global = -omega * ket.params.recorded_shift * t;
    let mut out = ket.clone();
    for i in 0..out.labels.len() {
        let level_phase = match out.labels[i] {
            Label::N { n } | Label::NJ { n, .. } => -omega * spec.eps(n) * t,
            Label::Branch { k, .. } => -omega * spec.eps(k) * t,
            Label::NL { n, l } => match ket.params.family {
                StateFamily::Vcs2 { .. } => -omega * spec.eps(l) * t,
                StateFamily::Bcs { .. } | StateFamily::KmsCs { .. } => {
                    -omega * (spec.eps(n) - spec.eps(l)) * t
                }
                _ => -omega * spec.eps(n) * t,
            },
        };
        let c = ket.coeff(i) * Complex64::cis(level_phase + global);
        out.re[i] = c.re;
        out.im[i] = c.im;
    }
    out.params.family = match ket.params.family.clone() {
        StateFamily::Gk { j, gamma } => StateFamily::Gk {
            j,
            gamma: gamma + omega * t,
        },
        StateFamily::GkEta { j, gamma } => StateFamily::GkEta {
            j,
            gamma: gamma + omega * t,
        },
        StateFamily::Degenerate { j, gamma, theta } => StateFamily::Degenerate {
            j,
            gamma: gamma + omega * t,
            theta,
        },
        StateFamily::BranchVcs { branch, j, gamma } => StateFamily::BranchVcs {
            branch,
            j,
            gamma: gamma + omega * t,
        },
        StateFamily::Vcs1 {
            j,
            gamma,
            j2,
            gamma2,
            component,
        } => StateFamily::Vcs1 {
            j,
            gamma: gamma + omega * t,
            j2,
            gamma2,
            component,
        },
        StateFamily::Vcs2 {
            j,
            gamma,
            j2,
            gamma2,
            component,
        } => StateFamily::Vcs2 {
            j,
            gamma,
            j2,
            gamma2: gamma2 - omega * t,
            component,
        },
        StateFamily::Bcs {
            j,
            gamma,
            j2,
            gamma2,
        } => StateFamily::Bcs {
            j,
            gamma: gamma + omega * t,
            j2,
            gamma2: gamma2 + omega * t,
        },
        f @ StateFamily::KmsCs { .. } => f,
    };
    Ok(out)
}

/// Mean energy `Σ ω·e(label)·|c|²` plus a certified tail estimate, where
/// `e(label)` is εₙ for the scalar families and εₙ - ε_ℓ for the bi-family.
///
/// For spectra carrying a recorded shift the constant `ω·ε₀` is added back:
/// the shifted and original Hamiltonians differ by exactly that multiple of
/// the identity. (The alternative convention of adding a bare ε₀ to ωJ is
/// dimensionally inconsistent and not used.)
pub fn energy_expectation(ket: &LabeledKet, spec: &EnergySpectrum) -> Result<(f64, f64)> {
    let omega = spec.omega();
    let mut value = 0.0f64;
    for (label, c) in ket.labels.iter().zip(ket.coeffs()) {
        let e = match *label {
            Label::N { n } | Label::NJ { n, .. } => spec.eps(n),
            Label::Branch { k, .. } => spec.eps(k),
            Label::NL { n, l } => match ket.params.family {
                StateFamily::Vcs2 { .. } => spec.eps(l),
                StateFamily::Bcs { .. } | StateFamily::KmsCs { .. } => spec.eps(n) - spec.eps(l),
                _ => spec.eps(n),
            },
        };
        value += e * c.norm_sqr();
    }
    value *= omega;
    value += omega * ket.params.recorded_shift * ket.norm2();
    let tail = energy_tail_estimate(ket, spec)?;
    Ok((value, tail))
}

/// Bounds the energy carried by the discarded levels,
/// `Σ_{n>K} ω·εₙ·Jⁿ/(εₙ!·𝒩)`, by summing the analytic series beyond the cut.
fn energy_tail_estimate(ket: &LabeledKet, spec: &EnergySpectrum) -> Result<f64> {
    let omega = spec.omega();
    let j_values: Vec<f64> = match ket.params.family {
        StateFamily::Gk { j, .. }
        | StateFamily::GkEta { j, .. }
        | StateFamily::Degenerate { j, .. }
        | StateFamily::BranchVcs { j, .. } => vec![j],
        StateFamily::Vcs1 { j, j2, .. }
        | StateFamily::Vcs2 { j, j2, .. }
        | StateFamily::Bcs { j, j2, .. } => vec![j, j2],
        StateFamily::KmsCs { .. } => {
            return Ok(omega * ket.tail_bound * (ket.truncation as f64 + 1.0))
        }
    };
    let k = ket.truncation;
    // a finite level list is summed in full: no tail
    if let Some(len) = spec.len() {
        if k + 1 >= len {
            return Ok(0.0);
        }
    }
    let mut total = 0.0f64;
    for j in j_values {
        if j == 0.0 {
            continue;
        }
        let norm = spec.normalization(j, 1e-15)?.value;
        let ln_j = j.ln();
        let term = |m: usize| -> f64 {
            let n = k + 1 + m;
            match spec.eps_factorial(n) {
                Ok(f) => spec.eps(n) * (n as f64 * ln_j - f.ln).exp() / norm,
                Err(_) => f64::NAN,
            }
        };
        let tail = series::sum_with_tail(term, 1e-18, 4000)
            .map(|s| s.value + s.tail_bound)
            .unwrap_or(f64::NAN);
        total += tail;
    }
    Ok(omega * total)
}

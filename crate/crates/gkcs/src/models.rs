//! Physical models as spectrum/degeneracy/measure bundles.
//!
//! Each builder encodes one closed-form diagonalization:
//!
//! - `boson_two_fermion`: one radiation mode coupled to two fermion modes;
//!   four orthogonal sectors (k, l) ∈ {0,1}², each a shifted oscillator.
//! - `two_fermion_hermitian`: the variant with a hermitian 2×2 coupling
//!   matrix; reduces to the diagonal case after a fermion rotation, which
//!   works only when the two bare fermion energies coincide.
//! - `example1`: one boson ⊗ one fermion, d(0) = 1, d(n ≥ 1) = 2.
//! - `example2`: planar oscillator with coupling b = 3k/5, d(n) = ⌊n/2⌋+1,
//!   no closed-form measure (the Laguerre reconstruction applies instead).
//! - `example3`: charged 3D oscillator in a weak magnetic field,
//!   d(n) = (n+1)(n+2)/2; the exact three-frequency spectrum is retained
//!   for diagnostics alongside the collapsed one.
//!
//! Fermionic sectors enter only as labels, offsets and degeneracy counts;
//! no fermionic operator matrices are built.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::measures::{closed_form_measure, integer_targets, LaguerreSeries, RadialMeasure};
use crate::spectrum::{BranchSet, DegeneracySequence, EnergySpectrum, SpectrumRule};
use crate::{Error, Result};

/// Parameters of the boson-two-fermion Hamiltonian.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TwoFermionParams {
    pub omega: f64,
    pub eps1: f64,
    pub eps2: f64,
    pub g1: f64,
    pub g2: f64,
}

/// One sector row of the diagonalization: the sector carries fermion
/// occupation (k, l), ground energy E₀, bare fermion energy ε_{kl} and the
/// oscillator shift g_{kl} (the shifted mode is `a + g_{kl}/ω`).
///
/// Index convention: (k, l) = (1, 0) pairs with (ε₁, g₁) and (0, 1) with
/// (ε₂, g₂), i.e. k flags the first fermion mode and l the second.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectralRow {
    pub k: u8,
    pub l: u8,
    pub e0: f64,
    pub eps_kl: f64,
    pub g_kl: f64,
}

impl SpectralRow {
    pub fn label(&self) -> String {
        format!("kl={}{}", self.k, self.l)
    }

    /// Full level `E_n = ω n + E₀`.
    pub fn energy(&self, params: &TwoFermionParams, n: usize) -> f64 {
        params.omega * n as f64 + self.e0
    }

    /// Truncated matrix of the shifted annihilation operator
    /// `A_{kl} = a + (g_{kl}/ω)·I` on levels 0..=k_max.
    pub fn shift_operator(&self, params: &TwoFermionParams, k_max: usize) -> Vec<Vec<f64>> {
        let dim = k_max + 1;
        let shift = self.g_kl / params.omega;
        let mut m = vec![vec![0.0; dim]; dim];
        for n in 0..dim {
            m[n][n] = shift;
            if n + 1 < dim {
                m[n][n + 1] = ((n + 1) as f64).sqrt();
            }
        }
        m
    }
}

/// The four diagonalized sectors of the boson-two-fermion model.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralTable {
    pub params: TwoFermionParams,
    pub rows: Vec<SpectralRow>,
}

impl SpectralTable {
    pub fn row(&self, k: u8, l: u8) -> &SpectralRow {
        self.rows
            .iter()
            .find(|r| r.k == k && r.l == l)
            .expect("sector exists")
    }

    /// The four sectors as branches: each shifts to the dimensionless
    /// spectrum εₙ = n (the sector levels are ωn + E₀).
    pub fn branch_set(&self) -> BranchSet {
        let branches = self
            .rows
            .iter()
            .map(|_| EnergySpectrum::linear(self.params.omega))
            .collect();
        let labels = self.rows.iter().map(|r| r.label()).collect();
        BranchSet::new(branches, labels)
    }
}

/// Diagonalizes the boson-two-fermion Hamiltonian into its four sectors.
pub fn two_fermion_spectrum(params: TwoFermionParams) -> SpectralTable {
    let TwoFermionParams {
        omega,
        eps1,
        eps2,
        g1,
        g2,
    } = params;
    let rows = vec![
        SpectralRow {
            k: 0,
            l: 0,
            e0: 0.0,
            eps_kl: 0.0,
            g_kl: 0.0,
        },
        SpectralRow {
            k: 1,
            l: 0,
            e0: eps1 - g1 * g1 / omega,
            eps_kl: eps1,
            g_kl: g1,
        },
        SpectralRow {
            k: 0,
            l: 1,
            e0: eps2 - g2 * g2 / omega,
            eps_kl: eps2,
            g_kl: g2,
        },
        SpectralRow {
            k: 1,
            l: 1,
            e0: eps1 + eps2 - (g1 + g2) * (g1 + g2) / omega,
            eps_kl: eps1 + eps2,
            g_kl: g1 + g2,
        },
    ];
    SpectralTable { params, rows }
}

/// The four sector ground energies in exact rational arithmetic, ordered
/// (0,0), (1,0), (0,1), (1,1).
pub fn two_fermion_ground_energies_rational(
    omega: &BigRational,
    eps1: &BigRational,
    eps2: &BigRational,
    g1: &BigRational,
    g2: &BigRational,
) -> [BigRational; 4] {
    let zero = BigRational::from_integer(BigInt::from(0));
    let e10 = eps1 - &(g1 * g1) / omega;
    let e01 = eps2 - &(g2 * g2) / omega;
    let g12 = g1 + g2;
    let e11 = eps1 + eps2 - &(&g12 * &g12) / omega;
    [zero, e10, e01, e11]
}

/// Outcome of the level-merging check for the adapted (disjoint-sector)
/// construction, whose (1,1) offset is ε₁+ε₂-(g₁²+g₂²)/ω: the couplings act
/// on disjoint fermion sectors there, so no cross term appears.
#[derive(Debug, Clone, Serialize)]
pub struct DegeneracyFreeCheck {
    pub free: bool,
    /// Human-readable description of the first violated inequality.
    pub first_violation: Option<String>,
    /// Dimensionless offsets (0, e₁/ω, e₂/ω, e₃/ω) of the merged spectrum.
    pub offsets: Vec<f64>,
}

impl DegeneracyFreeCheck {
    /// The merged spectrum ε_{4q+r} = q + offsets[r], valid when `free`.
    pub fn merged_spectrum(&self, omega: f64) -> Option<EnergySpectrum> {
        if !self.free {
            return None;
        }
        Some(EnergySpectrum::new(
            omega,
            SpectrumRule::OffsetPeriodic {
                offsets: self.offsets.clone(),
                period: 1.0,
            },
            "two-fermion-merged",
        ))
    }
}

/// Evaluates the chain `0 < ε₁-g₁²/ω < ε₂-g₂²/ω < ε₁+ε₂-(g₁²+g₂²)/ω < ω`;
/// when it holds, the merged sorted level sequence starts
/// `0, ε₁-g₁²/ω, ε₂-g₂²/ω, ε₁+ε₂-(g₁²+g₂²)/ω, ω, …` and repeats with
/// period ω.
pub fn degeneracy_free_check(params: TwoFermionParams) -> DegeneracyFreeCheck {
    let TwoFermionParams {
        omega,
        eps1,
        eps2,
        g1,
        g2,
    } = params;
    let e1 = eps1 - g1 * g1 / omega;
    let e2 = eps2 - g2 * g2 / omega;
    let e3 = eps1 + eps2 - (g1 * g1 + g2 * g2) / omega;
    let chain = [
        (0.0, e1, "0 < ε₁ - g₁²/ω"),
        (e1, e2, "ε₁ - g₁²/ω < ε₂ - g₂²/ω"),
        (e2, e3, "ε₂ - g₂²/ω < ε₁ + ε₂ - (g₁² + g₂²)/ω"),
        (e3, omega, "ε₁ + ε₂ - (g₁² + g₂²)/ω < ω"),
    ];
    for (lo, hi, desc) in chain {
        if !(lo < hi) {
            return DegeneracyFreeCheck {
                free: false,
                first_violation: Some(format!("{desc} fails ({lo} ≥ {hi})")),
                offsets: vec![0.0, e1 / omega, e2 / omega, e3 / omega],
            };
        }
    }
    DegeneracyFreeCheck {
        free: true,
        first_violation: None,
        offsets: vec![0.0, e1 / omega, e2 / omega, e3 / omega],
    }
}

/// Unitary diagonalization of a 2×2 hermitian coupling matrix:
/// `V g V† = diag(g₁, g₂)` with eigenvalues ordered descending.
///
/// Rotating the fermion modes this way keeps their anticommutation relations
/// but scrambles the free fermionic term unless the two bare energies are
/// equal, so the downstream sector analysis requires ε₁ = ε₂.
#[derive(Debug, Clone)]
pub struct HermitianCoupling {
    /// Rows are the conjugated eigenvectors; unitary.
    pub v: [[Complex64; 2]; 2],
    /// Eigenvalues, descending.
    pub eigenvalues: [f64; 2],
}

pub fn hermitian_coupling_diagonalize(g: [[Complex64; 2]; 2]) -> Result<HermitianCoupling> {
    let herm_tol = 1e-12;
    if g[0][0].im.abs() > herm_tol
        || g[1][1].im.abs() > herm_tol
        || (g[0][1] - g[1][0].conj()).norm() > herm_tol
    {
        return Err(Error::NotHermitian);
    }
    let a = g[0][0].re;
    let d = g[1][1].re;
    let b = g[0][1];
    let mean = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let lam = [mean + disc, mean - disc];
    let mut rows = [[Complex64::new(0.0, 0.0); 2]; 2];
    if b.norm() == 0.0 {
        // already diagonal; order descending
        if a >= d {
            rows[0][0] = Complex64::new(1.0, 0.0);
            rows[1][1] = Complex64::new(1.0, 0.0);
        } else {
            rows[0][1] = Complex64::new(1.0, 0.0);
            rows[1][0] = Complex64::new(1.0, 0.0);
        }
    } else {
        for (i, &l) in lam.iter().enumerate() {
            // eigenvector (b, λ - a), normalized
            let v0 = b;
            let v1 = Complex64::new(l - a, 0.0);
            let norm = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
            rows[i][0] = (v0 / norm).conj();
            rows[i][1] = (v1 / norm).conj();
        }
    }
    Ok(HermitianCoupling {
        v: rows,
        eigenvalues: lam,
    })
}

/// Model variant tags with their physical parameters.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum ModelVariant {
    GkLinear { omega: f64 },
    BosonFermion { omega: f64 },
    PlanarOscillator { m: f64, k: f64, b: f64 },
    ChargedOscillator3D { m: f64, k: f64, e: f64, b_field: f64 },
    BosonTwoFermion(TwoFermionParams),
    TwoFermionHermitian { omega: f64, eps: f64 },
}

/// A model bundled with everything the verification suites need.
#[derive(Debug, Clone)]
pub struct ModelDescriptor {
    pub tag: String,
    pub variant: ModelVariant,
    pub spectrum: EnergySpectrum,
    pub degeneracy: DegeneracySequence,
    /// Closed-form measure when one is known; `None` routes resolution
    /// checks to the weak-sense path.
    pub measure: Option<RadialMeasure>,
    pub branches: Option<BranchSet>,
    pub notes: Vec<String>,
}

impl ModelDescriptor {
    pub fn omega(&self) -> f64 {
        self.spectrum.omega()
    }

    /// Laguerre reconstruction of the radial density from the first
    /// `order + 1` integer moment targets (available for the unit linear
    /// spectrum models).
    pub fn laguerre_series(&self, order: usize) -> LaguerreSeries {
        LaguerreSeries::from_targets(&integer_targets(&self.degeneracy, order))
    }

    /// JSON model card: spectrum law, degeneracy law, measure, notes.
    pub fn model_card(&self) -> serde_json::Value {
        json!({
            "model": self.tag,
            "variant": self.variant,
            "omega": self.omega(),
            "spectrum": {
                "descriptor": self.spectrum.descriptor(),
                "first_levels": (0..8).map(|n| self.spectrum.eps(n)).collect::<Vec<_>>(),
                "recorded_shift": self.spectrum.recorded_shift(),
            },
            "degeneracy": {
                "descriptor": self.degeneracy.descriptor(),
                "first_values": (0..8).map(|n| self.degeneracy.d(n)).collect::<Vec<_>>(),
            },
            "measure": self.measure,
            "branches": self.branches.as_ref().map(|b| {
                (0..b.len()).map(|j| b.label(j).to_string()).collect::<Vec<_>>()
            }),
            "notes": self.notes,
        })
    }
}

/// Plain nondegenerate reference model: εₙ = n, d ≡ 1, measure e^{-J}dJ.
pub fn gk_linear_build(omega: f64) -> ModelDescriptor {
    ModelDescriptor {
        tag: "gk-linear".into(),
        variant: ModelVariant::GkLinear { omega },
        spectrum: EnergySpectrum::linear(omega),
        degeneracy: DegeneracySequence::constant_one(),
        measure: closed_form_measure("gk-linear").ok(),
        branches: None,
        notes: vec![],
    }
}

/// One boson ⊗ one fermion: spectrum εₙ = n, d(0) = 1, d(n ≥ 1) = 2,
/// measure `[2e^{-J} - δ(J)]dJ`. Eigenvectors have the product labeling
/// φ_{n,j} = Φ_{n-j} ⊗ Ψ_j.
pub fn example1_build(omega: f64) -> ModelDescriptor {
    assert!(omega > 0.0);
    ModelDescriptor {
        tag: "example1".into(),
        variant: ModelVariant::BosonFermion { omega },
        spectrum: EnergySpectrum::linear(omega),
        degeneracy: DegeneracySequence::boson_fermion(),
        measure: closed_form_measure("example1").ok(),
        branches: None,
        notes: vec!["eigenvector labeling: φ_{n,j} = Φ_{n-j} ⊗ Ψ_j".into()],
    }
}

/// Planar oscillator with b = 3k/5: frequencies ω± = √((k±b)/m) satisfy
/// ω₊ = 2ω₋, so the spectrum collapses to ω₋·n with n = 2n₊ + n₋ and
/// d(2n) = d(2n+1) = n+1. No closed-form measure; the Laguerre series is
/// the reconstruction route.
pub fn example2_build(m: f64, k: f64) -> ModelDescriptor {
    assert!(m > 0.0 && k > 0.0);
    let b = 3.0 * k / 5.0;
    let omega_minus = ((k - b) / m).sqrt();
    let omega_plus = ((k + b) / m).sqrt();
    ModelDescriptor {
        tag: "example2".into(),
        variant: ModelVariant::PlanarOscillator { m, k, b },
        spectrum: EnergySpectrum::linear(omega_minus),
        degeneracy: DegeneracySequence::half_step(),
        measure: None,
        branches: None,
        notes: vec![format!(
            "ω₊/ω₋ = {} (must be 2 for the collapsed level counting)",
            omega_plus / omega_minus
        )],
    }
}

/// Charged 3D oscillator in a uniform magnetic field, in the Ω ≪ ω regime:
/// collapsed spectrum εₙ = n with d(n) = (n+1)(n+2)/2 and the closed-form
/// measure J²e^{-J}/2. The exact three-frequency levels stay available via
/// [`example3_exact_energy`] for diagnostics.
pub fn example3_build(m: f64, k: f64, e: f64, b_field: f64) -> ModelDescriptor {
    assert!(m > 0.0 && k > 0.0);
    let omega = (k / m).sqrt();
    let cyclotron = e * b_field / (2.0 * m);
    let mut notes = vec![];
    if cyclotron.abs() > 0.1 * omega {
        notes.push(format!(
            "warning: Ω = {cyclotron} is not small against ω = {omega}; the collapsed spectrum is still applied"
        ));
    }
    ModelDescriptor {
        tag: "example3".into(),
        variant: ModelVariant::ChargedOscillator3D { m, k, e, b_field },
        spectrum: EnergySpectrum::linear(omega),
        degeneracy: DegeneracySequence::triangular(),
        measure: closed_form_measure("example3").ok(),
        branches: None,
        notes,
    }
}

/// Exact three-frequency level of the charged 3D oscillator:
/// `E = n₊(ω̃+Ω) + n₋(ω̃-Ω) + n_z·ω` with ω̃ = √(Ω²+ω²).
pub fn example3_exact_energy(
    m: f64,
    k: f64,
    e: f64,
    b_field: f64,
    n_plus: usize,
    n_minus: usize,
    n_z: usize,
) -> f64 {
    let omega = (k / m).sqrt();
    let cyclotron = e * b_field / (2.0 * m);
    let tilde = (cyclotron * cyclotron + omega * omega).sqrt();
    n_plus as f64 * (tilde + cyclotron) + n_minus as f64 * (tilde - cyclotron) + n_z as f64 * omega
}

/// Boson-two-fermion model with its four sector branches.
pub fn boson_two_fermion_build(params: TwoFermionParams) -> ModelDescriptor {
    assert!(params.omega > 0.0);
    let table = two_fermion_spectrum(params);
    let branches = table.branch_set();
    let check = degeneracy_free_check(params);
    let mut notes = vec![format!(
        "sector ground energies: {:?}",
        table.rows.iter().map(|r| r.e0).collect::<Vec<_>>()
    )];
    if check.free {
        notes.push("merged spectrum is degeneracy-free".into());
    } else if let Some(v) = &check.first_violation {
        notes.push(format!("merged spectrum keeps degeneracies: {v}"));
    }
    let collisions = branches.cross_branch_collisions(4, 1e-12);
    if !collisions.is_empty() {
        notes.push(format!(
            "cross-branch level collisions (reported, not rejected): {collisions:?}"
        ));
    }
    ModelDescriptor {
        tag: "boson-two-fermion".into(),
        variant: ModelVariant::BosonTwoFermion(params),
        // each branch shifts to εₙ = n; per-branch measure is e^{-J}dJ
        spectrum: EnergySpectrum::linear(params.omega),
        degeneracy: DegeneracySequence::constant_one(),
        measure: closed_form_measure("gk-linear").ok(),
        branches: Some(branches),
        notes,
    }
}

/// Hermitian-coupling variant: valid only for equal bare fermion energies,
/// where rotating the fermion modes reduces it to the diagonal model with
/// the eigenvalues of g as couplings.
pub fn two_fermion_hermitian_build(
    omega: f64,
    eps: f64,
    g: [[Complex64; 2]; 2],
) -> Result<ModelDescriptor> {
    let coupling = hermitian_coupling_diagonalize(g)?;
    let params = TwoFermionParams {
        omega,
        eps1: eps,
        eps2: eps,
        g1: coupling.eigenvalues[0],
        g2: coupling.eigenvalues[1],
    };
    let mut model = boson_two_fermion_build(params);
    model.tag = "two-fermion-hermitian".into();
    model.variant = ModelVariant::TwoFermionHermitian { omega, eps };
    model.notes.push(format!(
        "coupling eigenvalues (g₁, g₂) = ({}, {}); equal bare energies ε = {eps} required for the rotation",
        coupling.eigenvalues[0], coupling.eigenvalues[1]
    ));
    Ok(model)
}

/// Builds a model by CLI tag with default parameters.
pub fn model_by_tag(tag: &str) -> Result<ModelDescriptor> {
    match tag {
        "gk-linear" => Ok(gk_linear_build(1.0)),
        "example1" => Ok(example1_build(1.0)),
        "example2" => Ok(example2_build(1.0, 1.0)),
        "example3" => Ok(example3_build(1.0, 1.0, 1.0, 0.1)),
        "boson-two-fermion" => Ok(boson_two_fermion_build(TwoFermionParams {
            omega: 1.0,
            eps1: 0.2,
            eps2: 0.45,
            g1: 0.1,
            g2: 0.1,
        })),
        "two-fermion-hermitian" => two_fermion_hermitian_build(
            1.0,
            0.3,
            [
                [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
                [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            ],
        ),
        other => Err(Error::ConfigInvalid(format!("unknown model tag `{other}`"))),
    }
}

/// All tags accepted by [`model_by_tag`].
pub const MODEL_TAGS: &[&str] = &[
    "gk-linear",
    "example1",
    "example2",
    "example3",
    "boson-two-fermion",
    "two-fermion-hermitian",
];

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use num_traits::Zero;

    fn params() -> TwoFermionParams {
        TwoFermionParams {
            omega: 1.0,
            eps1: 0.2,
            eps2: 0.45,
            g1: 0.1,
            g2: 0.1,
        }
    }

    #[test]
    fn spectral_table_matches_sector_formulas() {
        let p = params();
        let t = two_fermion_spectrum(p);
        assert_eq!(t.row(0, 0).e0, 0.0);
        assert_relative_eq!(t.row(1, 0).e0, 0.2 - 0.01, max_relative = 1e-15);
        assert_relative_eq!(t.row(0, 1).e0, 0.45 - 0.01, max_relative = 1e-15);
        assert_relative_eq!(t.row(1, 1).e0, 0.65 - 0.04, max_relative = 1e-15);
        // E_n^{kl} = ωn + E₀^{kl}
        assert_relative_eq!(t.row(1, 0).energy(&p, 3), 3.0 + 0.19, max_relative = 1e-15);
        assert_eq!(t.row(0, 0).energy(&p, 5), 5.0);
    }

    #[test]
    fn rational_ground_energies_are_exact() {
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let e = two_fermion_ground_energies_rational(
            &r(1, 1),
            &r(1, 5),
            &r(9, 20),
            &r(1, 10),
            &r(1, 10),
        );
        assert!(e[0].is_zero());
        assert_eq!(e[1], r(19, 100));
        assert_eq!(e[2], r(11, 25));
        assert_eq!(e[3], r(61, 100));
    }

    #[test]
    fn branch_spectra_shift_to_linear() {
        let t = two_fermion_spectrum(params());
        let branches = t.branch_set();
        branches.validate(12).unwrap();
        for j in 0..4 {
            let b = branches.branch(j).unwrap();
            for n in 0..6 {
                assert_eq!(b.eps(n), n as f64);
            }
        }
    }

    #[test]
    fn shift_operator_commutator_is_identity_on_inner_block() {
        let p = params();
        let t = two_fermion_spectrum(p);
        let row = t.row(1, 1);
        let k_max = 8;
        let a = row.shift_operator(&p, k_max);
        let dim = k_max + 1;
        // [A, A†] entry (i, j) = Σ (A A† - A† A)
        for i in 0..dim - 1 {
            for j in 0..dim - 1 {
                let mut comm = 0.0;
                for m in 0..dim {
                    comm += a[i][m] * a[j][m] - a[m][i] * a[m][j];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(comm, expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn degeneracy_free_example_chain() {
        let check = degeneracy_free_check(params());
        assert!(check.free);
        let merged = check.merged_spectrum(1.0).unwrap();
        let expect = [0.0, 0.19, 0.44, 0.63, 1.0, 1.19, 1.44, 1.63, 2.0];
        for (n, e) in expect.iter().enumerate() {
            assert_abs_diff_eq!(merged.eps(n), *e, epsilon = 1e-12);
        }
        merged.check_monotone(16).unwrap();
    }

    #[test]
    fn degenerate_parameters_fail_the_chain() {
        let check = degeneracy_free_check(TwoFermionParams {
            omega: 1.0,
            eps1: 0.3,
            eps2: 0.3,
            g1: 0.0,
            g2: 0.0,
        });
        assert!(!check.free);
        assert!(check
            .first_violation
            .as_deref()
            .unwrap()
            .contains("ε₁ - g₁²/ω < ε₂ - g₂²/ω"));
    }

    #[test]
    fn hermitian_diagonalization_identity_for_diagonal_input() {
        let g = [
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(3.0, 0.0)],
        ];
        let c = hermitian_coupling_diagonalize(g).unwrap();
        assert_eq!(c.eigenvalues, [3.0, 1.0]);
    }

    #[test]
    fn hermitian_diagonalization_pauli_x() {
        let g = [
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ];
        let c = hermitian_coupling_diagonalize(g).unwrap();
        assert_eq!(c.eigenvalues, [1.0, -1.0]);
    }

    #[test]
    fn hermitian_diagonalization_random_matrix() {
        // oracle: characteristic-polynomial roots of the 2×2
        let g = [
            [Complex64::new(0.7, 0.0), Complex64::new(0.3, -0.4)],
            [Complex64::new(0.3, 0.4), Complex64::new(-0.2, 0.0)],
        ];
        let c = hermitian_coupling_diagonalize(g).unwrap();
        let tr = 0.5f64;
        let det = 0.7 * (-0.2) - (0.3f64 * 0.3 + 0.4 * 0.4);
        let disc = (tr * tr - 4.0 * det).sqrt();
        let roots = [(tr + disc) / 2.0, (tr - disc) / 2.0];
        assert_relative_eq!(c.eigenvalues[0], roots[0], max_relative = 1e-14);
        assert_relative_eq!(c.eigenvalues[1], roots[1], max_relative = 1e-14);
        // ‖V g V† - diag‖ small and V unitary
        let v = c.v;
        let mut vgv = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        vgv[i][j] += v[i][p] * g[p][q] * v[j][q].conj();
                    }
                }
            }
        }
        assert_abs_diff_eq!(vgv[0][1].norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vgv[1][0].norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vgv[0][0].re, roots[0], epsilon = 1e-12);
        assert_abs_diff_eq!(vgv[1][1].re, roots[1], epsilon = 1e-12);
        let mut vvdag = [[Complex64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    vvdag[i][j] += v[i][p] * v[j][p].conj();
                }
            }
        }
        assert_abs_diff_eq!(vvdag[0][0].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vvdag[1][1].re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(vvdag[0][1].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn non_hermitian_rejected() {
        let g = [
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(0.5, 0.0), Complex64::new(0.0, 0.0)],
        ];
        assert!(matches!(
            hermitian_coupling_diagonalize(g),
            Err(Error::NotHermitian)
        ));
    }

    #[test]
    fn example1_descriptor() {
        let m = example1_build(1.0);
        assert_eq!(m.degeneracy.d(0), 1);
        assert_eq!(m.degeneracy.d(5), 2);
        let measure = m.measure.as_ref().unwrap();
        assert_eq!(measure.atoms, vec![(0.0, -1.0)]);
        assert_relative_eq!(m.spectrum.normalization(1.0, 1e-13).unwrap().value, 1.0f64.exp(), max_relative = 1e-12);
    }

    #[test]
    fn example2_descriptor() {
        let m = example2_build(1.0, 1.0);
        for (n, d) in [(0, 1), (1, 1), (4, 3), (5, 3)] {
            assert_eq!(m.degeneracy.d(n), d);
        }
        assert!(m.measure.is_none());
        // ρ₄ = 4!·3, ρ₅ = 5!·3
        let spec = EnergySpectrum::linear(1.0);
        assert_eq!(
            crate::measures::target_moments(&spec, &m.degeneracy, 4).unwrap(),
            72.0
        );
        assert_eq!(
            crate::measures::target_moments(&spec, &m.degeneracy, 5).unwrap(),
            360.0
        );
        // frequency ratio consistency: ω₊/ω₋ = √((k+b)/(k-b)) = 2 at b = 3k/5
        let b = 0.6f64;
        assert_relative_eq!(((1.0 + b) / (1.0 - b)).sqrt(), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn example3_descriptor_and_exact_levels() {
        let m = example3_build(1.0, 1.0, 1.0, 0.1);
        for (n, d) in [(0, 1), (1, 3), (2, 6)] {
            assert_eq!(m.degeneracy.d(n), d);
        }
        assert!(m.notes.is_empty());
        let warned = example3_build(1.0, 1.0, 1.0, 1.0);
        assert!(!warned.notes.is_empty());
        // exact level: E(1, 0, 0) = ω̃ + Ω
        let cyclotron = 0.5 * 1.0 * 1.0 / 1.0;
        let tilde = (cyclotron * cyclotron + 1.0f64).sqrt();
        assert_relative_eq!(
            example3_exact_energy(1.0, 1.0, 1.0, 1.0, 1, 0, 0),
            tilde + cyclotron,
            max_relative = 1e-14
        );
    }

    #[test]
    fn model_cards_serialize() {
        for tag in MODEL_TAGS {
            let m = model_by_tag(tag).unwrap();
            let card = m.model_card();
            assert_eq!(card["model"], *tag);
            assert!(card["degeneracy"]["first_values"].is_array());
        }
        assert!(model_by_tag("nope").is_err());
    }
}

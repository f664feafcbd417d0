//! Discrete spectra, degeneracies, and the combinatorics they generate.
//!
//! A spectrum is a lazy rule `n ↦ εₙ` (dimensionless levels) together with
//! an energy scale `ω`, so infinite spectra are first-class and explicit
//! lists are just one rule among others. The quantities every coherent-state
//! construction needs live here: the generalized factorial
//! `εₙ! = ε₁ε₂⋯εₙ`, the radius of convergence of `Σ Jⁿ/ρₙ`, and the
//! normalization series `𝒩(J) = Σ Jⁿ/εₙ!`.

use std::fmt;
use std::sync::Arc;

use crate::series::{self, SeriesSum};
use crate::{Error, Result};

/// Running product switches to log-space once it exceeds this magnitude.
const LOG_SPACE_THRESHOLD: f64 = 1e280;

/// Rule producing the raw (unshifted) dimensionless levels.
#[derive(Clone)]
pub enum SpectrumRule {
    /// εₙ = n.
    Linear,
    /// εₙ = a·n.
    Scaled(f64),
    /// Explicit finite list; levels beyond the list are an error at access.
    Explicit(Vec<f64>),
    /// ε_{q·m + r} = q·period + offsets[r]; the merged two-fermion spectrum
    /// has this shape with m = offsets.len().
    OffsetPeriodic { offsets: Vec<f64>, period: f64 },
    /// Arbitrary rule, for programmatic use (not expressible in configs).
    Custom(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl fmt::Debug for SpectrumRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumRule::Linear => write!(f, "Linear"),
            SpectrumRule::Scaled(a) => write!(f, "Scaled({a})"),
            SpectrumRule::Explicit(v) => write!(f, "Explicit({} levels)", v.len()),
            SpectrumRule::OffsetPeriodic { offsets, period } => {
                write!(f, "OffsetPeriodic({} offsets, period {period})", offsets.len())
            }
            SpectrumRule::Custom(_) => write!(f, "Custom"),
        }
    }
}

/// A discrete spectrum `Eₙ = ω·εₙ` with `0 = ε₀ < ε₁ < …` after shifting.
#[derive(Debug, Clone)]
pub struct EnergySpectrum {
    omega: f64,
    rule: SpectrumRule,
    /// Amount already subtracted from the raw rule; `shift_to_zero` adds to it.
    shift: f64,
    descriptor: String,
}

impl EnergySpectrum {
    pub fn new(omega: f64, rule: SpectrumRule, descriptor: impl Into<String>) -> Self {
        Self {
            omega,
            rule,
            shift: 0.0,
            descriptor: descriptor.into(),
        }
    }

    /// εₙ = n with scale ω.
    pub fn linear(omega: f64) -> Self {
        Self::new(omega, SpectrumRule::Linear, "linear")
    }

    /// Explicit level list (already dimensionless).
    pub fn explicit(omega: f64, levels: Vec<f64>) -> Self {
        Self::new(omega, SpectrumRule::Explicit(levels), "explicit")
    }

    pub fn custom(
        omega: f64,
        rule: impl Fn(usize) -> f64 + Send + Sync + 'static,
        descriptor: impl Into<String>,
    ) -> Self {
        Self::new(omega, SpectrumRule::Custom(Arc::new(rule)), descriptor)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    /// Shift recorded by `shift_to_zero` (dimensionless); the global phase
    /// removed from evolution is `e^{-iω·shift·t}`.
    pub fn recorded_shift(&self) -> f64 {
        self.shift
    }

    fn raw(&self, n: usize) -> f64 {
        match &self.rule {
            SpectrumRule::Linear => n as f64,
            SpectrumRule::Scaled(a) => a * n as f64,
            SpectrumRule::Explicit(v) => v
                .get(n)
                .copied()
                .unwrap_or_else(|| panic!("explicit spectrum has only {} levels, asked for {n}", v.len())),
            SpectrumRule::OffsetPeriodic { offsets, period } => {
                let m = offsets.len();
                (n / m) as f64 * period + offsets[n % m]
            }
            SpectrumRule::Custom(f) => f(n),
        }
    }

    /// Dimensionless level εₙ (after any recorded shift).
    pub fn eps(&self, n: usize) -> f64 {
        self.raw(n) - self.shift
    }

    /// Number of levels if the rule is a finite list.
    pub fn len(&self) -> Option<usize> {
        match &self.rule {
            SpectrumRule::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    pub fn is_shifted(&self) -> bool {
        self.eps(0) == 0.0
    }

    /// Checks strict ordering ε₀ < ε₁ < … up to `upto` (inclusive).
    pub fn check_monotone(&self, upto: usize) -> Result<()> {
        let mut prev = self.eps(0);
        for n in 1..=upto {
            let value = self.eps(n);
            if !(value > prev) || !value.is_finite() {
                return Err(Error::NonMonotoneSpectrum {
                    level: n,
                    value,
                    prev,
                });
            }
            prev = value;
        }
        Ok(())
    }

    /// Returns the spectrum with εₙ' = εₙ - ε₀ and the shift recorded, so
    /// evolution can restore the global phase `e^{-iωε₀t}`. Idempotent.
    pub fn shift_to_zero(&self) -> Self {
        let eps0 = self.eps(0);
        Self {
            omega: self.omega,
            rule: self.rule.clone(),
            shift: self.shift + eps0,
            descriptor: self.descriptor.clone(),
        }
    }

    /// Generalized factorial εₙ! = ε₁ε₂⋯εₙ (ε₀! = 1), with the running
    /// product switched to log-space once it exceeds a magnitude threshold.
    pub fn eps_factorial(&self, n: usize) -> Result<Factorial> {
        if n > 0 {
            self.check_monotone(n)?;
            if self.eps(0) != 0.0 {
                // the factorial is defined for shifted spectra only
                return Err(Error::UnshiftedSpectrum { eps0: self.eps(0) });
            }
        }
        let mut linear = Some(1.0f64);
        let mut ln = 0.0f64;
        for k in 1..=n {
            let eps = self.eps(k);
            ln += eps.ln();
            if let Some(v) = linear {
                let next = v * eps;
                linear = if next.is_finite() && next < LOG_SPACE_THRESHOLD {
                    Some(next)
                } else {
                    None
                };
            }
        }
        if !ln.is_finite() && n > 0 {
            return Err(Error::Overflow { level: n });
        }
        Ok(Factorial { ln, linear })
    }

    /// Normalization series 𝒩(J) = Σₙ Jⁿ/εₙ!, truncated adaptively so the
    /// geometric tail estimate is below `tol`. The degeneracy cancels out of
    /// this series (ρₙ = εₙ!·d(n)), so it does not appear here.
    pub fn normalization(&self, j: f64, tol: f64) -> Result<SeriesSum> {
        if j < 0.0 {
            return Err(Error::OutsideConvergenceDomain {
                j,
                radius: f64::INFINITY,
            });
        }
        if j == 0.0 {
            return Ok(SeriesSum {
                value: 1.0,
                depth: 0,
                tail_bound: 0.0,
            });
        }
        self.check_monotone(32.min(self.len().map(|l| l - 1).unwrap_or(32)))?;
        let ln_j = j.ln();
        let term = |n: usize| -> f64 {
            match self.eps_factorial(n) {
                Ok(f) => (n as f64 * ln_j - f.ln).exp(),
                Err(_) => f64::NAN,
            }
        };
        if let Some(l) = self.len() {
            // a finite level list has no tail: the whole series is the sum
            self.check_monotone(l - 1)?;
            return Ok(SeriesSum {
                value: (0..l).map(term).sum(),
                depth: l - 1,
                tail_bound: 0.0,
            });
        }
        match series::sum_with_tail(term, tol, series::DEFAULT_MAX_DEPTH) {
            Ok(s) => Ok(s),
            Err(Error::NonConvergent { .. }) if self.len().is_none() => {
                // distinguish J beyond the radius from a merely slow series
                let probe = radius_of_convergence(self, &DegeneracySequence::constant_one(), 512);
                if probe.flag == RadiusFlag::Stabilized && j >= probe.value {
                    Err(Error::OutsideConvergenceDomain {
                        j,
                        radius: probe.value,
                    })
                } else {
                    Err(Error::NonConvergent {
                        tol,
                        depth: series::DEFAULT_MAX_DEPTH,
                    })
                }
            }
            Err(e) => Err(e),
        }
    }
}

/// Value of εₙ!, kept in log-space with the linear value retained while it
/// is safely representable.
#[derive(Debug, Clone, Copy)]
pub struct Factorial {
    pub ln: f64,
    linear: Option<f64>,
}

impl Factorial {
    /// Best available f64 value (exact product below the threshold,
    /// `exp(ln)` above it).
    pub fn value(&self) -> f64 {
        self.linear.unwrap_or_else(|| self.ln.exp())
    }

    pub fn is_log_only(&self) -> bool {
        self.linear.is_none()
    }
}

/// Degeneracy rule n ↦ d(n) ≥ 1.
#[derive(Clone)]
pub enum DegeneracyRule {
    ConstantOne,
    /// d(0) = 1, d(n) = 2 for n ≥ 1 (one boson ⊗ one fermion).
    BosonFermion,
    /// d(n) = ⌊n/2⌋ + 1 (planar oscillator at b = 3k/5).
    HalfStep,
    /// d(n) = (n+1)(n+2)/2 (isotropic 3D level counting).
    Triangular,
    Explicit(Vec<u64>),
    Custom(Arc<dyn Fn(usize) -> u64 + Send + Sync>),
}

impl fmt::Debug for DegeneracyRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegeneracyRule::ConstantOne => write!(f, "ConstantOne"),
            DegeneracyRule::BosonFermion => write!(f, "BosonFermion"),
            DegeneracyRule::HalfStep => write!(f, "HalfStep"),
            DegeneracyRule::Triangular => write!(f, "Triangular"),
            DegeneracyRule::Explicit(v) => write!(f, "Explicit({} levels)", v.len()),
            DegeneracyRule::Custom(_) => write!(f, "Custom"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DegeneracySequence {
    rule: DegeneracyRule,
    descriptor: String,
}

impl DegeneracySequence {
    pub fn new(rule: DegeneracyRule, descriptor: impl Into<String>) -> Self {
        Self {
            rule,
            descriptor: descriptor.into(),
        }
    }

    pub fn constant_one() -> Self {
        Self::new(DegeneracyRule::ConstantOne, "constant-1")
    }

    pub fn boson_fermion() -> Self {
        Self::new(DegeneracyRule::BosonFermion, "example1")
    }

    pub fn half_step() -> Self {
        Self::new(DegeneracyRule::HalfStep, "example2")
    }

    pub fn triangular() -> Self {
        Self::new(DegeneracyRule::Triangular, "example3")
    }

    pub fn explicit(values: Vec<u64>) -> Self {
        Self::new(DegeneracyRule::Explicit(values), "explicit")
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn d(&self, n: usize) -> u64 {
        let v = match &self.rule {
            DegeneracyRule::ConstantOne => 1,
            DegeneracyRule::BosonFermion => {
                if n == 0 {
                    1
                } else {
                    2
                }
            }
            DegeneracyRule::HalfStep => (n / 2) as u64 + 1,
            DegeneracyRule::Triangular => ((n + 1) * (n + 2) / 2) as u64,
            DegeneracyRule::Explicit(v) => v
                .get(n)
                .copied()
                .unwrap_or_else(|| panic!("explicit degeneracy has only {} levels", v.len())),
            DegeneracyRule::Custom(f) => f(n),
        };
        assert!(v >= 1, "degeneracy d({n}) = {v} must be ≥ 1");
        v
    }
}

/// A spectrum split into branches ε_{jk}, each with its own convergence
/// radius; houses the diagonal parameter bundles of the vector construction.
#[derive(Debug, Clone)]
pub struct BranchSet {
    branches: Vec<EnergySpectrum>,
    labels: Vec<String>,
}

impl BranchSet {
    pub fn new(branches: Vec<EnergySpectrum>, labels: Vec<String>) -> Self {
        assert_eq!(branches.len(), labels.len());
        Self { branches, labels }
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn branch(&self, j: usize) -> Result<&EnergySpectrum> {
        self.branches.get(j).ok_or(Error::BranchOutOfRange {
            index: j,
            count: self.branches.len(),
        })
    }

    pub fn label(&self, j: usize) -> &str {
        &self.labels[j]
    }

    pub fn branches(&self) -> &[EnergySpectrum] {
        &self.branches
    }

    /// Validates ε_{j0} = 0 and within-branch strict ordering up to `upto`.
    pub fn validate(&self, upto: usize) -> Result<()> {
        for b in &self.branches {
            if b.eps(0) != 0.0 {
                return Err(Error::UnshiftedSpectrum { eps0: b.eps(0) });
            }
            b.check_monotone(upto)?;
        }
        Ok(())
    }

    /// Cross-branch level collisions ε_{jk} = ε_{j'l} with k ≠ l, reported
    /// but not rejected: the quantifier scope of the distinctness condition
    /// is ambiguous across branches, so we only enforce it within a branch.
    pub fn cross_branch_collisions(&self, upto: usize, tol: f64) -> Vec<(usize, usize, usize, usize)> {
        let mut hits = Vec::new();
        for j in 0..self.branches.len() {
            for jp in 0..self.branches.len() {
                if j == jp {
                    continue;
                }
                for k in 0..=upto {
                    for l in 0..=upto {
                        if k != l
                            && (self.branches[j].eps(k) - self.branches[jp].eps(l)).abs() <= tol
                        {
                            hits.push((j, k, jp, l));
                        }
                    }
                }
            }
        }
        hits
    }
}

/// Outcome flag of the ratio-test probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadiusFlag {
    Stabilized,
    StillGrowingAtProbeDepth,
}

#[derive(Debug, Clone, Copy)]
pub struct RadiusEstimate {
    /// `+∞` when the ratios are still growing at the probe depth.
    pub value: f64,
    pub flag: RadiusFlag,
    pub probe_depth: usize,
}

/// Radius of convergence of `Σ Jⁿ d(n)/ρₙ` with ρₙ = εₙ!·d(n), estimated by
/// the ratio test on the coefficient sequence 1/ρₙ:
/// `rₙ = ρₙ/ρ_{n-1} = εₙ·d(n)/d(n-1)`.
pub fn radius_of_convergence(
    spec: &EnergySpectrum,
    deg: &DegeneracySequence,
    probe_depth: usize,
) -> RadiusEstimate {
    let depth = match spec.len() {
        Some(l) if l > 1 => (l - 1).min(probe_depth),
        Some(_) => {
            return RadiusEstimate {
                value: f64::INFINITY,
                flag: RadiusFlag::Stabilized,
                probe_depth: 0,
            }
        }
        None => probe_depth,
    };
    let ratio = |n: usize| spec.eps(n) * deg.d(n) as f64 / deg.d(n - 1) as f64;
    let last = ratio(depth);
    let mid = ratio((depth / 2).max(1));
    let stabilized = (last - mid).abs() <= 1e-6 * last.abs().max(1.0);
    if stabilized {
        RadiusEstimate {
            value: last,
            flag: RadiusFlag::Stabilized,
            probe_depth: depth,
        }
    } else {
        RadiusEstimate {
            value: f64::INFINITY,
            flag: RadiusFlag::StillGrowingAtProbeDepth,
            probe_depth: depth,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn eps_factorial_linear() {
        let spec = EnergySpectrum::linear(1.0);
        assert_eq!(spec.eps_factorial(0).unwrap().value(), 1.0);
        assert_eq!(spec.eps_factorial(5).unwrap().value(), 120.0);
    }

    #[test]
    fn eps_factorial_explicit_product() {
        let spec = EnergySpectrum::explicit(1.0, vec![0.0, 0.5, 1.5]);
        assert_relative_eq!(spec.eps_factorial(2).unwrap().value(), 0.75, max_relative = 1e-15);
    }

    #[test]
    fn eps_factorial_recursion_holds() {
        let spec = EnergySpectrum::custom(1.0, |n| (n as f64).sqrt() * 1.7, "sqrt-ish");
        let spec = spec.shift_to_zero();
        let mut prev = spec.eps_factorial(0).unwrap().value();
        for n in 1..60 {
            let f = spec.eps_factorial(n).unwrap().value();
            let expected = spec.eps(n) * prev;
            assert_relative_eq!(f, expected, max_relative = 1e-13);
            prev = f;
        }
    }

    #[test]
    fn eps_factorial_switches_to_log_space() {
        let spec = EnergySpectrum::linear(1.0);
        let f = spec.eps_factorial(200).unwrap();
        assert!(f.is_log_only());
        // Stirling cross-check on ln(200!)
        let n = 200.0f64;
        let stirling = n * n.ln() - n + 0.5 * (2.0 * std::f64::consts::PI * n).ln() + 1.0 / (12.0 * n);
        assert_relative_eq!(f.ln, stirling, max_relative = 1e-9);
    }

    #[test]
    fn non_monotone_spectrum_is_rejected() {
        let spec = EnergySpectrum::explicit(1.0, vec![0.0, 2.0, 1.0]);
        assert!(matches!(
            spec.eps_factorial(2),
            Err(Error::NonMonotoneSpectrum { level: 2, .. })
        ));
    }

    #[test]
    fn shift_to_zero_records_shift_and_is_idempotent() {
        let spec = EnergySpectrum::explicit(2.0, vec![0.5, 1.5, 2.5]);
        let shifted = spec.shift_to_zero();
        assert_eq!(shifted.eps(0), 0.0);
        assert_eq!(shifted.eps(1), 1.0);
        assert_eq!(shifted.eps(2), 2.0);
        assert_eq!(shifted.recorded_shift(), 0.5);
        let twice = shifted.shift_to_zero();
        assert_eq!(twice.recorded_shift(), 0.5);
        assert_eq!(twice.eps(1), 1.0);
    }

    #[test]
    fn shift_of_already_zero_spectrum_is_identity() {
        let spec = EnergySpectrum::linear(1.0).shift_to_zero();
        assert_eq!(spec.recorded_shift(), 0.0);
    }

    #[test]
    fn radius_linear_unit_degeneracy_is_infinite() {
        let spec = EnergySpectrum::linear(1.0);
        let r = radius_of_convergence(&spec, &DegeneracySequence::constant_one(), 400);
        assert!(r.value.is_infinite());
        assert_eq!(r.flag, RadiusFlag::StillGrowingAtProbeDepth);
    }

    #[test]
    fn radius_bounded_spectrum_is_one() {
        let spec = EnergySpectrum::custom(
            1.0,
            |n| if n == 0 { 0.0 } else { 1.0 - 0.5f64.powi(n as i32) },
            "1-2^-n",
        );
        let r = radius_of_convergence(&spec, &DegeneracySequence::constant_one(), 400);
        assert_eq!(r.flag, RadiusFlag::Stabilized);
        assert_relative_eq!(r.value, 1.0, max_relative = 1e-6);
    }

    #[test]
    fn radius_triangular_degeneracy_still_infinite() {
        // ratio test on Σ Jⁿ/εₙ!·d-structure: rₙ = n(n+2)/(n+1) grows without bound
        let spec = EnergySpectrum::linear(1.0);
        let r = radius_of_convergence(&spec, &DegeneracySequence::triangular(), 400);
        assert!(r.value.is_infinite());
    }

    #[test]
    fn normalization_is_exponential_for_linear_spectrum() {
        let spec = EnergySpectrum::linear(1.0);
        let n = spec.normalization(2.0, 1e-13).unwrap();
        assert_relative_eq!(n.value, 2.0f64.exp(), max_relative = 1e-12);
        assert!(n.tail_bound <= 1e-13);
        for j in [0.0f64, 0.1, 1.0, 5.0, 30.0] {
            let n = spec.normalization(j, 1e-13).unwrap();
            assert_relative_eq!(n.value, j.exp(), max_relative = 1e-12);
        }
    }

    #[test]
    fn normalization_at_zero_is_one() {
        let spec = EnergySpectrum::explicit(1.0, vec![0.0, 0.3, 0.9, 1.1]);
        let n = spec.normalization(0.0, 1e-12).unwrap();
        assert_eq!(n.value, 1.0);
        assert_eq!(n.depth, 0);
    }

    #[test]
    fn normalization_monotone_in_j() {
        let spec = EnergySpectrum::linear(1.0);
        let mut prev = 1.0;
        for i in 1..=30 {
            let j = i as f64 * 0.5;
            let n = spec.normalization(j, 1e-12).unwrap().value;
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn normalization_outside_radius_errors() {
        let spec = EnergySpectrum::custom(
            1.0,
            |n| if n == 0 { 0.0 } else { 1.0 - 0.5f64.powi(n as i32) },
            "1-2^-n",
        );
        let err = spec.normalization(1.5, 1e-12).unwrap_err();
        assert!(matches!(err, Error::OutsideConvergenceDomain { .. }));
    }

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<EnergySpectrum>();
        assert_send_sync::<DegeneracySequence>();
        assert_send_sync::<BranchSet>();
        // pure concurrent invocation over one shared spectrum
        let spec = std::sync::Arc::new(EnergySpectrum::linear(1.0));
        let handles: Vec<_> = (1..=4)
            .map(|i| {
                let spec = spec.clone();
                std::thread::spawn(move || spec.normalization(i as f64, 1e-12).unwrap().value)
            })
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            let v = h.join().unwrap();
            assert_relative_eq!(v, ((i + 1) as f64).exp(), max_relative = 1e-12);
        }
    }

    #[test]
    fn degeneracy_families_match_their_laws() {
        let d1 = DegeneracySequence::boson_fermion();
        assert_eq!(d1.d(0), 1);
        assert_eq!(d1.d(5), 2);
        let d2 = DegeneracySequence::half_step();
        assert_eq!(
            (0..6).map(|n| d2.d(n)).collect::<Vec<_>>(),
            vec![1, 1, 2, 2, 3, 3]
        );
        // structural recursion d(n) - d(n-2) = 1
        for n in 2..40 {
            assert_eq!(d2.d(n) - d2.d(n - 2), 1);
        }
        let d3 = DegeneracySequence::triangular();
        assert_eq!(
            (0..3).map(|n| d3.d(n)).collect::<Vec<_>>(),
            vec![1, 3, 6]
        );
    }
}

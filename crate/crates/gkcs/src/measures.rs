//! Radial measures solving the moment problem `∫₀ᴸ Jⁿ dν = εₙ!·d(n)`.
//!
//! Closed forms are attached where known (all of the form `c·Jᵏe^{-J} dJ`
//! plus point masses, which covers every shipped model); otherwise the
//! signed Laguerre-series density is reconstructed from the moment targets.
//! The alternating sum defining the series coefficients is catastrophically
//! cancellative in floating point, so it is evaluated in exact rational
//! arithmetic and converted to `f64` only at the evaluation boundary.
//!
//! Signed measures are first-class: densities that dip negative are flagged,
//! and atoms carry signed weights (the boson-fermion model ships `-δ(J)`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::quad::{self, QuadRule};
use crate::spectrum::{DegeneracySequence, EnergySpectrum};
use crate::{Error, Result};

/// Plain Laguerre polynomial Lₙ(x) by the stable three-term recurrence.
pub fn laguerre(n: usize, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut lm1 = 1.0f64;
    let mut l = 1.0 - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * l - kf * lm1) / (kf + 1.0);
        lm1 = l;
        l = next;
    }
    l
}

/// Support interval [lo, hi); `hi = None` means +∞.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct Support {
    pub lo: f64,
    pub hi: Option<f64>,
}

impl Support {
    pub fn semi_infinite() -> Self {
        Support { lo: 0.0, hi: None }
    }
}

/// Density part of a radial measure.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Density {
    /// `c·Jᵏ·e^{-J}`; every closed form the models need has this shape.
    Named {
        family: String,
        params: PolyExpParams,
    },
    /// Signed Laguerre-series density `e^{-x} Σ dₙ Lₙ(x)`.
    Laguerre { laguerre: Vec<f64> },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct PolyExpParams {
    pub coeff: f64,
    pub power: u32,
}

/// A (possibly signed) measure `density·dJ + Σ wᵢ δ(J - xᵢ)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RadialMeasure {
    pub support: Support,
    pub density: Density,
    /// Point masses as (location, signed weight) pairs.
    pub atoms: Vec<(f64, f64)>,
    /// Set when the density takes negative values somewhere (detected on a
    /// probe grid, or implied by a negative atom).
    pub nonpositive_somewhere: bool,
}

impl RadialMeasure {
    pub fn poly_exp(coeff: f64, power: u32, atoms: Vec<(f64, f64)>) -> Self {
        let nonpositive = coeff < 0.0 || atoms.iter().any(|&(_, w)| w < 0.0);
        RadialMeasure {
            support: Support::semi_infinite(),
            density: Density::Named {
                family: "poly_exp".into(),
                params: PolyExpParams { coeff, power },
            },
            atoms,
            nonpositive_somewhere: nonpositive,
        }
    }

    pub fn from_laguerre(series: &LaguerreSeries) -> Self {
        // probe for sign changes on a coarse grid
        let mut negative = false;
        for i in 0..400 {
            let x = i as f64 * 0.1;
            if series.density_eval(x) < 0.0 {
                negative = true;
                break;
            }
        }
        RadialMeasure {
            support: Support::semi_infinite(),
            density: Density::Laguerre {
                laguerre: series.coeffs_f64(),
            },
            atoms: Vec::new(),
            nonpositive_somewhere: negative,
        }
    }

    /// Density value at `x` (atoms excluded).
    pub fn density_at(&self, x: f64) -> f64 {
        match &self.density {
            Density::Named { params, .. } => params.coeff * x.powi(params.power as i32) * (-x).exp(),
            Density::Laguerre { laguerre } => {
                (-x).exp()
                    * laguerre
                        .iter()
                        .enumerate()
                        .map(|(n, d)| d * crate::measures::laguerre(n, x))
                        .sum::<f64>()
            }
        }
    }

    /// n-th moment `∫ Jⁿ dν`: Gauss-Laguerre quadrature for named densities
    /// plus atomic contributions (`0⁰ = 1`, so an atom at the origin counts
    /// toward the zeroth moment only). Laguerre-series densities use the
    /// closed form `∫ xⁿ Lₘ e^{-x} dx = (-1)ᵐ C(n,m)·n!` instead: the
    /// oscillatory integrand under quadrature loses digits to cancellation
    /// that the closed form does not.
    pub fn moment(&self, n: usize, rule: &QuadRule) -> f64 {
        let density_part = match &self.density {
            Density::Named { params, .. } => {
                let p = (n + params.power as usize) as i32;
                rule.integrate(|x| x.powi(p)) * params.coeff
            }
            Density::Laguerre { laguerre } => laguerre_moment(laguerre, n),
        };
        let atom_part: f64 = self
            .atoms
            .iter()
            .map(|&(x, w)| if n == 0 { w } else { w * x.powi(n as i32) })
            .sum();
        density_part + atom_part
    }
}

/// Moment target ρₙ = εₙ!·d(n), formed in log-space above the overflow
/// threshold.
pub fn target_moments(spec: &EnergySpectrum, deg: &DegeneracySequence, n: usize) -> Result<f64> {
    let f = spec.eps_factorial(n)?;
    let d = deg.d(n) as f64;
    if f.is_log_only() {
        Ok((f.ln + d.ln()).exp())
    } else {
        Ok(f.value() * d)
    }
}

/// Exact integer targets `n!·d(n)` for the unit linear spectrum; this is the
/// rational-arithmetic entry point for the Laguerre reconstruction.
pub fn integer_targets(deg: &DegeneracySequence, n_max: usize) -> Vec<BigRational> {
    let mut fact = BigInt::one();
    (0..=n_max)
        .map(|n| {
            if n > 0 {
                fact *= BigInt::from(n);
            }
            BigRational::from_integer(&fact * BigInt::from(deg.d(n)))
        })
        .collect()
}

/// Lifts f64 moment targets to exact rationals. Integer-valued targets are
/// the intended inputs; anything with a fractional part is refused rather
/// than silently approximated, since the downstream alternating sums only
/// make sense for exact data.
pub fn rational_targets_from_f64(values: &[f64]) -> Result<Vec<BigRational>> {
    values
        .iter()
        .map(|&v| {
            if v.fract() != 0.0 || !v.is_finite() {
                Err(Error::PrecisionLoss(format!(
                    "target {v} is not an exact integer"
                )))
            } else {
                BigRational::from_float(v)
                    .ok_or_else(|| Error::PrecisionLoss(format!("target {v} not representable")))
            }
        })
        .collect()
}

/// `Σₘ dₘ ∫ xⁿ Lₘ(x) e^{-x} dx = Σₘ dₘ (-1)ᵐ C(n,m) n!` (zero for m > n).
fn laguerre_moment(coeffs: &[f64], n: usize) -> f64 {
    let n_fact: f64 = (1..=n).map(|k| k as f64).product();
    let mut binom = 1.0f64; // C(n, m), updated incrementally
    let mut total = 0.0f64;
    for (m, d) in coeffs.iter().enumerate().take(n + 1) {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        total += d * sign * binom * n_fact;
        binom = binom * (n - m) as f64 / (m + 1) as f64;
    }
    total
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k.min(n - k) {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Truncated Laguerre expansion of the reconstructed density
/// `f(x) = e^{-x} Σₙ dₙ Lₙ(x)`, with the coefficients
/// `dₙ = Σₖ C(n, n-k) (-1)ᵏ ρₖ / k!` held as exact rationals.
#[derive(Debug, Clone)]
pub struct LaguerreSeries {
    coeffs: Vec<BigRational>,
}

impl LaguerreSeries {
    /// Builds the series from moment targets ρ₀…ρ_N in exact arithmetic.
    pub fn from_targets(targets: &[BigRational]) -> Self {
        let mut coeffs = Vec::with_capacity(targets.len());
        let mut k_fact = BigInt::one();
        let factorials: Vec<BigInt> = (0..targets.len())
            .map(|k| {
                if k > 0 {
                    k_fact *= BigInt::from(k);
                }
                k_fact.clone()
            })
            .collect();
        for n in 0..targets.len() {
            let mut d = BigRational::zero();
            for (k, rho) in targets.iter().enumerate().take(n + 1) {
                let c = BigRational::from_integer(binomial(n, n - k));
                let term = c * rho / BigRational::from_integer(factorials[k].clone());
                if k % 2 == 0 {
                    d += term;
                } else {
                    d -= term;
                }
            }
            coeffs.push(d);
        }
        LaguerreSeries { coeffs }
    }

    /// Directly wraps coefficients (used when loading serialized measures).
    pub fn from_rational_coeffs(coeffs: Vec<BigRational>) -> Self {
        LaguerreSeries { coeffs }
    }

    /// Truncation order N (series has coefficients d₀…d_N).
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().expect("coefficient out of f64 range"))
            .collect()
    }

    /// Series truncated to order `n`.
    pub fn truncated(&self, n: usize) -> Self {
        LaguerreSeries {
            coeffs: self.coeffs[..=n.min(self.order())].to_vec(),
        }
    }

    /// `f̃(x) = Σ dₙ Lₙ(x)` (no exponential factor).
    pub fn tilde_eval(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, d)| d.to_f64().unwrap() * laguerre(n, x))
            .sum()
    }

    /// Density value `f(x) = e^{-x} f̃(x)`.
    pub fn density_eval(&self, x: f64) -> f64 {
        (-x).exp() * self.tilde_eval(x)
    }

    /// Exact n-th moment of the series density,
    /// `Σₘ dₘ (-1)ᵐ C(n,m) n!` in rational arithmetic; reproduces the
    /// targets ρₙ exactly for n up to the truncation order.
    pub fn moment_exact(&self, n: usize) -> BigRational {
        let mut n_fact = BigInt::one();
        for k in 2..=n {
            n_fact *= BigInt::from(k);
        }
        let n_fact = BigRational::from_integer(n_fact);
        let mut total = BigRational::zero();
        for (m, d) in self.coeffs.iter().enumerate().take(n + 1) {
            let term = d * BigRational::from_integer(binomial(n, m)) * &n_fact;
            if m % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    /// Max deviation of `∫ Lₙ L_l e^{-x} dx` from δₙₗ under the given rule;
    /// exposes the orthonormality premise of the reconstruction.
    pub fn orthonormality_residual(n_max: usize, rule: &QuadRule) -> f64 {
        let mut worst = 0.0f64;
        for n in 0..=n_max {
            for l in 0..=n_max {
                let est = rule.integrate(|x| laguerre(n, x) * laguerre(l, x));
                let expect = if n == l { 1.0 } else { 0.0 };
                worst = worst.max((est - expect).abs());
            }
        }
        worst
    }
}

/// One row of a moment-verification report.
#[derive(Debug, Clone, Serialize)]
pub struct MomentRow {
    pub n: usize,
    pub target: f64,
    pub computed: f64,
    pub rel_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentReport {
    pub rows: Vec<MomentRow>,
    pub max_rel_error: f64,
    pub quad_nodes: usize,
    pub pass: bool,
    pub tol: f64,
}

/// Checks `∫ Jⁿ dν = εₙ!·d(n)` for n ≤ n_max by quadrature.
pub fn verify_moments(
    measure: &RadialMeasure,
    spec: &EnergySpectrum,
    deg: &DegeneracySequence,
    n_max: usize,
    quad_nodes: usize,
    tol: f64,
) -> Result<MomentReport> {
    let rule = quad::gauss_laguerre(quad_nodes);
    let mut rows = Vec::with_capacity(n_max + 1);
    let mut max_rel = 0.0f64;
    for n in 0..=n_max {
        let target = target_moments(spec, deg, n)?;
        let computed = measure.moment(n, &rule);
        let rel = (computed - target).abs() / target.abs().max(f64::MIN_POSITIVE);
        max_rel = max_rel.max(rel);
        rows.push(MomentRow {
            n,
            target,
            computed,
            rel_error: rel,
        });
    }
    if max_rel.is_nan() {
        return Err(Error::QuadratureFailure {
            tol,
            nodes: quad_nodes,
        });
    }
    Ok(MomentReport {
        rows,
        max_rel_error: max_rel,
        quad_nodes,
        pass: max_rel <= tol,
        tol,
    })
}

// ---------------------------------------------------------------------------
// Test functions for the weak-sense pairing
// ---------------------------------------------------------------------------

/// Exact-rational polynomial helpers for bump-function derivatives.
mod poly {
    use super::*;

    pub type Poly = Vec<BigRational>;

    pub fn derivative(p: &Poly) -> Poly {
        if p.len() <= 1 {
            return vec![BigRational::zero()];
        }
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect()
    }

    pub fn mul(a: &Poly, b: &Poly) -> Poly {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                out[i + j] += ca * cb;
            }
        }
        out
    }

    pub fn add_scaled(a: &Poly, b: &Poly, s: &BigRational) -> Poly {
        let mut out = vec![BigRational::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] += c * s;
        }
        out
    }

    pub fn eval_f64(p: &Poly, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in p.iter().rev() {
            acc = acc * x + c.to_f64().unwrap();
        }
        acc
    }
}

/// A smooth compactly supported bump `c·exp(-1/((x-a)(b-x)))` on (a, b),
/// scaled so that every probed derivative satisfies `∫|f^{(k)}| ≤ 1`.
///
/// Membership in the test-function class is certified numerically for
/// k ≤ `k_max` only; this partial check is what the shipped family needs.
#[derive(Debug, Clone)]
pub struct TestFunction {
    a: f64,
    b: f64,
    scale: f64,
    /// Scaled derivative L¹-norms for k = 0..=k_max.
    derivative_norms: Vec<f64>,
    /// P_k polynomials of f^{(k)} = (P_k/q^{2k})·f, exact.
    poly_cache: Vec<poly::Poly>,
}

impl TestFunction {
    /// Builds a bump supported on (a, b) ⊆ [0, 1], auto-scaled so all
    /// derivative norms up to `k_max` are ≤ `target` (< 1).
    pub fn bump(a: f64, b: f64, k_max: usize) -> Result<TestFunction> {
        assert!(
            (0.0..1.0).contains(&a) && a < b && b <= 1.0,
            "bump support must lie inside [0, 1]"
        );
        let (qa, qb) = rational_pair(a, b)?;
        // q(x) = (x - a)(b - x) = -x² + (a+b)x - ab
        let q: poly::Poly = vec![
            -(&qa * &qb),
            &qa + &qb,
            -BigRational::from_integer(BigInt::one()),
        ];
        let qp = poly::derivative(&q);
        let q2 = poly::mul(&q, &q);
        let mut polys: Vec<poly::Poly> = vec![vec![BigRational::one()]];
        for k in 0..k_max {
            let pk = &polys[k];
            // P_{k+1} = P_k'·q² - 2k·P_k·q'·q + P_k·q'
            let term1 = poly::mul(&poly::derivative(pk), &q2);
            let term2 = poly::mul(&poly::mul(pk, &qp), &q);
            let term3 = poly::mul(pk, &qp);
            let minus_2k = BigRational::from_integer(BigInt::from(-2i64 * k as i64));
            let sum = poly::add_scaled(&term1, &term2, &minus_2k);
            let sum = poly::add_scaled(&sum, &term3, &BigRational::one());
            polys.push(sum);
        }
        let raw_norms: Vec<f64> = (0..=k_max)
            .map(|k| derivative_l1_norm(a, b, &polys[k], k))
            .collect();
        let max_norm = raw_norms.iter().cloned().fold(0.0f64, f64::max);
        if !max_norm.is_finite() || max_norm == 0.0 {
            return Err(Error::TestFunctionOutOfClass {
                order: 0,
                norm: max_norm,
            });
        }
        let scale = 0.5 / max_norm;
        Ok(TestFunction {
            a,
            b,
            scale,
            derivative_norms: raw_norms.iter().map(|n| n * scale).collect(),
            poly_cache: polys,
        })
    }

    pub fn support(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.a || x >= self.b {
            return 0.0;
        }
        let q = (x - self.a) * (self.b - x);
        self.scale * (-1.0 / q).exp()
    }

    /// Scaled L¹-norms `∫|f^{(k)}|` for k up to the probed order.
    pub fn derivative_norms(&self) -> &[f64] {
        &self.derivative_norms
    }

    /// Verifies the probed derivative-norm conditions `∫|f^{(k)}| ≤ 1`.
    pub fn check_membership(&self) -> Result<()> {
        for (k, &norm) in self.derivative_norms.iter().enumerate() {
            if norm > 1.0 + 1e-12 {
                return Err(Error::TestFunctionOutOfClass { order: k, norm });
            }
        }
        Ok(())
    }

    /// k-th derivative value (k within the probed range).
    pub fn derivative_eval(&self, k: usize, x: f64) -> f64 {
        if x <= self.a || x >= self.b {
            return 0.0;
        }
        let q = (x - self.a) * (self.b - x);
        let p = poly::eval_f64(&self.poly_cache[k], x);
        self.scale * p * (-1.0 / q - 2.0 * k as f64 * q.ln()).exp()
    }
}

fn rational_pair(a: f64, b: f64) -> Result<(BigRational, BigRational)> {
    let conv = |x: f64| {
        BigRational::from_float(x).ok_or_else(|| Error::PrecisionLoss(format!("support bound {x}")))
    };
    Ok((conv(a)?, conv(b)?))
}

/// `∫ₐᵇ |P_k(x)| q(x)^{-2k} e^{-1/q(x)} dx` by composite quadrature;
/// the integrand vanishes to all orders at the endpoints.
fn derivative_l1_norm(a: f64, b: f64, pk: &poly::Poly, k: usize) -> f64 {
    let rule = quad::composite_legendre_on(16, 48, a, b);
    rule.integrate(|x| {
        let q = (x - a) * (b - x);
        if q <= 0.0 {
            return 0.0;
        }
        let log_weight = -1.0 / q - 2.0 * k as f64 * q.ln();
        poly::eval_f64(pk, x).abs() * log_weight.exp()
    })
}

/// Result of pairing two series truncations against a test function.
#[derive(Debug, Clone, Serialize)]
pub struct WeakPairing {
    /// `I_NM = ∫ (f̃_N - f̃_M) φ dx`.
    pub value: f64,
    /// Analytic bound `Σ_{n=M+1}^N |dₙ|·2ⁿ/n!` from the class properties.
    pub bound: f64,
    /// Quadrature error estimate (difference of two node counts).
    pub quad_tol: f64,
}

/// Pairing `∫ (f̃_N - f̃_M) φ` of two truncations of the same series,
/// together with its analytic bound. Asserts nothing itself; callers compare
/// `|value| ≤ bound + quad_tol`.
pub fn weak_pairing(
    series: &LaguerreSeries,
    n_trunc: usize,
    m_trunc: usize,
    phi: &TestFunction,
) -> Result<WeakPairing> {
    assert!(n_trunc >= m_trunc, "need N ≥ M");
    assert!(n_trunc <= series.order(), "series too short for N");
    phi.check_membership()?;
    let (lo, hi) = phi.support();
    let integrand = |x: f64| {
        let mut diff = 0.0;
        for n in (m_trunc + 1)..=n_trunc {
            diff += series.coeffs[n].to_f64().unwrap() * laguerre(n, x);
        }
        diff * phi.eval(x)
    };
    let coarse = quad::composite_legendre_on(16, 8, lo, hi).integrate(integrand);
    let fine = quad::composite_legendre_on(24, 16, lo, hi).integrate(integrand);
    let mut bound = 0.0f64;
    let mut fact = (1..=m_trunc).map(|k| k as f64).product::<f64>();
    for n in (m_trunc + 1)..=n_trunc {
        fact *= n as f64;
        let dn = series.coeffs[n].to_f64().unwrap().abs();
        bound += dn * 2f64.powi(n as i32) / fact;
    }
    Ok(WeakPairing {
        value: fine,
        bound,
        quad_tol: (fine - coarse).abs().max(1e-12),
    })
}

/// Closed-form measure for a model tag, when one is known.
///
/// The triangular-degeneracy model's polar measure `r⁵ dr dγ dθ / 4π²`
/// corresponds under `J = r²` to the J-density `J²e^{-J}/2` once the
/// normalization factor is absorbed, and that is what is returned here.
pub fn closed_form_measure(model_tag: &str) -> Result<RadialMeasure> {
    match model_tag {
        "gk-linear" => Ok(RadialMeasure::poly_exp(1.0, 0, vec![])),
        "example1" => Ok(RadialMeasure::poly_exp(2.0, 0, vec![(0.0, -1.0)])),
        "example3" => Ok(RadialMeasure::poly_exp(0.5, 2, vec![])),
        other => Err(Error::NoClosedForm(other.to_string())),
    }
}

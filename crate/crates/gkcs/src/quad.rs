//! Gaussian quadrature rules (Golub-Welsch construction).
//!
//! Nodes and weights come from the symmetric tridiagonal Jacobi matrix of
//! the orthogonal-polynomial family: eigenvalues are the nodes, squared
//! first eigenvector components (times the zeroth moment) are the weights.

use nalgebra::DMatrix;

/// A quadrature rule as plain node/weight pairs.
#[derive(Debug, Clone)]
pub struct QuadRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Applies the rule to `f`: `Σᵢ wᵢ f(xᵢ)`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

fn golub_welsch(diag: &[f64], offdiag: &[f64], mu0: f64) -> QuadRule {
    let n = diag.len();
    let mut jacobi = DMatrix::zeros(n, n);
    for i in 0..n {
        jacobi[(i, i)] = diag[i];
        if i + 1 < n {
            jacobi[(i, i + 1)] = offdiag[i];
            jacobi[(i + 1, i)] = offdiag[i];
        }
    }
    let eig = jacobi.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let node = eig.eigenvalues[i];
            let v0 = eig.eigenvectors[(0, i)];
            (node, mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    QuadRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Laguerre pair (Lₙ(x), L_{n-1}(x)) by the three-term recurrence.
fn laguerre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut lm1 = 0.0f64;
    let mut l = 1.0f64;
    for k in 0..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - x) * l - kf * lm1) / (kf + 1.0);
        lm1 = l;
        l = next;
    }
    (l, lm1)
}

/// Gauss-Laguerre rule: `∫₀^∞ f(x) e^{-x} dx ≈ Σ wᵢ f(xᵢ)`.
/// Exact for polynomials of degree ≤ 2n-1.
///
/// Nodes are polished by Newton iteration and weights come from the analytic
/// formula `wᵢ = xᵢ / [(n+1)² L_{n+1}(xᵢ)²]`; eigenvector-based weights lose
/// too much absolute accuracy at the far nodes for high moments.
pub fn gauss_laguerre(n: usize) -> QuadRule {
    assert!(n >= 1);
    let nf = n as f64;
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let mut z = 0.0f64;
    for i in 0..n {
        // initial guesses (Stroud & Secrest style)
        if i == 0 {
            z = 3.0 / (1.0 + 2.4 * nf);
        } else if i == 1 {
            z += 15.0 / (1.0 + 2.5 * nf);
        } else {
            let ai = (i - 1) as f64;
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2]);
        }
        for _ in 0..200 {
            let (l, lm1) = laguerre_pair(n, z);
            // Lₙ'(x) = n (Lₙ(x) - L_{n-1}(x)) / x
            let lp = nf * (l - lm1) / z;
            let dz = l / lp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        nodes[i] = z;
        let (lnp1, _) = laguerre_pair(n + 1, z);
        weights[i] = z / ((nf + 1.0) * (nf + 1.0) * lnp1 * lnp1);
    }
    QuadRule { nodes, weights }
}

/// Gauss-Legendre rule on [-1, 1]: `∫ f ≈ Σ wᵢ f(xᵢ)`.
pub fn gauss_legendre(n: usize) -> QuadRule {
    assert!(n >= 1);
    let diag = vec![0.0; n];
    let offdiag: Vec<f64> = (1..n)
        .map(|k| {
            let k = k as f64;
            k / (4.0 * k * k - 1.0).sqrt()
        })
        .collect();
    golub_welsch(&diag, &offdiag, 2.0)
}

/// Gauss-Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> QuadRule {
    let base = gauss_legendre(n);
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    QuadRule {
        nodes: base.nodes.iter().map(|&x| mid + half * x).collect(),
        weights: base.weights.iter().map(|&w| half * w).collect(),
    }
}

/// Composite Gauss-Legendre over `panels` equal subintervals of [a, b];
/// used where the integrand has kinks (absolute values of densities).
pub fn composite_legendre_on(nodes_per_panel: usize, panels: usize, a: f64, b: f64) -> QuadRule {
    let mut nodes = Vec::with_capacity(nodes_per_panel * panels);
    let mut weights = Vec::with_capacity(nodes_per_panel * panels);
    let step = (b - a) / panels as f64;
    for p in 0..panels {
        let lo = a + p as f64 * step;
        let rule = gauss_legendre_on(nodes_per_panel, lo, lo + step);
        nodes.extend(rule.nodes);
        weights.extend(rule.weights);
    }
    QuadRule { nodes, weights }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn laguerre_reproduces_gamma_moments() {
        let rule = gauss_laguerre(64);
        // ∫ xⁿ e^{-x} = n!
        let mut fact = 1.0f64;
        for n in 0..=12 {
            if n > 0 {
                fact *= n as f64;
            }
            let est = rule.integrate(|x| x.powi(n));
            assert_relative_eq!(est, fact, max_relative = 1e-12);
        }
    }

    #[test]
    fn laguerre_128_handles_high_moments() {
        let rule = gauss_laguerre(128);
        let est = rule.integrate(|x| x.powi(20));
        let exact = (1..=20).map(|k| k as f64).product::<f64>();
        assert_relative_eq!(est, exact, max_relative = 1e-10);
    }

    #[test]
    fn legendre_polynomial_exactness() {
        let rule = gauss_legendre_on(16, 0.0, 1.0);
        for n in 0..=20 {
            let est = rule.integrate(|x| x.powi(n));
            assert_relative_eq!(est, 1.0 / (n as f64 + 1.0), max_relative = 1e-13);
        }
    }

    #[test]
    fn legendre_weights_sum_to_length() {
        let rule = gauss_legendre(32);
        assert_relative_eq!(rule.weights.iter().sum::<f64>(), 2.0, max_relative = 1e-13);
    }
}

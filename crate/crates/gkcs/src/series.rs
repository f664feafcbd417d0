//! Adaptive series summation with certified geometric tail bounds.
//!
//! Every convergent series in this crate (normalizations, norms, energy
//! expectations) is a sum of nonnegative terms whose successive ratios
//! decrease once the spectrum outgrows `J`. Summation stops at the first
//! depth `K` where the geometric estimate
//! `tail ≤ t_{K+1} / (1 - r)`, `r = t_{K+1}/t_K < 1`, falls below the
//! requested tolerance. The depth and the bound are part of the result,
//! never discarded.

use crate::{Error, Result};

/// A partial sum together with its truncation depth and certified tail bound.
#[derive(Debug, Clone, Copy)]
pub struct SeriesSum {
    /// Partial sum over `n = 0..=depth`.
    pub value: f64,
    /// Last index included in the sum.
    pub depth: usize,
    /// Certified bound on the discarded tail (valid when term ratios are
    /// non-increasing beyond `depth`, which holds for strictly increasing
    /// spectra).
    pub tail_bound: f64,
}

/// Sums `Σ_{n≥0} term(n)` of nonnegative terms until the geometric tail
/// estimate drops below `tol`.
///
/// Returns [`Error::NonConvergent`] if the bound cannot be certified within
/// `max_depth` terms.
pub fn sum_with_tail<F>(term: F, tol: f64, max_depth: usize) -> Result<SeriesSum>
where
    F: Fn(usize) -> f64,
{
    let mut sum = 0.0f64;
    let mut current = term(0);
    for n in 0..max_depth {
        sum += current;
        let next = term(n + 1);
        if next == 0.0 {
            return Ok(SeriesSum {
                value: sum,
                depth: n,
                tail_bound: 0.0,
            });
        }
        let ratio = next / current;
        if ratio < 1.0 {
            let bound = next / (1.0 - ratio);
            if bound <= tol {
                return Ok(SeriesSum {
                    value: sum,
                    depth: n,
                    tail_bound: bound,
                });
            }
        }
        current = next;
    }
    Err(Error::NonConvergent {
        tol,
        depth: max_depth,
    })
}

/// Default probe depth used by adaptive sums.
pub const DEFAULT_MAX_DEPTH: usize = 20_000;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_series_matches_exp() {
        let j = 2.0f64;
        let s = sum_with_tail(
            |n| j.powi(n as i32) / (1..=n).map(|k| k as f64).product::<f64>(),
            1e-13,
            1000,
        )
        .unwrap();
        assert!((s.value - j.exp()).abs() <= 1e-12 * j.exp() + s.tail_bound);
        assert!(s.tail_bound <= 1e-13);
    }

    #[test]
    fn single_term_series_stops_immediately() {
        let s = sum_with_tail(|n| if n == 0 { 1.0 } else { 0.0 }, 1e-12, 10).unwrap();
        assert_eq!(s.value, 1.0);
        assert_eq!(s.depth, 0);
        assert_eq!(s.tail_bound, 0.0);
    }

    #[test]
    fn divergent_series_errors() {
        let err = sum_with_tail(|_| 1.0, 1e-12, 100).unwrap_err();
        assert!(matches!(err, Error::NonConvergent { .. }));
    }
}

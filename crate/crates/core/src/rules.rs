//! Gauss–Legendre rules on the reference interval `(-1, 1)` and their affine
//! application to a single panel `[a, b]`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math;

/// Largest supported rule order.
pub const MAX_ORDER: usize = 64;

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Nodes and weights of an order-`k` Gauss–Legendre rule on `(-1, 1)`.
///
/// Nodes are strictly increasing, symmetric about zero and strictly inside
/// the open interval; weights are positive and sum to 2.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Iterate `(node, weight)` pairs in increasing node order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Abscissa of node `i` mapped onto `[a, b]`.
    #[inline]
    pub fn mapped_node(&self, i: usize, a: f64, b: f64) -> f64 {
        a + 0.5 * (b - a) * (self.nodes[i] + 1.0)
    }

    /// Weight of node `i` scaled to a panel of width `b - a`.
    #[inline]
    pub fn mapped_weight(&self, i: usize, a: f64, b: f64) -> f64 {
        0.5 * (b - a) * self.weights[i]
    }

    /// Panel integral without the `a < b` check. Used on engine hot paths
    /// where the panel grid is already validated.
    #[inline]
    pub(crate) fn apply<F>(&self, f: &F, a: f64, b: f64) -> Result<f64>
    where
        F: Fn(f64) -> f64 + ?Sized,
    {
        let half = 0.5 * (b - a);
        let mut acc = 0.0;
        for (x, w) in self.iter() {
            let t = a + half * (x + 1.0);
            let y = f(t);
            if !y.is_finite() {
                return Err(Error::NonFinite { abscissa: t });
            }
            acc += w * y;
        }
        Ok(half * acc)
    }
}

/// Legendre polynomial `P_n(x)` and its derivative via the three-term
/// recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for k in 2..=n {
        let k = k as f64;
        let p_next = ((2.0 * k - 1.0) * x * p - (k - 1.0) * p_prev) / k;
        p_prev = p;
        p = p_next;
    }
    let n = n as f64;
    let dp = n * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Build the order-`order` Gauss–Legendre rule.
///
/// Roots of `P_order` are found by Newton iteration from the Chebyshev-angle
/// guess `cos(π(i + 3/4)/(order + 1/2))`; only the non-negative half is
/// computed and mirrored. Weights are `2 / ((1 - x²) P'(x)²)`.
pub fn gauss_legendre(order: usize) -> Result<QuadratureRule> {
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(Error::InvalidArgument("rule order must be within [1, 64]"));
    }
    let mut nodes = alloc::vec![0.0; order];
    let mut weights = alloc::vec![0.0; order];
    if order == 1 {
        weights[0] = 2.0;
        return Ok(QuadratureRule { nodes, weights });
    }

    let half = order.div_ceil(2);
    let n = order as f64;
    for i in 0..half {
        let is_center = order % 2 == 1 && i == half - 1;
        let mut x = if is_center {
            0.0
        } else {
            math::cos(PI * (i as f64 + 0.75) / (n + 0.5))
        };
        if !is_center {
            for _ in 0..NEWTON_MAX_ITER {
                let (p, dp) = legendre_with_derivative(order, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= NEWTON_TOL {
                    break;
                }
            }
        }
        let (_, dp) = legendre_with_derivative(order, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[order - 1 - i] = x;
        nodes[i] = -x;
        weights[order - 1 - i] = w;
        weights[i] = w;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// `∫ₐᵇ f` by the affine image of `rule` on `[a, b]`.
///
/// All nodes are interior, so `f` is never evaluated at `a` or `b`.
pub fn integrate_panel<F>(f: F, a: f64, b: f64, rule: &QuadratureRule) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument("panel requires finite a < b"));
    }
    rule.apply(&f, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_one_is_midpoint() {
        let r = gauss_legendre(1).unwrap();
        assert_eq!(r.nodes(), &[0.0]);
        assert_eq!(r.weights(), &[2.0]);
    }

    #[test]
    fn order_two_is_forced() {
        let r = gauss_legendre(2).unwrap();
        let x = 1.0 / libm::sqrt(3.0);
        assert!((r.nodes()[0] + x).abs() < 1e-15);
        assert!((r.nodes()[1] - x).abs() < 1e-15);
        assert!((r.weights()[0] - 1.0).abs() < 1e-15);
        assert!((r.weights()[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn order_bounds() {
        assert!(matches!(gauss_legendre(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(gauss_legendre(65), Err(Error::InvalidArgument(_))));
        assert!(gauss_legendre(64).is_ok());
    }

    #[test]
    fn odd_order_has_exact_center() {
        for k in [3, 5, 11, 63] {
            let r = gauss_legendre(k).unwrap();
            assert_eq!(r.nodes()[k / 2], 0.0);
        }
    }

    #[test]
    fn panel_rejects_empty_interval() {
        let r = gauss_legendre(4).unwrap();
        assert!(integrate_panel(|x| x, 1.0, 1.0, &r).is_err());
        assert!(integrate_panel(|x| x, 2.0, 1.0, &r).is_err());
    }

    #[test]
    fn panel_reports_non_finite_abscissa() {
        let r = gauss_legendre(2).unwrap();
        let err = integrate_panel(|x| if x > 0.5 { f64::NAN } else { x }, 0.0, 1.0, &r).unwrap_err();
        match err {
            Error::NonFinite { abscissa } => assert!(abscissa > 0.5 && abscissa < 1.0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn panel_never_touches_endpoints() {
        let r = gauss_legendre(10).unwrap();
        let v = integrate_panel(|x| if x == 0.0 || x == 1.0 { f64::NAN } else { 1.0 }, 0.0, 1.0, &r);
        assert!((v.unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn small_examples() {
        let r2 = gauss_legendre(2).unwrap();
        assert!((integrate_panel(|x| x * x, 0.0, 1.0, &r2).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        for k in [1, 5, 17] {
            let r = gauss_legendre(k).unwrap();
            assert!((integrate_panel(|_| 1.0, 3.0, 7.0, &r).unwrap() - 4.0).abs() < 1e-14);
        }
        let r10 = gauss_legendre(10).unwrap();
        let e = integrate_panel(libm::exp, 0.0, 1.0, &r10).unwrap();
        assert!((e - (core::f64::consts::E - 1.0)).abs() < 1e-13);
    }
}

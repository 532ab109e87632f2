//! Gauss–Legendre quadrature with adaptive order doubling.

use crate::scalar::{lit, Real};

/// Nodes and weights on [−1, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    /// Rule with `order` nodes; nodes come from Newton iteration on P_order.
    pub fn new(order: usize) -> Self {
        assert!(order > 0, "quadrature order must be positive");
        let n_t = T::from_usize_lossy(order);
        let mut nodes = vec![T::zero(); order];
        let mut weights = vec![T::zero(); order];
        let half = order.div_ceil(2);
        for i in 0..half {
            let guess = T::PI() * (T::from_usize_lossy(i + 1) - lit(0.25)) / (n_t + lit(0.5));
            let mut x = guess.cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(order, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= T::epsilon() * lit(4.0) {
                    let (_, d) = legendre_with_derivative(order, x);
                    dp = d;
                    break;
                }
            }
            let w = lit::<T>(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        if order % 2 == 1 {
            nodes[order / 2] = T::zero();
        }
        GaussLegendre { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    /// ∫_a^b f.
    pub fn integrate<F: FnMut(T) -> T>(&self, a: T, b: T, mut f: F) -> T {
        let half = (b - a) / lit(2.0);
        let mid = (a + b) / lit(2.0);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<T>()
    }
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let k_t = T::from_usize_lossy(k);
        let p2 = ((lit::<T>(2.0) * k_t - T::one()) * x * p1 - (k_t - T::one()) * p0) / k_t;
        p0 = p1;
        p1 = p2;
    }
    let n_t = T::from_usize_lossy(n);
    let d = n_t * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureEstimate<T> {
    pub value: T,
    /// Orders tried with their values, in increasing order.
    pub history: Vec<(usize, T)>,
    pub converged: bool,
}

/// Default starting order for normalization integrals.
pub const DEFAULT_ORDER: usize = 200;

/// Doubles the order from `start` until two successive values agree to `rel_tol`.
pub fn integrate_adaptive<T: Real, F: FnMut(T) -> T>(
    a: T,
    b: T,
    mut f: F,
    start: usize,
    rel_tol: T,
    max_order: usize,
) -> QuadratureEstimate<T> {
    let mut order = start.max(1);
    let mut history = Vec::new();
    let mut previous: Option<T> = None;
    loop {
        let value = GaussLegendre::new(order).integrate(a, b, &mut f);
        history.push((order, value));
        if let Some(prev) = previous {
            let scale = value.abs().max(prev.abs()).max(T::min_positive_value());
            if (value - prev).abs() <= rel_tol * scale {
                return QuadratureEstimate { value, history, converged: true };
            }
        }
        if order * 2 > max_order {
            return QuadratureEstimate { value, history, converged: false };
        }
        previous = Some(value);
        order *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two_and_nodes_symmetric() {
        for n in [1, 2, 5, 20, 200] {
            let g = GaussLegendre::<f64>::new(n);
            let total: f64 = g.weights().iter().sum();
            assert!((total - 2.0).abs() < 1e-13, "n={n}");
            for i in 0..n {
                assert!((g.nodes()[i] + g.nodes()[n - 1 - i]).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn exact_for_polynomials_up_to_degree_2n_minus_1() {
        let g = GaussLegendre::<f64>::new(5);
        for k in 0..10 {
            let v = g.integrate(0.0, 1.0, |x| x.powi(k));
            assert!((v - 1.0 / (k as f64 + 1.0)).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn three_point_reference_nodes() {
        let g = GaussLegendre::<f64>::new(3);
        assert!((g.nodes()[2] - (0.6f64).sqrt()).abs() < 1e-15);
        assert!((g.weights()[1] - 8.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_stops_when_converged() {
        let est = integrate_adaptive(0.0, std::f64::consts::PI, f64::sin, 4, 1e-12, 1024);
        assert!(est.converged);
        assert!((est.value - 2.0).abs() < 1e-12);
        assert!(est.history.len() >= 2);
    }

    #[test]
    fn single_precision_rule() {
        let g = GaussLegendre::<f32>::new(16);
        let v = g.integrate(-1.0, 1.0, |x| x * x);
        assert!((v - 2.0 / 3.0).abs() < 1e-6);
    }
}

//! Gauss-Chebyshev quadrature of the first kind.

use crate::scalar::{from_usize, lit, Real};

/// `N`-point rule for `int_{-1}^{1} g(t) / sqrt(1 - t^2) dt`.
///
/// Nodes are `cos((2j - 1) pi / 2N)` and all weights equal `pi / N`; the
/// rule is exact for polynomials of degree `2N - 1`.
#[derive(Clone, Debug)]
pub struct GaussChebyshev<T> {
    nodes: Vec<T>,
    weight: T,
}

impl<T: Real> GaussChebyshev<T> {
    /// Panics if `order == 0`.
    pub fn new(order: usize) -> Self {
        assert!(order > 0, "quadrature order must be positive");
        let n = from_usize::<T>(order);
        let nodes = (1..=order)
            .map(|j| (T::PI() * (lit::<T>(2.0) * from_usize::<T>(j) - T::one()) / (lit::<T>(2.0) * n)).cos())
            .collect();
        Self {
            nodes,
            weight: T::PI() / n,
        }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    /// `int_a^b g(x) / sqrt((x - a)(b - x)) dx`.
    pub fn integrate_segment<R>(&self, a: T, b: T, mut g: impl FnMut(T) -> R) -> R
    where
        R: std::ops::Add<Output = R> + std::ops::Mul<T, Output = R> + num_traits::Zero,
    {
        let mid = (a + b) * lit(0.5);
        let half = (b - a) * lit(0.5);
        let mut acc = R::zero();
        for &t in &self.nodes {
            acc = acc + g(mid + half * t);
        }
        acc * self.weight
    }
}

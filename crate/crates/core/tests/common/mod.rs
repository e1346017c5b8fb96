//! Shared fixtures and seeded random generators for the integration tests.
#![allow(dead_code)]

use bergman_torelli::{
    CMat64, ComplexStructure64, CurvePoint, HyperellipticCurve64, PeriodData64, TangentVector64, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `y^2 = x^3 - x`.
pub fn cubic() -> HyperellipticCurve64 {
    HyperellipticCurve64::new(&[0.0, -1.0, 0.0, 1.0]).unwrap()
}

/// `y^2 = x (x-1)(x-2)(x-3)(x-4)`.
pub fn quintic() -> HyperellipticCurve64 {
    HyperellipticCurve64::new(&[0.0, 24.0, -50.0, 35.0, -10.0, 1.0]).unwrap()
}

pub fn periods(curve: &HyperellipticCurve64) -> PeriodData64 {
    PeriodData64::compute(curve, 64).unwrap()
}

pub fn poly_from_roots(roots: &[f64], lead: f64) -> Vec<f64> {
    let mut p = vec![lead];
    for &r in roots {
        let mut next = vec![0.0; p.len() + 1];
        for (k, &a) in p.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= r * a;
        }
        p = next;
    }
    p
}

pub fn complex(rng: &mut ChaCha8Rng, scale: f64) -> C64 {
    c(rng.gen_range(-scale..scale), rng.gen_range(-scale..scale))
}

pub fn complex_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| complex(rng, 1.0)).collect()
}

pub fn complex_mat(rng: &mut ChaCha8Rng, r: usize, cols: usize) -> CMat64 {
    CMat64::from_fn(r, cols, |_, _| complex(rng, 1.0))
}

pub fn complex_symmetric(rng: &mut ChaCha8Rng, n: usize) -> CMat64 {
    let a = complex_mat(rng, n, n);
    (&a + &a.transpose()).scale_real(0.5)
}

/// Random point of Siegel space: symmetric, `Im Z >= 0.5 I`.
pub fn siegel_point(rng: &mut ChaCha8Rng, g: usize) -> CMat64 {
    let x = CMat64::from_real(g, g, |_, _| rng.gen_range(-1.0..1.0));
    let x = (&x + &x.transpose()).scale_real(0.5);
    let a = CMat64::from_real(g, g, |_, _| rng.gen_range(-1.0..1.0));
    let y = &(&a * &a.transpose()) + &CMat64::identity(g).scale_real(0.5);
    &x + &y.scale(c(0.0, 1.0))
}

pub fn random_structure(rng: &mut ChaCha8Rng, g: usize) -> ComplexStructure64 {
    ComplexStructure64::from_period_matrix(&siegel_point(rng, g)).unwrap()
}

/// Tangent vector at a random point kept away from the branch points.
pub fn random_tangent(rng: &mut ChaCha8Rng, curve: &HyperellipticCurve64) -> TangentVector64 {
    let lo = curve.roots()[0] - 1.0;
    let hi = curve.roots()[curve.roots().len() - 1] + 1.0;
    loop {
        let x = c(rng.gen_range(lo..hi), rng.gen_range(-1.5..1.5));
        let sheet = if rng.gen_bool(0.5) { 1 } else { -1 };
        if let Ok(p) = CurvePoint::with_exclusion(curve, x, sheet, 0.1) {
            return TangentVector64::new(p, complex(rng, 1.0));
        }
    }
}

//! Weierstrass `wp` and `zeta` for a lattice `Z omega1 + Z omega2`.
//!
//! Both are evaluated for the lattice `(1, tau)`, `tau = omega2 / omega1`, by
//! summing the `m` direction in closed form:
//!
//! ```text
//! wp(s)   = pi^2 csc^2(pi s) - pi^2/3
//!         + sum_{n != 0} [pi^2 csc^2(pi (s + n tau)) - pi^2 csc^2(pi n tau)]
//! zeta(s) = pi cot(pi s) + s pi^2/3
//!         + sum_{n != 0} [pi cot(pi (s + n tau)) - pi cot(pi n tau) + s pi^2 csc^2(pi n tau)]
//! ```
//!
//! and then rescaled: `wp(z) = omega1^-2 wp(z / omega1)`,
//! `zeta(z) = omega1^-1 zeta(z / omega1)`. The remaining `n` sums converge
//! geometrically with ratio `exp(-2 pi Im tau)`. Arguments are first reduced
//! to the fundamental cell around the origin.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{from_usize, i_unit, lit, Real};

/// `exp(z) - 1` without cancellation for small `|z|`.
fn exp_m1<T: Real>(z: Complex<T>) -> Complex<T> {
    let half = (z.im * lit::<T>(0.5)).sin();
    Complex::new(
        z.re.exp_m1() * z.im.cos() - lit::<T>(2.0) * half * half,
        z.re.exp() * z.im.sin(),
    )
}

/// `(cot w, csc^2 w)`, evaluated through `q = exp(+-2iw)` so that large
/// `|Im w|` does not overflow.
fn cot_csc2<T: Real>(w: Complex<T>) -> (Complex<T>, Complex<T>) {
    let one = Complex::<T>::one();
    let i = i_unit::<T>();
    let four = lit::<T>(4.0);
    let sign = if w.im >= T::zero() { T::one() } else { -T::one() };
    let e = i * w * (lit::<T>(2.0) * sign);
    let q = e.exp();
    let d = -exp_m1(e);
    (-i * (one + q) / d * sign, -(q * four) / (d * d))
}

/// Truncated lattice sums for a fixed lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct Weierstrass<T> {
    omega1: Complex<T>,
    omega2: Complex<T>,
    tau: Complex<T>,
    truncation: usize,
    /// Quasi-periods of the `(1, tau)` lattice, used for argument reduction.
    eta_unit: (Complex<T>, Complex<T>),
}

impl<T: Real> Weierstrass<T> {
    /// Sums over `|n| <= truncation`.
    pub fn new(omega1: Complex<T>, omega2: Complex<T>, truncation: usize) -> Result<Self> {
        if omega1.is_zero() {
            return Err(Error::DegenerateLattice { ratio_im: 0.0 });
        }
        let tau = omega2 / omega1;
        if !(tau.im > lit::<T>(1e-6)) {
            return Err(Error::DegenerateLattice {
                ratio_im: tau.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        let mut w = Self {
            omega1,
            omega2,
            tau,
            truncation: truncation.max(1),
            eta_unit: (Complex::zero(), Complex::zero()),
        };
        let s0 = Complex::new(lit::<T>(0.1234), lit::<T>(0.0321)) + tau * lit::<T>(0.0777);
        let z0 = w.zeta_unit_raw(s0);
        w.eta_unit = (
            w.zeta_unit_raw(s0 + Complex::one()) - z0,
            w.zeta_unit_raw(s0 + tau) - z0,
        );
        Ok(w)
    }

    pub fn omega1(&self) -> Complex<T> {
        self.omega1
    }

    pub fn omega2(&self) -> Complex<T> {
        self.omega2
    }

    pub fn tau(&self) -> Complex<T> {
        self.tau
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `s = r + m + n tau` with `r` in the cell around the origin.
    fn reduce(&self, s: Complex<T>) -> (Complex<T>, T, T) {
        let n = (s.im / self.tau.im).round();
        let s1 = s - self.tau * n;
        let m = s1.re.round();
        (s1 - m, m, n)
    }

    fn wp_unit_raw(&self, s: Complex<T>) -> Complex<T> {
        let pi = T::PI();
        let pi2 = pi * pi;
        let mut acc = cot_csc2(s * pi).1 * pi2 - pi2 / lit::<T>(3.0);
        for k in 1..=self.truncation {
            let nt = self.tau * from_usize::<T>(k);
            let c0 = cot_csc2(nt * pi).1;
            acc = acc + (cot_csc2((s + nt) * pi).1 + cot_csc2((s - nt) * pi).1 - c0 * lit::<T>(2.0)) * pi2;
        }
        acc
    }

    fn wp_prime_unit_raw(&self, s: Complex<T>) -> Complex<T> {
        let pi = T::PI();
        let c3 = lit::<T>(-2.0) * pi * pi * pi;
        let term = |w: Complex<T>| {
            let (ct, cs) = cot_csc2(w * pi);
            cs * ct * c3
        };
        let mut acc = term(s);
        for k in 1..=self.truncation {
            let nt = self.tau * from_usize::<T>(k);
            acc = acc + term(s + nt) + term(s - nt);
        }
        acc
    }

    fn zeta_unit_raw(&self, s: Complex<T>) -> Complex<T> {
        let pi = T::PI();
        let pi2 = pi * pi;
        let mut acc = cot_csc2(s * pi).0 * pi + s * (pi2 / lit::<T>(3.0));
        for k in 1..=self.truncation {
            let nt = self.tau * from_usize::<T>(k);
            let k0 = cot_csc2(nt * pi).1;
            // cot is odd and csc^2 even, so the -n term pairs with +n.
            acc = acc + (cot_csc2((s + nt) * pi).0 + cot_csc2((s - nt) * pi).0) * pi + s * k0 * pi2 * lit::<T>(2.0);
        }
        acc
    }

    /// Distance from `z` to the nearest lattice point.
    pub fn lattice_distance(&self, z: Complex<T>) -> T {
        let (r, _, _) = self.reduce(z / self.omega1);
        let mut best = T::infinity();
        for dm in -1..=1 {
            for dn in -1..=1 {
                let p = r - Complex::new(lit::<T>(dm as f64), T::zero()) - self.tau * lit::<T>(dn as f64);
                best = best.min((p * self.omega1).norm());
            }
        }
        best
    }

    /// `wp(z)`.
    pub fn wp(&self, z: Complex<T>) -> Complex<T> {
        let (r, _, _) = self.reduce(z / self.omega1);
        self.wp_unit_raw(r) / (self.omega1 * self.omega1)
    }

    /// `wp'(z)`.
    pub fn wp_prime(&self, z: Complex<T>) -> Complex<T> {
        let (r, _, _) = self.reduce(z / self.omega1);
        self.wp_prime_unit_raw(r) / self.omega1.powu(3)
    }

    /// `zeta(z)`.
    pub fn zeta(&self, z: Complex<T>) -> Complex<T> {
        let (r, m, n) = self.reduce(z / self.omega1);
        (self.zeta_unit_raw(r) + self.eta_unit.0 * m + self.eta_unit.1 * n) / self.omega1
    }

    /// `zeta(z)` without argument reduction, summed directly.
    pub fn zeta_unreduced(&self, z: Complex<T>) -> Complex<T> {
        self.zeta_unit_raw(z / self.omega1) / self.omega1
    }

    /// `(g2, g3)` from the Laurent coefficients of `wp` at the origin,
    /// `wp(z) = z^-2 + g2 z^2 / 20 + g3 z^4 / 28 + ...`, by the trapezoidal
    /// rule on a circle.
    pub fn invariants(&self) -> (Complex<T>, Complex<T>) {
        let r = self
            .omega1
            .norm()
            .min(self.omega2.norm())
            .min((self.omega2 - self.omega1).norm())
            * lit::<T>(0.4);
        let m = 128usize;
        let mut c2 = Complex::zero();
        let mut c4 = Complex::zero();
        for k in 0..m {
            let theta = lit::<T>(2.0) * T::PI() * from_usize::<T>(k) / from_usize::<T>(m);
            let z = Complex::from_polar(r, theta);
            let f = self.wp(z) - (z * z).inv();
            c2 = c2 + f / z.powu(2);
            c4 = c4 + f / z.powu(4);
        }
        let mf = from_usize::<T>(m);
        (c2 / mf * lit::<T>(20.0), c4 / mf * lit::<T>(28.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn cot_matches_std() {
        for w in [c(0.3, 0.2), c(-1.1, -0.7), c(0.4, 0.0), c(2.0, 5.0)] {
            let (ct, cs) = cot_csc2::<f64>(w);
            let direct = w.cos() / w.sin();
            assert!((ct - direct).norm() < 1e-12, "{w}");
            assert!((cs - (w.sin() * w.sin()).inv()).norm() < 1e-12);
        }
        // csc^2 w - 1/w^2 -> 1/3
        for w in [c(1e-5, 2e-5), c(-3e-6, -1e-6)] {
            let (ct, cs) = cot_csc2::<f64>(w);
            assert!((cs - (w * w).inv() - c(1.0 / 3.0, 0.0)).norm() < 1e-4, "{w}");
            assert!((ct - w.inv()).norm() < 1e-4);
        }
    }

    #[test]
    fn square_lattice_symmetry() {
        let w = Weierstrass::<f64>::new(c(1.0, 0.0), c(0.0, 1.0), 12).unwrap();
        let z = c(0.21, 0.13);
        // wp(iz) = -wp(z) for the square lattice
        assert!((w.wp(z * c(0.0, 1.0)) + w.wp(z)).norm() < 1e-11);
        assert!((w.wp(-z) - w.wp(z)).norm() < 1e-12);
        let (_, g3) = w.invariants();
        assert!(g3.norm() < 1e-9);
    }

    #[test]
    fn differential_equation() {
        let w = Weierstrass::<f64>::new(c(0.7, 0.2), c(0.1, 1.3), 16).unwrap();
        let (g2, g3) = w.invariants();
        for z in [c(0.2, 0.3), c(-0.35, 0.1), c(0.5, -0.6)] {
            let p = w.wp(z);
            let dp = w.wp_prime(z);
            let rhs = p * p * p * 4.0 - g2 * p - g3;
            assert!((dp * dp - rhs).norm() < 1e-9 * rhs.norm().max(1.0), "{z}");
        }
    }

    #[test]
    fn pole_normalization() {
        let w = Weierstrass::<f64>::new(c(1.0, 0.0), c(0.3, 1.1), 12).unwrap();
        for k in 1..6 {
            let z = c(1e-3 * k as f64, 2e-3);
            assert!((w.wp(z) * z * z - c(1.0, 0.0)).norm() < 1e-5);
            assert!((w.zeta(z) * z - c(1.0, 0.0)).norm() < 1e-5);
        }
    }

    #[test]
    fn degenerate_rejected() {
        assert!(matches!(
            Weierstrass::<f64>::new(c(1.0, 0.0), c(2.0, 0.0), 8),
            Err(Error::DegenerateLattice { .. })
        ));
        assert!(matches!(
            Weierstrass::<f64>::new(c(1.0, 0.0), c(0.0, -1.0), 8),
            Err(Error::DegenerateLattice { .. })
        ));
    }
}

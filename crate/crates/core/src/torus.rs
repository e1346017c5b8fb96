//! Genus one: the elementary potential, `eta-hat`, the form `alpha` and the
//! identities `d alpha = eta-hat - 2 pi B`, all in closed form through the
//! Weierstrass functions of the lattice.
//!
//! On `C / (Z omega1 + Z omega2)` with coordinate `z`, the potential of
//! `u = d/dz` at the origin is `F(z) = -zeta(z) + c1 z + c2 conj(z)`, where
//! `c1 omega_k + c2 conj(omega_k) = eta_k` makes it single-valued. For
//! `u = lambda d/dz` at `p` the potential is `f_u(z) = lambda F(z - p)`.

use num_complex::Complex;
use num_traits::Zero;

use crate::bergman::{BergmanContext, HolomorphicFrame};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::scalar::{c, i_unit, lit, Real};
use crate::weierstrass::Weierstrass;

/// Accuracy a truncation must reach under the doubling check.
pub const TARGET_ACCURACY: f64 = 1e-10;

/// Stopping threshold for [`LatticeContext::auto`].
pub const AUTO_ACCURACY: f64 = 1e-12;

/// Minimum distance to a lattice point, relative to `|omega1|`.
pub const LATTICE_EXCLUSION: f64 = 1e-6;

/// `lambda d/dz` at the point `z` of the torus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusTangent<T> {
    pub z: Complex<T>,
    pub lambda: Complex<T>,
}

impl<T: Real> TorusTangent<T> {
    pub fn new(z: Complex<T>, lambda: Complex<T>) -> Self {
        Self { z, lambda }
    }
}

/// A lattice with its quasi-periods and potential coefficients.
#[derive(Clone, Debug)]
pub struct LatticeContext<T> {
    w: Weierstrass<T>,
    eta1: Complex<T>,
    eta2: Complex<T>,
    area: T,
    c1: Complex<T>,
    c2: Complex<T>,
    z: CMat<T>,
    truncation_change: T,
}

fn probe_points<T: Real>(w: &Weierstrass<T>) -> Vec<Complex<T>> {
    let tau = w.tau();
    [(0.31, 0.17), (-0.42, 0.45), (0.5, 0.5), (0.07, -0.38)]
        .iter()
        .map(|&(a, b)| (c::<T>(a, 0.0) + tau * lit::<T>(b)) * w.omega1())
        .collect()
}

fn truncation_change<T: Real>(coarse: &Weierstrass<T>, fine: &Weierstrass<T>) -> T {
    probe_points(coarse).into_iter().fold(T::zero(), |m, z| {
        m.max((coarse.wp(z) - fine.wp(z)).norm())
            .max((coarse.zeta(z) - fine.zeta(z)).norm())
    })
}

impl<T: Real> LatticeContext<T> {
    /// Builds the context with `|n| <= truncation` row sums; the doubling
    /// change must be within [`TARGET_ACCURACY`].
    pub fn build(omega1: Complex<T>, omega2: Complex<T>, truncation: usize) -> Result<Self> {
        let coarse = Weierstrass::new(omega1, omega2, truncation)?;
        let fine = Weierstrass::new(omega1, omega2, 2 * coarse.truncation())?;
        let change = truncation_change(&coarse, &fine);
        if !(change <= lit::<T>(TARGET_ACCURACY)) {
            return Err(Error::TruncationTooSmall {
                truncation,
                change: change.to_f64().unwrap_or(f64::NAN),
            });
        }
        Self::finish(coarse, change)
    }

    /// Doubles the truncation until successive values agree to [`AUTO_ACCURACY`].
    pub fn auto(omega1: Complex<T>, omega2: Complex<T>) -> Result<Self> {
        let mut n = 4;
        loop {
            let coarse = Weierstrass::new(omega1, omega2, n)?;
            let fine = Weierstrass::new(omega1, omega2, 2 * n)?;
            let change = truncation_change(&coarse, &fine);
            if change <= lit::<T>(AUTO_ACCURACY) {
                return Self::finish(fine, change);
            }
            if n >= 1 << 12 {
                return Err(Error::TruncationTooSmall {
                    truncation: 2 * n,
                    change: change.to_f64().unwrap_or(f64::NAN),
                });
            }
            n *= 2;
        }
    }

    fn finish(w: Weierstrass<T>, truncation_change: T) -> Result<Self> {
        let (o1, o2) = (w.omega1(), w.omega2());
        let z0 = (c::<T>(0.1234, 0.0) + w.tau() * lit::<T>(0.2345)) * o1;
        let base = w.zeta_unreduced(z0);
        let eta1 = w.zeta_unreduced(z0 + o1) - base;
        let eta2 = w.zeta_unreduced(z0 + o2) - base;
        let m = CMat::from_rows(&[vec![o1, o1.conj()], vec![o2, o2.conj()]]);
        let sol = m.solve_vec(&[eta1, eta2])?;
        let area = (o1.conj() * o2).im;
        let z = CMat::from_rows(&[vec![w.tau()]]);
        Ok(Self {
            w,
            eta1,
            eta2,
            area,
            c1: sol[0],
            c2: sol[1],
            z,
            truncation_change,
        })
    }

    pub fn weierstrass(&self) -> &Weierstrass<T> {
        &self.w
    }

    pub fn omega1(&self) -> Complex<T> {
        self.w.omega1()
    }

    pub fn omega2(&self) -> Complex<T> {
        self.w.omega2()
    }

    pub fn eta1(&self) -> Complex<T> {
        self.eta1
    }

    pub fn eta2(&self) -> Complex<T> {
        self.eta2
    }

    /// Area of a fundamental parallelogram, `Im(conj(omega1) omega2)`.
    pub fn area(&self) -> T {
        self.area
    }

    pub fn c1(&self) -> Complex<T> {
        self.c1
    }

    pub fn c2(&self) -> Complex<T> {
        self.c2
    }

    /// Largest change of `wp`/`zeta` at the probe points under truncation doubling.
    pub fn truncation_change(&self) -> T {
        self.truncation_change
    }

    /// `max_k |c1 omega_k + c2 conj(omega_k) - eta_k|`.
    pub fn single_valuedness_residual(&self) -> T {
        [(self.omega1(), self.eta1), (self.omega2(), self.eta2)]
            .iter()
            .fold(T::zero(), |m, &(o, e)| {
                m.max((self.c1 * o + self.c2 * o.conj() - e).norm())
            })
    }

    /// `|eta1 omega2 - eta2 omega1 - 2 pi i|`.
    pub fn legendre_residual(&self) -> T {
        let two_pi_i = i_unit::<T>() * (lit::<T>(2.0) * T::PI());
        (self.eta1 * self.omega2() - self.eta2 * self.omega1() - two_pi_i).norm()
    }

    fn check_off_lattice(&self, z: Complex<T>) -> Result<()> {
        let d = self.w.lattice_distance(z);
        if !(d > lit::<T>(LATTICE_EXCLUSION) * self.omega1().norm()) {
            return Err(Error::AtLatticePoint {
                distance: d.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    /// `F(z) = -zeta(z) + c1 z + c2 conj(z)`, complex valued, additive constant 0.
    pub fn elementary_potential(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.check_off_lattice(z)?;
        Ok(-self.w.zeta(z) + self.c1 * z + self.c2 * z.conj())
    }

    /// `f_u(z) = lambda F(z - p)` for `u = lambda d/dz` at `p`.
    pub fn potential_of(&self, u: &TorusTangent<T>, z: Complex<T>) -> Result<Complex<T>> {
        Ok(u.lambda * self.elementary_potential(z - u.z)?)
    }

    /// `|F(z + w) - F(z)|` maximized over `w` in `{+-omega1, +-omega2}`.
    pub fn periodicity_residual(&self, z: Complex<T>) -> Result<T> {
        let f = self.elementary_potential(z)?;
        let mut worst = T::zero();
        for w in [self.omega1(), -self.omega1(), self.omega2(), -self.omega2()] {
            worst = worst.max((self.elementary_potential(z + w)? - f).norm());
        }
        Ok(worst)
    }

    /// Five-point Laplacian of `F` at `z` with step `h`.
    pub fn discrete_laplacian(&self, z: Complex<T>, h: T) -> Result<Complex<T>> {
        let f = |w: Complex<T>| self.elementary_potential(w);
        let (hx, hy) = (Complex::new(h, T::zero()), Complex::new(T::zero(), h));
        Ok((f(z + hx)? + f(z - hx)? + f(z + hy)? + f(z - hy)? - f(z)? * lit::<T>(4.0)) / (h * h))
    }

    /// `(|L_h F|, |(4 L_h F - L_2h F) / 3|)`. For a harmonic `F` the stencil
    /// error is `h^2 F''''/6 + O(h^6)`, so the second value is what remains
    /// once that leading term is extrapolated away.
    pub fn harmonicity_residual(&self, z: Complex<T>, h: T) -> Result<(T, T)> {
        let l1 = self.discrete_laplacian(z, h)?;
        let l2 = self.discrete_laplacian(z, h * lit::<T>(2.0))?;
        Ok((l1.norm(), ((l1 * lit::<T>(4.0) - l2) / lit::<T>(3.0)).norm()))
    }

    /// `c2` against `2 pi conj(k)`, with `k` the `dz`-coefficient of the
    /// reproducing element of `d/dz` from the Bergman context.
    pub fn dbar_potential_check(&self) -> Result<(Complex<T>, Complex<T>)> {
        let ctx = BergmanContext::new(self)?;
        let u = TorusTangent::new(Complex::zero(), Complex::new(T::one(), T::zero()));
        let k_dz = ctx.reproducing_element(&u).coeffs()[0] / self.omega1();
        Ok((self.c2, k_dz.conj() * (lit::<T>(2.0) * T::PI())))
    }
}

/// The normalized differential is `dz / omega1` and `Z = [tau]`.
impl<T: Real> HolomorphicFrame<T> for LatticeContext<T> {
    type Tangent = TorusTangent<T>;

    fn period_matrix(&self) -> &CMat<T> {
        &self.z
    }

    fn normalized_values(&self, u: &TorusTangent<T>) -> Vec<Complex<T>> {
        vec![u.lambda / self.omega1()]
    }
}

/// Evaluates `eta-hat` and `alpha` on a lattice.
#[derive(Clone, Copy, Debug)]
pub struct EtaEvaluator<'a, T> {
    lat: &'a LatticeContext<T>,
}

impl<'a, T: Real> EtaEvaluator<'a, T> {
    pub fn new(lat: &'a LatticeContext<T>) -> Self {
        Self { lat }
    }

    pub fn lattice(&self) -> &'a LatticeContext<T> {
        self.lat
    }

    /// `eta-hat(u, v) = lam_u lam_v (wp(zp - zq) + c1)`.
    pub fn eta_hat(&self, zp: Complex<T>, zq: Complex<T>, lam_u: Complex<T>, lam_v: Complex<T>) -> Result<Complex<T>> {
        self.lat.check_off_lattice(zp - zq)?;
        Ok(lam_u * lam_v * (self.lat.w.wp(zp - zq) + self.lat.c1))
    }

    /// `alpha(u, v) = 2 f_v(zp) + f_u(zq)`.
    pub fn alpha(&self, zp: Complex<T>, zq: Complex<T>, lam_u: Complex<T>, lam_v: Complex<T>) -> Result<Complex<T>> {
        let fv = self.lat.elementary_potential(zp - zq)?;
        let fu = self.lat.elementary_potential(zq - zp)?;
        Ok(lam_v * fv * lit::<T>(2.0) + lam_u * fu)
    }
}

/// One sample configuration for the genus-one bracket identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremBSample<T> {
    pub zp: Complex<T>,
    pub zq: Complex<T>,
    pub lam_u: Complex<T>,
    pub lam_v: Complex<T>,
}

/// Maximum residuals over a batch of samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremBReport<T> {
    pub samples: usize,
    /// `|2 df_v(u) - df_u(v) - eta-hat(u, v)|`, derivatives from `wp`.
    pub del_residual: T,
    /// `|-dbar f_u(conj v) + 2 pi B(u, v)|`.
    pub dbar_residual: T,
    /// Same `d` identity with Wirtinger derivatives of `alpha` by central differences.
    pub fd_del_residual: T,
    /// Same `dbar` identity by central differences.
    pub fd_dbar_residual: T,
}

impl<T: Real> TheoremBReport<T> {
    pub fn passes(&self, del_tol: T, dbar_tol: T, fd_tol: T) -> bool {
        self.del_residual <= del_tol
            && self.dbar_residual <= dbar_tol
            && self.fd_del_residual <= fd_tol
            && self.fd_dbar_residual <= fd_tol
    }
}

/// Wirtinger derivatives `(d/dz, d/dconj z)` by central differences.
fn wirtinger<T: Real>(
    f: impl Fn(Complex<T>) -> Result<Complex<T>>,
    z: Complex<T>,
    h: T,
) -> Result<(Complex<T>, Complex<T>)> {
    let hx = Complex::new(h, T::zero());
    let hy = Complex::new(T::zero(), h);
    // Fourth-order central differences. The second-order stencil leaves
    // h^2 f'''/6 in the dbar component, ~1e-4 at distance 0.1 from a pole.
    let d = |e: Complex<T>| -> Result<Complex<T>> {
        let two = lit::<T>(2.0);
        Ok(((f(z + e)? - f(z - e)?) * lit::<T>(8.0) - (f(z + e * two)? - f(z - e * two)?)) / (h * lit::<T>(12.0)))
    };
    let dx = d(hx)?;
    let dy = d(hy)?;
    let i = i_unit::<T>();
    Ok(((dx - i * dy) * lit::<T>(0.5), (dx + i * dy) * lit::<T>(0.5)))
}

/// Checks `d alpha = eta-hat` and `dbar alpha = -2 pi B` on every sample,
/// analytically and with finite differences of step `h`.
pub fn theorem_b_check<T: Real>(
    ev: &EtaEvaluator<'_, T>,
    samples: &[TheoremBSample<T>],
    h: T,
) -> Result<TheoremBReport<T>> {
    let lat = ev.lat;
    let ctx = BergmanContext::new(lat)?;
    let two_pi = lit::<T>(2.0) * T::PI();
    let zero = Complex::zero();
    let mut rep = TheoremBReport {
        samples: samples.len(),
        del_residual: T::zero(),
        dbar_residual: T::zero(),
        fd_del_residual: T::zero(),
        fd_dbar_residual: T::zero(),
    };
    for s in samples {
        let eta = ev.eta_hat(s.zp, s.zq, s.lam_u, s.lam_v)?;
        // 2 df_v(u) - df_u(v) with df = lambda (wp + c1) dz
        let dfv_u = s.lam_v * (lat.w.wp(s.zp - s.zq) + lat.c1) * s.lam_u;
        let dfu_v = s.lam_u * (lat.w.wp(s.zq - s.zp) + lat.c1) * s.lam_v;
        let del = dfv_u * lit::<T>(2.0) - dfu_v;
        rep.del_residual = rep.del_residual.max((del - eta).norm());

        let u = TorusTangent::new(s.zp, s.lam_u);
        let v = TorusTangent::new(s.zq, s.lam_v);
        let target = -ctx.bergman_eval(&u, &v) * two_pi;
        // -dbar f_u(conj v), dbar f_u = lambda_u c2 dconj(z)
        let dbar = -(lat.c2 * s.lam_u * s.lam_v.conj());
        rep.dbar_residual = rep.dbar_residual.max((dbar - target).norm());

        // alpha restricted to (0, v) is a function of p; restricted to (u, 0), of q.
        let (dp, _) = wirtinger(|p| ev.alpha(p, s.zq, zero, s.lam_v), s.zp, h)?;
        let (dq, dbq) = wirtinger(|q| ev.alpha(s.zp, q, s.lam_u, zero), s.zq, h)?;
        let fd_del = dp * s.lam_u - dq * s.lam_v;
        rep.fd_del_residual = rep.fd_del_residual.max((fd_del - eta).norm());
        let fd_dbar = -(dbq * s.lam_v.conj());
        rep.fd_dbar_residual = rep.fd_dbar_residual.max((fd_dbar - target).norm());
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn lat(o2: Complex<f64>) -> LatticeContext<f64> {
        LatticeContext::auto(c(1.0, 0.0), o2).unwrap()
    }

    #[test]
    fn square_lattice_constants() {
        let l = lat(c(0.0, 1.0));
        assert!((l.c2() - c(PI, 0.0)).norm() < 1e-10);
        assert!((l.area() - 1.0).abs() < 1e-15);
        assert!(l.legendre_residual() < 1e-10);
        assert!(l.single_valuedness_residual() < 1e-12);
        // eta1 = pi for the square lattice (G2(i) = pi)
        assert!((l.eta1() - c(PI, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn rectangular_lattice_c2() {
        let l = lat(c(0.0, 2.0));
        assert!((l.c2() - c(PI / 2.0, 0.0)).norm() < 1e-10);
        let (c2, claim) = l.dbar_potential_check().unwrap();
        assert!((c2 - claim).norm() < 1e-10);
    }

    #[test]
    fn too_small_truncation_reported() {
        let err = LatticeContext::<f64>::build(c(1.0, 0.0), c(0.3, 0.4), 1).unwrap_err();
        assert!(matches!(err, Error::TruncationTooSmall { .. }), "{err:?}");
        assert!(LatticeContext::<f64>::build(c(1.0, 0.0), c(0.0, 1.0), 16).is_ok());
    }

    #[test]
    fn potential_rejects_lattice_points() {
        let l = lat(c(0.0, 1.0));
        assert!(matches!(
            l.elementary_potential(c(1.0, 1.0)),
            Err(Error::AtLatticePoint { .. })
        ));
        let ev = EtaEvaluator::new(&l);
        assert!(ev.eta_hat(c(0.3, 0.2), c(0.3, 0.2), c(1.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn theorem_b_single_sample() {
        let l = lat(c(0.3, 1.1));
        let ev = EtaEvaluator::new(&l);
        let s = TheoremBSample {
            zp: c(0.21, 0.4),
            zq: c(-0.3, 0.05),
            lam_u: c(0.8, -0.3),
            lam_v: c(-0.2, 1.1),
        };
        let r = theorem_b_check(&ev, &[s], 1e-4).unwrap();
        assert!(r.passes(1e-8, 1e-10, 1e-5), "{r:?}");
    }
}

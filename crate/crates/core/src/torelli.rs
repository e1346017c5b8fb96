//! Cup products with Schiffer variations and the pulled-back bracket `b~`.
//!
//! A Schiffer variation `xi_u` only enters through its action
//! `xi_u cup omega = -2 pi omega(u) conj(k_u)` from `H^{1,0}` to `H^{0,1}`.
//! Antiholomorphic classes are stored as coefficient vectors `d` meaning
//! `sum_j d_j conj(alpha_j)` for the working basis `alpha` of the context.

use num_complex::Complex;

use crate::bergman::{BergmanContext, HolomorphicFrame};
use crate::error::{Error, Result};
use crate::linalg::conj_vec;
use crate::scalar::{i_unit, lit, Real};

/// A Schiffer variation at the base point of a tangent vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SchifferVariation<U> {
    pub u: U,
}

impl<U> SchifferVariation<U> {
    pub fn new(u: U) -> Self {
        Self { u }
    }
}

/// `Omega = p* omega ^ q* conj(omega')` on `C x conj(C)`.
#[derive(Clone, Debug, PartialEq)]
pub struct KunnethQuadric<T> {
    pub omega: Vec<Complex<T>>,
    pub omega_prime: Vec<Complex<T>>,
}

impl<T: Real> KunnethQuadric<T> {
    pub fn new(omega: Vec<Complex<T>>, omega_prime: Vec<Complex<T>>) -> Self {
        Self { omega, omega_prime }
    }

    /// `Omega((u, 0), (0, conj v)) = omega(u) conj(omega'(v))`.
    pub fn evaluate<F: HolomorphicFrame<T>>(
        &self,
        ctx: &BergmanContext<'_, T, F>,
        u: &F::Tangent,
        v: &F::Tangent,
    ) -> Result<Complex<T>> {
        Ok(ctx.evaluate(&self.omega, u)? * ctx.evaluate(&self.omega_prime, v)?.conj())
    }
}

fn two_pi<T: Real>() -> T {
    lit::<T>(2.0) * T::PI()
}

/// `xi_u cup omega` as `H^{0,1}` coefficients.
pub fn schiffer_cup<T: Real, F: HolomorphicFrame<T>>(
    ctx: &BergmanContext<'_, T, F>,
    xi: &SchifferVariation<F::Tangent>,
    omega: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let w_u = ctx.evaluate(omega, &xi.u)?;
    let k = ctx.reproducing_element(&xi.u);
    Ok(k.coeffs().iter().map(|c| c.conj() * w_u * -two_pi::<T>()).collect())
}

/// `conj(xi_v) cup theta` for an antiholomorphic `theta`, as `H^{1,0}`
/// coefficients: the conjugate of `xi_v cup conj(theta)`.
pub fn conj_schiffer_cup<T: Real, F: HolomorphicFrame<T>>(
    ctx: &BergmanContext<'_, T, F>,
    xi: &SchifferVariation<F::Tangent>,
    theta: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let holo = conj_vec(theta);
    Ok(conj_vec(&schiffer_cup(ctx, xi, &holo)?))
}

/// `beta(xi_u) = 2 pi i beta(u)` for a quadratic differential evaluated at `u (x) u`.
pub fn pairing_2k<T: Real>(beta_at_u: Complex<T>) -> Complex<T> {
    i_unit::<T>() * beta_at_u * two_pi::<T>()
}

/// `b~(xi_u, conj xi_v)(omega) = conj(xi_v) cup (xi_u cup omega)`.
pub fn btilde_apply<T: Real, F: HolomorphicFrame<T>>(
    ctx: &BergmanContext<'_, T, F>,
    xi_u: &SchifferVariation<F::Tangent>,
    xi_v: &SchifferVariation<F::Tangent>,
    omega: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let theta = schiffer_cup(ctx, xi_u, omega)?;
    conj_schiffer_cup(ctx, xi_v, &theta)
}

/// `4 pi^2 omega(u) conj(k_u(v)) k_v`, assembled directly.
pub fn btilde_closed_form<T: Real, F: HolomorphicFrame<T>>(
    ctx: &BergmanContext<'_, T, F>,
    u: &F::Tangent,
    v: &F::Tangent,
    omega: &[Complex<T>],
) -> Result<Vec<Complex<T>>> {
    let w_u = ctx.evaluate(omega, u)?;
    let ku_v = ctx.reproducing_element(u).eval(ctx, v);
    let kv = ctx.reproducing_element(v);
    let s = w_u * ku_v.conj() * (two_pi::<T>() * two_pi::<T>());
    Ok(kv.coeffs().iter().map(|c| c * s).collect())
}

/// `Q*(conj omega', k_v)` from period vectors against `i conj(omega'(v))`.
pub fn qstar_against_kv_check<T: Real, F: HolomorphicFrame<T>>(
    ctx: &BergmanContext<'_, T, F>,
    omega_prime: &[Complex<T>],
    v: &F::Tangent,
) -> Result<(Complex<T>, Complex<T>)> {
    let kv = ctx.reproducing_element(v);
    let pairing = ctx
        .duality_maps()
        .qstar_pairing(&ctx.conj_period_vector(omega_prime)?, &ctx.period_vector(kv.coeffs())?)?;
    let claim = i_unit::<T>() * ctx.evaluate(omega_prime, v)?.conj();
    Ok((pairing, claim))
}

/// Both sides of the bracket identity at `((u, 0), (0, conj v))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoremACheck<T> {
    /// `-(1/4 pi^2) Q*(conj omega', b~(xi_u, conj xi_v) omega)`.
    pub lhs: Complex<T>,
    /// `-i Omega((u, 0), (0, conj v)) B(u, v)`.
    pub rhs: Complex<T>,
}

impl<T: Real> TheoremACheck<T> {
    pub fn residual(&self) -> T {
        (self.lhs - self.rhs).norm()
    }
}

pub fn theorem_a_check<T: Real, F: HolomorphicFrame<T>>(
    ctx: &BergmanContext<'_, T, F>,
    q: &KunnethQuadric<T>,
    u: &F::Tangent,
    v: &F::Tangent,
) -> Result<TheoremACheck<T>> {
    let g = ctx.genus();
    for w in [&q.omega, &q.omega_prime] {
        if w.len() != g {
            return Err(Error::DimensionMismatch {
                expected: g,
                got: w.len(),
            });
        }
    }
    let xi_u = SchifferVariation::new(u.clone());
    let xi_v = SchifferVariation::new(v.clone());
    let b_omega = btilde_apply(ctx, &xi_u, &xi_v, &q.omega)?;
    let pairing = ctx
        .duality_maps()
        .qstar_pairing(&ctx.conj_period_vector(&q.omega_prime)?, &ctx.period_vector(&b_omega)?)?;
    let lhs = -pairing / (two_pi::<T>() * two_pi::<T>());
    let rhs = -i_unit::<T>() * q.evaluate(ctx, u, v)? * ctx.bergman_eval(u, v);
    Ok(TheoremACheck { lhs, rhs })
}

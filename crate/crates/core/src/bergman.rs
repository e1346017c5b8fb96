//! The Hodge product on holomorphic differentials, the reproducing element
//! `k_u` and the Bergman kernel.
//!
//! Everything here is computed from period vectors: for classes with
//! coordinates `P_alpha`, `P_beta` in `{a*, b*}`,
//! `h(alpha, beta) = i Q*(P_alpha, conj P_beta)`. No surface integrals.
//!
//! A context carries a working basis `alpha_i = sum_k W[i][k] omega_k` of
//! holomorphic differentials, where `omega` is the normalized basis of the
//! underlying frame. Coefficient vectors passed to the context refer to the
//! working basis.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hyperelliptic::{period_vector, PeriodData, TangentVector};
use crate::linalg::{conj_vec, dot, CMat};
use crate::scalar::{i_unit, lit, Real};
use crate::symplectic::{DualityMaps, SymplecticSpace};

/// A compact curve presented by its normalized period matrix and the values
/// of the normalized holomorphic differentials on tangent vectors.
pub trait HolomorphicFrame<T: Real> {
    type Tangent: Clone;

    fn period_matrix(&self) -> &CMat<T>;

    /// `(omega_1(u), ..., omega_g(u))` for the normalized basis.
    fn normalized_values(&self, u: &Self::Tangent) -> Vec<Complex<T>>;

    fn genus(&self) -> usize {
        self.period_matrix().rows()
    }
}

impl<T: Real> HolomorphicFrame<T> for PeriodData<T> {
    type Tangent = TangentVector<T>;

    fn period_matrix(&self) -> &CMat<T> {
        self.z()
    }

    fn normalized_values(&self, u: &TangentVector<T>) -> Vec<Complex<T>> {
        PeriodData::normalized_values(self, u)
    }
}

/// Gram matrix, its inverse and a unitary change of basis for `h`.
#[derive(Clone, Debug)]
pub struct BergmanContext<'a, T, F> {
    frame: &'a F,
    w: CMat<T>,
    maps: DualityMaps<T>,
    gram: CMat<T>,
    gram_inv: CMat<T>,
    unitary: CMat<T>,
}

impl<'a, T: Real, F: HolomorphicFrame<T>> BergmanContext<'a, T, F> {
    /// Context with the normalized basis as working basis.
    pub fn new(frame: &'a F) -> Result<Self> {
        Self::with_basis(frame, CMat::identity(frame.genus()))
    }

    /// Context with working basis `alpha_i = sum_k w[i][k] omega_k`.
    pub fn with_basis(frame: &'a F, w: CMat<T>) -> Result<Self> {
        let g = frame.genus();
        if w.rows() != g || w.cols() != g {
            return Err(Error::DimensionMismatch {
                expected: g,
                got: w.rows().max(w.cols()),
            });
        }
        w.lu()?;
        let maps = DualityMaps::new(&SymplecticSpace::standard(g)?)?;
        let z = frame.period_matrix();
        let periods: Vec<Vec<Complex<T>>> = (0..g)
            .map(|i| period_vector(z, &w.row(i), false))
            .collect::<Result<_>>()?;
        let mut gram = CMat::zeros(g, g);
        for i in 0..g {
            for j in 0..g {
                gram[(i, j)] = i_unit::<T>() * maps.qstar_pairing(&periods[i], &conj_vec(&periods[j]))?;
            }
        }
        let gram_inv = gram.inverse()?;
        let unitary = gram
            .cholesky()
            .map_err(|_| Error::NotPositiveDefinite)?
            .lower_triangular_inverse()?;
        Ok(Self {
            frame,
            w,
            maps,
            gram,
            gram_inv,
            unitary,
        })
    }

    pub fn frame(&self) -> &'a F {
        self.frame
    }

    pub fn genus(&self) -> usize {
        self.w.rows()
    }

    /// Working basis in terms of the normalized basis.
    pub fn working_basis(&self) -> &CMat<T> {
        &self.w
    }

    pub fn duality_maps(&self) -> &DualityMaps<T> {
        &self.maps
    }

    /// `gram[i][j] = h(alpha_i, alpha_j)`.
    pub fn gram(&self) -> &CMat<T> {
        &self.gram
    }

    pub fn gram_inv(&self) -> &CMat<T> {
        &self.gram_inv
    }

    /// `U` with `U G U^* = I`; the basis `beta_i = sum_k U[i][k] alpha_k` is unitary.
    pub fn unitary_basis(&self) -> &CMat<T> {
        &self.unitary
    }

    /// `||U G U^* - I||_F`.
    pub fn unitarity_residual(&self) -> T {
        let u = &self.unitary;
        (&(&(u * &self.gram) * &u.adjoint()) - &CMat::identity(self.genus())).frobenius()
    }

    /// `||G^{-1} G - I||_F`.
    pub fn inverse_residual(&self) -> T {
        (&(&self.gram_inv * &self.gram) - &CMat::identity(self.genus())).frobenius()
    }

    /// `||G - 2 Im Z||_F`, meaningful for the normalized working basis.
    pub fn normalized_gram_residual(&self) -> T {
        let two_im = self.frame.period_matrix().imag_part().scale_real(lit(2.0));
        (&self.gram - &two_im).frobenius()
    }

    fn check_len(&self, v: &[Complex<T>]) -> Result<()> {
        if v.len() != self.genus() {
            return Err(Error::DimensionMismatch {
                expected: self.genus(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Normalized-basis coefficients of `sum c_i alpha_i`.
    pub fn to_normalized(&self, coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        self.check_len(coeffs)?;
        Ok(self.w.transpose().mul_vec(coeffs))
    }

    /// Period vector of the holomorphic class `sum c_i alpha_i`.
    pub fn period_vector(&self, coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        period_vector(self.frame.period_matrix(), &self.to_normalized(coeffs)?, false)
    }

    /// Period vector of the antiholomorphic class `conj(sum c_i alpha_i)`.
    pub fn conj_period_vector(&self, coeffs: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        period_vector(self.frame.period_matrix(), &self.to_normalized(coeffs)?, true)
    }

    /// `h(alpha, beta)` for holomorphic classes given by working-basis coefficients.
    pub fn hodge_product(&self, alpha: &[Complex<T>], beta: &[Complex<T>]) -> Result<Complex<T>> {
        let pa = self.period_vector(alpha)?;
        let pb = self.conj_period_vector(beta)?;
        Ok(i_unit::<T>() * self.maps.qstar_pairing(&pa, &pb)?)
    }

    /// `i Q*(P_alpha, conj P_beta)` for arbitrary period vectors.
    pub fn hodge_product_periods(&self, pa: &[Complex<T>], pb: &[Complex<T>]) -> Result<Complex<T>> {
        Ok(i_unit::<T>() * self.maps.qstar_pairing(pa, &conj_vec(pb))?)
    }

    /// `(alpha_1(u), ..., alpha_g(u))`.
    pub fn basis_values(&self, u: &F::Tangent) -> Vec<Complex<T>> {
        self.w.mul_vec(&self.frame.normalized_values(u))
    }

    /// `(sum c_i alpha_i)(u)`.
    pub fn evaluate(&self, coeffs: &[Complex<T>], u: &F::Tangent) -> Result<Complex<T>> {
        self.check_len(coeffs)?;
        Ok(dot(coeffs, &self.basis_values(u)))
    }

    /// `k_u` with `h(omega, k_u) = omega(u)`.
    pub fn reproducing_element(&self, u: &F::Tangent) -> ReproducingElement<T, F::Tangent> {
        // sum_j conj(c_j) G_ij = alpha_i(u)
        let coeffs = conj_vec(&self.gram_inv.mul_vec(&self.basis_values(u)));
        ReproducingElement { u: u.clone(), coeffs }
    }

    /// `B(u, v) = sum_ij (G^{-1})_{ji} alpha_i(u) conj(alpha_j(v))`.
    pub fn bergman_eval(&self, u: &F::Tangent, v: &F::Tangent) -> Complex<T> {
        let au = self.basis_values(u);
        let av = conj_vec(&self.basis_values(v));
        dot(&av, &self.gram_inv.mul_vec(&au))
    }

    /// `sum_j beta_j(u) conj(beta_j(v))` over the unitary basis.
    pub fn bergman_eval_unitary(&self, u: &F::Tangent, v: &F::Tangent) -> Complex<T> {
        let bu = self.unitary.mul_vec(&self.basis_values(u));
        let bv = conj_vec(&self.unitary.mul_vec(&self.basis_values(v)));
        dot(&bu, &bv)
    }

    /// `(1/2) sum_ij ((Im Z)^{-1})_{ij} omega_i(u) conj(omega_j(v))`.
    pub fn bergman_eval_normalized(&self, u: &F::Tangent, v: &F::Tangent) -> Result<Complex<T>> {
        let im_inv = self.frame.period_matrix().imag_part().inverse()?;
        let wu = self.frame.normalized_values(u);
        let wv = conj_vec(&self.frame.normalized_values(v));
        Ok(dot(&wu, &im_inv.mul_vec(&wv)) * lit::<T>(0.5))
    }

    /// All presentations of `B(u, v)` at once.
    pub fn bergman_report(&self, u: &F::Tangent, v: &F::Tangent) -> Result<BergmanEvaluation<T>> {
        let ku = self.reproducing_element(u);
        let kv = self.reproducing_element(v);
        Ok(BergmanEvaluation {
            gram: self.bergman_eval(u, v),
            unitary: self.bergman_eval_unitary(u, v),
            normalized: self.bergman_eval_normalized(u, v)?,
            kv_at_u: kv.eval(self, u),
            h_kv_ku: self.hodge_product(kv.coeffs(), ku.coeffs())?,
        })
    }
}

/// The reproducing element `k_u` as working-basis coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ReproducingElement<T, U> {
    u: U,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real, U: Clone> ReproducingElement<T, U> {
    pub fn tangent(&self) -> &U {
        &self.u
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// `k_u(v)`.
    pub fn eval<F: HolomorphicFrame<T, Tangent = U>>(&self, ctx: &BergmanContext<'_, T, F>, v: &U) -> Complex<T> {
        dot(&self.coeffs, &ctx.basis_values(v))
    }

    /// `max_i |h(alpha_i, k_u) - alpha_i(u)|`.
    pub fn reproducing_residual<F: HolomorphicFrame<T, Tangent = U>>(
        &self,
        ctx: &BergmanContext<'_, T, F>,
    ) -> Result<T> {
        let g = ctx.genus();
        let values = ctx.basis_values(&self.u);
        let mut worst = T::zero();
        for (i, value) in values.iter().enumerate() {
            let e: Vec<Complex<T>> = (0..g)
                .map(|k| {
                    if k == i {
                        Complex::new(T::one(), T::zero())
                    } else {
                        Complex::zero()
                    }
                })
                .collect();
            let r = (ctx.hodge_product(&e, &self.coeffs)? - value).norm();
            worst = worst.max(r);
        }
        Ok(worst)
    }
}

/// `B(u, v)` through every available route.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BergmanEvaluation<T> {
    /// Gram formula.
    pub gram: Complex<T>,
    /// Sum over a unitary basis.
    pub unitary: Complex<T>,
    /// `(1/2) (Im Z)^{-1}` form in the normalized basis.
    pub normalized: Complex<T>,
    /// `k_v(u)`.
    pub kv_at_u: Complex<T>,
    /// `h(k_v, k_u)`.
    pub h_kv_ku: Complex<T>,
}

impl<T: Real> BergmanEvaluation<T> {
    pub fn value(&self) -> Complex<T> {
        self.gram
    }

    /// Largest distance of the unitary and normalized routes from the Gram route.
    pub fn presentation_residual(&self) -> T {
        (self.unitary - self.gram)
            .norm()
            .max((self.normalized - self.gram).norm())
    }

    /// Largest distance of `k_v(u)` and `h(k_v, k_u)` from the Gram route.
    pub fn chain_residual(&self) -> T {
        (self.kv_at_u - self.gram).norm().max((self.h_kv_ku - self.gram).norm())
    }
}

//! Real hyperelliptic curves `y^2 = f(x)` with distinct real branch points:
//! raw differentials `x^{k-1} dx / y`, their periods, and the normalized
//! period matrix.
//!
//! # Homology convention
//!
//! Let `e_1 < ... < e_n` be the roots. On the upper half plane fix the branch
//! of `y` that is positive to the right of `e_n` (for a positive leading
//! coefficient); crossing each branch point from right to left multiplies it
//! by `i`. The chain cycle `c_m` is the lift of the segment `[e_m, e_{m+1}]`
//! pushed slightly into the upper half plane, going out on that branch and
//! back on the other one, so `int_{c_m} w = 2 int_{e_m}^{e_{m+1}} w`. Adjacent
//! chain cycles meet once with `c_m . c_{m+1} = +1`; the others are disjoint.
//!
//! The default symplectic basis is `a_i = c_{2i-1}`,
//! `b_i = c_{2i} + c_{2i+2} + ... + c_{2g}`. Any other basis can be supplied
//! as integer combinations of `c_1..c_{2g}` through [`HomologyConvention`];
//! its intersection matrix is checked exactly and the resulting periods must
//! then pass the Riemann-relation certificate.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{dot, CMat};
use crate::quadrature::GaussChebyshev;
use crate::scalar::{from_usize, i_unit, lit, Real};
use crate::symplectic::standard_form_int;

fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub const DEFAULT_QUAD_ORDER: usize = 64;

/// Minimum accepted pairwise distance between roots, relative to `max(1, max |e|)`.
pub const DEFAULT_ROOT_GAP: f64 = 1e-6;

/// Points with `|y|` below this are rejected as too close to a branch point.
pub const DEFAULT_EXCLUSION_RADIUS: f64 = 1e-6;

/// `y^2 = f(x)` with `f` squarefree of degree `2g+1` or `2g+2` and all roots real.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperellipticCurve<T> {
    coeffs: Vec<T>,
    roots: Vec<T>,
    genus: usize,
}

impl<T: Real> HyperellipticCurve<T> {
    /// Builds the curve from ascending coefficients `c0, c1, ..., cn`.
    pub fn new(coeffs: &[T]) -> Result<Self> {
        Self::with_root_gap(coeffs, lit(DEFAULT_ROOT_GAP))
    }

    pub fn with_root_gap(coeffs: &[T], min_gap: T) -> Result<Self> {
        let mut coeffs = coeffs.to_vec();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let degree = coeffs.len().saturating_sub(1);
        if degree < 3 {
            return Err(Error::DegreeTooSmall { degree });
        }
        let complex_roots = polynomial_roots(&coeffs)?;
        let scale = complex_roots.iter().fold(T::one(), |m, r| m.max(r.norm()));
        for (i, a) in complex_roots.iter().enumerate() {
            for b in &complex_roots[i + 1..] {
                let gap = (a - b).norm();
                if gap <= min_gap * scale {
                    return Err(Error::RepeatedRoot {
                        root: f64_of(a.re),
                        gap: f64_of(gap),
                    });
                }
            }
        }
        let im_tol = lit::<T>(1e-9) * scale;
        if let Some(r) = complex_roots.iter().find(|r| r.im.abs() > im_tol) {
            return Err(Error::ComplexRoot {
                re: f64_of(r.re),
                im: f64_of(r.im),
            });
        }
        let mut roots: Vec<T> = complex_roots.iter().map(|r| r.re).collect();
        roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
        Ok(Self {
            genus: (degree - 1) / 2,
            coeffs,
            roots,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Ascending coefficients with trailing zeros removed.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Sorted branch points.
    pub fn roots(&self) -> &[T] {
        &self.roots
    }

    pub fn leading(&self) -> T {
        *self.coeffs.last().expect("nonempty")
    }

    /// `f(x)` in product form `c * prod (x - e_j)`.
    pub fn eval(&self, x: Complex<T>) -> Complex<T> {
        self.roots
            .iter()
            .fold(Complex::new(self.leading(), T::zero()), |acc, &e| acc * (x - e))
    }
}

/// Aberth-Ehrlich iteration for all complex roots, followed by Newton polish.
fn polynomial_roots<T: Real>(coeffs: &[T]) -> Result<Vec<Complex<T>>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex<T>> = coeffs.iter().map(|&c| Complex::new(c / lead, T::zero())).collect();
    let eval = |z: Complex<T>| -> (Complex<T>, Complex<T>) {
        let mut p = Complex::zero();
        let mut dp = Complex::zero();
        for &c in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    let bound = T::one() + monic[..n].iter().fold(T::zero(), |m, c| m.max(c.norm()));
    let mut z: Vec<Complex<T>> = (0..n)
        .map(|k| {
            let theta = lit::<T>(2.0) * T::PI() * from_usize::<T>(k) / from_usize::<T>(n) + lit(0.4);
            Complex::from_polar(bound * lit(0.5), theta)
        })
        .collect();
    let mut converged = false;
    for _ in 0..2000 {
        let mut max_step = T::zero();
        for i in 0..n {
            let (p, dp) = eval(z[i]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex<T> = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex::<T>::one() - ratio * repulsion);
            z[i] = z[i] - step;
            max_step = max_step.max(step.norm());
        }
        if max_step <= T::epsilon() * bound * lit(4.0) {
            converged = true;
            break;
        }
    }
    if !converged && z.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
        return Err(Error::RootsNotConverged);
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval(*r);
            if dp.is_zero() {
                break;
            }
            *r = *r - p / dp;
        }
    }
    Ok(z)
}

/// A point `(x, y)` of the affine curve, `y = sheet * sqrt(f(x))` with the
/// principal square root.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvePoint<T> {
    x: Complex<T>,
    sheet: i8,
    y: Complex<T>,
}

impl<T: Real> CurvePoint<T> {
    pub fn new(curve: &HyperellipticCurve<T>, x: Complex<T>, sheet: i8) -> Result<Self> {
        Self::with_exclusion(curve, x, sheet, lit(DEFAULT_EXCLUSION_RADIUS))
    }

    pub fn with_exclusion(curve: &HyperellipticCurve<T>, x: Complex<T>, sheet: i8, radius: T) -> Result<Self> {
        let sign = if sheet < 0 { -T::one() } else { T::one() };
        let y = curve.eval(x).sqrt() * sign;
        if y.norm() <= radius {
            return Err(Error::NearBranchPoint {
                abs_y: f64_of(y.norm()),
            });
        }
        Ok(Self {
            x,
            sheet: if sheet < 0 { -1 } else { 1 },
            y,
        })
    }

    pub fn x(&self) -> Complex<T> {
        self.x
    }

    pub fn y(&self) -> Complex<T> {
        self.y
    }

    pub fn sheet(&self) -> i8 {
        self.sheet
    }

    /// The point on the other sheet.
    pub fn flipped(&self) -> Self {
        Self {
            x: self.x,
            sheet: -self.sheet,
            y: -self.y,
        }
    }
}

/// `lambda * d/dz` at a curve point, with `z = x - x0`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector<T> {
    pub base: CurvePoint<T>,
    pub lambda: Complex<T>,
}

impl<T: Real> TangentVector<T> {
    pub fn new(base: CurvePoint<T>, lambda: Complex<T>) -> Self {
        Self { base, lambda }
    }

    pub fn scaled(&self, c: Complex<T>) -> Self {
        Self {
            base: self.base.clone(),
            lambda: self.lambda * c,
        }
    }
}

/// `omega_k(u) = lambda x0^{k-1} / y0` for `1 <= k <= g`.
pub fn raw_differential_eval<T: Real>(
    curve: &HyperellipticCurve<T>,
    k: usize,
    u: &TangentVector<T>,
) -> Result<Complex<T>> {
    if k == 0 || k > curve.genus() {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: curve.genus(),
        });
    }
    Ok(u.lambda * u.base.x.powu(k as u32 - 1) / u.base.y)
}

/// A choice of symplectic homology basis as integer combinations of the
/// chain cycles `c_1, ..., c_{2g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyConvention {
    /// `a[i][m]` is the coefficient of `c_{m+1}` in `a_{i+1}`.
    pub a: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
}

impl HomologyConvention {
    /// `a_i = c_{2i-1}`, `b_i = c_{2i} + c_{2i+2} + ... + c_{2g}`.
    pub fn chain(genus: usize) -> Self {
        let n = 2 * genus;
        let a = (0..genus)
            .map(|i| (0..n).map(|m| i64::from(m == 2 * i)).collect())
            .collect();
        let b = (0..genus)
            .map(|i| (0..n).map(|m| i64::from(m % 2 == 1 && m > 2 * i)).collect())
            .collect();
        Self { a, b }
    }

    /// Applies an integer change of basis: the new cycle `j` (columns
    /// `0..g` are `a'`, `g..2g` are `b'`) is `sum_l m[l][j] * old_l`.
    pub fn transformed(&self, m: &[Vec<i64>]) -> Self {
        let genus = self.a.len();
        let old: Vec<&Vec<i64>> = self.a.iter().chain(self.b.iter()).collect();
        let n = old.first().map_or(0, |v| v.len());
        let new_cycle = |j: usize| -> Vec<i64> {
            (0..n)
                .map(|k| (0..2 * genus).map(|l| m[l][j] * old[l][k]).sum())
                .collect()
        };
        Self {
            a: (0..genus).map(new_cycle).collect(),
            b: (genus..2 * genus).map(new_cycle).collect(),
        }
    }

    /// Intersection matrix of `(a | b)` computed from `c_m . c_{m+1} = 1`.
    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let cycles: Vec<&Vec<i64>> = self.a.iter().chain(self.b.iter()).collect();
        let pair = |x: &[i64], y: &[i64]| -> i64 {
            (0..x.len().saturating_sub(1))
                .map(|m| x[m] * y[m + 1] - x[m + 1] * y[m])
                .sum()
        };
        cycles
            .iter()
            .map(|x| cycles.iter().map(|y| pair(x, y)).collect())
            .collect()
    }

    fn validate(&self, genus: usize) -> Result<()> {
        let n = 2 * genus;
        if self.a.len() != genus || self.b.len() != genus || self.a.iter().chain(self.b.iter()).any(|v| v.len() != n) {
            return Err(Error::InvalidConvention {
                reason: format!("expected {genus} a-cycles and {genus} b-cycles over {n} chain cycles"),
            });
        }
        if self.intersection_matrix() != standard_form_int(genus) {
            return Err(Error::InvalidConvention {
                reason: "intersection matrix is not the standard symplectic form".into(),
            });
        }
        Ok(())
    }
}

/// Periods of a hyperelliptic curve and the normalized period matrix.
#[derive(Clone, Debug)]
pub struct PeriodData<T> {
    curve: HyperellipticCurve<T>,
    convention: HomologyConvention,
    quad_order: usize,
    a: CMat<T>,
    b: CMat<T>,
    z: CMat<T>,
    n: CMat<T>,
    riemann_residual: T,
    min_eig_imz: T,
}

impl<T: Real> PeriodData<T> {
    pub fn compute(curve: &HyperellipticCurve<T>, quad_order: usize) -> Result<Self> {
        Self::compute_with(
            curve,
            quad_order,
            &HomologyConvention::chain(curve.genus()),
            T::riemann_tol(),
        )
    }

    /// Periods in a given homology convention, certified to `tol_riemann`.
    pub fn compute_with(
        curve: &HyperellipticCurve<T>,
        quad_order: usize,
        convention: &HomologyConvention,
        tol_riemann: T,
    ) -> Result<Self> {
        if quad_order < 8 {
            return Err(Error::QuadratureOrder { order: quad_order });
        }
        let g = curve.genus();
        convention.validate(g)?;
        let chain = chain_periods(curve, quad_order);
        let combine = |cycles: &[Vec<i64>]| {
            CMat::from_fn(g, g, |k, i| {
                cycles[i]
                    .iter()
                    .zip(&chain)
                    .map(|(&coef, per)| per[k] * lit::<T>(coef as f64))
                    .sum()
            })
        };
        let a = combine(&convention.a);
        let b = combine(&convention.b);
        let n = a.inverse()?;
        let z = &n * &b;
        let riemann_residual = z.asymmetry();
        let min_eig_imz = z.imag_part().symmetric_real_eigenvalues()[0];
        if !(riemann_residual <= tol_riemann) || !(min_eig_imz > T::zero()) {
            return Err(Error::RiemannRelation {
                asymmetry: f64_of(riemann_residual),
                min_eig: f64_of(min_eig_imz),
            });
        }
        Ok(Self {
            curve: curve.clone(),
            convention: convention.clone(),
            quad_order,
            a,
            b,
            z,
            n,
            riemann_residual,
            min_eig_imz,
        })
    }

    pub fn curve(&self) -> &HyperellipticCurve<T> {
        &self.curve
    }

    pub fn genus(&self) -> usize {
        self.curve.genus
    }

    pub fn convention(&self) -> &HomologyConvention {
        &self.convention
    }

    pub fn quad_order(&self) -> usize {
        self.quad_order
    }

    /// `A[k][i] = int_{a_i} omega_k` for the raw basis.
    pub fn a_periods(&self) -> &CMat<T> {
        &self.a
    }

    /// `B[k][i] = int_{b_i} omega_k` for the raw basis.
    pub fn b_periods(&self) -> &CMat<T> {
        &self.b
    }

    /// `Z = A^{-1} B`.
    pub fn z(&self) -> &CMat<T> {
        &self.z
    }

    /// Raw-to-normalized change of basis `N = A^{-1}`.
    pub fn normalization(&self) -> &CMat<T> {
        &self.n
    }

    /// `||Z - Z^T||_F`.
    pub fn riemann_residual(&self) -> T {
        self.riemann_residual
    }

    pub fn min_eig_imz(&self) -> T {
        self.min_eig_imz
    }

    /// `||N A - I||_F`.
    pub fn normalization_residual(&self) -> T {
        (&(&self.n * &self.a) - &CMat::identity(self.genus())).frobenius()
    }

    /// All raw differentials at `u`.
    pub fn raw_values(&self, u: &TangentVector<T>) -> Vec<Complex<T>> {
        (0..self.genus())
            .map(|k| u.lambda * u.base.x.powu(k as u32) / u.base.y)
            .collect()
    }

    /// `omega_i(u)` for the normalized basis, `1 <= i <= g`.
    pub fn normalized_differential_eval(&self, i: usize, u: &TangentVector<T>) -> Result<Complex<T>> {
        if i == 0 || i > self.genus() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.genus(),
            });
        }
        Ok(dot(&self.n.row(i - 1), &self.raw_values(u)))
    }

    /// All normalized differentials at `u`.
    pub fn normalized_values(&self, u: &TangentVector<T>) -> Vec<Complex<T>> {
        self.n.mul_vec(&self.raw_values(u))
    }

    /// Coordinates in `{a*, b*}` of the class `sum c_i omega_i` (or of its
    /// conjugate when `conjugated`).
    pub fn period_vector(&self, coeffs: &[Complex<T>], conjugated: bool) -> Result<Vec<Complex<T>>> {
        period_vector(&self.z, coeffs, conjugated)
    }

    /// Change in `Z` when the quadrature order is doubled.
    pub fn self_convergence(&self) -> Result<T> {
        let finer = Self::compute_with(&self.curve, 2 * self.quad_order, &self.convention, T::riemann_tol())?;
        Ok((&finer.z - &self.z).frobenius())
    }
}

/// `(c | c^T Z)`, or `(conj c | conj(c)^T conj Z)` for the conjugate class.
pub fn period_vector<T: Real>(z: &CMat<T>, coeffs: &[Complex<T>], conjugated: bool) -> Result<Vec<Complex<T>>> {
    let g = z.rows();
    if coeffs.len() != g {
        return Err(Error::DimensionMismatch {
            expected: g,
            got: coeffs.len(),
        });
    }
    let c: Vec<Complex<T>> = if conjugated {
        coeffs.iter().map(|x| x.conj()).collect()
    } else {
        coeffs.to_vec()
    };
    let zz = if conjugated { z.conj() } else { z.clone() };
    let b = zz.transpose().mul_vec(&c);
    Ok(c.into_iter().chain(b).collect())
}

/// Periods of `x^{k-1} dx / y` over the chain cycles `c_1..c_{2g}`:
/// `result[m][k]`.
fn chain_periods<T: Real>(curve: &HyperellipticCurve<T>, quad_order: usize) -> Vec<Vec<Complex<T>>> {
    let rule = GaussChebyshev::new(quad_order);
    let roots = curve.roots();
    let n = roots.len();
    let g = curve.genus();
    let lead = curve.leading();
    let extra_turn = usize::from(lead < T::zero());
    (0..2 * g)
        .map(|m| {
            let (lo, hi) = (roots[m], roots[m + 1]);
            // Upper-half-plane branch on this segment: y = i^{n-m-1} sqrt|f|
            // (0-based m), times i when the leading coefficient is negative.
            let turns = (n - m - 1 + extra_turn) % 4;
            let phase = (0..turns).fold(Complex::<T>::one(), |p, _| p * i_unit::<T>());
            let factor = phase.inv() * lit::<T>(2.0);
            (0..g)
                .map(|k| {
                    let integral = rule.integrate_segment(lo, hi, |x| {
                        let rest = roots
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| j != m && j != m + 1)
                            .fold(lead, |acc, (_, &e)| acc * (x - e));
                        x.powi(k as i32) / rest.abs().sqrt()
                    });
                    factor * integral
                })
                .collect()
        })
        .collect()
}

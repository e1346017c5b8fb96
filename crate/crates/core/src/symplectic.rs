//! Symplectic linear algebra on `(R^{2g}, Q)` and its complexification.
//!
//! Vectors of `V_C` and covectors of `V_C^*` are both stored as complex
//! column vectors of length `2g`; a covector `l` acts on `v` by the bilinear
//! pairing `l^T v`. Covector coordinates follow the dual-basis convention
//! `(a-periods | b-periods)`.
//!
//! `V_{-1,0}` is the `+i` eigenspace of `J` and `V_{0,-1}` the `-i`
//! eigenspace. `H^{1,0} = Ann V_{0,-1}` is then the `+i` eigenspace of `J^T`
//! acting on covectors.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{dot, CMat};
use crate::scalar::{i_unit, lit, Real};

/// A real symplectic vector space `(R^{2g}, Q)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticSpace<T> {
    genus: usize,
    q: CMat<T>,
}

impl<T: Real> SymplecticSpace<T> {
    /// Standard form `Q = [[0, I], [-I, 0]]`.
    pub fn standard(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::ZeroGenus);
        }
        let n = 2 * genus;
        let q = CMat::from_real(n, n, |i, j| {
            if j == i + genus {
                T::one()
            } else if i == j + genus {
                -T::one()
            } else {
                T::zero()
            }
        });
        Ok(Self { genus, q })
    }

    /// A space with an arbitrary real antisymmetric nondegenerate form.
    pub fn from_form(q: CMat<T>) -> Result<Self> {
        if !q.is_square() || !q.rows().is_multiple_of(2) || q.rows() == 0 {
            return Err(Error::DimensionMismatch {
                expected: 2 * (q.rows() / 2).max(1),
                got: q.cols(),
            });
        }
        let tol = T::default_tol();
        if q.max_imag() > tol || (&q + &q.transpose()).frobenius() > tol {
            return Err(Error::NotSymplectic {
                residual: (&q + &q.transpose()).frobenius().to_f64().unwrap_or(f64::NAN),
            });
        }
        if q.lu().is_err() {
            return Err(Error::Singular);
        }
        Ok(Self { genus: q.rows() / 2, q })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn form(&self) -> &CMat<T> {
        &self.q
    }

    /// `Q(v, w) = v^T Q w`.
    pub fn pairing(&self, v: &[Complex<T>], w: &[Complex<T>]) -> Complex<T> {
        dot(v, &self.q.mul_vec(w))
    }
}

/// Residuals of the three defining conditions of a point of Siegel space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureResiduals<T> {
    /// `||J^2 + I||_F`
    pub square: T,
    /// `||J^T Q J - Q||_F`
    pub symplectic: T,
    /// smallest eigenvalue of the symmetric part of `Q J`
    pub min_eig_metric: T,
}

/// A complex structure `J` compatible with `Q` with positive `g_J`,
/// together with its eigenspace and annihilator bases.
///
/// The `H^{0,1}` basis is always the entrywise conjugate of the `H^{1,0}`
/// basis, and likewise for `V_{0,-1}` and `V_{-1,0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexStructure<T> {
    space: SymplecticSpace<T>,
    j: CMat<T>,
    vm10: CMat<T>,
    v0m1: CMat<T>,
    h10: CMat<T>,
    h01: CMat<T>,
    tol: T,
}

impl<T: Real> ComplexStructure<T> {
    /// Validates `J` and computes eigenspaces by projection with `(I -+ iJ)/2`.
    pub fn from_matrix(space: SymplecticSpace<T>, j: CMat<T>) -> Result<Self> {
        Self::from_matrix_with_tol(space, j, T::default_tol())
    }

    pub fn from_matrix_with_tol(space: SymplecticSpace<T>, j: CMat<T>, tol: T) -> Result<Self> {
        let n = space.dim();
        if j.rows() != n || j.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: j.rows().max(j.cols()),
            });
        }
        let j = j.real_part();
        let res = structure_residuals(&space, &j);
        if res.square > tol {
            return Err(Error::NotComplexStructure {
                residual: res.square.to_f64().unwrap_or(f64::NAN),
            });
        }
        if res.symplectic > tol {
            return Err(Error::NotSymplectic {
                residual: res.symplectic.to_f64().unwrap_or(f64::NAN),
            });
        }
        if !(res.min_eig_metric > T::zero()) {
            return Err(Error::NotPositive {
                min_eig: res.min_eig_metric.to_f64().unwrap_or(f64::NAN),
            });
        }
        let vm10 = eigenspace_plus_i(&j, space.genus)?;
        let h10 = eigenspace_plus_i(&j.transpose(), space.genus)?;
        Ok(Self {
            v0m1: vm10.conj(),
            h01: h10.conj(),
            vm10,
            h10,
            space,
            j,
            tol,
        })
    }

    /// The complex structure on `(R^{2g}, Q_std)` whose `H^{1,0}` is spanned
    /// by the rows of `(I | Z)` in the dual basis `{a*, b*}`.
    pub fn from_period_matrix(z: &CMat<T>) -> Result<Self> {
        let g = z.rows();
        if g == 0 {
            return Err(Error::ZeroGenus);
        }
        if !z.is_square() {
            return Err(Error::DimensionMismatch {
                expected: g,
                got: z.cols(),
            });
        }
        let tol = T::default_tol();
        let asym = z.asymmetry();
        if asym > tol {
            return Err(Error::PeriodMatrixNotSymmetric {
                residual: asym.to_f64().unwrap_or(f64::NAN),
            });
        }
        let min_eig = z.imag_part().symmetric_real_eigenvalues()[0];
        if !(min_eig > T::zero()) {
            return Err(Error::ImaginaryPartNotPositive {
                min_eig: min_eig.to_f64().unwrap_or(f64::NAN),
            });
        }
        let space = SymplecticSpace::standard(g)?;
        let h10 = CMat::identity(g).vcat(&z.transpose());
        let frame = h10.hcat(&h10.conj());
        let eig: Vec<Complex<T>> = (0..2 * g).map(|k| if k < g { i_unit() } else { -i_unit() }).collect();
        let jt = &(&frame * &CMat::diagonal(&eig)) * &frame.inverse()?;
        let mut cs = Self::from_matrix_with_tol(space, jt.transpose(), tol)?;
        cs.h01 = h10.conj();
        cs.h10 = h10;
        Ok(cs)
    }

    pub fn space(&self) -> &SymplecticSpace<T> {
        &self.space
    }

    pub fn genus(&self) -> usize {
        self.space.genus
    }

    pub fn j(&self) -> &CMat<T> {
        &self.j
    }

    /// Basis of the `+i` eigenspace `V_{-1,0}` (columns).
    pub fn vm10(&self) -> &CMat<T> {
        &self.vm10
    }

    /// Basis of the `-i` eigenspace `V_{0,-1}` (columns).
    pub fn v0m1(&self) -> &CMat<T> {
        &self.v0m1
    }

    /// Basis of `H^{1,0} = Ann V_{0,-1}` (columns are covectors).
    pub fn h10(&self) -> &CMat<T> {
        &self.h10
    }

    /// Basis of `H^{0,1} = Ann V_{-1,0}`, the conjugate of [`Self::h10`].
    pub fn h01(&self) -> &CMat<T> {
        &self.h01
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    pub fn residuals(&self) -> StructureResiduals<T> {
        structure_residuals(&self.space, &self.j)
    }

    /// `||H10^T V0m1||_F`, zero for a genuine annihilator.
    pub fn annihilator_residual(&self) -> T {
        (&self.h10.transpose() * &self.v0m1).frobenius()
    }

    /// `(1/2) ad J` applied to `X`: the complex structure of `p`.
    pub fn hat_i(&self, x: &CMat<T>) -> CMat<T> {
        self.j.commutator(x).scale_real(lit(0.5))
    }

    /// Same underlying `J` (within tolerance), used to guard mixed operands.
    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.space == other.space && (&self.j - &other.j).frobenius() <= self.tol)
    }

    /// Duality maps of the underlying symplectic space.
    pub fn duality_maps(&self) -> Result<DualityMaps<T>> {
        DualityMaps::new(&self.space)
    }
}

fn structure_residuals<T: Real>(space: &SymplecticSpace<T>, j: &CMat<T>) -> StructureResiduals<T> {
    let n = space.dim();
    let q = space.form();
    let square = (&(j * j) + &CMat::identity(n)).frobenius();
    let symplectic = (&(&j.transpose() * &(q * j)) - q).frobenius();
    let min_eig_metric = (q * j).symmetric_real_eigenvalues()[0];
    StructureResiduals {
        square,
        symplectic,
        min_eig_metric,
    }
}

/// Basis of the `+i` eigenspace of a real matrix with `M^2 = -I`.
fn eigenspace_plus_i<T: Real>(m: &CMat<T>, genus: usize) -> Result<CMat<T>> {
    let n = m.rows();
    // (I - iM)/2 projects onto the +i eigenspace.
    let proj = (&CMat::identity(n) - &m.scale(i_unit())).scale_real(lit(0.5));
    let basis = proj.column_basis(lit(1e-8));
    if basis.cols() != genus {
        return Err(Error::NotComplexStructure { residual: f64::NAN });
    }
    Ok(basis)
}

/// `phi_Q : v -> Q(., v)`, its inverse `psi_Q`, and the dual form `Q* = psi_Q^* Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityMaps<T> {
    phi_q: CMat<T>,
    psi_q: CMat<T>,
    q_star: CMat<T>,
}

impl<T: Real> DualityMaps<T> {
    pub fn new(space: &SymplecticSpace<T>) -> Result<Self> {
        let phi_q = space.form().clone();
        let psi_q = phi_q.inverse()?;
        // Q*(a, b) = Q(psi a, psi b) = a^T psi^T Q psi b = a^T Q^{-T} b.
        let q_star = psi_q.transpose();
        Ok(Self { phi_q, psi_q, q_star })
    }

    pub fn phi_q(&self) -> &CMat<T> {
        &self.phi_q
    }

    pub fn psi_q(&self) -> &CMat<T> {
        &self.psi_q
    }

    pub fn q_star(&self) -> &CMat<T> {
        &self.q_star
    }

    /// `phi_{Q*}`: covector `l` to the vector `Q*(., l)` of `V_C = V_C^{**}`.
    pub fn phi_q_star(&self) -> &CMat<T> {
        &self.q_star
    }

    /// `Q*(alpha, beta)` on covectors in `{a*, b*}` coordinates.
    pub fn qstar_pairing(&self, alpha: &[Complex<T>], beta: &[Complex<T>]) -> Result<Complex<T>> {
        let n = self.q_star.rows();
        for v in [alpha, beta] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: v.len(),
                });
            }
        }
        Ok(dot(alpha, &self.q_star.mul_vec(beta)))
    }

    /// The functional `lambda -> Q*(omega_bar, lambda)` on `H^{1,0}`,
    /// returned as its values on the stored `H^{1,0}` basis.
    ///
    /// `omega_bar` must lie in the `H^{0,1}` span.
    pub fn psi_q_functional(&self, cs: &ComplexStructure<T>, omega_bar: &[Complex<T>]) -> Result<H10Functional<T>> {
        self.check_h01(cs, omega_bar)?;
        let values = (0..cs.genus())
            .map(|j| self.qstar_pairing(omega_bar, &cs.h10().col(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(H10Functional { values })
    }

    /// Same functional computed as `psi_Q(omega_bar)` in `V_C` followed by
    /// the canonical pairing with `H^{1,0}`.
    pub fn psi_q_functional_matrix_route(
        &self,
        cs: &ComplexStructure<T>,
        omega_bar: &[Complex<T>],
    ) -> Result<H10Functional<T>> {
        self.check_h01(cs, omega_bar)?;
        let v = self.psi_q.mul_vec(omega_bar);
        let values = (0..cs.genus()).map(|j| dot(&cs.h10().col(j), &v)).collect();
        Ok(H10Functional { values })
    }

    fn check_h01(&self, cs: &ComplexStructure<T>, omega_bar: &[Complex<T>]) -> Result<()> {
        if omega_bar.len() != cs.space().dim() {
            return Err(Error::DimensionMismatch {
                expected: cs.space().dim(),
                got: omega_bar.len(),
            });
        }
        let v = CMat::column_vector(omega_bar);
        let residual = v.span_residual(cs.h01());
        if residual > cs.tol() {
            return Err(Error::NotAntiHolomorphic {
                residual: residual.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }
}

/// A linear functional on `H^{1,0}`, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct H10Functional<T> {
    pub values: Vec<Complex<T>>,
}

impl<T: Real> H10Functional<T> {
    /// Evaluate on an element given by coordinates in the `H^{1,0}` basis.
    pub fn apply(&self, coords: &[Complex<T>]) -> Complex<T> {
        dot(&self.values, coords)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Complex::is_zero)
    }
}

/// Standard symplectic intersection matrix as integers.
pub(crate) fn standard_form_int(genus: usize) -> Vec<Vec<i64>> {
    let n = 2 * genus;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j == i + genus {
                        1
                    } else if i == j + genus {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    fn real2(a: f64, b: f64, cc: f64, d: f64) -> CMat<f64> {
        CMat::from_real(2, 2, |i, j| [[a, b], [cc, d]][i][j])
    }

    #[test]
    fn standard_space_g1() {
        let s = SymplecticSpace::<f64>::standard(1).unwrap();
        assert_eq!(s.form(), &real2(0.0, 1.0, -1.0, 0.0));
    }

    #[test]
    fn standard_space_g2_blocks() {
        let s = SymplecticSpace::<f64>::standard(2).unwrap();
        let q = s.form();
        assert_eq!(q[(0, 2)], c(1.0, 0.0));
        assert_eq!(q[(1, 3)], c(1.0, 0.0));
        assert_eq!(q[(2, 0)], c(-1.0, 0.0));
        assert_eq!(q[(3, 1)], c(-1.0, 0.0));
        assert_eq!(q.frobenius(), 2.0);
    }

    #[test]
    fn zero_genus_rejected() {
        assert_eq!(SymplecticSpace::<f64>::standard(0).unwrap_err(), Error::ZeroGenus);
    }

    #[test]
    fn rotation_is_a_complex_structure() {
        let s = SymplecticSpace::standard(1).unwrap();
        let cs = ComplexStructure::from_matrix(s, real2(0.0, -1.0, 1.0, 0.0)).unwrap();
        // V_{-1,0} is spanned by (1, -i).
        let v = CMat::column_vector(&[c(1.0, 0.0), c(0.0, -1.0)]);
        assert!(v.span_residual(cs.vm10()) < 1e-14);
        let jv = cs.j() * cs.vm10();
        assert!((&jv - &cs.vm10().scale(i_unit())).frobenius() < 1e-14);
        assert!(cs.annihilator_residual() < 1e-14);
    }

    #[test]
    fn opposite_rotation_has_negative_metric() {
        let s = SymplecticSpace::standard(1).unwrap();
        let err = ComplexStructure::from_matrix(s, real2(0.0, 1.0, -1.0, 0.0)).unwrap_err();
        assert!(matches!(err, Error::NotPositive { .. }));
    }

    #[test]
    fn identity_is_not_a_complex_structure() {
        let s = SymplecticSpace::<f64>::standard(1).unwrap();
        let err = ComplexStructure::from_matrix(s, CMat::identity(2)).unwrap_err();
        assert!(matches!(err, Error::NotComplexStructure { .. }));
    }

    #[test]
    fn non_symplectic_j_rejected() {
        // Conjugating the standard J by a shear that mixes the (a1, b1) and
        // (a2, b2) planes keeps J^2 = -I but breaks J^T Q J = Q.
        let s2 = SymplecticSpace::standard(2).unwrap();
        let z = CMat::<f64>::identity(2).scale(i_unit());
        let j0 = ComplexStructure::from_period_matrix(&z).unwrap().j().clone();
        let mut shear = CMat::identity(4);
        shear[(0, 1)] = c(1.0, 0.0);
        let j = &(&shear * &j0) * &shear.inverse().unwrap();
        let err = ComplexStructure::from_matrix(s2, j).unwrap_err();
        assert!(matches!(err, Error::NotSymplectic { .. }), "{err:?}");
    }

    #[test]
    fn period_matrix_i_gives_rotation() {
        let z = CMat::from_rows(&[vec![c(0.0, 1.0)]]);
        let cs = ComplexStructure::<f64>::from_period_matrix(&z).unwrap();
        assert!((cs.j() - &real2(0.0, -1.0, 1.0, 0.0)).frobenius() < 1e-14);
    }

    #[test]
    fn period_matrix_i_identity_genus_two() {
        let z = CMat::<f64>::identity(2).scale(i_unit());
        let cs = ComplexStructure::from_period_matrix(&z).unwrap();
        let r = cs.residuals();
        assert!(r.square < 1e-12 && r.symplectic < 1e-12 && r.min_eig_metric > 0.0);
        // Block form: J e_k = e_{k+g}, J e_{k+g} = -e_k.
        assert_eq!(cs.j()[(2, 0)], c(1.0, 0.0));
        assert_eq!(cs.j()[(0, 2)], c(-1.0, 0.0));
        assert!(cs.annihilator_residual() < 1e-12);
    }

    #[test]
    fn real_period_matrix_rejected() {
        let z = CMat::from_rows(&[vec![c(2.0, 0.0)]]);
        let err = ComplexStructure::<f64>::from_period_matrix(&z).unwrap_err();
        assert!(matches!(err, Error::ImaginaryPartNotPositive { .. }));
    }

    #[test]
    fn asymmetric_period_matrix_rejected() {
        let z = CMat::from_rows(&[vec![c(0.0, 1.0), c(0.3, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]]);
        let err = ComplexStructure::<f64>::from_period_matrix(&z).unwrap_err();
        assert!(matches!(err, Error::PeriodMatrixNotSymmetric { .. }));
    }

    #[test]
    fn qstar_on_dual_basis() {
        let s = SymplecticSpace::<f64>::standard(1).unwrap();
        let maps = DualityMaps::new(&s).unwrap();
        let a = [c(1.0, 0.0), c(0.0, 0.0)];
        let b = [c(0.0, 0.0), c(1.0, 0.0)];
        assert_eq!(maps.qstar_pairing(&a, &b).unwrap(), c(1.0, 0.0));
        assert_eq!(maps.qstar_pairing(&a, &a).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            maps.qstar_pairing(&a, &[c(1.0, 0.0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn psi_is_minus_phi_qstar() {
        let s = SymplecticSpace::<f64>::standard(3).unwrap();
        let maps = DualityMaps::new(&s).unwrap();
        assert!((maps.psi_q() + maps.phi_q_star()).frobenius() < 1e-12);
        assert!((&(maps.phi_q() * maps.psi_q()) - &CMat::identity(6)).frobenius() < 1e-12);
        assert!((maps.q_star() + &maps.q_star().transpose()).frobenius() < 1e-12);
    }

    #[test]
    fn psi_functional_square_lattice() {
        let z = CMat::from_rows(&[vec![c(0.0, 1.0)]]);
        let cs = ComplexStructure::<f64>::from_period_matrix(&z).unwrap();
        let maps = cs.duality_maps().unwrap();
        let omega = cs.h10().col(0);
        let omega_bar = cs.h01().col(0);
        let f = maps.psi_q_functional(&cs, &omega_bar).unwrap();
        let direct = maps.qstar_pairing(&omega_bar, &omega).unwrap();
        assert!((f.apply(&[c(1.0, 0.0)]) - direct).norm() < 1e-14);
        // (1, -i) against (1, i): 1*i - (-i)*1 = 2i.
        assert!((direct - c(0.0, 2.0)).norm() < 1e-14);
        let zero = maps.psi_q_functional(&cs, &[c(0.0, 0.0); 2]).unwrap();
        assert!(zero.is_zero());
        let err = maps.psi_q_functional(&cs, &omega).unwrap_err();
        assert!(matches!(err, Error::NotAntiHolomorphic { .. }));
    }

    #[test]
    fn custom_form_validation() {
        let bad = CMat::<f64>::identity(2);
        assert!(SymplecticSpace::from_form(bad).is_err());
        let q = real2(0.0, 2.0, -2.0, 0.0);
        let s = SymplecticSpace::from_form(q).unwrap();
        assert_eq!(s.genus(), 1);
        let maps = DualityMaps::new(&s).unwrap();
        assert!((maps.psi_q() + maps.phi_q_star()).frobenius() < 1e-14);
    }
}

//! The Cartan decomposition at a point `J` of Siegel space and the
//! Lie-bracket tensor, both as matrix commutators on `V_C` and in the
//! identified picture `p^{1,0} x conj(p^{1,0}) -> End H^{1,0}`,
//! `(s, t) -> conj(t) s`.
//!
//! An element `t` of `p^{1,0}` is stored as the `g x g` matrix of a map
//! `H^{1,0} -> H^{0,1}` in the bases held by the [`ComplexStructure`]:
//! `t(h_j) = sum_i t[i][j] conj(h_i)`. Since the `H^{0,1}` basis is the
//! conjugate of the `H^{1,0}` basis, the conjugate map `H^{0,1} -> H^{1,0}`
//! has matrix `conj(t)` entrywise.

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::scalar::{lit, Real};
use crate::symplectic::ComplexStructure;

fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// An element of `sp(V,Q)_C`: `Q X` is symmetric.
#[derive(Clone, Debug)]
pub struct SpElement<'a, T> {
    cs: &'a ComplexStructure<T>,
    x: CMat<T>,
}

impl<'a, T: Real> SpElement<'a, T> {
    pub fn new(cs: &'a ComplexStructure<T>, x: CMat<T>) -> Result<Self> {
        let n = cs.space().dim();
        if x.rows() != n || x.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.rows().max(x.cols()),
            });
        }
        let residual = sp_defect(cs, &x);
        if residual > cs.tol() {
            return Err(Error::NotInSp {
                residual: f64_of(residual),
            });
        }
        Ok(Self { cs, x })
    }

    /// `X = Q^{-1} S` for a symmetric `S`; always in `sp`.
    pub fn from_symmetric(cs: &'a ComplexStructure<T>, s: &CMat<T>) -> Result<Self> {
        let sym = (s + &s.transpose()).scale_real(lit(0.5));
        let x = cs.space().form().solve(&sym)?;
        Self::new(cs, x)
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.x
    }

    pub fn context(&self) -> &'a ComplexStructure<T> {
        self.cs
    }

    /// `||Q X - (Q X)^T||_F`.
    pub fn sp_defect(&self) -> T {
        sp_defect(self.cs, &self.x)
    }

    /// Entrywise conjugate, the real structure of `End V_C`.
    pub fn conj(&self) -> Self {
        Self {
            cs: self.cs,
            x: self.x.conj(),
        }
    }

    /// Splits `X` into its `J`-commuting part `(X - JXJ)/2` and its
    /// `J`-anticommuting part `(X + JXJ)/2`.
    pub fn cartan_project(&self) -> (Self, Self) {
        let j = self.cs.j();
        let jxj = &(j * &self.x) * j;
        let k = (&self.x - &jxj).scale_real(lit(0.5));
        let p = (&self.x + &jxj).scale_real(lit(0.5));
        (Self { cs: self.cs, x: k }, Self { cs: self.cs, x: p })
    }

    /// Matrix commutator `XY - YX`.
    pub fn bracket_raw(&self, other: &Self) -> Result<Self> {
        if !self.cs.same_as(other.cs) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self {
            cs: self.cs,
            x: self.x.commutator(&other.x),
        })
    }

    /// `||[J, X]||_F`, zero on `sp_J`.
    pub fn commutes_with_j_residual(&self) -> T {
        self.cs.j().commutator(&self.x).frobenius()
    }

    /// `||XJ + JX||_F`, zero on `p`.
    pub fn anticommutes_with_j_residual(&self) -> T {
        let j = self.cs.j();
        (&(&self.x * j) + &(j * &self.x)).frobenius()
    }

    /// The transpose `X*` acting on `V_C^*`, with its symmetry and type properties
    /// checked on the way.
    pub fn transport_to_dual(&self) -> Result<DualEndomorphism<T>> {
        let maps = self.cs.duality_maps()?;
        let xs = self.x.transpose();
        let qstar_asymmetry = (maps.q_star() * &xs).asymmetry();
        if qstar_asymmetry > self.cs.tol() {
            return Err(Error::NotInSp {
                residual: f64_of(qstar_asymmetry),
            });
        }
        let tol = self.cs.tol();
        let scale = T::one().max(self.x.frobenius());
        let vanishes_on_vm10 = (&self.x * self.cs.vm10()).frobenius() <= tol * scale;
        let image_in_vm10 = self.x.span_residual(self.cs.vm10()) <= tol;
        let image_in_h01 = vanishes_on_vm10.then(|| xs.span_residual(self.cs.h01()));
        let kills_h01 = image_in_vm10.then(|| (&xs * self.cs.h01()).frobenius());
        Ok(DualEndomorphism {
            matrix: xs,
            qstar_asymmetry,
            image_in_h01_residual: image_in_h01,
            kills_h01_residual: kills_h01,
        })
    }
}

fn sp_defect<T: Real>(cs: &ComplexStructure<T>, x: &CMat<T>) -> T {
    (cs.space().form() * x).asymmetry()
}

/// Result of [`SpElement::transport_to_dual`].
#[derive(Clone, Debug)]
pub struct DualEndomorphism<T> {
    /// `X*`, the transpose, acting on covector columns.
    pub matrix: CMat<T>,
    /// `||Q* X* - (Q* X*)^T||_F`.
    pub qstar_asymmetry: T,
    /// When `X` vanishes on `V_{-1,0}`: relative distance of `im X*` from `H^{0,1}`.
    pub image_in_h01_residual: Option<T>,
    /// When `im X` lies in `V_{-1,0}`: `||X* restricted to H^{0,1}||_F`.
    pub kills_h01_residual: Option<T>,
}

/// Gram matrix `G[i][k] = Q*(h_i, conj(h_k))` between the stored `H^{1,0}`
/// and `H^{0,1}` bases. `Q*_t` restricted to `H^{1,0}` is `G t`.
pub fn cross_pairing<T: Real>(cs: &ComplexStructure<T>) -> Result<CMat<T>> {
    let maps = cs.duality_maps()?;
    Ok(&(&cs.h10().transpose() * maps.q_star()) * cs.h01())
}

/// An element of `p^{1,0}` as a map `H^{1,0} -> H^{0,1}` with `Q*_t` symmetric.
#[derive(Clone, Debug)]
pub struct PTensor10<'a, T> {
    cs: &'a ComplexStructure<T>,
    t: CMat<T>,
}

impl<'a, T: Real> PTensor10<'a, T> {
    pub fn new(cs: &'a ComplexStructure<T>, t: CMat<T>) -> Result<Self> {
        let g = cs.genus();
        if t.rows() != g || t.cols() != g {
            return Err(Error::DimensionMismatch {
                expected: g,
                got: t.rows().max(t.cols()),
            });
        }
        let residual = (&cross_pairing(cs)? * &t).asymmetry();
        if residual > cs.tol() {
            return Err(Error::NotInP10 {
                residual: f64_of(residual),
            });
        }
        Ok(Self { cs, t })
    }

    /// The unique `t` with `Q*_t = S` on `H^{1,0}`, for `S` symmetric.
    pub fn from_symmetric_form(cs: &'a ComplexStructure<T>, s: &CMat<T>) -> Result<Self> {
        let sym = (s + &s.transpose()).scale_real(lit(0.5));
        let t = cross_pairing(cs)?.solve(&sym)?;
        Self::new(cs, t)
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.t
    }

    pub fn context(&self) -> &'a ComplexStructure<T> {
        self.cs
    }

    /// The endomorphism `T*` of `V_C^*`: `h_j -> sum_i t[i][j] conj(h_i)`, zero on `H^{0,1}`.
    pub fn dual_endomorphism(&self) -> Result<CMat<T>> {
        let g = self.cs.genus();
        let frame = self.cs.h10().hcat(self.cs.h01());
        let image = (self.cs.h01() * &self.t).hcat(&CMat::zeros(2 * g, g));
        Ok(&image * &frame.inverse()?)
    }

    /// Embeds `t` as the element `X` of `End V_C` with `X* = T*`:
    /// `X` vanishes on `V_{-1,0}` and has image in `V_{-1,0}`.
    pub fn embed(&self) -> Result<SpElement<'a, T>> {
        SpElement::new(self.cs, self.dual_endomorphism()?.transpose())
    }
}

/// An endomorphism of `H^{1,0}` in the stored basis; `(sp_J)_C` after
/// transposition and restriction.
#[derive(Clone, Debug)]
pub struct EndH10<'a, T> {
    cs: &'a ComplexStructure<T>,
    m: CMat<T>,
}

impl<'a, T: Real> EndH10<'a, T> {
    pub fn new(cs: &'a ComplexStructure<T>, m: CMat<T>) -> Result<Self> {
        let g = cs.genus();
        if m.rows() != g || m.cols() != g {
            return Err(Error::DimensionMismatch {
                expected: g,
                got: m.rows().max(m.cols()),
            });
        }
        Ok(Self { cs, m })
    }

    /// Restricts an endomorphism of `V_C^*` that preserves `H^{1,0}` to it.
    pub fn restrict_dual(cs: &'a ComplexStructure<T>, xstar: &CMat<T>) -> Result<Self> {
        let image = xstar * cs.h10();
        let (coords, residual) = image.coordinates_in(cs.h10())?;
        let scale = T::one().max(image.frobenius());
        if residual > cs.tol() * scale {
            return Err(Error::NotInH10 {
                residual: f64_of(residual),
            });
        }
        Self::new(cs, coords)
    }

    pub fn matrix(&self) -> &CMat<T> {
        &self.m
    }

    pub fn context(&self) -> &'a ComplexStructure<T> {
        self.cs
    }
}

/// `||[X, Y]||_F` for two `(1,0)` tangent vectors, both embedded in `End V_C`.
/// The bracket is of type `(1,1)`, so this is zero up to rounding.
pub fn type11_vanishing_check<T: Real>(x: &PTensor10<'_, T>, y: &PTensor10<'_, T>) -> Result<T> {
    if !x.cs.same_as(y.cs) {
        return Err(Error::ContextMismatch);
    }
    let bx = x.embed()?;
    let by = y.embed()?;
    Ok(bx.bracket_raw(&by)?.matrix().frobenius())
}

/// The bracket in the identified picture: `conj(t) * s`.
pub fn bracket_identified<'a, T: Real>(s: &PTensor10<'a, T>, t: &PTensor10<'a, T>) -> Result<EndH10<'a, T>> {
    if !s.cs.same_as(t.cs) {
        return Err(Error::ContextMismatch);
    }
    EndH10::new(s.cs, &t.t.conj() * &s.t)
}

/// The same bracket reached through `End V_C`: embed `s` and `t`, take
/// `[X_s, conj(X_t)]`, transpose, and restrict to `H^{1,0}`.
pub fn bracket_via_raw<'a, T: Real>(s: &PTensor10<'a, T>, t: &PTensor10<'a, T>) -> Result<EndH10<'a, T>> {
    if !s.cs.same_as(t.cs) {
        return Err(Error::ContextMismatch);
    }
    let xs = s.embed()?;
    let xt_bar = t.embed()?.conj();
    let b = xs.bracket_raw(&xt_bar)?;
    let dual = b.transport_to_dual()?;
    EndH10::restrict_dual(s.cs, &dual.matrix)
}

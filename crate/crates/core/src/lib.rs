//! Numerical verification of the Bergman-kernel description of the second
//! fundamental form of the Torelli map.
//!
//! The crate is generic over the real scalar ([`Real`], implemented for `f32`
//! and `f64`). The `*64` aliases below fix `f64`, which is what every
//! accuracy target is stated for.
//!
//! Layers, bottom up:
//!
//! - [`symplectic`]: `(R^{2g}, Q)`, complex structures `J`, `H^{1,0}`, `Q*`.
//! - [`siegel`]: `sp(V, Q)`, the Cartan splitting at `J`, `p^{1,0}` and brackets.
//! - [`hyperelliptic`]: real hyperelliptic curves, periods and `Z`.
//! - [`bergman`]: the Hodge product, `k_u` and the Bergman kernel.
//! - [`torelli`]: Schiffer cup products and the bracket identity.
//! - [`weierstrass`], [`torus`]: genus-one potentials, `eta-hat` and `alpha`.

// `!(x > 0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bergman;
pub mod error;
pub mod hyperelliptic;
pub mod linalg;
pub mod quadrature;
pub mod scalar;
pub mod siegel;
pub mod symplectic;
pub mod torelli;
pub mod torus;
pub mod weierstrass;

pub use bergman::{BergmanContext, BergmanEvaluation, HolomorphicFrame, ReproducingElement};
pub use error::{Error, Result};
pub use hyperelliptic::{
    CurvePoint, HomologyConvention, HyperellipticCurve, PeriodData, TangentVector, DEFAULT_QUAD_ORDER,
};
pub use linalg::CMat;
pub use scalar::Real;
pub use siegel::{EndH10, PTensor10, SpElement};
pub use symplectic::{ComplexStructure, DualityMaps, SymplecticSpace};
pub use torelli::{KunnethQuadric, SchifferVariation, TheoremACheck};
pub use torus::{EtaEvaluator, LatticeContext, TheoremBReport, TheoremBSample, TorusTangent};
pub use weierstrass::Weierstrass;

pub use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type CMat64 = CMat<f64>;
pub type SymplecticSpace64 = SymplecticSpace<f64>;
pub type ComplexStructure64 = ComplexStructure<f64>;
pub type HyperellipticCurve64 = HyperellipticCurve<f64>;
pub type CurvePoint64 = CurvePoint<f64>;
pub type TangentVector64 = TangentVector<f64>;
pub type PeriodData64 = PeriodData<f64>;
pub type LatticeContext64 = LatticeContext<f64>;
pub type TorusTangent64 = TorusTangent<f64>;

pub type C32 = Complex<f32>;
pub type CMat32 = CMat<f32>;
pub type HyperellipticCurve32 = HyperellipticCurve<f32>;
pub type PeriodData32 = PeriodData<f32>;

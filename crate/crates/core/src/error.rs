use thiserror::Error;

/// Errors raised by the constructors and operations of this crate.
///
/// Every invariant violation has its own variant so that callers (the CLI in
/// particular) can name the violated invariant in diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("genus must be at least 1")]
    ZeroGenus,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("J^2 != -I (residual {residual:e})")]
    NotComplexStructure { residual: f64 },
    #[error("J does not preserve Q (residual {residual:e})")]
    NotSymplectic { residual: f64 },
    #[error("g_J is not positive definite (min eigenvalue {min_eig:e})")]
    NotPositive { min_eig: f64 },
    #[error("period matrix is not symmetric (residual {residual:e})")]
    PeriodMatrixNotSymmetric { residual: f64 },
    #[error("imaginary part of the period matrix is not positive definite (min eigenvalue {min_eig:e})")]
    ImaginaryPartNotPositive { min_eig: f64 },
    #[error("vector is not in the H^{{0,1}} span (residual {residual:e})")]
    NotAntiHolomorphic { residual: f64 },
    #[error("matrix is not in sp(V,Q) (Q_X asymmetry {residual:e})")]
    NotInSp { residual: f64 },
    #[error("Q*_t is not symmetric (residual {residual:e})")]
    NotInP10 { residual: f64 },
    #[error("operands belong to different complex structures")]
    ContextMismatch,
    #[error("image is not contained in H^{{1,0}} (residual {residual:e})")]
    NotInH10 { residual: f64 },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not Hermitian positive definite")]
    NotPositiveDefinite,

    #[error("polynomial degree {degree} too small (need at least 3)")]
    DegreeTooSmall { degree: usize },
    #[error("polynomial has a repeated root near {root} (gap {gap:e})")]
    RepeatedRoot { root: f64, gap: f64 },
    #[error("polynomial has a non-real root {re}{im:+}i")]
    ComplexRoot { re: f64, im: f64 },
    #[error("root finder did not converge")]
    RootsNotConverged,
    #[error("point lies within the branch-point exclusion radius (|y| = {abs_y:e})")]
    NearBranchPoint { abs_y: f64 },
    #[error("quadrature order {order} below minimum 8")]
    QuadratureOrder { order: usize },
    #[error("homology convention is not a symplectic basis: {reason}")]
    InvalidConvention { reason: String },
    #[error("Riemann relations fail: asymmetry {asymmetry:e}, min eigenvalue of Im Z {min_eig:e}")]
    RiemannRelation { asymmetry: f64, min_eig: f64 },

    #[error("lattice generators are degenerate (Im(omega2/omega1) = {ratio_im:e})")]
    DegenerateLattice { ratio_im: f64 },
    #[error("lattice-sum truncation {truncation} misses target accuracy (doubling change {change:e})")]
    TruncationTooSmall { truncation: usize, change: f64 },
    #[error("point is too close to a lattice point (distance {distance:e})")]
    AtLatticePoint { distance: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

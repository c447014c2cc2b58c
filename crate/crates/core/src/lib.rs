//! Spectral-gap certification through projective cone contraction.
//!
//! The crate provides the machinery to certify spectral gaps of real and
//! complex matrices and discretized operators by contraction arguments on
//! cones: a planar hyperbolic-geometry kernel, polyhedral real Birkhoff
//! cones with their Hilbert projective metric, the canonical
//! complexification of a real cone with its projective gauge, domination
//! certificates for complex operators against positive comparison operators,
//! concrete operator builders (complex matrices, integral kernels, transfer
//! operators of expanding circle maps), and an independent top-two
//! eigenvalue oracle for cross-validation.
//!
//! Every certificate is a sufficient-condition report: `certified == false`
//! never claims the absence of a gap.

pub mod complex_cone;
pub mod domination;
pub mod error;
pub mod hyperbolic;
pub mod operators;
pub mod real_cone;
pub mod suite;

pub use complex_cone::{ComplexCone, GaugeResult, PolarizedPoint, SliceDomain};
pub use domination::{DominationConstants, ExpRatio, GapCertificate};
pub use error::{Error, Result};
pub use hyperbolic::{ConstraintRegion, DistanceBracket, GeneralizedDisc};
pub use operators::{
    EigenPair, IntegralOperatorSpec, LinearOp, RpfCertificate, SpectralReport,
    TransferOperatorSpec, TrigWeight,
};
pub use real_cone::{BirkhoffCertificate, HilbertDistance, Norm, RealCone};

//! Concrete operator builders and the eigenvalue machinery: the constructive
//! eigen-triple iteration, the deflated top-two oracle, discretized integral
//! operators with the complex Jentzsch certificate, and transfer operators
//! of expanding circle maps with the transfer-operator gap certificate.

mod eigen;
mod integral;
mod transfer;

pub use eigen::{
    geometric_decay_fit, power_eigentriple, top_two_ratio, EigenPair, LinearOp, SpectralReport,
};
pub use integral::{
    comparison_matrix, discretize_integral, jentzsch_certificate, IntegralOperatorSpec,
};
pub use transfer::{
    circle_distance, collocation_matrix, lipschitz_cone_membership, rpf_certificate,
    transfer_apply, RpfCertificate, TransferApplied, TransferOperatorSpec, TrigWeight,
};

//! Photon-number distributions of one- and two-mode Gaussian states and of
//! deformed coherent states, block-partition Shannon entropies and the
//! subadditivity inequalities built on them, including the signed/complex
//! sequences that appear when the quadrature uncertainty relation fails.

pub mod entropy;
pub mod error;
pub mod gaussian_state;
pub mod oracle;
pub mod photon_dist;
pub mod specfun;
pub mod sum;

pub use num_complex::Complex64;

pub use entropy::{
    block_entropies, complex_information, complex_information_with, information, joint_entropy_report,
    subadditivity_check, ComplexEntropyReport, ComplexReading, EntropyReport, InequalityForm, InequalityReport,
    PartitionScheme, SubadditivityVerdict,
};
pub use error::{Error, Result};
pub use specfun::ComplexScalar;
pub use gaussian_state::{
    from_tau, p0, r_matrix, uncertainty_check, OneModeGaussianState, RMatrix, UncertaintyVerdict,
    VacuumProbability, XYTState,
};
pub use photon_dist::{
    deformed_distribution, deformed_pn, mean_photon_xyt, pn_centered_xyt, pn_hermite, pn_laguerre,
    pn_violation, two_mode_joint, two_mode_p2k, violation_exact, Classification, DeformationKind,
    DeformationSpec, FConvention, LegendreParams, PhotonDistribution, Tolerances, TwoModeJointDistribution,
};
pub use oracle::{run_suite, GridConfig, OracleVerdict};

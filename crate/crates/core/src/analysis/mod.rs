//! Verifiers for the structural results on the conjugate system: order
//! preservation, ratio contraction, phase alternation, even/odd limits, the
//! spectrum of the linearization, and the truncated sequence metric.

mod alternation;
mod lemma;
mod limits;
mod metric;
mod report;
mod spectral;
mod symmetric;

pub use alternation::{detect_alternation, AlternationReport};
pub use lemma::{
    c_alternating_sum, c_symmetric_form, check_geometric_ratio_bound, check_ratio_monotonicity, check_sortedness,
    check_spread_halving, check_t_ratio_transfer, lemma_c_certificate, lemma_c_certificates, lemma_c_constants,
    lemma_c_margin, LemmaCCertificate, ScanOutcome, IDENTITY_RTOL, SORT_SLACK, SPREAD_FLOOR, VERIFIER_SLACK,
};
pub use limits::{comparison_domination, even_odd_limits, DominationReport, LimitPattern};
pub use metric::{sequence_metric, TruncatedDistance};
pub use report::{
    check_dual, check_fixed_point, check_instability, check_order, check_spectral, check_stationary, check_trajectory,
    inject_fault, instability_growth, random_sorted_seed, run_sweep, verify_seed, CheckName, CheckResult, SweepConfig,
    VerificationReport, DUAL_CONVERGED, FIXED_POINT_TOL, INSTABILITY_RTOL, LIMIT_TOL,
};
pub use spectral::{linearized_matrix, lu_determinant, spectral_check, SpectralReport, DETERMINANT_TOL, EIGEN_TOL};
pub use symmetric::{elementary_symmetric, horner, monic_coefficients};

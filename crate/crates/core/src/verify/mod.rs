//! Numerical verification of the convergence results on concrete scenarios.
//!
//! Every check returns a [`ReportEntry`] whose `max_violation` is the worst
//! `LHS − (RHS + tolerance)` observed; a check passes exactly when it is `≤ 0`.

mod clusters;
mod fit;
mod fixed_point;
mod kernel;
mod limits;
mod projected;
mod report;
mod strips;

pub use clusters::{check_cluster_points, cluster_points, ClusterSet, CLUSTER_POINTS};
pub use fit::{fit_constant, fit_decay, DecayFit};
pub use fixed_point::fixed_point_direct;
pub use kernel::{check_kernel_preimage_degeneracy, kernel_basis, KERNEL_PREIMAGE};
pub use limits::{
    check_asymptotic_contractivity, check_compactness_inequality, check_composite_substitution,
    check_limit_continuity, ContractivityProfile, ConvergentVector, ASYMPTOTIC_CONTRACTIVITY,
    COMPACTNESS_INEQUALITY, COMPOSITE_SUBSTITUTION, FIT_FLOOR, LIMIT_CONTINUITY,
};
pub use projected::{
    check_bound_nonexpansive, check_convergent_contractive, contractive_tail, BOUND_NONEXPANSIVE,
    CONVERGENT_CONTRACTIVE,
};
pub use report::{anchors, ReportEntry, Status, Tolerances, VerificationReport, Witness};
pub use strips::{check_strip_decay, STRIP_DECAY};

/// Every check name accepted in a scenario's `checks` list, in report order.
pub const CHECK_NAMES: &[&str] = &[
    BOUND_NONEXPANSIVE,
    CONVERGENT_CONTRACTIVE,
    CLUSTER_POINTS,
    KERNEL_PREIMAGE,
    ASYMPTOTIC_CONTRACTIVITY,
    COMPOSITE_SUBSTITUTION,
    LIMIT_CONTINUITY,
    COMPACTNESS_INEQUALITY,
    STRIP_DECAY,
];

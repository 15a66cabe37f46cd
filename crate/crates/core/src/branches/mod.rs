//! Branch decompositions, good/robust verdicts, and the inequalities tying
//! the complexities to each other and to the branched mixture.

mod decomposition;
mod inequalities;
mod mixture;
mod properties;
mod verdict;

pub use decomposition::{validate_decomposition, BranchComponent, BranchDecomposition, ValidationReport, Violation};
pub use inequalities::{
    irreversibility_check, merge_bound_check, three_branch_compatibility, CheckStatus, IrreversibilityReport,
    IrreversibilityRow, MergeReport, OracleBudget, SideBySide, ThreeBranchReport,
};
pub use mixture::{rho_vs_diag_gap, GapReport, MixedStateModel, PairTerm};
pub use properties::{pair_property_instance, random_orthogonal_states, PropertyConfig, PropertyOutcome, PropertySummary};
pub(crate) use verdict::pair_estimates;
pub use verdict::{assess_branches, lambda_from_noise, BranchVerdict, Estimator, PairClass, PairVerdict};

/// Default orthogonality / reconstruction tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

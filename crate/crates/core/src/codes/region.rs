use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    GoodCode,
    GoodBranch,
    RobustBranch,
    Neither,
    /// Code and branch criteria hold at once.
    Both,
}

/// Places a pair with interference complexity `ci` and distinguishability
/// complexity `cd` in the code/branch plane. Both code-like (`min(ci, cd)`
/// above `code_floor_threshold`) and branch-like (`ci − cd` at least
/// `good_threshold`) gives `Both`; a branch that also has
/// `ci > exp(lambda·cd)` is `RobustBranch`.
pub fn classify_region(ci_lower: u64, cd_upper: u64, code_floor_threshold: u64, good_threshold: u64, lambda: f64) -> Region {
    let code = ci_lower.min(cd_upper) >= code_floor_threshold;
    let branch = ci_lower >= cd_upper.saturating_add(good_threshold);
    let robust = branch && (ci_lower as f64) > (lambda * cd_upper as f64).exp();
    match (code, branch) {
        (true, true) => Region::Both,
        (true, false) => Region::GoodCode,
        (false, true) if robust => Region::RobustBranch,
        (false, true) => Region::GoodBranch,
        (false, false) => Region::Neither,
    }
}

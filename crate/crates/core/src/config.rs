//! Size caps for the exponential routines.
//!
//! Algorithms take their cap as an argument; these are the defaults the CLI
//! and the harness hand in unless overridden.

use serde::{Deserialize, Serialize};

pub const DEFAULT_MINOR_CAP: usize = 10;
pub const DEFAULT_TW_EXACT_CAP: usize = 16;
pub const DEFAULT_BG_EXACT_CAP: usize = 12;
pub const DEFAULT_VC_BRUTE_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Host-graph vertex cap for the brute-force minor oracle.
    pub minor_brute: usize,
    /// Vertex cap for exact treewidth.
    pub tw_exact: usize,
    /// Vertex cap for exact bg.
    pub bg_exact: usize,
    /// Vertex cap for the brute-force vertex cover oracle.
    pub vc_brute: usize,
    /// Search-node budget for the heuristic grid-minor search.
    pub bg_search_budget: u64,
    /// Restarts for the heuristic grid-minor search.
    pub bg_restarts: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            minor_brute: DEFAULT_MINOR_CAP,
            tw_exact: DEFAULT_TW_EXACT_CAP,
            bg_exact: DEFAULT_BG_EXACT_CAP,
            vc_brute: DEFAULT_VC_BRUTE_CAP,
            bg_search_budget: 200_000,
            bg_restarts: 8,
        }
    }
}

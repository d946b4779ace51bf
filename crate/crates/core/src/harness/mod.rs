//! Random testing of the calculus' metatheory: generators, annotation
//! transport for reducts, a joinability oracle, and suite drivers with
//! line-oriented reports.

mod gen;
mod join;
mod report;
mod suites;
mod transport;
mod variants;

pub use gen::{case_rng, gen_barycentric_case, gen_typed_case, gen_typed_term, gen_untyped_term, TypedCase};
pub use join::{join_check, joinable, Joinability, DEFAULT_JOIN_DEPTH, DEFAULT_NODE_CAP};
pub use report::{shrink, single_deletions, CaseResult, Outcome, Report};
pub use suites::{run_suite, single_hole_template, Suite, UnknownSuite, PROBE_SAMPLES};
pub use transport::{normalize_types, subst_type_in_term, term_free_type_vars, transport, TransportError};
pub use variants::{insert_type_redexes, respell_annotations, variants};

use crate::rewrite::{Mode, DEFAULT_FUEL};

/// Generation and checking parameters. Equal configurations generate equal
/// sequences of terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_term_size: usize,
    pub max_scalar_magnitude: u32,
    /// Mode for the confluence suite; the other suites reduce unrestricted.
    pub mode: Mode,
    pub fuel: usize,
    pub join_depth: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_term_size: 30,
            max_scalar_magnitude: 4,
            mode: Mode::Restricted,
            fuel: DEFAULT_FUEL,
            join_depth: DEFAULT_JOIN_DEPTH,
        }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64) -> Self {
        GenConfig { seed, ..GenConfig::default() }
    }
}

#[cfg(test)]
mod tests;

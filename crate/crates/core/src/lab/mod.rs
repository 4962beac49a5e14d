//! Seeded experiments over sampled arcs.
//!
//! Every trial draws from its own ChaCha8 stream, seeded from the
//! experiment seed and the trial index, so reports do not depend on how
//! rayon schedules the trials and identical configurations give
//! byte-identical output.
//!
//! The field stands in for an algebraically closed one. Sampling itself never
//! needs roots, but anything that lifts arcs through Kummer covers does:
//! pick `(p, e)` with `l | p^e - 1` (for `l = 2`, any odd `p`; over `F_p` the
//! `l`-th roots of a random leading coefficient may still be missing, so use
//! `e = 2` and keep the arc coefficients in `F_p`, whose elements are all
//! squares in `F_{p^2}`).

mod experiments;
mod sample;

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;

pub use experiments::{
    generic_jump_scan, strong_filtration_check, swan_infinity_estimate, verify_jet_order, JetOrderConfig,
    PairRecord, ScanConfig, ScanRow, StrongRecord, SwanRow,
};
pub use sample::{
    random_element, random_nonzero, random_regular_arc, random_series, random_singular_primitive_arc,
    random_unit, sample_arc, ArcLiteral, JetSample,
};

/// SplitMix64 finalizer; mixes the experiment seed with a trial counter.
pub fn sub_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sub_seed(seed, index))
}

/// An error met during one trial; the trial is dropped and the run goes on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Incident {
    pub trial: u64,
    pub kind: String,
    pub message: String,
}

impl Incident {
    pub fn new(trial: u64, e: &Error) -> Incident {
        Incident {
            trial,
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport<R> {
    pub experiment: String,
    pub config: serde_json::Value,
    pub records: Vec<R>,
    pub summary: BTreeMap<String, u64>,
    pub incidents: Vec<Incident>,
}

impl<R: Serialize> ExperimentReport<R> {
    pub fn count(&self, key: &str) -> u64 {
        self.summary.get(key).copied().unwrap_or(0)
    }

    /// A `config` line, one line per record, then a `summary` line that also
    /// carries the incidents.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        let mut line = |v: serde_json::Value| {
            out.push_str(&v.to_string());
            out.push('\n');
        };
        line(serde_json::json!({ "experiment": self.experiment, "config": self.config }));
        for r in &self.records {
            line(serde_json::json!({ "record": r }));
        }
        line(serde_json::json!({ "summary": self.summary, "incidents": self.incidents }));
        out
    }
}

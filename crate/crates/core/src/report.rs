//! Verification reports shared by the lemma and extremal checks.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::graph::Graph;

/// A failing instance, kept for replay.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub graph: Graph,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: String,
    /// Number of instances checked.
    pub universe_size: u64,
    pub counterexamples: Vec<Counterexample>,
    /// Instances whose search ran out of budget (neither pass nor fail).
    pub budget_exhausted: u64,
    pub node_budget: u64,
    /// Total search nodes spent.
    pub search_nodes: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<f64>,
    /// Claim-specific values.
    pub details: Map<String, Value>,
}

impl VerificationReport {
    pub fn new(claim: &str, node_budget: u64) -> VerificationReport {
        VerificationReport {
            claim: claim.to_string(),
            universe_size: 0,
            counterexamples: Vec::new(),
            budget_exhausted: 0,
            node_budget,
            search_nodes: 0,
            elapsed_ms: None,
            details: Map::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty() && self.budget_exhausted == 0
    }

    pub fn fail(&mut self, graph: Graph, note: impl Into<String>) {
        self.counterexamples.push(Counterexample { graph, note: note.into() });
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_string(), serde_json::to_value(value).expect("serialisable detail"));
    }

    pub fn finish(mut self, started: Instant) -> VerificationReport {
        self.elapsed_ms = Some(started.elapsed().as_secs_f64() * 1e3);
        self
    }

    pub fn elapsed(&self) -> Option<Duration> {
        self.elapsed_ms.map(|ms| Duration::from_secs_f64(ms / 1e3))
    }

    /// Folds another report's tallies into this one.
    pub fn absorb(&mut self, other: VerificationReport) {
        self.universe_size += other.universe_size;
        self.counterexamples.extend(other.counterexamples);
        self.budget_exhausted += other.budget_exhausted;
        self.search_nodes += other.search_nodes;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_and_fail_bookkeeping() {
        let mut r = VerificationReport::new("demo", 10);
        r.universe_size = 3;
        assert!(r.passed());
        r.fail(crate::graph::complete(3), "triangle");
        assert!(!r.passed());
        r.detail("count", 5);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["counterexamples"][0]["graph"], "Bw");
        assert_eq!(json["details"]["count"], 5);
        assert!(json.get("elapsed_ms").is_none());
    }
}

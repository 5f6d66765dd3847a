//! Isomorph-free generation of small graphs by canonical augmentation.
//!
//! A graph on `k + 1` vertices is generated from its parent on `k` vertices
//! by adding one vertex with a chosen neighbourhood. The child is kept only
//! when the new vertex could be the *canonical deletion vertex*: among the
//! vertices of minimum degree, the one with the highest canonical position.
//! Checking `child - d ≅ child - new` suffices for this, because children of
//! one parent are deduplicated by canonical form and every isomorphism class
//! then has exactly one parent class.
//!
//! Deleting a minimum-degree vertex also makes some output filters usable
//! for pruning: `κ` and `δ` drop by at most one per deletion, and edge counts
//! shrink in a controlled way.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{low_mask, Ones};
use crate::canon::{canonical_form, canonical_labeling};
use crate::clique::independence_number;
use crate::connectivity::vertex_connectivity;
use crate::error::SearchError;
use crate::graph::Graph;
use crate::subgraph::subgraph_embed;

pub const MAX_ENUMERATION_VERTICES: usize = 10;

/// Conditions on generated graphs. `alpha_at_most`, `max_degree` and
/// `forbidden_subgraphs` are inherited by induced subgraphs and prune the
/// generation tree; the others are checked on output (with weaker bounds
/// pruning ancestors).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFilter {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exact_edges: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha_at_most: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_connectivity: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub forbidden_subgraphs: Vec<Graph>,
}

impl GraphFilter {
    /// Whether a finished graph passes every condition.
    pub fn accepts(&self, g: &Graph) -> bool {
        if self.exact_edges.is_some_and(|e| g.edge_count() != e) {
            return false;
        }
        if self.min_degree.is_some_and(|d| g.min_degree() < d) {
            return false;
        }
        if self.max_degree.is_some_and(|d| g.max_degree() > d) {
            return false;
        }
        if self.alpha_at_most.is_some_and(|a| independence_number(g) > a) {
            return false;
        }
        if self.min_connectivity.is_some_and(|k| k > 0 && vertex_connectivity(g) < k) {
            return false;
        }
        self.forbidden_subgraphs.iter().all(|f| subgraph_embed(f, g).is_none())
    }

    /// Whether `g` (on `k` vertices) can be an ancestor of an accepted graph
    /// on `n` vertices.
    fn admits_ancestor(&self, g: &Graph, n: usize) -> bool {
        let k = g.n();
        let lost = n - k;
        if let Some(e) = self.exact_edges {
            let have = g.edge_count();
            // each step adds a vertex of degree <= k' - 1 and, being of
            // minimum degree, at most 2e/(k'+1) of the final edges
            let room: usize = (k..n).sum();
            if have > e || have + room < e || have * n * (n - 1) < e * k * (k - 1) {
                return false;
            }
        }
        if self.max_degree.is_some_and(|d| g.max_degree() > d) {
            return false;
        }
        let floor = self.min_degree.unwrap_or(0).max(self.min_connectivity.unwrap_or(0));
        if floor > lost && g.min_degree() < floor - lost {
            return false;
        }
        if let Some(c) = self.min_connectivity {
            if c > lost && k > 1 && vertex_connectivity(g) < c - lost {
                return false;
            }
        }
        if self.alpha_at_most.is_some_and(|a| independence_number(g) > a) {
            return false;
        }
        self.forbidden_subgraphs.iter().all(|f| f.n() > k || subgraph_embed(f, g).is_none())
    }
}

/// One representative per isomorphism class of `n`-vertex graphs passing
/// `filter`, each in canonical labelling, sorted by canonical form.
pub fn all_graphs(n: usize, filter: &GraphFilter) -> Result<Vec<Graph>, SearchError> {
    let mut out: Vec<(Vec<u8>, Graph)> = last_level(n, filter)?
        .into_par_iter()
        .flat_map_iter(|children| children.into_iter().filter(|(_, g)| filter.accepts(g)))
        .collect();
    out.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

/// Number of graphs [`all_graphs`] would return.
pub fn count_graphs(n: usize, filter: &GraphFilter) -> Result<u64, SearchError> {
    Ok(last_level(n, filter)?
        .into_par_iter()
        .map(|children| children.iter().filter(|(_, g)| filter.accepts(g)).count() as u64)
        .sum())
}

/// A graph with its canonical form.
type Keyed = (Vec<u8>, Graph);

/// Children of every parent at level `n - 1`, before output filtering.
fn last_level(n: usize, filter: &GraphFilter) -> Result<Vec<Vec<Keyed>>, SearchError> {
    if n == 0 || n > MAX_ENUMERATION_VERTICES {
        return Err(SearchError::OutOfRange { n, min: 1, max: MAX_ENUMERATION_VERTICES });
    }
    let single = Graph::empty(1);
    if n == 1 {
        return Ok(vec![vec![(canonical_form(&single), single)]]);
    }
    let mut level: Vec<(Vec<u8>, Graph)> = Vec::new();
    if filter.admits_ancestor(&single, n) {
        level.push((canonical_form(&single), single));
    }
    for _ in 2..n {
        let mut next: Vec<(Vec<u8>, Graph)> = level
            .par_iter()
            .flat_map_iter(|(key, p)| children(p, key))
            .filter(|(_, g)| filter.admits_ancestor(g, n))
            .collect();
        next.par_sort_unstable_by(|a, b| a.0.cmp(&b.0));
        level = next;
    }
    Ok(level.par_iter().map(|(key, p)| children(p, key)).collect())
}

/// Accepted one-vertex extensions of `parent`, deduplicated, in canonical
/// labelling.
fn children(parent: &Graph, parent_key: &[u8]) -> Vec<(Vec<u8>, Graph)> {
    let k = parent.n();
    let pm = parent.masks().expect("small parent");
    let pdeg: Vec<u32> = pm.iter().map(|m| m.count_ones()).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in 0..=low_mask(k) {
        let d_new = s.count_ones();
        let mut min_deg = d_new;
        for (v, &d) in pdeg.iter().enumerate() {
            min_deg = min_deg.min(d + (s >> v & 1) as u32);
        }
        if d_new > min_deg {
            continue;
        }
        let mut masks = pm.clone();
        for v in Ones(s) {
            masks[v] |= 1 << k;
        }
        masks.push(s);
        let child = Graph::from_masks(&masks);
        let lab = canonical_labeling(&child, &vec![0; k + 1]);
        let tied: Vec<usize> = (0..=k).filter(|&v| masks[v].count_ones() == min_deg).collect();
        if tied.len() > 1 {
            let pos = lab.positions();
            let d = *tied.iter().max_by_key(|&&v| pos[v]).expect("tied vertex");
            if d != k {
                let (minus_d, _) = child.delete_vertices(&[d]).expect("in range");
                if canonical_form(&minus_d) != parent_key {
                    continue;
                }
            }
        }
        if seen.insert(lab.key.clone()) {
            let canon = child.permute(&lab.positions());
            out.push((lab.key, canon));
        }
    }
    out
}

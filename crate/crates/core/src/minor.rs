//! Exact minor containment with branch-set certificates.
//!
//! Search state: the host with some edges already contracted, a set of
//! *frozen* vertices (final branch sets, never merged again) and, for
//! rooted searches, root labels carried through contractions.
//!
//! In a connected host a model can always be extended to use every vertex
//! (attach each unused component to a neighbouring branch set), so within a
//! kept component the only decisions are: freeze a vertex, or contract it
//! with an unfrozen neighbour. Components of a disconnected host are first
//! either discarded whole or *anchored* (marked as used).
//!
//! Pruning works on the final `t` vertices:
//! * frozen count, unfrozen component count and unfrozen vertex count must
//!   be compatible with exactly `t` final vertices;
//! * an edge upper bound (frozen edges, frozen-to-future edges capped by the
//!   number of future vertices, future edges after the remaining
//!   contractions) must reach the pattern's edge count;
//! * a lower bound on missing pairs must fit the allowance;
//! * a vertex whose degree is below the smallest admissible final degree
//!   cannot stay a singleton and is only contracted.
//!
//! Failed states are memoised by coloured canonical form.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bits::{low_mask, Ones};
use crate::canon::canonical_form_colored;
use crate::error::SearchError;
use crate::graph::{complete, Graph, WORD_LIMIT};
use crate::subgraph::subgraph_embed_pinned;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Failed states kept for memoisation; further failures are not recorded.
const MEMO_CAP: usize = 4_000_000;

/// What to look for: an explicit graph, or any member of `K_t` minus `s`
/// edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatternSpec {
    Explicit(Graph),
    Family { t: usize, s: usize },
}

impl PatternSpec {
    pub fn family(t: usize, s: usize) -> Result<PatternSpec, SearchError> {
        if t < 2 {
            return Err(SearchError::InvalidPattern(format!("family needs t >= 2, got {t}")));
        }
        if s > t * (t - 1) / 2 {
            return Err(SearchError::InvalidPattern(format!("cannot delete {s} edges from K{t}")));
        }
        Ok(PatternSpec::Family { t, s })
    }

    /// Number of branch sets.
    pub fn order(&self) -> usize {
        match self {
            PatternSpec::Explicit(h) => h.n(),
            PatternSpec::Family { t, .. } => *t,
        }
    }

    /// Fewest edges a realised minor can have.
    pub fn min_edges(&self) -> usize {
        match self {
            PatternSpec::Explicit(h) => h.edge_count(),
            PatternSpec::Family { t, s } => t * (t - 1) / 2 - s,
        }
    }
}

impl std::fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PatternSpec::Explicit(h) => write!(f, "{h}"),
            PatternSpec::Family { t, s } => write!(f, "kts:{t},{s}"),
        }
    }
}

/// `K_t` minus one edge.
pub fn k_minus(t: usize) -> Graph {
    complete(t).delete_edge(0, 1).expect("t >= 2")
}

/// `K_t` minus two independent edges (`t >= 4`).
pub fn k_minus_independent(t: usize) -> Graph {
    complete(t).delete_edge(0, 1).and_then(|g| g.delete_edge(2, 3)).expect("t >= 4")
}

/// `K_t` minus two adjacent edges (`t >= 3`).
pub fn k_minus_adjacent(t: usize) -> Graph {
    complete(t).delete_edge(0, 1).and_then(|g| g.delete_edge(0, 2)).expect("t >= 3")
}

/// Disjoint connected branch sets of the host, one per pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorEmbedding {
    pub branch_sets: Vec<Vec<usize>>,
    /// Index pairs of branch sets with no host edge between them.
    pub missing_pairs: Vec<(usize, usize)>,
}

impl MinorEmbedding {
    /// The minor itself: one vertex per branch set.
    pub fn quotient(&self, g: &Graph) -> Graph {
        let t = self.branch_sets.len();
        let mut owner = vec![usize::MAX; g.n()];
        for (i, b) in self.branch_sets.iter().enumerate() {
            for &v in b {
                owner[v] = i;
            }
        }
        let mut q = Graph::empty(t);
        for (u, v) in g.edges() {
            let (a, b) = (owner[u], owner[v]);
            if a != usize::MAX && b != usize::MAX && a != b {
                q.set_edge(a, b);
            }
        }
        q
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorOutcome {
    Found(MinorEmbedding),
    /// The search was exhaustive and found nothing.
    Absent,
    /// The node budget ran out first.
    Unknown,
}

impl MinorOutcome {
    pub fn embedding(&self) -> Option<&MinorEmbedding> {
        match self {
            MinorOutcome::Found(e) => Some(e),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, MinorOutcome::Found(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { node_budget: DEFAULT_NODE_BUDGET }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub memo_hits: u64,
}

pub fn find_minor(g: &Graph, pattern: &PatternSpec) -> Result<MinorOutcome, SearchError> {
    find_minor_with(g, pattern, &SearchOptions::default()).map(|(o, _)| o)
}

pub fn find_minor_with(
    g: &Graph,
    pattern: &PatternSpec,
    opts: &SearchOptions,
) -> Result<(MinorOutcome, SearchStats), SearchError> {
    if let PatternSpec::Family { t, s } = *pattern {
        PatternSpec::family(t, s)?;
    }
    let target = match pattern {
        PatternSpec::Explicit(h) => Target::explicit(h, &vec![None; h.n()]),
        PatternSpec::Family { t, s } => Target::family(*t, *s),
    };
    run(g, target, &[], opts)
}

/// Minor of `h` in which pattern vertex `i` has `roots[i]` (when given) in
/// its branch set.
pub fn find_rooted_minor(g: &Graph, h: &Graph, roots: &[Option<usize>]) -> Result<MinorOutcome, SearchError> {
    find_rooted_minor_with(g, h, roots, &SearchOptions::default()).map(|(o, _)| o)
}

pub fn find_rooted_minor_with(
    g: &Graph,
    h: &Graph,
    roots: &[Option<usize>],
    opts: &SearchOptions,
) -> Result<(MinorOutcome, SearchStats), SearchError> {
    if roots.len() != h.n() {
        return Err(SearchError::InvalidRoots(format!("{} roots for a pattern on {} vertices", roots.len(), h.n())));
    }
    let mut seen = HashSet::new();
    for r in roots.iter().flatten() {
        if *r >= g.n() {
            return Err(SearchError::InvalidRoots(format!("root {r} out of range")));
        }
        if !seen.insert(*r) {
            return Err(SearchError::InvalidRoots(format!("host vertex {r} used twice")));
        }
    }
    run(g, Target::explicit(h, roots), roots, opts)
}

/// Whether `emb` is a valid model of `pattern` in `g`.
pub fn verify_embedding(g: &Graph, pattern: &PatternSpec, emb: &MinorEmbedding) -> bool {
    let Some(q) = check_sets(g, emb) else {
        return false;
    };
    match pattern {
        PatternSpec::Explicit(h) => emb.branch_sets.len() == h.n() && h.edges().all(|(i, j)| q.has_edge(i, j)),
        PatternSpec::Family { t, s } => emb.branch_sets.len() == *t && emb.missing_pairs.len() <= *s,
    }
}

/// As [`verify_embedding`] for an explicit pattern, also checking roots.
pub fn verify_rooted_embedding(g: &Graph, h: &Graph, roots: &[Option<usize>], emb: &MinorEmbedding) -> bool {
    verify_embedding(g, &PatternSpec::Explicit(h.clone()), emb)
        && roots.len() == h.n()
        && roots.iter().enumerate().all(|(i, r)| r.is_none_or(|x| emb.branch_sets[i].contains(&x)))
}

/// Checks disjointness, connectivity and the declared missing pairs; returns
/// the quotient graph.
fn check_sets(g: &Graph, emb: &MinorEmbedding) -> Option<Graph> {
    let mut used = vec![false; g.n()];
    for b in &emb.branch_sets {
        if b.is_empty() {
            return None;
        }
        for &v in b {
            if v >= g.n() || std::mem::replace(&mut used[v], true) {
                return None;
            }
        }
        let (sub, _) = g.induced_subgraph(b);
        if !sub.is_connected() {
            return None;
        }
    }
    let q = emb.quotient(g);
    let mut declared: Vec<(usize, usize)> =
        emb.missing_pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    declared.sort_unstable();
    let actual: Vec<(usize, usize)> = q.missing_edges().collect();
    (declared == actual).then_some(q)
}

struct Target<'a> {
    t: usize,
    /// Missing pairs allowed in the final minor.
    allowance: usize,
    need_edges: usize,
    /// Smallest final degree of a singleton without a root label.
    free_min_degree: usize,
    /// Pattern degree per root label (label `i + 1` is pattern vertex `i`).
    label_degree: Vec<usize>,
    explicit: Option<&'a Graph>,
}

impl<'a> Target<'a> {
    fn family(t: usize, s: usize) -> Target<'static> {
        Target {
            t,
            allowance: s,
            need_edges: t * (t - 1) / 2 - s,
            free_min_degree: (t - 1).saturating_sub(s),
            label_degree: Vec::new(),
            explicit: None,
        }
    }

    fn explicit(h: &'a Graph, roots: &[Option<usize>]) -> Target<'a> {
        let t = h.n();
        let free_min_degree =
            (0..t).filter(|&i| roots[i].is_none()).map(|i| h.degree(i)).min().unwrap_or(usize::MAX);
        Target {
            t,
            allowance: t * t.saturating_sub(1) / 2 - h.edge_count(),
            need_edges: h.edge_count(),
            free_min_degree,
            label_degree: (0..t).map(|i| h.degree(i)).collect(),
            explicit: Some(h),
        }
    }

    fn min_single_degree(&self, label: u32) -> usize {
        if label == 0 {
            self.free_min_degree
        } else {
            self.label_degree[label as usize - 1]
        }
    }
}

#[derive(Clone)]
struct State {
    alive: u64,
    adj: Vec<u64>,
    frozen: u64,
    anchored: u64,
    /// Original host vertices merged into each current vertex.
    branch: Vec<u64>,
    label: Vec<u32>,
}

enum Step {
    Found(MinorEmbedding),
    Fail,
    Budget,
}

struct Engine<'a> {
    target: Target<'a>,
    budget: u64,
    stats: SearchStats,
    memo: HashSet<Vec<u8>>,
}

fn run(g: &Graph, target: Target, roots: &[Option<usize>], opts: &SearchOptions) -> Result<(MinorOutcome, SearchStats), SearchError> {
    let n = g.n();
    let Some(adj) = g.masks() else {
        return Err(SearchError::TooLarge { n, limit: WORD_LIMIT });
    };
    if n < target.t || g.edge_count() < target.need_edges {
        return Ok((MinorOutcome::Absent, SearchStats::default()));
    }
    let mut label = vec![0u32; n];
    let mut anchored = 0u64;
    for (i, r) in roots.iter().enumerate() {
        if let Some(x) = *r {
            label[x] = i as u32 + 1;
            anchored |= 1 << x;
        }
    }
    let st = State {
        alive: low_mask(n),
        adj,
        frozen: 0,
        anchored,
        branch: (0..n).map(|v| 1u64 << v).collect(),
        label,
    };
    let mut engine = Engine { target, budget: opts.node_budget, stats: SearchStats::default(), memo: HashSet::new() };
    let outcome = match engine.search(&st) {
        Step::Found(e) => MinorOutcome::Found(e),
        Step::Fail => MinorOutcome::Absent,
        Step::Budget => MinorOutcome::Unknown,
    };
    Ok((outcome, engine.stats))
}

/// Components of the graph induced on `within`, as masks.
fn components(adj: &[u64], within: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = within;
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        let mut frontier = comp;
        while frontier != 0 {
            let mut next = 0;
            for v in Ones(frontier) {
                next |= adj[v];
            }
            next &= within & !comp;
            comp |= next;
            frontier = next;
        }
        out.push(comp);
        rest &= !comp;
    }
    out
}

fn edges_within(adj: &[u64], set: u64) -> usize {
    Ones(set).map(|v| (adj[v] & set).count_ones() as usize).sum::<usize>() / 2
}

impl State {
    fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Merges `u` into `v`.
    fn contract(&self, v: usize, u: usize) -> State {
        let mut s = self.clone();
        let nu = s.adj[u];
        for w in Ones(nu) {
            s.adj[w] = (s.adj[w] & !(1 << u)) | (1 << v);
        }
        s.adj[v] = (s.adj[v] | nu) & !(1 << v | 1 << u);
        s.adj[u] = 0;
        s.alive &= !(1 << u);
        s.branch[v] |= s.branch[u];
        s.branch[u] = 0;
        s.label[v] = s.label[v].max(s.label[u]);
        s.label[u] = 0;
        if s.anchored >> u & 1 == 1 {
            s.anchored = (s.anchored & !(1 << u)) | (1 << v);
        }
        s
    }

    fn discard(&self, comp: u64) -> State {
        let mut s = self.clone();
        s.alive &= !comp;
        for v in Ones(comp) {
            s.adj[v] = 0;
            s.branch[v] = 0;
        }
        s
    }

    fn key(&self) -> Vec<u8> {
        let verts: Vec<usize> = Ones(self.alive).collect();
        let mut pos = [0usize; 64];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let masks: Vec<u64> = verts
            .iter()
            .map(|&v| Ones(self.adj[v]).fold(0u64, |m, w| m | 1 << pos[w]))
            .collect();
        let colors: Vec<u32> = verts
            .iter()
            .map(|&v| (self.frozen >> v & 1) as u32 | ((self.anchored >> v & 1) as u32) << 1 | self.label[v] << 2)
            .collect();
        canonical_form_colored(&Graph::from_masks(&masks), &colors)
    }
}

impl Engine<'_> {
    fn search(&mut self, st: &State) -> Step {
        self.stats.nodes += 1;
        if self.stats.nodes > self.budget {
            return Step::Budget;
        }
        let t = self.target.t;
        let f = st.frozen.count_ones() as usize;
        if f > t {
            return Step::Fail;
        }
        let comps = components(&st.adj, st.alive);
        let loose: Vec<u64> = comps.iter().copied().filter(|&c| c & st.anchored == 0).collect();
        if loose.is_empty() {
            if st.alive & !st.frozen == 0 {
                return self.leaf(st);
            }
            if !self.feasible(st) {
                return Step::Fail;
            }
        }
        let key = st.key();
        if self.memo.contains(&key) {
            self.stats.memo_hits += 1;
            return Step::Fail;
        }
        let step = if let Some(&c) = loose.first() {
            let v = Ones(c).max_by_key(|&v| st.degree(v)).expect("nonempty component");
            let mut anchored = st.clone();
            anchored.anchored |= 1 << v;
            self.first_success([st.discard(c), anchored])
        } else {
            self.branch(st)
        };
        if matches!(step, Step::Fail) && self.memo.len() < MEMO_CAP {
            self.memo.insert(key);
        }
        step
    }

    fn first_success(&mut self, children: impl IntoIterator<Item = State>) -> Step {
        for child in children {
            match self.search(&child) {
                Step::Fail => {}
                other => return other,
            }
        }
        Step::Fail
    }

    fn branch(&mut self, st: &State) -> Step {
        let unfrozen = st.alive & !st.frozen;
        let forced = Ones(unfrozen)
            .filter(|&v| st.degree(v) < self.target.min_single_degree(st.label[v]))
            .min_by_key(|&v| st.degree(v));
        let v = forced.unwrap_or_else(|| Ones(unfrozen).max_by_key(|&v| st.degree(v)).expect("unfrozen vertex"));
        let mut partners: Vec<usize> = Ones(st.adj[v] & unfrozen)
            .filter(|&u| st.label[u] == 0 || st.label[v] == 0)
            .collect();
        // Contractions that lose fewer edges first.
        partners.sort_by_key(|&u| ((st.adj[u] & st.adj[v]).count_ones(), u));
        let freeze = forced.is_none().then(|| {
            let mut s = st.clone();
            s.frozen |= 1 << v;
            s.anchored |= 1 << v;
            s
        });
        let contractions = partners.into_iter().map(|u| st.contract(v, u));
        self.first_success(freeze.into_iter().chain(contractions))
    }

    fn feasible(&self, st: &State) -> bool {
        let tg = &self.target;
        let t = tg.t;
        let frozen = st.frozen;
        let unfrozen = st.alive & !frozen;
        let f = frozen.count_ones() as usize;
        let u_count = unfrozen.count_ones() as usize;
        let r = t - f;
        if r > u_count || (r == 0 && u_count > 0) {
            return false;
        }
        let e_frozen = edges_within(&st.adj, frozen);
        let mut missing = f * f.saturating_sub(1) / 2 - e_frozen;
        let mut ub = e_frozen;
        for v in Ones(frozen) {
            let du = (st.adj[v] & unfrozen).count_ones() as usize;
            if st.degree(v) < tg.min_single_degree(st.label[v]) {
                return false;
            }
            missing += r.saturating_sub(du);
            ub += du.min(r);
        }
        if missing > tg.allowance {
            return false;
        }
        let u_comps = components(&st.adj, unfrozen).len();
        if u_comps > r {
            return false;
        }
        let e_u = edges_within(&st.adj, unfrozen);
        ub += (r * r.saturating_sub(1) / 2).min(e_u - (u_count - r));
        ub >= tg.need_edges
    }

    fn leaf(&mut self, st: &State) -> Step {
        let verts: Vec<usize> = Ones(st.frozen).collect();
        if verts.len() != self.target.t {
            return Step::Fail;
        }
        let mut pos = [0usize; 64];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let masks: Vec<u64> = verts.iter().map(|&v| Ones(st.adj[v]).fold(0u64, |m, w| m | 1 << pos[w])).collect();
        let q = Graph::from_masks(&masks);
        let order: Vec<usize> = match self.target.explicit {
            None => {
                if q.edge_count() < self.target.need_edges {
                    return Step::Fail;
                }
                (0..verts.len()).collect()
            }
            Some(h) => {
                let mut pins = vec![None; h.n()];
                for (i, &v) in verts.iter().enumerate() {
                    if st.label[v] > 0 {
                        pins[st.label[v] as usize - 1] = Some(i);
                    }
                }
                match subgraph_embed_pinned(h, &q, &pins) {
                    Some(phi) => phi,
                    None => return Step::Fail,
                }
            }
        };
        let branch_sets: Vec<Vec<usize>> = order.iter().map(|&i| Ones(st.branch[verts[i]]).collect()).collect();
        let mut emb = MinorEmbedding { branch_sets, missing_pairs: Vec::new() };
        let mut g_q = Graph::empty(order.len());
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                if q.has_edge(order[a], order[b]) {
                    g_q.set_edge(a, b);
                }
            }
        }
        emb.missing_pairs = g_q.missing_edges().collect();
        Step::Found(emb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_multipartite, cycle, petersen};

    #[test]
    fn named_patterns() {
        assert_eq!(k_minus(5).edge_count(), 9);
        assert_eq!(k_minus_independent(6).edge_count(), 13);
        let a = k_minus_adjacent(6);
        assert_eq!(a.edge_count(), 13);
        assert_eq!(a.degree(0), 3);
        assert!(PatternSpec::family(8, 29).is_err());
        assert!(PatternSpec::family(1, 0).is_err());
    }

    #[test]
    fn complete_graph_has_every_family_member() {
        let g = complete(8);
        let p = PatternSpec::family(8, 4).unwrap();
        let emb = find_minor(&g, &p).unwrap();
        let e = emb.embedding().unwrap();
        assert!(e.branch_sets.iter().all(|b| b.len() == 1));
        assert!(e.missing_pairs.is_empty());
        assert!(verify_embedding(&g, &p, e));
    }

    #[test]
    fn k2222_is_tight() {
        let g = complete_multipartite(&[2, 2, 2, 2]);
        assert_eq!(find_minor(&g, &PatternSpec::family(8, 3).unwrap()).unwrap(), MinorOutcome::Absent);
        assert!(find_minor(&g, &PatternSpec::family(8, 4).unwrap()).unwrap().is_found());
    }

    #[test]
    fn petersen_has_k5_not_k6() {
        let g = petersen();
        let k5 = PatternSpec::Explicit(complete(5));
        let e = find_minor(&g, &k5).unwrap();
        assert!(verify_embedding(&g, &k5, e.embedding().unwrap()));
        assert_eq!(find_minor(&g, &PatternSpec::Explicit(complete(6))).unwrap(), MinorOutcome::Absent);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let g = petersen();
        let opts = SearchOptions { node_budget: 3 };
        let (o, _) = find_minor_with(&g, &PatternSpec::Explicit(complete(5)), &opts).unwrap();
        assert_eq!(o, MinorOutcome::Unknown);
    }

    #[test]
    fn rooted_examples() {
        let k4 = complete(4);
        let roots = [Some(0), Some(1), Some(2), Some(3)];
        let e = find_rooted_minor(&k4, &k4, &roots).unwrap();
        assert!(e.embedding().unwrap().branch_sets.iter().all(|b| b.len() == 1));
        // C4 a-b-c-d: a triangle rooted at a, b, c needs d merged into a or c
        let c4 = cycle(4);
        let k3 = complete(3);
        let roots = [Some(0), Some(1), Some(2)];
        let e = find_rooted_minor(&c4, &k3, &roots).unwrap();
        let e = e.embedding().unwrap();
        assert!(verify_rooted_embedding(&c4, &k3, &roots, e));
        assert!(e.branch_sets.contains(&vec![0, 3]) || e.branch_sets.contains(&vec![2, 3]));
        assert!(find_rooted_minor(&c4, &k3, &[Some(0), Some(2), Some(2)]).is_err());
    }

    #[test]
    fn broken_embeddings_are_rejected() {
        let g = cycle(6);
        let p = PatternSpec::Explicit(complete(3));
        let good = MinorEmbedding { branch_sets: vec![vec![0, 1], vec![2, 3], vec![4, 5]], missing_pairs: vec![] };
        assert!(verify_embedding(&g, &p, &good));
        let disconnected = MinorEmbedding { branch_sets: vec![vec![0, 2], vec![1], vec![3, 4, 5]], missing_pairs: vec![] };
        assert!(!verify_embedding(&g, &p, &disconnected));
        let overlapping = MinorEmbedding { branch_sets: vec![vec![0, 1], vec![1, 2, 3], vec![4, 5]], missing_pairs: vec![] };
        assert!(!verify_embedding(&g, &p, &overlapping));
        let wrong_missing = MinorEmbedding { branch_sets: good.branch_sets.clone(), missing_pairs: vec![(0, 1)] };
        assert!(!verify_embedding(&g, &p, &wrong_missing));
    }

    #[test]
    fn embedding_json_shape() {
        let e = MinorEmbedding { branch_sets: vec![vec![0, 3], vec![1]], missing_pairs: vec![(0, 1)] };
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"branch_sets":[[0,3],[1]],"missing_pairs":[[0,1]]}"#);
    }
}

//! Edge-density side: `(K_{2,2,2,2}, 4)`-cockades at the `4.5n - 12` bound,
//! random trials at the threshold, degeneracy, and separator contraction
//! gains.

use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Ones;
use crate::connectivity::is_k_connected;
use crate::enumerate::{all_graphs, GraphFilter};
use crate::error::SearchError;
use crate::graph::{complete_multipartite, Graph};
use crate::minor::{find_minor_with, find_rooted_minor_with, MinorOutcome, PatternSpec, SearchOptions};
use crate::report::VerificationReport;

/// Identify `source` (a 4-clique of a fresh `K_{2,2,2,2}`, whose parts are
/// `{0,1}`, `{2,3}`, `{4,5}`, `{6,7}`) with `target` (a 4-clique of the
/// graph built so far), position by position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Glue {
    pub target: [usize; 4],
    pub source: [usize; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CockadeRecipe {
    pub copies: usize,
    /// One glue per copy after the first.
    pub schedule: Vec<Glue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecipeError {
    #[error("a cockade needs at least one copy")]
    NoCopies,
    #[error("{copies} copies need {need} glues, got {got}")]
    ScheduleLength { copies: usize, need: usize, got: usize },
    #[error("glue {index}: target {target:?} is not a 4-clique of the graph so far")]
    TargetNotClique { index: usize, target: [usize; 4] },
    #[error("glue {index}: source {clique:?} is not a 4-clique of K2,2,2,2")]
    SourceNotClique { index: usize, clique: [usize; 4] },
}

impl CockadeRecipe {
    /// Each copy glued onto the four fresh vertices of the previous one.
    pub fn chain(copies: usize) -> CockadeRecipe {
        let mut schedule = Vec::new();
        let mut last = [1, 3, 5, 7];
        let mut n = 8;
        for _ in 1..copies {
            schedule.push(Glue { target: last, source: [0, 2, 4, 6] });
            last = [n, n + 1, n + 2, n + 3];
            n += 4;
        }
        CockadeRecipe { copies, schedule }
    }

    pub fn vertex_count(&self) -> usize {
        8 + 4 * self.copies.saturating_sub(1)
    }
}

/// Glues the copies; fresh vertices of each copy get the next indices in
/// increasing order of their copy label.
pub fn build_cockade(recipe: &CockadeRecipe) -> Result<Graph, RecipeError> {
    if recipe.copies == 0 {
        return Err(RecipeError::NoCopies);
    }
    if recipe.schedule.len() != recipe.copies - 1 {
        return Err(RecipeError::ScheduleLength {
            copies: recipe.copies,
            need: recipe.copies - 1,
            got: recipe.schedule.len(),
        });
    }
    let base = complete_multipartite(&[2, 2, 2, 2]);
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    let mut n = 8;
    for (index, glue) in recipe.schedule.iter().enumerate() {
        let so_far = Graph::from_edges(n, edges.iter().copied()).expect("indices in range");
        let distinct = |q: &[usize; 4], bound: usize| {
            q.iter().all(|&v| v < bound) && (0..4).all(|i| (i + 1..4).all(|j| q[i] != q[j]))
        };
        if !distinct(&glue.target, n) || !so_far.is_clique(&glue.target) {
            return Err(RecipeError::TargetNotClique { index, target: glue.target });
        }
        if !distinct(&glue.source, 8) || !base.is_clique(&glue.source) {
            return Err(RecipeError::SourceNotClique { index, clique: glue.source });
        }
        let mut map = [usize::MAX; 8];
        for i in 0..4 {
            map[glue.source[i]] = glue.target[i];
        }
        for slot in map.iter_mut().filter(|m| **m == usize::MAX) {
            *slot = n;
            n += 1;
        }
        for (u, v) in base.edges() {
            let in_glue = glue.source.contains(&u) && glue.source.contains(&v);
            if !in_glue {
                edges.push((map[u], map[v]));
            }
        }
    }
    let g = Graph::from_edges(n, edges).expect("indices in range");
    assert_eq!(2 * g.edge_count(), 9 * g.n() - 24, "cockade edge count");
    Ok(g)
}

/// `⌈4.5n - 12⌉`.
pub fn threshold_edges(n: usize) -> usize {
    (9 * n - 24).div_ceil(2)
}

/// The cockade has no `(8,3)` minor but does have an `(8,4)` minor.
pub fn verify_cockade_tightness(recipe: &CockadeRecipe, opts: &SearchOptions) -> Result<VerificationReport, SearchError> {
    let started = Instant::now();
    let g = build_cockade(recipe).map_err(|e| SearchError::InvalidPattern(e.to_string()))?;
    let mut report = VerificationReport::new("cockade-tightness", opts.node_budget);
    report.universe_size = 1;
    report.detail("copies", recipe.copies);
    report.detail("n", g.n());
    report.detail("edges", g.edge_count());
    let mut answers = Vec::new();
    for s in [3, 4] {
        let (outcome, stats) = find_minor_with(&g, &PatternSpec::Family { t: 8, s }, opts)?;
        report.search_nodes += stats.nodes;
        let key = format!("k8m{s}_minor");
        match outcome {
            MinorOutcome::Found(_) => report.detail(&key, true),
            MinorOutcome::Absent => report.detail(&key, false),
            MinorOutcome::Unknown => {
                report.budget_exhausted += 1;
                report.detail(&key, serde_json::Value::Null);
            }
        }
        answers.push(outcome);
    }
    if matches!(answers[0], MinorOutcome::Found(_)) {
        report.fail(g.clone(), "has a K8 minus 3 edges minor");
    }
    if matches!(answers[1], MinorOutcome::Absent) {
        report.fail(g, "has no K8 minus 4 edges minor");
    }
    Ok(report.finish(started))
}

/// The generator for trial `index` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform graph on `n` vertices with exactly `m` edges.
pub fn random_graph_with_edges(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Graph {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let chosen: Vec<(usize, usize)> = pairs.choose_multiple(rng, m).copied().collect();
    Graph::from_edges(n, chosen).expect("pairs in range")
}

/// Random graphs at the threshold must all have an `(8,4)` minor.
pub fn random_extremal_test(n: usize, trials: usize, seed: u64, opts: &SearchOptions) -> Result<VerificationReport, SearchError> {
    random_edge_trials(n, threshold_edges(n), trials, seed, opts)
}

/// As [`random_extremal_test`] with an arbitrary edge count. Below the
/// threshold graphs without the minor are expected and only tallied.
pub fn random_edge_trials(
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
    opts: &SearchOptions,
) -> Result<VerificationReport, SearchError> {
    if !(8..=14).contains(&n) {
        return Err(SearchError::OutOfRange { n, min: 8, max: 14 });
    }
    let started = Instant::now();
    let at_threshold = m >= threshold_edges(n);
    let pattern = PatternSpec::Family { t: 8, s: 4 };
    let results: Vec<(Graph, MinorOutcome, u64)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let g = random_graph_with_edges(n, m.min(n * (n - 1) / 2), &mut trial_rng(seed, i as u64));
            let (o, stats) = find_minor_with(&g, &pattern, opts).expect("n <= 14");
            (g, o, stats.nodes)
        })
        .collect();
    let mut report = VerificationReport::new("random-extremal", opts.node_budget);
    report.universe_size = trials as u64;
    let mut without = 0;
    for (g, outcome, nodes) in results {
        report.search_nodes += nodes;
        match outcome {
            MinorOutcome::Found(_) => {}
            MinorOutcome::Absent => {
                without += 1;
                if at_threshold {
                    report.fail(g, "no K8 minus 4 edges minor at the threshold");
                }
            }
            MinorOutcome::Unknown => report.budget_exhausted += 1,
        }
    }
    report.detail("n", n);
    report.detail("edges", m);
    report.detail("seed", seed);
    report.detail("trials", trials);
    report.detail("failures", report.counterexamples.len());
    report.detail("without_minor", without);
    report.detail("average_nodes", report.search_nodes as f64 / trials.max(1) as f64);
    Ok(report.finish(started))
}

/// Degeneracy and the elimination order (repeatedly remove a vertex of
/// minimum degree, lowest index first).
pub fn degeneracy(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| (deg[v], v)).expect("vertex left");
        d = d.max(deg[v]);
        gone[v] = true;
        order.push(v);
        for w in g.neighbors(v) {
            if !gone[w] {
                deg[w] -= 1;
            }
        }
    }
    (d, order)
}

/// A separation `G = G1 ∪ G2` with `G1 ∩ G2 = G[S]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorInstance {
    pub g: Graph,
    pub s: Vec<usize>,
    /// Vertices of `G1` outside `S`.
    pub side1: Vec<usize>,
    /// Vertices of `G2` outside `S`.
    pub side2: Vec<usize>,
}

/// Largest side handled exactly by [`contraction_gain`].
pub const MAX_GAIN_SIDE: usize = 16;

impl SeparatorInstance {
    /// `side1` is taken as given; everything outside `S ∪ side1` is side 2.
    pub fn new(g: Graph, s: Vec<usize>, side1: Vec<usize>) -> Result<SeparatorInstance, SearchError> {
        let n = g.n();
        let mut mark = vec![0u8; n];
        for &v in &s {
            g.check_vertex(v)?;
            mark[v] |= 1;
        }
        for &v in &side1 {
            g.check_vertex(v)?;
            mark[v] |= 2;
        }
        if mark.contains(&3) {
            return Err(SearchError::InvalidPattern("side 1 meets S".into()));
        }
        let side2: Vec<usize> = (0..n).filter(|&v| mark[v] == 0).collect();
        if side1.is_empty() || side2.is_empty() {
            return Err(SearchError::InvalidPattern("both sides must be nonempty".into()));
        }
        if side1.iter().any(|&a| side2.iter().any(|&b| g.has_edge(a, b))) {
            return Err(SearchError::InvalidPattern("S does not separate the sides".into()));
        }
        Ok(SeparatorInstance { g, s, side1, side2 })
    }

    pub fn side(&self, i: usize) -> &[usize] {
        if i == 1 {
            &self.side1
        } else {
            &self.side2
        }
    }

    /// `G_i` with `S` first: vertex `j < |S|` is `s[j]`.
    pub fn side_graph(&self, i: usize) -> Graph {
        let keep: Vec<usize> = self.s.iter().chain(self.side(i)).copied().collect();
        let mut h = Graph::empty(keep.len());
        for a in 0..keep.len() {
            for b in a + 1..keep.len() {
                if self.g.has_edge(keep[a], keep[b]) {
                    h.set_edge(a, b);
                }
            }
        }
        h
    }

    pub fn separator_edges(&self) -> usize {
        self.g.induced_subgraph(&self.s).0.edge_count()
    }

    /// Missing pairs of `G[S]` as index pairs into `s`.
    fn missing_pairs(&self) -> Vec<(usize, usize)> {
        let p = self.s.len();
        (0..p)
            .flat_map(|i| (i + 1..p).map(move |j| (i, j)))
            .filter(|&(i, j)| !self.g.has_edge(self.s[i], self.s[j]))
            .collect()
    }
}

/// Whether contracting inside side `i` can add all of `pairs` to `G[S]`:
/// a minor of `G[S] + pairs` rooted at `S` in `G_i`.
fn gain_achievable(inst: &SeparatorInstance, gi: &Graph, pairs: &[(usize, usize)]) -> Result<bool, SearchError> {
    let p = inst.s.len();
    let pattern = gi.induced_subgraph(&(0..p).collect::<Vec<_>>()).0.add_edges(pairs.iter().copied())?;
    let roots: Vec<Option<usize>> = (0..p).map(Some).collect();
    let (o, _) = find_rooted_minor_with(gi, &pattern, &roots, &SearchOptions::default())?;
    match o {
        MinorOutcome::Found(_) => Ok(true),
        MinorOutcome::Absent => Ok(false),
        MinorOutcome::Unknown => Err(SearchError::TooLarge { n: gi.n(), limit: MAX_GAIN_SIDE }),
    }
}

fn check_side(inst: &SeparatorInstance, side: usize) -> Result<(), SearchError> {
    let k = inst.side(side).len();
    if k > MAX_GAIN_SIDE {
        return Err(SearchError::TooLarge { n: k, limit: MAX_GAIN_SIDE });
    }
    Ok(())
}

/// `d_i`: the most missing pairs of `G[S]` that contracting connected sets
/// on side `i`, each meeting `S` in exactly one vertex, can add.
///
/// A set of pairs is addable exactly when `G_i` has a minor of `G[S]` plus
/// those pairs rooted at `S`; addable sets are closed under subsets, so the
/// search goes down from the largest size.
pub fn contraction_gain(inst: &SeparatorInstance, side: usize) -> Result<usize, SearchError> {
    check_side(inst, side)?;
    let gi = inst.side_graph(side);
    let missing = inst.missing_pairs();
    for size in (1..=missing.len()).rev() {
        for subset in subsets_of_size(missing.len(), size) {
            let pairs: Vec<(usize, usize)> = subset.iter().map(|&i| missing[i]).collect();
            if gain_achievable(inst, &gi, &pairs)? {
                return Ok(size);
            }
        }
    }
    Ok(0)
}

/// Whether `d_i >= k`.
pub fn contraction_gain_at_least(inst: &SeparatorInstance, side: usize, k: usize) -> Result<bool, SearchError> {
    if k == 0 {
        return Ok(true);
    }
    check_side(inst, side)?;
    let gi = inst.side_graph(side);
    let missing = inst.missing_pairs();
    for subset in subsets_of_size(missing.len(), k) {
        let pairs: Vec<(usize, usize)> = subset.iter().map(|&i| missing[i]).collect();
        if gain_achievable(inst, &gi, &pairs)? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..1 << n).filter(move |m| m.count_ones() as usize == k).map(|m| Ones(m).collect())
}

/// `e(G[S]) + d_1 >= 5` for a 4-separation with `|G_1| >= 6`.
pub fn jorgensen_holds(inst: &SeparatorInstance) -> Result<bool, SearchError> {
    let e = inst.separator_edges();
    Ok(e >= 5 || contraction_gain_at_least(inst, 1, 5 - e)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JorgensenSpec {
    /// Every 4-connected graph up to this order is checked.
    pub exhaustive_max_n: usize,
    /// Random instances per sampled order.
    pub samples: usize,
    pub sample_orders: Vec<usize>,
    pub seed: u64,
}

impl Default for JorgensenSpec {
    fn default() -> Self {
        JorgensenSpec { exhaustive_max_n: 9, samples: 1000, sample_orders: vec![10, 11], seed: 1 }
    }
}

/// Every 4-separation of `g` with a first side of at least six vertices
/// (counting `S`), one instance per ordered split of the components.
pub fn separations(g: &Graph) -> Vec<SeparatorInstance> {
    let n = g.n();
    let mut out = Vec::new();
    for s in subsets_of_size(n, 4) {
        let (rest, map) = g.delete_vertices(&s).expect("in range");
        let comps = rest.components();
        if comps.len() < 2 {
            continue;
        }
        let back: Vec<usize> = (0..n).filter(|&v| map[v].is_some()).collect();
        let r = comps.len();
        for mask in 1u64..(1 << r) - 1 {
            let side1: Vec<usize> = Ones(mask).flat_map(|c| comps[c].iter().map(|&v| back[v])).collect();
            if side1.len() + 4 >= 6 {
                out.push(SeparatorInstance::new(g.clone(), s.clone(), side1).expect("a separation"));
            }
        }
    }
    out
}

fn check_separations(g: &Graph, report: &mut VerificationReport) -> Result<u64, SearchError> {
    let mut count = 0;
    for inst in separations(g) {
        count += 1;
        if !jorgensen_holds(&inst)? {
            report.fail(g.clone(), format!("S = {:?}, side 1 = {:?}", inst.s, inst.side1));
        }
    }
    Ok(count)
}

/// Random 4-connected graph on `n` vertices with a 4-separation whose first
/// side has at least two vertices outside `S`.
pub fn random_separated_graph(n: usize, rng: &mut ChaCha8Rng) -> SeparatorInstance {
    use rand::Rng;
    loop {
        let a = rng.gen_range(2..=n - 5);
        // S = 0..4, side 1 = 4..4+a, side 2 = the rest
        let p = rng.gen_range(0.5..0.95);
        let side = |v: usize| if v < 4 { 0 } else if v < 4 + a { 1 } else { 2 };
        let mut edges = Vec::new();
        for j in 0..n {
            for i in 0..j {
                let (si, sj) = (side(i), side(j));
                if (si == 0 || sj == 0 || si == sj) && rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(n, edges).expect("in range");
        if is_k_connected(&g, 4) {
            return SeparatorInstance::new(g, (0..4).collect(), (4..4 + a).collect()).expect("a separation");
        }
    }
}

pub fn verify_jorgensen(spec: &JorgensenSpec) -> Result<VerificationReport, SearchError> {
    let started = Instant::now();
    let mut report = VerificationReport::new("jorgensen", crate::minor::DEFAULT_NODE_BUDGET);
    let filter = GraphFilter { min_connectivity: Some(4), ..Default::default() };
    let mut graphs = 0u64;
    for n in 7..=spec.exhaustive_max_n {
        let all = all_graphs(n, &filter)?;
        graphs += all.len() as u64;
        let parts: Vec<Result<VerificationReport, SearchError>> = all
            .par_iter()
            .map(|g| {
                let mut r = VerificationReport::new("jorgensen", 0);
                r.universe_size = check_separations(g, &mut r)?;
                Ok(r)
            })
            .collect();
        for part in parts {
            report.absorb(part?);
        }
    }
    report.detail("exhaustive_graphs", graphs);
    report.detail("exhaustive_separations", report.universe_size);
    let mut sampled = 0u64;
    for (oi, &n) in spec.sample_orders.iter().enumerate() {
        let parts: Vec<Result<(SeparatorInstance, bool), SearchError>> = (0..spec.samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(spec.seed, (oi * spec.samples + i) as u64);
                let inst = random_separated_graph(n, &mut rng);
                let ok = jorgensen_holds(&inst)?;
                Ok((inst, ok))
            })
            .collect();
        for part in parts {
            let (inst, ok) = part?;
            sampled += 1;
            if !ok {
                report.fail(inst.g.clone(), format!("S = {:?}, side 1 = {:?}", inst.s, inst.side1));
            }
        }
    }
    report.universe_size += sampled;
    report.detail("sampled_instances", sampled);
    report.detail("seed", spec.seed);
    report.detail("samples", spec.samples);
    report.detail("sample_orders", &spec.sample_orders);
    Ok(report.finish(started))
}

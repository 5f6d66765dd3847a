//! Exact and heuristic colouring, Kempe chains, and the
//! "seven colours or a `K_8` minus four edges minor" certifier.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::Ones;
use crate::clique::max_clique;
use crate::error::SearchError;
use crate::extremal::degeneracy;
use crate::graph::{Graph, WORD_LIMIT};
use crate::minor::{find_minor_with, MinorEmbedding, MinorOutcome, PatternSpec, SearchOptions};

/// Vertex colouring; serialises as the plain colour array.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Coloring {
        Coloring { colors }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    /// Number of distinct colours used.
    pub fn palette_size(&self) -> usize {
        let mut seen: Vec<usize> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n() && g.edges().all(|(u, v)| self.colors[u] != self.colors[v])
    }

    /// Renumbers colours to `0..palette_size` in order of first use.
    pub fn normalized(&self) -> Coloring {
        let mut map = std::collections::HashMap::new();
        let colors = self
            .colors
            .iter()
            .map(|c| {
                let next = map.len();
                *map.entry(*c).or_insert(next)
            })
            .collect();
        Coloring { colors }
    }
}

pub const DEFAULT_COLOR_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chromatic {
    Exact { chi: usize, coloring: Coloring },
    /// Budget ran out; `lower <= χ <= upper`, `best` uses `upper` colours.
    Unknown { lower: usize, upper: usize, best: Coloring },
}

impl Chromatic {
    pub fn exact(&self) -> Option<(usize, &Coloring)> {
        match self {
            Chromatic::Exact { chi, coloring } => Some((*chi, coloring)),
            Chromatic::Unknown { .. } => None,
        }
    }
}

pub fn exact_chromatic(g: &Graph) -> Result<Chromatic, SearchError> {
    exact_chromatic_with(g, DEFAULT_COLOR_BUDGET)
}

/// Branch and bound in DSATUR order: the clique number bounds from below,
/// each vertex tries the colours in use and at most one fresh colour.
pub fn exact_chromatic_with(g: &Graph, node_budget: u64) -> Result<Chromatic, SearchError> {
    let n = g.n();
    let Some(adj) = g.masks() else {
        return Err(SearchError::TooLarge { n, limit: WORD_LIMIT });
    };
    let clique = max_clique(g);
    let lower = clique.len().max(usize::from(n > 0));
    let mut best = dsatur(&adj);
    let mut best_k = palette(&best);
    if best_k > lower {
        let mut bb = Bnb { adj: &adj, colors: vec![usize::MAX; n], best_k, best: best.clone(), lower, nodes: 0, budget: node_budget };
        // Pre-colour a maximum clique: fixes symmetric choices.
        for (i, &v) in clique.iter().enumerate() {
            bb.colors[v] = i;
        }
        let complete = bb.run(clique.len(), n - clique.len());
        best = bb.best;
        best_k = bb.best_k;
        if !complete {
            return Ok(Chromatic::Unknown { lower, upper: best_k, best: Coloring::new(best) });
        }
    }
    Ok(Chromatic::Exact { chi: best_k, coloring: Coloring::new(best) })
}

fn palette(colors: &[usize]) -> usize {
    colors.iter().map(|&c| c + 1).max().unwrap_or(0)
}

fn dsatur(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut colors = vec![usize::MAX; n];
    let mut sat = vec![0u64; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == usize::MAX)
            .max_by_key(|&v| (sat[v].count_ones(), adj[v].count_ones(), usize::MAX - v))
            .expect("uncoloured vertex");
        let c = (!sat[v]).trailing_zeros() as usize;
        colors[v] = c;
        for w in Ones(adj[v]) {
            sat[w] |= 1 << c;
        }
    }
    colors
}

struct Bnb<'a> {
    adj: &'a [u64],
    colors: Vec<usize>,
    best_k: usize,
    best: Vec<usize>,
    lower: usize,
    nodes: u64,
    budget: u64,
}

impl Bnb<'_> {
    /// Returns false if the budget ran out.
    fn run(&mut self, used: usize, left: usize) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        if left == 0 {
            self.best_k = used;
            self.best = self.colors.clone();
            return true;
        }
        let n = self.adj.len();
        let mut pick = usize::MAX;
        let mut pick_key = (0, 0);
        let mut pick_sat = 0u64;
        for v in 0..n {
            if self.colors[v] != usize::MAX {
                continue;
            }
            let mut sat = 0u64;
            let mut free_deg = 0;
            for w in Ones(self.adj[v]) {
                match self.colors[w] {
                    usize::MAX => free_deg += 1,
                    c => sat |= 1 << c,
                }
            }
            let key = (sat.count_ones(), free_deg);
            if pick == usize::MAX || key > pick_key {
                (pick, pick_key, pick_sat) = (v, key, sat);
            }
        }
        let v = pick;
        for c in 0..=used {
            if c + 1 >= self.best_k {
                break;
            }
            if pick_sat >> c & 1 == 1 {
                continue;
            }
            self.colors[v] = c;
            let ok = self.run(used.max(c + 1), left - 1);
            self.colors[v] = usize::MAX;
            if !ok {
                return false;
            }
            if self.best_k <= self.lower {
                return true;
            }
        }
        true
    }
}

/// Greedy colouring in reverse degeneracy order; uses at most
/// `degeneracy + 1` colours.
pub fn greedy_degeneracy_coloring(g: &Graph) -> Coloring {
    let (_, order) = degeneracy(g);
    let mut colors = vec![usize::MAX; g.n()];
    for &v in order.iter().rev() {
        let mut taken: Vec<bool> = vec![false; g.degree(v) + 1];
        for w in g.neighbors(v) {
            if colors[w] < taken.len() {
                taken[colors[w]] = true;
            }
        }
        colors[v] = taken.iter().position(|t| !t).expect("a free colour");
    }
    Coloring::new(colors)
}

/// Swaps colours `a` and `b` on the `{a, b}`-Kempe chain through `start`.
pub fn kempe_swap(g: &Graph, coloring: &mut [usize], start: usize, a: usize, b: usize) {
    for v in kempe_chain(g, coloring, start, a, b, &[]) {
        coloring[v] = if coloring[v] == a { b } else { a };
    }
}

/// Vertices of the `{a, b}`-coloured component containing `start`, never
/// entering `blocked`.
fn kempe_chain(g: &Graph, coloring: &[usize], start: usize, a: usize, b: usize, blocked: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut out = vec![start];
    seen[start] = true;
    let mut q = VecDeque::from([start]);
    while let Some(x) = q.pop_front() {
        for y in g.neighbors(x) {
            if !seen[y] && (coloring[y] == a || coloring[y] == b) && !blocked.contains(&y) {
                seen[y] = true;
                out.push(y);
                q.push_back(y);
            }
        }
    }
    out
}

/// Input to [`kempe_paths`]: a colouring of `g` in which `x` and the
/// independent set `s ⊆ N(x)` share one colour (the colour of the vertex
/// obtained by contracting `s ∪ {x}`), proper everywhere else.
#[derive(Clone, Debug)]
pub struct KempeInstance {
    pub g: Graph,
    pub x: usize,
    pub s: Vec<usize>,
    pub missing: Vec<(usize, usize)>,
    pub coloring: Coloring,
    /// Colours available: `k - 1` for a `k`-critical host.
    pub palette: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KempePath {
    pub ends: (usize, usize),
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KempeOutcome {
    /// One path per missing pair, in input order.
    Paths(Vec<KempePath>),
    /// A proper colouring of `g` within the palette.
    ExtensionFound(Coloring),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KempeError {
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("{0} is not a neighbour of x")]
    NotInNeighborhood(usize),
    #[error("S is not independent")]
    SNotIndependent,
    #[error("pair {0:?} is not a missing edge of G[N(x) \\ S]")]
    NotMissing((usize, usize)),
    #[error("x and S must share one colour")]
    MergedColour,
    #[error("colouring is improper on edge {0:?}")]
    Improper((usize, usize)),
    #[error("colour {0} outside the palette")]
    OutsidePalette(usize),
    #[error("N(x) \\ S has {have} vertices; a palette of {palette} needs {need}")]
    NeighbourhoodSize { have: usize, palette: usize, need: usize },
}

impl KempeInstance {
    pub fn rest(&self) -> Vec<usize> {
        self.g.neighbors(self.x).filter(|v| !self.s.contains(v)).collect()
    }

    pub fn check(&self) -> Result<(), KempeError> {
        let g = &self.g;
        let n = g.n();
        let c = self.coloring.colors();
        if self.x >= n || c.len() != n {
            return Err(KempeError::OutOfRange(self.x));
        }
        for &v in &self.s {
            if v >= n {
                return Err(KempeError::OutOfRange(v));
            }
            if !g.has_edge(self.x, v) {
                return Err(KempeError::NotInNeighborhood(v));
            }
            if c[v] != c[self.x] {
                return Err(KempeError::MergedColour);
            }
        }
        if !g.is_independent(&self.s) {
            return Err(KempeError::SNotIndependent);
        }
        let rest = self.rest();
        for &(u, v) in &self.missing {
            if u == v || !rest.contains(&u) || !rest.contains(&v) || g.has_edge(u, v) {
                return Err(KempeError::NotMissing((u, v)));
            }
        }
        if let Some(&bad) = c.iter().find(|&&col| col >= self.palette) {
            return Err(KempeError::OutsidePalette(bad));
        }
        let merged: Vec<usize> = self.s.iter().copied().chain([self.x]).collect();
        for (u, v) in g.edges() {
            if c[u] == c[v] && !(merged.contains(&u) && merged.contains(&v)) {
                return Err(KempeError::Improper((u, v)));
            }
        }
        if rest.len() + 1 != self.palette {
            return Err(KempeError::NeighbourhoodSize { have: rest.len(), palette: self.palette, need: self.palette - 1 });
        }
        Ok(())
    }
}

/// The two branches of the Kempe-chain argument: either some colour can be
/// freed for `x` (possibly after one chain swap), or every missing pair
/// `uv` is joined by a path inside the `{c(u), c(v)}`-coloured subgraph,
/// with interior outside `N[x]`.
pub fn kempe_paths(inst: &KempeInstance) -> Result<KempeOutcome, KempeError> {
    inst.check()?;
    let g = &inst.g;
    let mut c = inst.coloring.colors().to_vec();
    let merged = c[inst.x];
    let rest = inst.rest();
    let mut present = vec![false; inst.palette];
    for &v in &rest {
        present[c[v]] = true;
    }
    if let Some(free) = (0..inst.palette).find(|&col| col != merged && !present[col]) {
        c[inst.x] = free;
        return Ok(KempeOutcome::ExtensionFound(Coloring::new(c)));
    }
    let blocked: Vec<usize> = inst.s.iter().copied().chain([inst.x]).collect();
    let mut paths = Vec::with_capacity(inst.missing.len());
    for &(u, v) in &inst.missing {
        let (a, b) = (c[u], c[v]);
        match two_coloured_path(g, &c, u, v, a, b) {
            Some(p) => paths.push(KempePath { ends: (u, v), vertices: p }),
            None => {
                // u's chain misses v: swapping it frees colour a on N(x) \ S
                for w in kempe_chain(g, &c, u, a, b, &blocked) {
                    c[w] = if c[w] == a { b } else { a };
                }
                c[inst.x] = a;
                return Ok(KempeOutcome::ExtensionFound(Coloring::new(c)));
            }
        }
    }
    Ok(KempeOutcome::Paths(paths))
}

/// Shortest `u`–`v` path using only colours `a`, `b` (hence induced in
/// that subgraph).
fn two_coloured_path(g: &Graph, c: &[usize], u: usize, v: usize, a: usize, b: usize) -> Option<Vec<usize>> {
    let mut pred = vec![usize::MAX; g.n()];
    pred[u] = u;
    let mut q = VecDeque::from([u]);
    while let Some(x) = q.pop_front() {
        if x == v {
            let mut path = vec![v];
            let mut y = v;
            while y != u {
                y = pred[y];
                path.push(y);
            }
            path.reverse();
            return Some(path);
        }
        for y in g.neighbors(x) {
            if pred[y] == usize::MAX && (c[y] == a || c[y] == b) {
                pred[y] = x;
                q.push_back(y);
            }
        }
    }
    None
}

/// Heuristic palette reduction: empty the smallest colour class by moving
/// each of its vertices to another colour, directly or after swapping the
/// Kempe chains through its neighbours of that colour. Stops after a pass
/// without progress.
pub fn kempe_reduce(g: &Graph, coloring: &Coloring, target: usize) -> Coloring {
    let mut c = coloring.normalized().colors().to_vec();
    loop {
        let k = palette(&c);
        if k <= target {
            break;
        }
        let mut sizes = vec![0usize; k];
        for &col in &c {
            sizes[col] += 1;
        }
        let mut progress = false;
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&col| (sizes[col], col));
        for &victim in &order {
            let mut trial = c.clone();
            let members: Vec<usize> = (0..g.n()).filter(|&v| trial[v] == victim).collect();
            if members.iter().all(|&v| recolour_away(g, &mut trial, v, victim, k)) {
                // compact: move the last colour into the emptied slot
                for col in trial.iter_mut() {
                    if *col == k - 1 {
                        *col = victim;
                    }
                }
                c = trial;
                progress = true;
                break;
            }
        }
        if !progress {
            break;
        }
    }
    Coloring::new(c)
}

/// Tries to give `v` a colour other than `avoid` below `k`.
fn recolour_away(g: &Graph, c: &mut [usize], v: usize, avoid: usize, k: usize) -> bool {
    for d in (0..k).filter(|&d| d != avoid) {
        let blockers: Vec<usize> = g.neighbors(v).filter(|&w| c[w] == d).collect();
        if blockers.is_empty() {
            c[v] = d;
            return true;
        }
        for e in (0..k).filter(|&e| e != avoid && e != d) {
            let mut chain: Vec<usize> = Vec::new();
            for &w in &blockers {
                if !chain.contains(&w) {
                    chain.extend(kempe_chain(g, c, w, d, e, &[v]));
                }
            }
            if chain.iter().any(|&w| g.has_edge(v, w) && c[w] == e) {
                continue;
            }
            for &w in &chain {
                c[w] = if c[w] == d { e } else { d };
            }
            c[v] = d;
            return true;
        }
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unresolved {
    /// χ ≥ 8 was established but the exhaustive minor search failed: this
    /// would contradict the colouring theorem.
    NoMinorFound,
    /// The minor search ran out of budget.
    Budget,
    /// The heuristics found neither a 7-colouring nor a minor.
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dichotomy {
    Colored(Coloring),
    Minor(MinorEmbedding),
    Unresolved(Unresolved),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DichotomyMode {
    /// Exact below `exact_limit` vertices, heuristic above.
    Auto,
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DichotomyOptions {
    pub mode: DichotomyMode,
    pub exact_limit: usize,
    pub node_budget: u64,
    pub color_budget: u64,
}

impl Default for DichotomyOptions {
    fn default() -> Self {
        DichotomyOptions {
            mode: DichotomyMode::Auto,
            exact_limit: 16,
            node_budget: crate::minor::DEFAULT_NODE_BUDGET,
            color_budget: DEFAULT_COLOR_BUDGET,
        }
    }
}

pub fn seven_color_or_minor(g: &Graph) -> Result<Dichotomy, SearchError> {
    seven_color_or_minor_with(g, &DichotomyOptions::default())
}

/// A colouring with at most seven colours, or a model of some graph in
/// `K_8` minus four edges.
pub fn seven_color_or_minor_with(g: &Graph, opts: &DichotomyOptions) -> Result<Dichotomy, SearchError> {
    let exact = match opts.mode {
        DichotomyMode::Exact => {
            if g.n() > opts.exact_limit {
                return Err(SearchError::TooLarge { n: g.n(), limit: opts.exact_limit });
            }
            true
        }
        DichotomyMode::Heuristic => false,
        DichotomyMode::Auto => g.n() <= opts.exact_limit,
    };
    let pattern = PatternSpec::Family { t: 8, s: 4 };
    let search = SearchOptions { node_budget: opts.node_budget };
    if exact {
        let chi = exact_chromatic_with(g, opts.color_budget)?;
        let Chromatic::Exact { chi, coloring } = chi else {
            return Ok(Dichotomy::Unresolved(Unresolved::Budget));
        };
        if chi <= 7 {
            return Ok(Dichotomy::Colored(coloring));
        }
        return Ok(match find_minor_with(g, &pattern, &search)?.0 {
            MinorOutcome::Found(e) => Dichotomy::Minor(e),
            MinorOutcome::Absent => Dichotomy::Unresolved(Unresolved::NoMinorFound),
            MinorOutcome::Unknown => Dichotomy::Unresolved(Unresolved::Budget),
        });
    }
    let greedy = greedy_degeneracy_coloring(g);
    if greedy.palette_size() <= 7 {
        return Ok(Dichotomy::Colored(greedy));
    }
    let reduced = kempe_reduce(g, &greedy, 7);
    if reduced.palette_size() <= 7 {
        return Ok(Dichotomy::Colored(reduced));
    }
    if g.n() > WORD_LIMIT {
        return Ok(Dichotomy::Unresolved(Unresolved::Budget));
    }
    Ok(match find_minor_with(g, &pattern, &search)?.0 {
        MinorOutcome::Found(e) => Dichotomy::Minor(e),
        MinorOutcome::Absent => Dichotomy::Unresolved(Unresolved::Heuristic),
        MinorOutcome::Unknown => Dichotomy::Unresolved(Unresolved::Budget),
    })
}

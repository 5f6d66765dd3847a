//! Canonical labelling of (vertex-coloured) graphs.
//!
//! The search is the usual individualise-and-refine tree: start from the
//! colour partition, refine to an equitable partition, then branch on the
//! vertices of the first non-singleton cell. Each discrete leaf yields a
//! relabelled adjacency matrix; the canonical form is the largest one.
//!
//! Two prunings keep the tree small on symmetric graphs:
//! * a leaf identical to the first leaf gives an automorphism fixing the
//!   common prefix of both paths, so the search jumps straight back to that
//!   common ancestor;
//! * at every node, children in the same orbit of the group generated by
//!   the known automorphisms that fix the node's prefix are skipped.
//!
//! Both only discard subtrees that are automorphic images of subtrees
//! already explored, so the maximum over the remaining leaves is the
//! maximum over all leaves.

use std::cmp::Ordering;

use crate::bits;
use crate::graph::Graph;

/// Result of a canonical labelling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// Automorphisms discovered during the search (as vertex maps).
    pub automorphisms: Vec<Vec<usize>>,
    /// Canonical key: vertex count, colour sequence and relabelled rows.
    pub key: Vec<u8>,
}

impl Labeling {
    /// `position[v]`: canonical position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Canonical form of an uncoloured graph: equal iff the graphs are
/// isomorphic.
pub fn canonical_form(g: &Graph) -> Vec<u8> {
    canonical_labeling(g, &vec![0; g.n()]).key
}

/// Canonical form of a vertex-coloured graph; isomorphisms must preserve
/// colours.
pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> Vec<u8> {
    canonical_labeling(g, colors).key
}

/// The canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    let lab = canonical_labeling(g, &vec![0; g.n()]);
    g.permute(&lab.positions())
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

pub fn canonical_labeling(g: &Graph, colors: &[u32]) -> Labeling {
    assert_eq!(colors.len(), g.n());
    let n = g.n();
    let mut search = Search {
        g,
        words: g.words(),
        first: None,
        best: None,
        autos: Vec::new(),
    };
    // Initial cells: colour classes in increasing colour order.
    let mut by_colour: Vec<(u32, usize)> = colors.iter().copied().zip(0..n).collect();
    by_colour.sort_unstable();
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (i, &(c, v)) in by_colour.iter().enumerate() {
        if i == 0 || by_colour[i - 1].0 != c {
            cells.push(Vec::new());
        }
        cells.last_mut().expect("cell").push(v);
    }
    search.refine(&mut cells);
    let mut prefix = Vec::new();
    search.descend(cells, &mut prefix);
    let (order, rows) = search.best.take().unwrap_or_default();
    let mut key = Vec::with_capacity(4 + 4 * n + rows.len() * 8);
    key.extend((n as u32).to_be_bytes());
    for &v in &order {
        key.extend(colors[v].to_be_bytes());
    }
    for w in &rows {
        key.extend(w.to_be_bytes());
    }
    Labeling { order, automorphisms: search.autos, key }
}

struct Search<'a> {
    g: &'a Graph,
    words: usize,
    /// First leaf: (order, relabelled rows, individualised path).
    first: Option<(Vec<usize>, Vec<u64>, Vec<usize>)>,
    best: Option<(Vec<usize>, Vec<u64>)>,
    autos: Vec<Vec<usize>>,
}

enum Outcome {
    Continue,
    /// Abandon everything below the given depth.
    JumpTo(usize),
}

impl Search<'_> {
    /// Splits cells by neighbour counts into each cell in turn until the
    /// partition is equitable. Sub-cells are ordered by increasing count, so
    /// the result depends only on the structure, not on vertex names.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        let g = self.g;
        let mut wmask = vec![0u64; self.words];
        loop {
            let mut changed = false;
            let mut wi = 0;
            while wi < cells.len() {
                wmask.iter_mut().for_each(|w| *w = 0);
                for &v in &cells[wi] {
                    bits::set(&mut wmask, v);
                }
                let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len() + 2);
                for cell in cells.drain(..) {
                    if cell.len() == 1 {
                        next.push(cell);
                        continue;
                    }
                    let mut counted: Vec<(usize, usize)> = cell
                        .iter()
                        .map(|&v| {
                            let c = g.row(v).iter().zip(&wmask).map(|(a, b)| (a & b).count_ones() as usize).sum();
                            (c, v)
                        })
                        .collect();
                    if counted.iter().all(|&(c, _)| c == counted[0].0) {
                        next.push(cell);
                        continue;
                    }
                    changed = true;
                    counted.sort_unstable();
                    let mut start = 0;
                    for i in 1..=counted.len() {
                        if i == counted.len() || counted[i].0 != counted[start].0 {
                            next.push(counted[start..i].iter().map(|&(_, v)| v).collect());
                            start = i;
                        }
                    }
                }
                *cells = next;
                wi += 1;
            }
            if !changed {
                break;
            }
        }
    }

    fn leaf_rows(&self, order: &[usize]) -> Vec<u64> {
        let n = order.len();
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut rows = vec![0u64; n * self.words];
        for (i, &v) in order.iter().enumerate() {
            let row = &mut rows[i * self.words..(i + 1) * self.words];
            for w in self.g.neighbors(v) {
                bits::set(row, pos[w]);
            }
        }
        rows
    }

    fn descend(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) -> Outcome {
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(cells.into_iter().map(|c| c[0]).collect(), prefix);
        };
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !tried.is_empty() && self.same_orbit_as_tried(prefix, v, &tried) {
                continue;
            }
            tried.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&w| w != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            self.refine(&mut child);
            prefix.push(v);
            let out = self.descend(child, prefix);
            prefix.pop();
            if let Outcome::JumpTo(d) = out {
                if d < prefix.len() {
                    return out;
                }
            }
        }
        Outcome::Continue
    }

    fn leaf(&mut self, order: Vec<usize>, prefix: &[usize]) -> Outcome {
        let rows = self.leaf_rows(&order);
        let Some((first_order, first_rows, first_path)) = &self.first else {
            self.first = Some((order.clone(), rows.clone(), prefix.to_vec()));
            self.best = Some((order, rows));
            return Outcome::Continue;
        };
        if *first_rows == rows {
            let gamma = compose_map(first_order, &order);
            let common = first_path.iter().zip(prefix).take_while(|(a, b)| a == b).count();
            self.autos.push(gamma);
            return Outcome::JumpTo(common);
        }
        let (best_order, best_rows) = self.best.as_ref().expect("best set with first");
        match rows.cmp(best_rows) {
            Ordering::Greater => self.best = Some((order, rows)),
            Ordering::Equal => {
                let gamma = compose_map(best_order, &order);
                self.autos.push(gamma);
            }
            Ordering::Less => {}
        }
        Outcome::Continue
    }

    /// Whether `v` lies in the orbit of some tried vertex under the group
    /// generated by known automorphisms that fix `prefix` pointwise.
    fn same_orbit_as_tried(&self, prefix: &[usize], v: usize, tried: &[usize]) -> bool {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for a in &self.autos {
            if prefix.iter().all(|&x| a[x] == x) {
                any = true;
                for (x, &ax) in a.iter().enumerate().take(n) {
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, ax));
                    if rx != ry {
                        parent[rx] = ry;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }
}

/// The vertex map sending `from[i]` to `to[i]`.
fn compose_map(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, complete_multipartite, cycle, path, petersen, star};
    use std::collections::HashSet;

    fn shuffled(g: &Graph, seed: u64) -> Graph {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rng);
        g.permute(&perm)
    }

    /// Isomorphism by trying all permutations.
    fn brute_isomorphic(a: &Graph, b: &Graph) -> bool {
        fn rec(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let i = map.len();
            if i == a.n() {
                return true;
            }
            for x in 0..b.n() {
                if used[x] || a.degree(i) != b.degree(x) {
                    continue;
                }
                if (0..i).all(|j| a.has_edge(i, j) == b.has_edge(x, map[j])) {
                    used[x] = true;
                    map.push(x);
                    if rec(a, b, map, used) {
                        return true;
                    }
                    map.pop();
                    used[x] = false;
                }
            }
            false
        }
        a.n() == b.n() && a.edge_count() == b.edge_count() && rec(a, b, &mut Vec::new(), &mut vec![false; b.n()])
    }

    fn all_labeled(n: usize) -> Vec<Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u64..1 << pairs.len())
            .map(|m| Graph::from_edges(n, pairs.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, &e)| e)).unwrap())
            .collect()
    }

    /// Class count by pairwise brute-force isomorphism rejection.
    fn brute_class_count(n: usize) -> usize {
        let mut reps: Vec<Graph> = Vec::new();
        for g in all_labeled(n) {
            if !reps.iter().any(|r| brute_isomorphic(r, &g)) {
                reps.push(g);
            }
        }
        reps.len()
    }

    #[test]
    fn relabelled_cycle_has_same_form() {
        let c = canonical_form(&cycle(5));
        for s in 0..20 {
            assert_eq!(canonical_form(&shuffled(&cycle(5), s)), c);
        }
    }

    #[test]
    fn path_and_star_differ() {
        assert_ne!(canonical_form(&path(4)), canonical_form(&star(3)));
    }

    #[test]
    fn class_counts_match_brute_force_oracle() {
        // oracle values computed by pairwise isomorphism rejection
        for n in 1..=5 {
            let oracle = brute_class_count(n);
            let forms: HashSet<Vec<u8>> = all_labeled(n).iter().map(canonical_form).collect();
            assert_eq!(forms.len(), oracle, "n = {n}");
        }
        assert_eq!(brute_class_count(5), 34);
    }

    #[test]
    fn six_vertex_classes() {
        let forms: HashSet<Vec<u8>> = all_labeled(6).iter().map(canonical_form).collect();
        assert_eq!(forms.len(), 156);
    }

    #[test]
    fn symmetric_graphs_are_stable() {
        for g in [petersen(), complete(9), Graph::empty(9), complete_multipartite(&[3, 3, 3]), cycle(12)] {
            let c = canonical_form(&g);
            for s in 0..5 {
                assert_eq!(canonical_form(&shuffled(&g, s)), c);
            }
        }
    }

    #[test]
    fn random_pairs_agree_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..400 {
            let n = rng.gen_range(2..=8);
            let m = rng.gen_range(0..=n * (n - 1) / 2);
            let mk = |rng: &mut rand_chacha::ChaCha8Rng| {
                use rand::seq::SliceRandom;
                let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
                pairs.shuffle(rng);
                Graph::from_edges(n, pairs.into_iter().take(m)).unwrap()
            };
            let (a, b) = (mk(&mut rng), mk(&mut rng));
            assert_eq!(are_isomorphic(&a, &b), brute_isomorphic(&a, &b), "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn colours_are_respected() {
        let p = path(3);
        // endpoint coloured vs centre coloured
        let a = canonical_form_colored(&p, &[1, 0, 0]);
        let b = canonical_form_colored(&p, &[0, 0, 1]);
        let c = canonical_form_colored(&p, &[0, 1, 0]);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn automorphisms_are_genuine() {
        let g = petersen();
        let lab = canonical_labeling(&g, &[0; 10]);
        assert!(!lab.automorphisms.is_empty());
        for a in &lab.automorphisms {
            assert!(g.edges().all(|(u, v)| g.has_edge(a[u], a[v])));
        }
        assert_eq!(canonical_graph(&g), canonical_graph(&shuffled(&g, 1)));
    }

    #[test]
    fn larger_than_one_word() {
        let g = cycle(70);
        assert_eq!(canonical_form(&g), canonical_form(&shuffled(&g, 3)));
        assert_ne!(canonical_form(&g), canonical_form(&cycle(35).disjoint_union(&cycle(35))));
    }
}

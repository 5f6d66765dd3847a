//! Vertex connectivity via Menger's theorem.
//!
//! Each vertex `v` is split into `v_in -> v_out` with capacity one; every
//! edge `uv` becomes the arcs `u_out -> v_in` and `v_out -> u_in` of
//! unbounded capacity. The maximum `s_out -> t_in` flow is the number of
//! internally disjoint `s`–`t` paths.

use std::collections::VecDeque;

use crate::graph::Graph;

struct Flow {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<i32>,
}

const NIL: usize = usize::MAX;

impl Flow {
    fn new(nodes: usize) -> Flow {
        Flow { head: vec![NIL; nodes], next: Vec::new(), to: Vec::new(), cap: Vec::new() }
    }

    fn arc(&mut self, a: usize, b: usize, c: i32) {
        for (x, y, c) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(c);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    /// Augments along BFS paths until `limit` units flow or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow = 0;
        let mut pred = vec![NIL; self.head.len()];
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = NIL);
            let mut q = VecDeque::from([s]);
            let mut reached = false;
            while let Some(x) = q.pop_front() {
                let mut e = self.head[x];
                while e != NIL {
                    let y = self.to[e];
                    if self.cap[e] > 0 && pred[y] == NIL && y != s {
                        pred[y] = e;
                        if y == t {
                            reached = true;
                            break;
                        }
                        q.push_back(y);
                    }
                    e = self.next[e];
                }
                if reached {
                    break;
                }
            }
            if !reached {
                break;
            }
            let mut y = t;
            while y != s {
                let e = pred[y];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                y = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }
}

fn split_network(g: &Graph) -> Flow {
    let n = g.n();
    let mut f = Flow::new(2 * n);
    for v in 0..n {
        f.arc(2 * v, 2 * v + 1, 1);
    }
    for (u, v) in g.edges() {
        f.arc(2 * u + 1, 2 * v, n as i32);
        f.arc(2 * v + 1, 2 * u, n as i32);
    }
    f
}

/// Maximum number of internally vertex-disjoint `s`–`t` paths, for distinct
/// non-adjacent `s`, `t`, capped at `limit`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    assert!(s != t && !g.has_edge(s, t), "local connectivity needs distinct non-adjacent ends");
    split_network(g).max_flow(2 * s + 1, 2 * t, limit)
}

/// `κ(G)`: the minimum size of a vertex set whose removal disconnects `G`,
/// with `κ(K_n) = n - 1`. A disconnected graph has connectivity 0.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    let mut best = n - 1;
    // A minimum separator misses one of the first best+1 vertices, and that
    // vertex is separated from some non-neighbour.
    let mut i = 0;
    while i <= best && i < n {
        for w in 0..n {
            if w != i && !g.has_edge(i, w) {
                best = best.min(local_connectivity(g, i, w, best));
            }
        }
        i += 1;
    }
    best
}

/// Whether `κ(G) >= k`.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    k == 0 || vertex_connectivity(g) >= k
}

/// Whether removing `set` leaves a disconnected graph (with at least two
/// remaining vertices in different components).
pub fn separates(g: &Graph, set: &[usize]) -> bool {
    let (h, _) = g.delete_vertices(set).expect("vertices in range");
    h.n() >= 2 && !h.is_connected()
}

mod common;

use common::{gnp, rng};
use minorforge::graph::complete;
use minorforge::minor::verify_rooted_embedding;
use minorforge::{find_minor, find_rooted_minor, verify_embedding, Graph, MinorOutcome, PatternSpec};
use rand::Rng;

fn random_pattern(r: &mut impl Rng) -> PatternSpec {
    if r.gen_bool(0.5) {
        let t = r.gen_range(3..=7);
        let s = r.gen_range(0..=4.min(t * (t - 1) / 2));
        PatternSpec::Family { t, s }
    } else {
        let n = r.gen_range(2..=6);
        let mut edges = Vec::new();
        for j in 0..n {
            for i in 0..j {
                if r.gen_bool(0.6) {
                    edges.push((i, j));
                }
            }
        }
        PatternSpec::Explicit(Graph::from_edges(n, edges).unwrap())
    }
}

#[test]
fn certificates_are_sound() {
    let mut found = 0;
    for i in 0..1000 {
        let mut r = rng(11, i);
        let n = r.gen_range(4..=11);
        let g = gnp(n, r.gen_range(0.2..0.9), &mut r);
        let p = random_pattern(&mut r);
        if let MinorOutcome::Found(emb) = find_minor(&g, &p).unwrap() {
            found += 1;
            assert!(verify_embedding(&g, &p, &emb), "{g:?} {p}");
        }
    }
    assert!(found > 200, "only {found} positive instances");
}

#[test]
fn adding_an_edge_keeps_a_minor() {
    let mut checked = 0;
    for i in 0..500 {
        let mut r = rng(12, i);
        let n = r.gen_range(5..=10);
        let g = gnp(n, r.gen_range(0.3..0.8), &mut r);
        let p = random_pattern(&mut r);
        if !find_minor(&g, &p).unwrap().is_found() {
            continue;
        }
        let missing: Vec<(usize, usize)> = g.missing_edges().collect();
        if missing.is_empty() {
            continue;
        }
        let e = missing[r.gen_range(0..missing.len())];
        let h = g.add_edges([e]).unwrap();
        assert!(find_minor(&h, &p).unwrap().is_found(), "{g:?} + {e:?} {p}");
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn contracting_branch_sets_gives_the_pattern() {
    for i in 0..300 {
        let mut r = rng(13, i);
        let n = r.gen_range(6..=11);
        let g = gnp(n, r.gen_range(0.4..0.9), &mut r);
        let t = r.gen_range(3..=7);
        let s = r.gen_range(0..=4.min(t * (t - 1) / 2));
        if let MinorOutcome::Found(emb) = find_minor(&g, &PatternSpec::Family { t, s }).unwrap() {
            let q = emb.quotient(&g);
            assert_eq!(q.n(), t);
            assert!(q.edge_count() + s >= t * (t - 1) / 2);
            // contracting edge by edge inside each branch set agrees
            let mut h = g.clone();
            let mut label: Vec<usize> = (0..n).collect();
            for set in &emb.branch_sets {
                loop {
                    let pairs: Vec<(usize, usize)> =
                        set.iter().flat_map(|&x| set.iter().map(|&y| (label[x], label[y])).collect::<Vec<_>>()).collect();
                    let Some((a, b)) = pairs.into_iter().find(|&(a, b)| a < b && h.has_edge(a, b)) else {
                        break;
                    };
                    h = h.contract_edge(a, b).unwrap();
                    for l in label.iter_mut() {
                        if *l == b {
                            *l = a;
                        } else if *l > b {
                            *l -= 1;
                        }
                    }
                }
                assert!(set.iter().all(|&v| label[v] == label[set[0]]), "branch set connected");
            }
            let reps: Vec<usize> = emb.branch_sets.iter().map(|b| label[b[0]]).collect();
            let (sub, _) = h.induced_subgraph(&reps);
            assert_eq!(sub.edge_count(), q.edge_count());
            assert!(sub.edge_count() + s >= t * (t - 1) / 2);
        }
    }
}

#[test]
fn rooted_certificates_are_sound() {
    for i in 0..300 {
        let mut r = rng(14, i);
        let n = r.gen_range(5..=10);
        let g = gnp(n, r.gen_range(0.3..0.9), &mut r);
        let k = r.gen_range(2..=4);
        let h = complete(k);
        let mut roots: Vec<Option<usize>> = vec![None; k];
        let mut used = Vec::new();
        for slot in roots.iter_mut() {
            if r.gen_bool(0.6) {
                let v = r.gen_range(0..n);
                if !used.contains(&v) {
                    used.push(v);
                    *slot = Some(v);
                }
            }
        }
        if let MinorOutcome::Found(emb) = find_rooted_minor(&g, &h, &roots).unwrap() {
            assert!(verify_rooted_embedding(&g, &h, &roots, &emb));
        }
    }
}

#[test]
fn k_minus_family_on_complete_hosts() {
    for t in 3..=8 {
        for s in 0..=4.min(t * (t - 1) / 2) {
            assert!(find_minor(&complete(t), &PatternSpec::Family { t, s }).unwrap().is_found());
            if t > 3 {
                assert!(!find_minor(&complete(t - 1), &PatternSpec::Family { t, s }).unwrap().is_found());
            }
        }
    }
}

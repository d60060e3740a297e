use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::Violation;

/// (x, N) covering a base set: N consists of neighbours of x, the base is
/// disjoint from N ∪ {x}, and every base vertex misses x but meets N.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCert {
    pub apex: usize,
    pub n_set: BTreeSet<usize>,
    pub base: BTreeSet<usize>,
}

/// Family of covers of a common base with pairwise independence between
/// apex+N blocks; `stable` additionally forbids edges between distinct N's.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulticoverCert {
    pub covers: Vec<(usize, BTreeSet<usize>)>,
    pub base: BTreeSet<usize>,
    pub stable: bool,
}

fn in_range(g: &Graph, vs: impl IntoIterator<Item = usize>, out: &mut Vec<Violation>) -> bool {
    for v in vs {
        if v >= g.n() {
            out.push(Violation::new("vertex out of range", &[v]));
            return false;
        }
    }
    true
}

fn check_cover(g: &Graph, apex: usize, n_set: &BTreeSet<usize>, base: &BTreeSet<usize>, out: &mut Vec<Violation>) {
    for &u in n_set {
        if !g.has_edge(apex, u) {
            out.push(Violation::new("N contains a non-neighbour of the apex", &[apex, u]));
        }
        if base.contains(&u) {
            out.push(Violation::new("base meets N", &[u]));
        }
    }
    if base.contains(&apex) {
        out.push(Violation::new("base contains the apex", &[apex]));
    }
    for &c in base {
        if g.has_edge(apex, c) {
            out.push(Violation::new("base vertex adjacent to the apex", &[apex, c]));
        }
        if !g.neighbors(c).iter().any(|w| n_set.contains(w)) {
            out.push(Violation::new("base vertex without a neighbour in N", &[c]));
        }
    }
}

pub fn verify_cover(g: &Graph, c: &CoverCert) -> Vec<Violation> {
    let mut out = Vec::new();
    let all = std::iter::once(c.apex).chain(c.n_set.iter().copied()).chain(c.base.iter().copied());
    if !in_range(g, all, &mut out) {
        return out;
    }
    check_cover(g, c.apex, &c.n_set, &c.base, &mut out);
    out
}

pub fn verify_multicover(g: &Graph, m: &MulticoverCert) -> Vec<Violation> {
    let mut out = Vec::new();
    let all = m
        .covers
        .iter()
        .flat_map(|(x, n)| std::iter::once(*x).chain(n.iter().copied()))
        .chain(m.base.iter().copied());
    if !in_range(g, all, &mut out) {
        return out;
    }
    for (x, n) in &m.covers {
        check_cover(g, *x, n, &m.base, &mut out);
    }
    for (i, (x, n)) in m.covers.iter().enumerate() {
        for (j, (x2, n2)) in m.covers.iter().enumerate() {
            if i == j {
                continue;
            }
            if x == x2 {
                out.push(Violation::new("apex repeated", &[*x]));
                continue;
            }
            if g.has_edge(*x, *x2) {
                out.push(Violation::new("apices adjacent", &[*x, *x2]));
            }
            if n.contains(x2) {
                out.push(Violation::new("apex inside another N", &[*x2, *x]));
            }
            for &u in n {
                if g.has_edge(*x2, u) {
                    out.push(Violation::new("apex with a neighbour in another N", &[*x2, u]));
                }
            }
            if i < j {
                if n.intersection(n2).next().is_some() {
                    out.push(Violation::new("N sets not disjoint", &[*x, *x2]));
                }
                if m.stable {
                    for &u in n {
                        for &v in n2 {
                            if g.has_edge(u, v) {
                                out.push(Violation::new("edge between N sets", &[u, v]));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn star_cover() -> (Graph, CoverCert) {
        // apex 0, N = {1,2}, base = {3,4}: 3-1, 4-2
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (2, 4)]).unwrap();
        let c = CoverCert {
            apex: 0,
            n_set: [1, 2].into_iter().collect(),
            base: [3, 4].into_iter().collect(),
        };
        (g, c)
    }

    #[test]
    fn valid_cover() {
        let (g, c) = star_cover();
        assert_eq!(verify_cover(&g, &c), vec![]);
    }

    #[test]
    fn uncovered_base_vertex() {
        let (mut _g, mut c) = star_cover();
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 3), (2, 4)]).unwrap();
        c.base.insert(5);
        let viols = verify_cover(&g, &c);
        assert!(viols.iter().any(|v| v.rule == "base vertex without a neighbour in N"));
    }

    #[test]
    fn apex_adjacent_to_base() {
        let (g0, c) = star_cover();
        let mut edges = g0.edges();
        edges.push((0, 3));
        let g = Graph::from_edges(5, &edges).unwrap();
        assert!(verify_cover(&g, &c)
            .iter()
            .any(|v| v.rule == "base vertex adjacent to the apex"));
    }

    fn twin_multicover() -> (Graph, MulticoverCert) {
        // base {4,5}; apex 0 with N {2}, apex 1 with N {3}
        let g = Graph::from_edges(
            6,
            &[(0, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5)],
        )
        .unwrap();
        let m = MulticoverCert {
            covers: vec![
                (0, [2].into_iter().collect()),
                (1, [3].into_iter().collect()),
            ],
            base: [4, 5].into_iter().collect(),
            stable: true,
        };
        (g, m)
    }

    #[test]
    fn valid_stable_multicover() {
        let (g, m) = twin_multicover();
        assert_eq!(verify_multicover(&g, &m), vec![]);
    }

    #[test]
    fn edge_between_n_sets_breaks_stability_only() {
        let (g0, m) = twin_multicover();
        let mut edges = g0.edges();
        edges.push((2, 3));
        let g = Graph::from_edges(6, &edges).unwrap();
        let viols = verify_multicover(&g, &m);
        assert_eq!(viols, vec![Violation::new("edge between N sets", &[2, 3])]);
        let mut loose = m.clone();
        loose.stable = false;
        assert_eq!(verify_multicover(&g, &loose), vec![]);
    }

    #[test]
    fn apex_seeing_other_n_detected() {
        let (g0, m) = twin_multicover();
        let mut edges = g0.edges();
        edges.push((0, 3));
        let g = Graph::from_edges(6, &edges).unwrap();
        assert!(verify_multicover(&g, &m)
            .iter()
            .any(|v| v.rule == "apex with a neighbour in another N"));
    }
}

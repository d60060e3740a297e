use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::Violation;

/// Layered vertex partition: singleton head, parent edges into the previous
/// level, no level-skipping edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Levelling {
    pub levels: Vec<BTreeSet<usize>>,
}

impl Levelling {
    pub fn new(levels: Vec<BTreeSet<usize>>) -> Levelling {
        Levelling { levels }
    }

    pub fn head(&self) -> Option<usize> {
        self.levels.first().and_then(|l| l.iter().next().copied())
    }

    pub fn base(&self) -> Option<&BTreeSet<usize>> {
        self.levels.last()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.levels.iter().flatten().copied().collect()
    }

    /// BFS layers from `root`, truncated at level `k`.
    pub fn bfs(g: &Graph, root: usize, k: usize) -> Levelling {
        let dist = g.bfs_distances(root);
        let levels = (0..=k)
            .map(|i| g.vertices().filter(|&v| dist[v] == i).collect())
            .collect();
        Levelling { levels }
    }
}

pub(super) fn check_levels(
    g: &Graph,
    levels: &[BTreeSet<usize>],
    parent_condition_up_to: usize,
    out: &mut Vec<Violation>,
) {
    for (i, level) in levels.iter().enumerate() {
        for &v in level {
            if v >= g.n() {
                out.push(Violation::new("vertex out of range", &[v]));
                return;
            }
            for (j, other) in levels.iter().enumerate().skip(i + 1) {
                if other.contains(&v) {
                    out.push(Violation::new("levels not disjoint", &[v, i, j]));
                }
            }
        }
    }
    match levels.first() {
        Some(l0) if l0.len() == 1 => {}
        _ => out.push(Violation::new(
            "head not unique",
            &levels.first().map(|l| l.iter().copied().collect::<Vec<_>>()).unwrap_or_default(),
        )),
    }
    for i in 1..levels.len().min(parent_condition_up_to + 1) {
        for &v in &levels[i] {
            if !g.neighbors(v).iter().any(|w| levels[i - 1].contains(w)) {
                out.push(Violation::new("vertex without parent", &[v]));
            }
        }
    }
    for i in 0..levels.len() {
        for j in i + 2..levels.len() {
            for &v in &levels[j] {
                for &u in g.neighbors(v) {
                    if levels[i].contains(&u) {
                        out.push(Violation::new("skip edge", &[u, v]));
                    }
                }
            }
        }
    }
}

/// Check the three levelling axioms; empty iff valid. Each violation names
/// the broken rule and witness vertices.
pub fn verify_levelling(g: &Graph, l: &Levelling) -> Vec<Violation> {
    let mut out = Vec::new();
    if l.levels.is_empty() {
        out.push(Violation::new("no levels", &[]));
        return out;
    }
    check_levels(g, &l.levels, l.levels.len(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    #[test]
    fn bfs_layers_are_valid() {
        let c9 = cycle(9);
        let l = Levelling::bfs(&c9, 0, 4);
        assert_eq!(verify_levelling(&c9, &l), vec![]);
        assert_eq!(l.levels.iter().map(|s| s.len()).collect::<Vec<_>>(), [1, 2, 2, 2, 2]);
    }

    #[test]
    fn skip_edge_detected() {
        let c9 = cycle(9);
        let mut l = Levelling::bfs(&c9, 0, 3);
        // move a level-1 vertex into level 3
        let v = *l.levels[1].iter().next().unwrap();
        l.levels[1].remove(&v);
        l.levels[3].insert(v);
        let viols = verify_levelling(&c9, &l);
        assert!(viols.iter().any(|v| v.rule == "skip edge"));
    }

    #[test]
    fn double_head_detected() {
        let c9 = cycle(9);
        let mut l = Levelling::bfs(&c9, 0, 2);
        let v = *l.levels[1].iter().next().unwrap();
        l.levels[1].remove(&v);
        l.levels[0].insert(v);
        let viols = verify_levelling(&c9, &l);
        assert!(viols.iter().any(|v| v.rule == "head not unique"));
    }
}

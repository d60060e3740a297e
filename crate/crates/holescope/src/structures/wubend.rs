use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::levelling::check_levels;
use super::Violation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BendKind {
    W,
    U,
}

/// Levelling whose bottom level induces a path, plus a detached induced path
/// U; `u_path` is listed in order from w (the attachment end) to the drain s.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WUBend {
    pub levels: Vec<BTreeSet<usize>>,
    pub u_path: Vec<usize>,
    pub kind: BendKind,
}

impl WUBend {
    pub fn attachment(&self) -> Option<usize> {
        self.u_path.first().copied()
    }

    pub fn drain(&self) -> Option<usize> {
        self.u_path.last().copied()
    }

    pub fn floor(&self) -> Option<&BTreeSet<usize>> {
        self.levels.last()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WUBendReport {
    pub violations: Vec<Violation>,
    /// Distance in the whole graph between the two ends of the floor path;
    /// absent when the floor is not an induced path.
    pub size: Option<usize>,
}

/// Ends of the path induced by `set`, when it is one; a singleton counts
/// with both ends equal.
fn induced_path_ends(g: &Graph, set: &BTreeSet<usize>) -> Option<(usize, usize)> {
    if set.is_empty() {
        return None;
    }
    let mut ends = Vec::new();
    for &v in set {
        let d = g.neighbors(v).iter().filter(|w| set.contains(w)).count();
        match d {
            0 if set.len() == 1 => return Some((v, v)),
            1 => ends.push(v),
            2 => {}
            _ => return None,
        }
    }
    if ends.len() != 2 || !g.is_connected_set(set) {
        return None;
    }
    Some((ends[0], ends[1]))
}

/// Check all w-bend axioms, plus the three u-bend axioms when `kind` is U.
pub fn verify_wubend(g: &Graph, b: &WUBend) -> WUBendReport {
    let mut out = Vec::new();
    if b.levels.len() < 2 || b.u_path.is_empty() {
        out.push(Violation::new("bend needs two levels and a nonempty path", &[]));
        return WUBendReport { violations: out, size: None };
    }
    if b.u_path.iter().any(|&v| v >= g.n()) {
        out.push(Violation::new("vertex out of range", &b.u_path));
        return WUBendReport { violations: out, size: None };
    }
    check_levels(g, &b.levels, b.levels.len(), &mut out);
    if !out.is_empty() && out.iter().any(|v| v.rule == "vertex out of range") {
        return WUBendReport { violations: out, size: None };
    }
    let k = b.levels.len() - 1;
    let floor = &b.levels[k];
    let upper = &b.levels[k - 1];
    let v_set: BTreeSet<usize> = b.levels.iter().flatten().copied().collect();
    let u_set: BTreeSet<usize> = b.u_path.iter().copied().collect();

    if u_set.len() != b.u_path.len() {
        out.push(Violation::new("U path repeats a vertex", &b.u_path));
    }
    if !crate::graph::is_induced_path(g, &b.u_path) {
        out.push(Violation::new("U is not an induced path", &b.u_path));
    }
    if let Some(&v) = v_set.intersection(&u_set).next() {
        out.push(Violation::new("U meets the levelling", &[v]));
    }
    let ends = induced_path_ends(g, floor);
    if ends.is_none() {
        out.push(Violation::new("floor is not an induced path", &[]));
    }
    let w = b.u_path[0];
    if !upper
        .iter()
        .any(|&u| g.has_edge(u, w) && g.neighbors(u).iter().any(|x| floor.contains(x)))
    {
        out.push(Violation::new("no attachment vertex for w", &[w]));
    }
    for &u in &b.u_path {
        for &f in floor.iter() {
            if g.has_edge(u, f) {
                out.push(Violation::new("edge between U and the floor", &[u, f]));
            }
        }
    }
    for &u in upper {
        let sees_floor = g.neighbors(u).iter().any(|x| floor.contains(x));
        let sees_tail = g
            .neighbors(u)
            .iter()
            .any(|x| *x != w && u_set.contains(x));
        if sees_floor && sees_tail {
            out.push(Violation::new("level vertex sees both floor and U tail", &[u]));
        }
    }

    if b.kind == BendKind::U {
        let w_parents: Vec<usize> =
            upper.iter().copied().filter(|&u| g.has_edge(u, w)).collect();
        if w_parents.len() != 1 {
            out.push(Violation::new("w without a unique upper neighbour", &w_parents));
        } else {
            let v = w_parents[0];
            let v_floor: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|x| floor.contains(x))
                .collect();
            match (v_floor.as_slice(), ends) {
                ([f], Some((e1, e2))) if *f == e1 || *f == e2 => {}
                _ => out.push(Violation::new(
                    "attachment vertex not meeting a unique floor end",
                    &v_floor,
                )),
            }
        }
        for &u in upper {
            if !g.neighbors(u).iter().any(|x| floor.contains(x)) {
                out.push(Violation::new("upper-level vertex without a floor neighbour", &[u]));
            }
        }
    }

    let size = ends.map(|(a, c)| g.dist(a, c).finite().unwrap_or(usize::MAX));
    WUBendReport { violations: out, size }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Small u-bend: levels [{0}, {1,2}, {3,4,5}] with floor path 3-4-5,
    /// U = 6-7 hanging off 2 via w=6.
    fn fixture() -> (Graph, WUBend) {
        let g = Graph::from_edges(
            8,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (1, 4),
                (2, 5),
                (3, 4),
                (4, 5),
                (2, 6),
                (6, 7),
            ],
        )
        .unwrap();
        let b = WUBend {
            levels: vec![
                [0].into_iter().collect(),
                [1, 2].into_iter().collect(),
                [3, 4, 5].into_iter().collect(),
            ],
            u_path: vec![6, 7],
            kind: BendKind::U,
        };
        (g, b)
    }

    #[test]
    fn valid_u_bend_with_size() {
        let (g, b) = fixture();
        let rep = verify_wubend(&g, &b);
        assert_eq!(rep.violations, vec![]);
        assert_eq!(rep.size, Some(2));
    }

    #[test]
    fn also_valid_as_w_bend() {
        let (g, mut b) = fixture();
        b.kind = BendKind::W;
        assert_eq!(verify_wubend(&g, &b).violations, vec![]);
    }

    #[test]
    fn u_floor_edge_detected() {
        let (g0, b) = fixture();
        let mut edges = g0.edges();
        edges.push((7, 3));
        let g = Graph::from_edges(8, &edges).unwrap();
        assert!(verify_wubend(&g, &b)
            .violations
            .iter()
            .any(|v| v.rule == "edge between U and the floor"));
    }

    #[test]
    fn split_attachment_detected() {
        // give w a second upper neighbour: only the U kind objects
        let (g0, b) = fixture();
        let mut edges = g0.edges();
        edges.push((1, 6));
        let g = Graph::from_edges(8, &edges).unwrap();
        let rep = verify_wubend(&g, &b);
        assert!(rep
            .violations
            .iter()
            .any(|v| v.rule == "w without a unique upper neighbour"));
        let mut w = b.clone();
        w.kind = BendKind::W;
        assert_eq!(verify_wubend(&g, &w).violations, vec![]);
    }

    #[test]
    fn broken_floor_path_reported_without_size() {
        let (g0, b) = fixture();
        let edges: Vec<_> = g0.edges().into_iter().filter(|&e| e != (3, 4)).collect();
        let g = Graph::from_edges(8, &edges).unwrap();
        let rep = verify_wubend(&g, &b);
        assert!(rep.violations.iter().any(|v| v.rule == "floor is not an induced path"));
        assert_eq!(rep.size, None);
    }
}

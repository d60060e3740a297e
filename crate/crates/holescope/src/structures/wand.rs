use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::{Shower, StructureError};

/// Sequence (W_0, ..., W_t) of nonempty blocks, W_i inside level i, with
/// every consecutive pair complete bipartite; t is at most k - 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Wand {
    pub sets: Vec<BTreeSet<usize>>,
}

impl Wand {
    pub fn len(&self) -> usize {
        self.sets.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.sets.iter().flatten().copied().collect()
    }
}

/// Check the three wand axioms against the shower's levels.
pub fn verify_wand(g: &Graph, s: &Shower, w: &Wand) -> Result<(), StructureError> {
    let k = s.levels.len().saturating_sub(1);
    if w.sets.is_empty() || w.len() + 2 > k {
        return Err(StructureError::WandOutsideShower(format!(
            "length {} needs at least {} levels below",
            w.len(),
            w.len() + 2
        )));
    }
    for (i, block) in w.sets.iter().enumerate() {
        if block.is_empty() {
            return Err(StructureError::WandOutsideShower(format!("W_{i} is empty")));
        }
        if !block.is_subset(&s.levels[i]) {
            return Err(StructureError::WandOutsideShower(format!(
                "W_{i} not inside level {i}"
            )));
        }
    }
    for i in 0..w.len() {
        for &u in &w.sets[i] {
            for &v in &w.sets[i + 1] {
                if !g.has_edge(u, v) {
                    return Err(StructureError::WandOutsideShower(format!(
                        "missing edge {u}-{v} between W_{i} and W_{}",
                        i + 1
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Shadow of the wand over `mat`: mat vertices lying on a post whose top is
/// an up-neighbour of the wand. A post descends level by level and, except
/// for its top, avoids the wand and all its neighbours.
#[allow(clippy::needless_range_loop)] // levels and tops are indexed in lockstep
pub fn wand_shadow(
    g: &Graph,
    s: &Shower,
    w: &Wand,
    mat: &BTreeSet<usize>,
) -> Result<BTreeSet<usize>, StructureError> {
    verify_wand(g, s, w)?;
    if !mat.is_subset(&s.floor(g)) {
        return Err(StructureError::MatOutsideFloor);
    }
    let k = s.levels.len() - 1;
    let wand_vertices = w.vertex_set();
    let clean = |v: usize| {
        !wand_vertices.contains(&v)
            && !g.neighbors(v).iter().any(|x| wand_vertices.contains(x))
    };

    // tops: T_i = up-neighbours in L_i of vertices of W_{i+1}
    let mut tops: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k + 1];
    for i in 0..w.len() {
        for &v in &s.levels[i] {
            if wand_vertices.contains(&v) {
                continue;
            }
            let hits_block = g.neighbors(v).iter().any(|x| w.sets[i + 1].contains(x));
            let confined = g
                .neighbors(v)
                .iter()
                .all(|x| !wand_vertices.contains(x) || w.sets[i + 1].contains(x));
            if hits_block && confined {
                tops[i].insert(v);
            }
        }
    }

    // descend: reach[v] = v is clean and on a monotone clean path from a top
    let mut reach: BTreeSet<usize> = BTreeSet::new();
    for i in 0..k {
        for &v in &s.levels[i + 1] {
            if !clean(v) {
                continue;
            }
            let from_top = g.neighbors(v).iter().any(|x| tops[i].contains(x));
            let from_chain = g
                .neighbors(v)
                .iter()
                .any(|x| s.levels[i].contains(x) && reach.contains(x));
            if from_top || from_chain {
                reach.insert(v);
            }
        }
    }
    // a floor vertex in `reach` has a clean monotone chain up to a top,
    // which is exactly a post
    Ok(reach
        .iter()
        .copied()
        .filter(|v| mat.contains(v))
        .collect())
}

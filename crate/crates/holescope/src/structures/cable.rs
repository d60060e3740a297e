use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::Violation;

/// Cable on x_1..x_t with neighbour bundles N_i, forward sets Z_{i,j} (keys
/// are 0-based (i, j), i < j), private sets Y_i, and a base. The Z/Y sets of
/// index i live inside N_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cable {
    pub x: Vec<usize>,
    pub n_sets: Vec<BTreeSet<usize>>,
    #[serde(with = "z_triples")]
    pub z: BTreeMap<(usize, usize), BTreeSet<usize>>,
    pub y: Vec<BTreeSet<usize>>,
    pub base: BTreeSet<usize>,
}

impl Cable {
    pub fn t(&self) -> usize {
        self.x.len()
    }

    pub fn z_of(&self, i: usize, j: usize) -> BTreeSet<usize> {
        self.z.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Restrict to the index set `keep` (sorted, deduplicated), renumbering.
    pub fn subcable(&self, keep: &[usize]) -> Cable {
        let keep: Vec<usize> = {
            let s: BTreeSet<usize> = keep.iter().copied().collect();
            s.into_iter().collect()
        };
        let mut z = BTreeMap::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate().skip(a + 1) {
                let set = self.z_of(i, j);
                if !set.is_empty() {
                    z.insert((a, b), set);
                }
            }
        }
        Cable {
            x: keep.iter().map(|&i| self.x[i]).collect(),
            n_sets: keep.iter().map(|&i| self.n_sets[i].clone()).collect(),
            z,
            y: keep.iter().map(|&i| self.y[i].clone()).collect(),
            base: self.base.clone(),
        }
    }
}

mod z_triples {
    use super::{BTreeMap, BTreeSet};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    type Blocks = BTreeMap<(usize, usize), BTreeSet<usize>>;

    pub fn serialize<S: Serializer>(map: &Blocks, s: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<(usize, usize, Vec<usize>)> = map
            .iter()
            .map(|(&(i, j), set)| (i, j, set.iter().copied().collect()))
            .collect();
        triples.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Blocks, D::Error> {
        let triples: Vec<(usize, usize, Vec<usize>)> = Vec::deserialize(d)?;
        Ok(triples
            .into_iter()
            .map(|(i, j, vs)| ((i, j), vs.into_iter().collect()))
            .collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairType {
    One,
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CableReport {
    pub violations: Vec<Violation>,
    /// Type of each index pair (i, j), i < j; absent when neither type's
    /// conditions hold (which also produces a violation).
    pub pair_types: BTreeMap<(usize, usize), PairType>,
}

impl CableReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn uniform_type(&self) -> Option<PairType> {
        let mut it = self.pair_types.values();
        let first = *it.next()?;
        it.all(|&t| t == first).then_some(first)
    }
}

/// Check every cable axiom and classify each index pair as type 1 or 2.
pub fn classify_cable(g: &Graph, c: &Cable) -> CableReport {
    let mut out = Vec::new();
    let mut pair_types = BTreeMap::new();
    let t = c.t();
    if c.n_sets.len() != t || c.y.len() != t {
        out.push(Violation::new("index lists differ in length", &[]));
        return CableReport { violations: out, pair_types };
    }
    let all: Vec<usize> = c
        .x
        .iter()
        .copied()
        .chain(c.n_sets.iter().flatten().copied())
        .chain(c.base.iter().copied())
        .collect();
    if let Some(&v) = all.iter().find(|&&v| v >= g.n()) {
        out.push(Violation::new("vertex out of range", &[v]));
        return CableReport { violations: out, pair_types };
    }
    for &(i, j) in c.z.keys() {
        if !(i < j && j < t) {
            out.push(Violation::new("Z key out of range", &[i, j]));
            return CableReport { violations: out, pair_types };
        }
    }

    for i in 0..t {
        for j in i + 1..t {
            if c.x[i] == c.x[j] {
                out.push(Violation::new("x vertices not distinct", &[c.x[i]]));
            } else if g.has_edge(c.x[i], c.x[j]) {
                out.push(Violation::new("x vertices adjacent", &[c.x[i], c.x[j]]));
            }
            if c.n_sets[i].intersection(&c.n_sets[j]).next().is_some() {
                out.push(Violation::new("N sets not disjoint", &[i, j]));
            }
        }
    }
    for i in 0..t {
        for &u in &c.n_sets[i] {
            if !g.has_edge(c.x[i], u) {
                out.push(Violation::new("N contains a non-neighbour of its x", &[c.x[i], u]));
            }
        }
        // Z_{i,i+1},...,Z_{i,t}, Y_i disjoint subsets of N_i
        let mut blocks: Vec<&BTreeSet<usize>> = (i + 1..t).map(|j| {
            c.z.get(&(i, j)).map(|s| s as &BTreeSet<usize>).unwrap_or(&EMPTY)
        }).collect();
        blocks.push(&c.y[i]);
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for block in blocks {
            for &u in block.iter() {
                if !c.n_sets[i].contains(&u) {
                    out.push(Violation::new("Z or Y vertex outside its N", &[i, u]));
                }
                if !seen.insert(u) {
                    out.push(Violation::new("Z and Y blocks overlap", &[i, u]));
                }
            }
        }
    }
    for &v in &c.base {
        if c.x.contains(&v) || c.n_sets.iter().any(|n| n.contains(&v)) {
            out.push(Violation::new("base meets x or N", &[v]));
            continue;
        }
        for i in 0..t {
            if g.has_edge(v, c.x[i]) {
                out.push(Violation::new("base vertex adjacent to an x", &[v, c.x[i]]));
            }
            if !g.neighbors(v).iter().any(|w| c.y[i].contains(w)) {
                out.push(Violation::new("base vertex without a neighbour in Y", &[v, i]));
            }
            for j in i + 1..t {
                if let Some(z) = c.z.get(&(i, j)) {
                    if g.neighbors(v).iter().any(|w| z.contains(w)) {
                        out.push(Violation::new("base vertex with a neighbour in Z", &[v, i, j]));
                    }
                }
            }
        }
    }
    for i in 0..t {
        for j in i + 1..t {
            if g.neighbors(c.x[i]).iter().any(|w| c.n_sets[j].contains(w)) {
                out.push(Violation::new("earlier x with a neighbour in a later N", &[i, j]));
            }
            if let Some(z) = c.z.get(&(i, j)) {
                for k in j + 1..t {
                    for &u in z.iter() {
                        if g.neighbors(u).iter().any(|w| c.n_sets[k].contains(w)) {
                            out.push(Violation::new("edge between Z and a later N", &[i, j, k]));
                        }
                    }
                }
            }
            let z = c.z_of(i, j);
            let type1 = z.is_empty()
                && !g.neighbors(c.x[j]).iter().any(|w| c.y[i].contains(w));
            let type2 = c.n_sets[j].iter().all(|&u| {
                g.neighbors(u).iter().any(|w| z.contains(w))
                    && !g.neighbors(u).iter().any(|w| c.y[i].contains(w))
            });
            match (type1, type2) {
                (true, _) => {
                    pair_types.insert((i, j), PairType::One);
                }
                (false, true) => {
                    pair_types.insert((i, j), PairType::Two);
                }
                (false, false) => {
                    out.push(Violation::new("pair of neither type", &[i, j]));
                }
            }
        }
    }
    CableReport { violations: out, pair_types }
}

static EMPTY: BTreeSet<usize> = BTreeSet::new();

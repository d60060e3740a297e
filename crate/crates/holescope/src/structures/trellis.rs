use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

use super::Violation;

/// Extension row: the extra 2-path a0 - c0 - b0 attached as column 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrellisExt {
    pub a0: usize,
    pub c0: usize,
    pub b0: usize,
}

/// Labeled embedding of a (possibly extended) trellis: a subdivided
/// K_{s,2t} with a matching on the subdivided side. Columns are numbered
/// 1..=t, plus column 0 when extended. Spoke maps are keyed by
/// (row index into `x`, column).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrellisEmbedding {
    pub x: Vec<usize>,
    /// a[j-1] is the matching vertex a_j for column j in 1..=t.
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    #[serde(with = "triple_map")]
    pub a_map: BTreeMap<(usize, usize), usize>,
    #[serde(with = "triple_map")]
    pub b_map: BTreeMap<(usize, usize), usize>,
    pub ext: Option<TrellisExt>,
}

impl TrellisEmbedding {
    pub fn columns(&self) -> Vec<usize> {
        let mut cols: Vec<usize> = (1..=self.a.len()).collect();
        if self.ext.is_some() {
            cols.insert(0, 0);
        }
        cols
    }

    pub fn extended(&self) -> bool {
        self.ext.is_some()
    }

    /// Column-pair vertices (a_j, b_j); for column 0 these are the
    /// extension's a0, b0.
    pub fn column_pair(&self, j: usize) -> (usize, usize) {
        if j == 0 {
            let ext = self.ext.as_ref().expect("column 0 requires the extension");
            (ext.a0, ext.b0)
        } else {
            (self.a[j - 1], self.b[j - 1])
        }
    }

    pub fn named_vertices(&self) -> Vec<usize> {
        let mut out = self.x.clone();
        out.extend(&self.a);
        out.extend(&self.b);
        if let Some(ext) = &self.ext {
            out.extend([ext.a0, ext.c0, ext.b0]);
        }
        out.extend(self.a_map.values());
        out.extend(self.b_map.values());
        out
    }
}

mod triple_map {
    use super::BTreeMap;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<(usize, usize), usize>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let triples: Vec<(usize, usize, usize)> =
            map.iter().map(|(&(r, j), &v)| (r, j, v)).collect();
        triples.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<(usize, usize), usize>, D::Error> {
        let triples: Vec<(usize, usize, usize)> = Vec::deserialize(d)?;
        Ok(triples.into_iter().map(|(r, j, v)| ((r, j), v)).collect())
    }
}

/// Check all trellis conditions: distinct named vertices, the mandatory
/// edges present, and no extra edges among named vertices except pairs
/// a_{x,j} - b_{x',j} within one column.
pub fn verify_trellis(g: &Graph, t: &TrellisEmbedding) -> Vec<Violation> {
    let mut out = Vec::new();
    if t.a.len() != t.b.len() {
        out.push(Violation::new("column lists differ in length", &[]));
        return out;
    }
    let cols = t.columns();
    let named = t.named_vertices();
    if let Some(&v) = named.iter().find(|&&v| v >= g.n()) {
        out.push(Violation::new("vertex out of range", &[v]));
        return out;
    }
    let named_set: BTreeSet<usize> = named.iter().copied().collect();
    if named_set.len() != named.len() {
        out.push(Violation::new("named vertices not distinct", &[]));
        return out;
    }
    for r in 0..t.x.len() {
        for &j in &cols {
            if !t.a_map.contains_key(&(r, j)) || !t.b_map.contains_key(&(r, j)) {
                out.push(Violation::new("spoke map incomplete", &[r, j]));
                return out;
            }
        }
    }

    let mut required: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut need = |out: &mut Vec<Violation>, u: usize, v: usize, rule: &str| {
        required.insert((u.min(v), u.max(v)));
        if !g.has_edge(u, v) {
            out.push(Violation::new(rule, &[u, v]));
        }
    };
    for j in 1..=t.a.len() {
        need(&mut out, t.a[j - 1], t.b[j - 1], "missing matching edge a_j b_j");
    }
    if let Some(ext) = &t.ext {
        need(&mut out, ext.a0, ext.c0, "missing extension edge a0 c0");
        need(&mut out, ext.c0, ext.b0, "missing extension edge c0 b0");
    }
    for (r, &xv) in t.x.iter().enumerate() {
        for &j in &cols {
            let (aj, bj) = t.column_pair(j);
            let arj = t.a_map[&(r, j)];
            let brj = t.b_map[&(r, j)];
            need(&mut out, xv, arj, "missing spoke edge x a_{x,j}");
            need(&mut out, xv, brj, "missing spoke edge x b_{x,j}");
            need(&mut out, arj, aj, "missing spoke edge a_{x,j} a_j");
            need(&mut out, brj, bj, "missing spoke edge b_{x,j} b_j");
        }
    }

    // optional cross edges a_{x,j} - b_{x',j} share a column
    let mut cross_ok: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &j in &cols {
        for r in 0..t.x.len() {
            for r2 in 0..t.x.len() {
                let u = t.a_map[&(r, j)];
                let v = t.b_map[&(r2, j)];
                cross_ok.insert((u.min(v), u.max(v)));
            }
        }
    }
    let x_set: BTreeSet<usize> = t.x.iter().copied().collect();
    for (i, &u) in named.iter().enumerate() {
        for &v in named.iter().skip(i + 1) {
            let key = (u.min(v), u.max(v));
            if g.has_edge(u, v) && !required.contains(&key) && !cross_ok.contains(&key) {
                if x_set.contains(&u) && x_set.contains(&v) {
                    out.push(Violation::new("X not stable", &[u, v]));
                } else {
                    out.push(Violation::new("unexpected edge among named vertices", &[u, v]));
                }
            }
        }
    }
    out
}

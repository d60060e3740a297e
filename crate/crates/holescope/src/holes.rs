use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec;
use crate::graph::{Graph, VertexSeq};

/// Node-expansion cap sized for n <= 60, Lmax <= 20.
pub const DEFAULT_HOLE_BUDGET: u64 = 50_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HoleError {
    #[error("hole search budget exhausted after {0} expansions")]
    BudgetExhausted(u64),
}

/// Set of induced-cycle lengths present up to a cap, with one witness per
/// length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleSpectrum {
    pub witnesses: BTreeMap<usize, VertexSeq>,
    pub cap: usize,
    pub complete: bool,
}

impl HoleSpectrum {
    pub fn lengths(&self) -> Vec<usize> {
        self.witnesses.keys().copied().collect()
    }

    pub fn contains(&self, len: usize) -> bool {
        self.witnesses.contains_key(&len)
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Holes of the nu consecutive lengths t+1 .. t+nu.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoleInterval {
    pub t: usize,
    pub holes: Vec<VertexSeq>,
}

struct HoleSearch<'a> {
    g: &'a Graph,
    ell: usize,
    budget: u64,
    spent: u64,
}

impl HoleSearch<'_> {
    /// Extend the canonical induced path; `path[0]` is the smallest cycle
    /// vertex, and the second vertex stays below the last to kill the
    /// direction symmetry.
    fn extend(&mut self, path: &mut VertexSeq) -> Result<Option<VertexSeq>, HoleError> {
        self.spent += 1;
        if self.spent > self.budget {
            return Err(HoleError::BudgetExhausted(self.spent - 1));
        }
        let anchor = path[0];
        let last = *path.last().unwrap();
        let closing = path.len() + 1 == self.ell;
        for &w in self.g.neighbors(last) {
            if w <= anchor || path.contains(&w) {
                continue;
            }
            let adj_anchor = self.g.has_edge(w, anchor);
            if closing {
                if !adj_anchor || path[1] >= w {
                    continue;
                }
            } else if adj_anchor {
                continue;
            }
            if path[1..path.len() - 1].iter().any(|&p| self.g.has_edge(w, p)) {
                continue;
            }
            path.push(w);
            if closing {
                return Ok(Some(path.clone()));
            }
            if let Some(hole) = self.extend(path)? {
                return Ok(Some(hole));
            }
            path.pop();
        }
        Ok(None)
    }
}

/// First induced cycle of exactly length `ell` in canonical DFS order, if
/// any.
pub fn find_hole_of_length(
    g: &Graph,
    ell: usize,
    budget: u64,
) -> Result<Option<VertexSeq>, HoleError> {
    assert!(ell >= 4, "holes have length at least 4");
    if ell > g.n() {
        return Ok(None);
    }
    let mut search = HoleSearch { g, ell, budget, spent: 0 };
    for anchor in g.vertices() {
        for &first in g.neighbors(anchor) {
            if first <= anchor {
                continue;
            }
            let mut path = vec![anchor, first];
            if let Some(hole) = search.extend(&mut path)? {
                return Ok(Some(hole));
            }
        }
    }
    Ok(None)
}

/// Exact set of hole lengths in [4, lmax], each searched independently with
/// the full budget.
pub fn hole_spectrum(g: &Graph, lmax: usize, budget: u64) -> Result<HoleSpectrum, HoleError> {
    assert!(lmax >= 4, "cap below the minimum hole length");
    let top = lmax.min(g.n());
    let lengths: Vec<usize> = (4..=top.max(3)).collect();
    let found = exec::map_collect(&lengths, |&ell| find_hole_of_length(g, ell, budget));
    let mut witnesses = BTreeMap::new();
    for (ell, res) in lengths.into_iter().zip(found) {
        if let Some(h) = res? {
            witnesses.insert(ell, h);
        }
    }
    Ok(HoleSpectrum { witnesses, cap: lmax, complete: lmax >= g.n() })
}

/// Shortest odd hole of length in [ell, lmax], if any.
pub fn odd_hole_min_length(
    g: &Graph,
    ell: usize,
    lmax: usize,
    budget: u64,
) -> Result<Option<VertexSeq>, HoleError> {
    assert!(ell >= 5, "odd holes have length at least 5");
    let mut l = if ell.is_multiple_of(2) { ell + 1 } else { ell };
    while l <= lmax.min(g.n()) {
        if let Some(h) = find_hole_of_length(g, l, budget)? {
            return Ok(Some(h));
        }
        l += 2;
    }
    Ok(None)
}

/// Smallest t with holes of every length t+1 .. t+nu within the cap.
pub fn hole_interval(
    g: &Graph,
    nu: usize,
    lmax: usize,
    budget: u64,
) -> Result<Option<HoleInterval>, HoleError> {
    assert!(nu >= 1, "interval needs at least one length");
    let spectrum = hole_spectrum(g, lmax, budget)?;
    for t in 3..=lmax.saturating_sub(nu) {
        if (t + 1..=t + nu).all(|l| spectrum.contains(l)) {
            let holes = (t + 1..=t + nu).map(|l| spectrum.witnesses[&l].clone()).collect();
            return Ok(Some(HoleInterval { t, holes }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDensity {
    pub count: usize,
    pub min: Option<usize>,
    pub max: Option<usize>,
    pub largest_gap: usize,
}

pub fn spectrum_density(spectrum: &HoleSpectrum) -> SpectrumDensity {
    let lengths = spectrum.lengths();
    let largest_gap = lengths.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
    SpectrumDensity {
        count: lengths.len(),
        min: lengths.first().copied(),
        max: lengths.last().copied(),
        largest_gap,
    }
}

/// Brute-force spectrum by subset enumeration: a vertex set spans a hole iff
/// its induced subgraph is connected and 2-regular. Only for small n.
pub fn spectrum_oracle(g: &Graph, lmax: usize) -> Vec<usize> {
    let n = g.n();
    assert!(n <= 20, "oracle is exponential");
    let mut lengths = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < 4 || size > lmax || lengths.contains(&size) {
            continue;
        }
        let set: std::collections::BTreeSet<usize> =
            (0..n).filter(|&v| mask & (1 << v) != 0).collect();
        let two_regular = set
            .iter()
            .all(|&v| g.neighbors(v).iter().filter(|w| set.contains(w)).count() == 2);
        if two_regular && g.is_connected_set(&set) {
            lengths.insert(size);
        }
    }
    lengths.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{groetzsch, petersen};
    use crate::graph::{cycle, is_induced_cycle};

    #[test]
    fn chordless_cycle_finds_itself() {
        let c5 = cycle(5);
        let spectrum = hole_spectrum(&c5, 10, DEFAULT_HOLE_BUDGET).unwrap();
        assert_eq!(spectrum.lengths(), vec![5]);
        assert!(spectrum.complete);
        assert!(is_induced_cycle(&c5, &spectrum.witnesses[&5]));
    }

    #[test]
    fn triangle_has_no_holes() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(hole_spectrum(&k3, 10, DEFAULT_HOLE_BUDGET).unwrap().is_empty());
    }

    #[test]
    fn petersen_spectrum_is_five_six() {
        let g = petersen();
        let spectrum = hole_spectrum(&g, 10, DEFAULT_HOLE_BUDGET).unwrap();
        assert_eq!(spectrum.lengths(), vec![5, 6]);
        assert_eq!(spectrum_oracle(&g, 10), vec![5, 6]);
        for (l, w) in &spectrum.witnesses {
            assert!(is_induced_cycle(&g, w));
            assert_eq!(w.len(), *l);
        }
    }

    #[test]
    fn petersen_has_no_7_hole() {
        assert_eq!(find_hole_of_length(&petersen(), 7, DEFAULT_HOLE_BUDGET), Ok(None));
    }

    #[test]
    fn odd_hole_queries() {
        let c7 = cycle(7);
        let h = odd_hole_min_length(&c7, 5, 20, DEFAULT_HOLE_BUDGET).unwrap().unwrap();
        assert_eq!(h.len(), 7);
        assert_eq!(odd_hole_min_length(&cycle(6), 5, 20, DEFAULT_HOLE_BUDGET), Ok(None));
        let h = odd_hole_min_length(&groetzsch(), 5, 20, DEFAULT_HOLE_BUDGET).unwrap().unwrap();
        assert_eq!(h.len(), 5);
    }

    #[test]
    fn petersen_interval() {
        let i = hole_interval(&petersen(), 2, 10, DEFAULT_HOLE_BUDGET).unwrap().unwrap();
        assert_eq!(i.t, 4);
        assert_eq!(i.holes.iter().map(Vec::len).collect::<Vec<_>>(), [5, 6]);
        assert_eq!(hole_interval(&cycle(5), 2, 10, DEFAULT_HOLE_BUDGET), Ok(None));
        assert!(hole_interval(&cycle(5), 1, 10, DEFAULT_HOLE_BUDGET).unwrap().is_some());
    }

    #[test]
    fn density_statistics() {
        let g = petersen();
        let d = spectrum_density(&hole_spectrum(&g, 10, DEFAULT_HOLE_BUDGET).unwrap());
        assert_eq!(d, SpectrumDensity { count: 2, min: Some(5), max: Some(6), largest_gap: 1 });
        let empty = hole_spectrum(&cycle(3), 10, DEFAULT_HOLE_BUDGET).unwrap();
        assert_eq!(
            spectrum_density(&empty),
            SpectrumDensity { count: 0, min: None, max: None, largest_gap: 0 }
        );
    }

    #[test]
    fn budget_exhaustion_is_explicit() {
        let g = petersen();
        assert!(matches!(
            find_hole_of_length(&g, 6, 3),
            Err(HoleError::BudgetExhausted(_))
        ));
    }
}

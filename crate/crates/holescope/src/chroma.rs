//! Exact chromatic numbers (DSATUR-ordered branch and bound), local
//! chromatic numbers over distance balls, and controlledness reports.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec;
use crate::graph::Graph;

/// Node-expansion cap for the exact solver. Sized so every corpus graph
/// finishes in well under a second while a genuine blow-up still fails fast.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChromaError {
    #[error("budget exhausted after {0} search nodes")]
    BudgetExhausted(u64),
    #[error("phi table has no value for kappa = {0}")]
    PhiOutOfRange(usize),
}

struct Search<'a> {
    g: &'a Graph,
    budget: u64,
    nodes: u64,
}

impl Search<'_> {
    /// Backtracking k-colorability with DSATUR vertex selection and
    /// symmetry breaking (a vertex may open at most one fresh color).
    fn colorable(&mut self, k: usize) -> Result<bool, ChromaError> {
        let n = self.g.n();
        let mut colors = vec![usize::MAX; n];
        self.extend(k, &mut colors, 0)
    }

    fn extend(&mut self, k: usize, colors: &mut [usize], used: usize) -> Result<bool, ChromaError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(ChromaError::BudgetExhausted(self.nodes));
        }
        let n = self.g.n();
        // pick the uncolored vertex with maximum saturation, ties by degree
        // then ascending id
        let mut pick = None;
        let mut best = (0usize, 0usize);
        for v in 0..n {
            if colors[v] != usize::MAX {
                continue;
            }
            let sat = self
                .g
                .neighbors(v)
                .iter()
                .filter_map(|&w| (colors[w] != usize::MAX).then_some(colors[w]))
                .collect::<BTreeSet<_>>()
                .len();
            let key = (sat, self.g.degree(v));
            if pick.is_none() || key > best {
                best = key;
                pick = Some(v);
            }
        }
        let Some(v) = pick else {
            return Ok(true);
        };
        let forbidden: BTreeSet<usize> = self
            .g
            .neighbors(v)
            .iter()
            .filter_map(|&w| (colors[w] != usize::MAX).then_some(colors[w]))
            .collect();
        let limit = k.min(used + 1);
        for c in 0..limit {
            if forbidden.contains(&c) {
                continue;
            }
            colors[v] = c;
            if self.extend(k, colors, used.max(c + 1))? {
                return Ok(true);
            }
            colors[v] = usize::MAX;
        }
        Ok(false)
    }
}

fn greedy_clique_bound(g: &Graph) -> usize {
    let mut best = usize::from(g.n() > 0);
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for &start in order.iter().take(g.n().min(16)) {
        let mut clique = vec![start];
        for &v in &order {
            if v != start && clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

fn greedy_coloring_bound(g: &Graph) -> usize {
    let mut colors = vec![usize::MAX; g.n()];
    let mut used = 0;
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for v in order {
        let forbidden: BTreeSet<usize> = g
            .neighbors(v)
            .iter()
            .filter_map(|&w| (colors[w] != usize::MAX).then_some(colors[w]))
            .collect();
        let c = (0..).find(|c| !forbidden.contains(c)).unwrap();
        colors[v] = c;
        used = used.max(c + 1);
    }
    used
}

/// Exact chromatic number; 0 for the null graph. Fails with an explicit
/// budget error rather than ever returning a wrong answer.
pub fn chromatic_number_budgeted(g: &Graph, budget: u64) -> Result<usize, ChromaError> {
    if g.n() == 0 {
        return Ok(0);
    }
    if g.edge_count() == 0 {
        return Ok(1);
    }
    let lb = greedy_clique_bound(g);
    let ub = greedy_coloring_bound(g);
    let mut search = Search { g, budget, nodes: 0 };
    for k in lb..ub {
        if search.colorable(k)? {
            return Ok(k);
        }
    }
    Ok(ub)
}

pub fn chromatic_number(g: &Graph) -> Result<usize, ChromaError> {
    chromatic_number_budgeted(g, DEFAULT_BUDGET)
}

/// Chromatic number of the subgraph induced on `set`.
pub fn chi_of_set(g: &Graph, set: &BTreeSet<usize>) -> Result<usize, ChromaError> {
    let (h, _) = g.induced_subgraph(set);
    chromatic_number(&h)
}

/// Maximum over all vertices v of the chromatic number of the closed
/// rho-ball around v; 0 for the null graph.
pub fn chi_rho(g: &Graph, rho: usize) -> Result<usize, ChromaError> {
    let vertices: Vec<usize> = g.vertices().collect();
    let results = exec::map_collect(&vertices, |&v| {
        chi_of_set(g, &g.neighborhood(v, rho, true))
    });
    let mut best = 0;
    for r in results {
        best = best.max(r?);
    }
    Ok(best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutOfRangePolicy {
    Fail,
    Clamp,
}

/// A non-decreasing function on an initial segment of the nonnegative
/// integers, supplied as data. Out-of-range lookups follow the policy.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PhiTable {
    values: Vec<usize>,
    policy: OutOfRangePolicy,
}

impl PhiTable {
    pub fn new(values: Vec<usize>, policy: OutOfRangePolicy) -> Result<PhiTable, String> {
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err("phi table must be non-decreasing".into());
        }
        Ok(PhiTable { values, policy })
    }

    pub fn identity(max: usize) -> PhiTable {
        PhiTable { values: (0..=max).collect(), policy: OutOfRangePolicy::Fail }
    }

    pub fn constant(value: usize, max: usize) -> PhiTable {
        PhiTable { values: vec![value; max + 1], policy: OutOfRangePolicy::Clamp }
    }

    /// Parse from a JSON array of nonnegative ints.
    pub fn from_json_array(json: &str, policy: OutOfRangePolicy) -> Result<PhiTable, String> {
        let values: Vec<usize> = serde_json::from_str(json).map_err(|e| e.to_string())?;
        PhiTable::new(values, policy)
    }

    pub fn eval(&self, kappa: usize) -> Result<usize, ChromaError> {
        match self.values.get(kappa) {
            Some(&v) => Ok(v),
            None => match self.policy {
                OutOfRangePolicy::Clamp => self
                    .values
                    .last()
                    .copied()
                    .ok_or(ChromaError::PhiOutOfRange(kappa)),
                OutOfRangePolicy::Fail => Err(ChromaError::PhiOutOfRange(kappa)),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ControlViolation {
    pub subset: BTreeSet<usize>,
    pub chi: usize,
    pub chi_rho: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ControlReport {
    pub checked: usize,
    pub violations: Vec<ControlViolation>,
    pub exhaustive: bool,
}

/// Check chi(H) <= phi(chi^rho(H)) over induced subgraphs H. Exhaustive over
/// all 2^n subsets when that fits the budget; otherwise over `budget`
/// connected subgraphs sampled from the stated seed.
pub fn check_controlled(
    g: &Graph,
    rho: usize,
    phi: &PhiTable,
    budget: usize,
    seed: u64,
) -> Result<ControlReport, ChromaError> {
    let n = g.n();
    let exhaustive = n < usize::BITS as usize && (1usize << n) <= budget;
    let subsets: Vec<BTreeSet<usize>> = if exhaustive {
        (0..1usize << n)
            .map(|mask| (0..n).filter(|&v| mask & (1 << v) != 0).collect())
            .collect()
    } else {
        sample_connected_subsets(g, budget, seed)
    };
    let results = exec::map_collect(&subsets, |subset| -> Result<_, ChromaError> {
        let (h, back) = g.induced_subgraph(subset);
        let chi = chromatic_number(&h)?;
        let local = chi_rho(&h, rho)?;
        let bound = phi.eval(local)?;
        Ok((chi > bound).then(|| ControlViolation {
            subset: back.iter().copied().collect(),
            chi,
            chi_rho: local,
        }))
    });
    let mut violations = Vec::new();
    let checked = results.len();
    for r in results {
        if let Some(v) = r? {
            violations.push(v);
        }
    }
    Ok(ControlReport { checked, violations, exhaustive })
}

fn sample_connected_subsets(g: &Graph, count: usize, seed: u64) -> Vec<BTreeSet<usize>> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let start = rng.gen_range(0..g.n());
        let target = rng.gen_range(1..=g.n());
        // random connected growth from a random start
        let mut set = BTreeSet::from([start]);
        let mut frontier: Vec<usize> = g.neighbors(start).iter().copied().collect();
        while set.len() < target && !frontier.is_empty() {
            let i = rng.gen_range(0..frontier.len());
            let v = frontier.swap_remove(i);
            if set.insert(v) {
                frontier.extend(g.neighbors(v).iter().filter(|w| !set.contains(w)));
            }
        }
        out.push(set);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, Graph};

    #[test]
    fn chi_basics() {
        assert_eq!(chromatic_number(&Graph::empty(0)).unwrap(), 0);
        assert_eq!(chromatic_number(&Graph::empty(4)).unwrap(), 1);
        assert_eq!(chromatic_number(&cycle(5)).unwrap(), 3);
        assert_eq!(chromatic_number(&cycle(6)).unwrap(), 2);
        assert_eq!(chromatic_number(&crate::generators::petersen()).unwrap(), 3);
    }

    #[test]
    fn chi_groetzsch() {
        let g = crate::generators::mycielski(&cycle(5));
        assert_eq!(g.n(), 11);
        assert!(g.is_triangle_free());
        assert_eq!(chromatic_number(&g).unwrap(), 4);
    }

    #[test]
    fn chi_of_set_cases() {
        let c9 = cycle(9);
        assert_eq!(chi_of_set(&c9, &BTreeSet::new()).unwrap(), 0);
        assert_eq!(chi_of_set(&c9, &BTreeSet::from([0, 1, 2])).unwrap(), 2);
        let p = crate::generators::petersen();
        for v in p.vertices() {
            // the second sphere induces a 6-cycle; the closed ball is all of it
            assert_eq!(chi_of_set(&p, &p.neighborhood(v, 2, false)).unwrap(), 2);
            assert_eq!(chi_of_set(&p, &p.neighborhood(v, 2, true)).unwrap(), 3);
        }
    }

    #[test]
    fn chi_rho_cases() {
        assert_eq!(chi_rho(&cycle(9), 2).unwrap(), 2);
        assert_eq!(chi_rho(&cycle(5), 2).unwrap(), 3);
        assert_eq!(chi_rho(&crate::generators::petersen(), 1).unwrap(), 2);
        assert_eq!(chi_rho(&Graph::empty(0), 3).unwrap(), 0);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let g = crate::generators::mycielski(&crate::generators::mycielski(&cycle(5)));
        assert!(matches!(
            chromatic_number_budgeted(&g, 5),
            Err(ChromaError::BudgetExhausted(_))
        ));
    }

    #[test]
    fn controlled_c5_exhaustive() {
        let report =
            check_controlled(&cycle(5), 2, &PhiTable::identity(8), 1 << 10, 0).unwrap();
        assert!(report.exhaustive);
        assert_eq!(report.checked, 32);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn controlled_violation_reverifies() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let phi = PhiTable::constant(0, 4);
        let report = check_controlled(&k2, 1, &phi, 16, 0).unwrap();
        assert!(!report.violations.is_empty());
        for v in &report.violations {
            let chi = chi_of_set(&k2, &v.subset).unwrap();
            assert_eq!(chi, v.chi);
            assert!(chi > phi.eval(v.chi_rho).unwrap());
        }
        // a huge constant phi never reports violations
        let report =
            check_controlled(&k2, 1, &PhiTable::constant(1000, 4), 16, 0).unwrap();
        assert!(report.violations.is_empty());
    }
}

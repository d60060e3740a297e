use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{cycle, Graph};
use crate::structures::{Cable, PairType, Shower, TrellisEmbedding, TrellisExt};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("bad parameters for {family}: {detail}")]
    BadParams { family: &'static str, detail: String },
}

/// Petersen graph with the conventional labeling: outer 5-cycle 0..4,
/// spokes to 5..9, inner pentagram.
pub fn petersen() -> Graph {
    Graph::from_edges(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
            (5, 7),
            (5, 8),
            (6, 8),
            (6, 9),
            (7, 9),
        ],
    )
    .unwrap()
}

/// Mycielskian: original vertices keep their ids, copy of v is n+v, apex is
/// 2n. Raises chromatic number by one and preserves triangle-freeness.
pub fn mycielski(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = g.edges();
    for (u, v) in g.edges() {
        edges.push((n + u, v));
        edges.push((n + v, u));
    }
    for v in 0..n {
        edges.push((n + v, 2 * n));
    }
    Graph::from_edges(2 * n + 1, &edges).unwrap()
}

/// Grötzsch graph: Mycielskian of C5.
pub fn groetzsch() -> Graph {
    mycielski(&cycle(5))
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
    Graph::from_edges(a + b, &edges).unwrap()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Kneser graph: vertices are the k-subsets of {0..n-1} in lexicographic
/// order, adjacent iff disjoint.
pub fn kneser(n: usize, k: usize) -> Result<Graph, GenError> {
    if k == 0 || n < 2 * k {
        return Err(GenError::BadParams {
            family: "kneser",
            detail: format!("need n >= 2k > 0, got n={n} k={k}"),
        });
    }
    let subs = combinations(n, k);
    let mut edges = Vec::new();
    for (i, a) in subs.iter().enumerate() {
        for (j, b) in subs.iter().enumerate().skip(i + 1) {
            if a.iter().all(|x| !b.contains(x)) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(subs.len(), &edges).map_err(|e| GenError::BadParams {
        family: "kneser",
        detail: e.to_string(),
    })
}

/// Shift graph: vertices are pairs (i, j) with i < j < n in lexicographic
/// order; (i, j) is adjacent to (j, k). Triangle-free with chromatic number
/// ceil(log2 n).
pub fn shift(n: usize) -> Result<Graph, GenError> {
    if n < 2 {
        return Err(GenError::BadParams { family: "shift", detail: format!("need n >= 2, got {n}") });
    }
    let pairs = combinations(n, 2);
    let rank: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(r, p)| ((p[0], p[1]), r)).collect();
    let mut edges = Vec::new();
    for p in &pairs {
        for k in p[1] + 1..n {
            edges.push((rank[&(p[0], p[1])], rank[&(p[1], k)]));
        }
    }
    Graph::from_edges(pairs.len(), &edges).map_err(|e| GenError::BadParams {
        family: "shift",
        detail: e.to_string(),
    })
}

/// Seeded random triangle-free graph: one pass over all vertex pairs in a
/// shuffled order, adding each edge unless it closes a triangle.
pub fn random_triangle_free(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if adj[u].intersection(&adj[v]).next().is_none() {
            adj[u].insert(v);
            adj[v].insert(u);
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Parsed graph-family descriptor, e.g. "mycielski:cycle:5", "kneser:5:2",
/// "rtf:n=30:seed=7".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Cycle(usize),
    CompleteBipartite(usize, usize),
    Petersen,
    Groetzsch,
    Mycielski(Box<FamilySpec>),
    Kneser(usize, usize),
    Shift(usize),
    RandomTriangleFree { n: usize, seed: u64 },
}

impl FamilySpec {
    pub fn generate(&self) -> Result<Graph, GenError> {
        match self {
            FamilySpec::Cycle(n) => {
                if *n < 3 {
                    return Err(GenError::BadParams {
                        family: "cycle",
                        detail: format!("need n >= 3, got {n}"),
                    });
                }
                Ok(cycle(*n))
            }
            FamilySpec::CompleteBipartite(a, b) => Ok(complete_bipartite(*a, *b)),
            FamilySpec::Petersen => Ok(petersen()),
            FamilySpec::Groetzsch => Ok(groetzsch()),
            FamilySpec::Mycielski(inner) => Ok(mycielski(&inner.generate()?)),
            FamilySpec::Kneser(n, k) => kneser(*n, *k),
            FamilySpec::Shift(n) => shift(*n),
            FamilySpec::RandomTriangleFree { n, seed } => Ok(random_triangle_free(*n, *seed)),
        }
    }
}

fn int_param(family: &'static str, s: &str) -> Result<usize, GenError> {
    s.parse().map_err(|_| GenError::BadParams {
        family,
        detail: format!("expected an integer, got {s:?}"),
    })
}

impl FromStr for FamilySpec {
    type Err = GenError;

    fn from_str(s: &str) -> Result<FamilySpec, GenError> {
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let parts = |family: &'static str, arity: usize| -> Result<Vec<&str>, GenError> {
            let ps: Vec<&str> = rest.map(|r| r.split(':').collect()).unwrap_or_default();
            if ps.len() != arity {
                return Err(GenError::BadParams {
                    family,
                    detail: format!("expected {arity} parameter(s), got {}", ps.len()),
                });
            }
            Ok(ps)
        };
        match head {
            "cycle" => Ok(FamilySpec::Cycle(int_param("cycle", parts("cycle", 1)?[0])?)),
            "complete_bipartite" | "kab" => {
                let ps = parts("complete_bipartite", 2)?;
                Ok(FamilySpec::CompleteBipartite(
                    int_param("complete_bipartite", ps[0])?,
                    int_param("complete_bipartite", ps[1])?,
                ))
            }
            "petersen" => {
                parts("petersen", 0)?;
                Ok(FamilySpec::Petersen)
            }
            "groetzsch" => {
                parts("groetzsch", 0)?;
                Ok(FamilySpec::Groetzsch)
            }
            "mycielski" => {
                let inner = rest.ok_or(GenError::BadParams {
                    family: "mycielski",
                    detail: "expected a nested family".to_string(),
                })?;
                Ok(FamilySpec::Mycielski(Box::new(inner.parse()?)))
            }
            "kneser" => {
                let ps = parts("kneser", 2)?;
                Ok(FamilySpec::Kneser(int_param("kneser", ps[0])?, int_param("kneser", ps[1])?))
            }
            "shift" => Ok(FamilySpec::Shift(int_param("shift", parts("shift", 1)?[0])?)),
            "rtf" | "random_triangle_free" => {
                let mut n = None;
                let mut seed = 0u64;
                for kv in rest.map(|r| r.split(':')).into_iter().flatten() {
                    match kv.split_once('=') {
                        Some(("n", v)) => n = Some(int_param("rtf", v)?),
                        Some(("seed", v)) => {
                            seed = v.parse().map_err(|_| GenError::BadParams {
                                family: "rtf",
                                detail: format!("bad seed {v:?}"),
                            })?
                        }
                        _ => {
                            return Err(GenError::BadParams {
                                family: "rtf",
                                detail: format!("unknown parameter {kv:?}"),
                            })
                        }
                    }
                }
                let n = n.ok_or(GenError::BadParams {
                    family: "rtf",
                    detail: "missing n=<int>".to_string(),
                })?;
                Ok(FamilySpec::RandomTriangleFree { n, seed })
            }
            other => Err(GenError::UnknownFamily(other.to_string())),
        }
    }
}

/// Extended t-trellis built exactly from the definition: row apices, column
/// pairs a_j b_j for j in 1..=t, the 0-column path a0-c0-b0, and one spoke
/// pair per (row, column). k = 2 adds every cross edge a_{x,j}-b_{x',j}
/// with x != x' in columns 1..=t; `ell11_adjacent` adds the single cross
/// edge a_{1,0}-b_{2,0}.
pub fn canonical_extended_trellis(
    t: usize,
    k: usize,
    ell11_adjacent: bool,
) -> (Graph, TrellisEmbedding) {
    assert!(t >= 1, "trellis needs at least one row");
    assert!(k == 1 || k == 2, "k selects the uniform adjacency type");
    let x: Vec<usize> = (0..t).collect();
    let a: Vec<usize> = (0..t).map(|j| t + j).collect();
    let b: Vec<usize> = (0..t).map(|j| 2 * t + j).collect();
    let (a0, c0, b0) = (3 * t, 3 * t + 1, 3 * t + 2);
    let spoke_base = 3 * t + 3;
    let a_spoke = |r: usize, j: usize| spoke_base + r * (t + 1) + j;
    let b_spoke = |r: usize, j: usize| spoke_base + t * (t + 1) + r * (t + 1) + j;
    let n = spoke_base + 2 * t * (t + 1);

    let mut edges = Vec::new();
    for j in 1..=t {
        edges.push((a[j - 1], b[j - 1]));
    }
    edges.push((a0, c0));
    edges.push((c0, b0));
    let mut a_map = BTreeMap::new();
    let mut b_map = BTreeMap::new();
    for (r, &xr) in x.iter().enumerate() {
        for j in 0..=t {
            let (aj, bj) = if j == 0 { (a0, b0) } else { (a[j - 1], b[j - 1]) };
            edges.push((xr, a_spoke(r, j)));
            edges.push((xr, b_spoke(r, j)));
            edges.push((a_spoke(r, j), aj));
            edges.push((b_spoke(r, j), bj));
            a_map.insert((r, j), a_spoke(r, j));
            b_map.insert((r, j), b_spoke(r, j));
        }
    }
    if k == 2 {
        for j in 1..=t {
            for r in 0..t {
                for r2 in 0..t {
                    if r != r2 {
                        edges.push((a_spoke(r, j), b_spoke(r2, j)));
                    }
                }
            }
        }
    }
    if ell11_adjacent && t >= 2 {
        edges.push((a_spoke(0, 0), b_spoke(1, 0)));
    }
    let g = Graph::from_edges(n, &edges).unwrap();
    let emb = TrellisEmbedding { x, a, b, a_map, b_map, ext: Some(TrellisExt { a0, c0, b0 }) };
    (g, emb)
}

/// Cable with one vertex per Y-slot and Z-slot: Y_i is a private star over
/// the base (one leaf per base vertex), and each type-2 pair (i, j) gets a
/// single vertex z in N_i adjacent to x_i and to every vertex of N_j.
pub fn canonical_cable_with_types(
    t: usize,
    typer: &dyn Fn(usize, usize) -> PairType,
) -> (Graph, Cable) {
    canonical_cable_sized(t, 1, typer)
}

pub fn canonical_cable(t: usize, cable_type: usize, base_size: usize) -> (Graph, Cable) {
    assert!(cable_type == 1 || cable_type == 2, "cable type is 1 or 2");
    let ty = if cable_type == 1 { PairType::One } else { PairType::Two };
    canonical_cable_sized(t, base_size, &|_, _| ty)
}

pub fn canonical_cable_sized(
    t: usize,
    base_size: usize,
    typer: &dyn Fn(usize, usize) -> PairType,
) -> (Graph, Cable) {
    assert!(base_size >= 1, "base must be nonempty");
    let b = base_size;
    let x: Vec<usize> = (0..t).collect();
    let base: BTreeSet<usize> = (t..t + b).collect();
    let y_vertex = |i: usize, c: usize| t + b + i * b + c;
    let mut next = t + b + t * b;
    let mut z_vertex = BTreeMap::new();
    for i in 0..t {
        for j in i + 1..t {
            if typer(i, j) == PairType::Two {
                z_vertex.insert((i, j), next);
                next += 1;
            }
        }
    }
    let n = next;

    let mut n_sets: Vec<BTreeSet<usize>> = Vec::new();
    let mut y: Vec<BTreeSet<usize>> = Vec::new();
    for i in 0..t {
        let yi: BTreeSet<usize> = (0..b).map(|c| y_vertex(i, c)).collect();
        let zi: BTreeSet<usize> =
            (i + 1..t).filter_map(|j| z_vertex.get(&(i, j)).copied()).collect();
        n_sets.push(yi.union(&zi).copied().collect());
        y.push(yi);
    }

    let mut edges = Vec::new();
    for (i, &xi) in x.iter().enumerate() {
        for c in 0..b {
            edges.push((xi, y_vertex(i, c)));
            edges.push((y_vertex(i, c), t + c));
        }
    }
    for (&(i, j), &z) in &z_vertex {
        edges.push((x[i], z));
        for &u in &n_sets[j] {
            edges.push((z, u));
        }
    }
    let g = Graph::from_edges(n, &edges).unwrap();
    let z: BTreeMap<(usize, usize), BTreeSet<usize>> =
        z_vertex.into_iter().map(|(k, v)| (k, BTreeSet::from([v]))).collect();
    (g, Cable { x, n_sets, z, y, base })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShowerFixture {
    /// The C6 shower: levels {0}, {1,2}, {3,4,5}, drain 4; jetset {3}.
    C6Basic,
    /// Base path of nu+1 vertices starting at the drain, with private
    /// parents for all but the first.
    CombSprinkler(usize),
    /// C6Basic plus one subdivision detour; jetset {3,4}.
    TwoJet,
}

pub fn canonical_shower_fixture(kind: ShowerFixture) -> (Graph, Shower) {
    match kind {
        ShowerFixture::C6Basic => {
            let g = Graph::from_edges(
                6,
                &[(0, 1), (0, 2), (1, 3), (2, 5), (3, 4), (4, 5)],
            )
            .unwrap();
            let s = Shower::new(
                vec![
                    BTreeSet::from([0]),
                    BTreeSet::from([1, 2]),
                    BTreeSet::from([3, 4, 5]),
                ],
                4,
            );
            (g, s)
        }
        ShowerFixture::CombSprinkler(nu) => {
            assert!(nu >= 2, "sprinklers need nu >= 2");
            let n = nu + 1;
            // head 0; parents 1..=nu; base path v_1..v_n with ids nu+i
            let mut edges = Vec::new();
            for p in 1..=nu {
                edges.push((0, p));
            }
            for i in 1..n {
                edges.push((nu + i, nu + i + 1));
            }
            for i in 2..=n {
                edges.push((i - 1, nu + i));
            }
            let g = Graph::from_edges(2 * nu + 2, &edges).unwrap();
            let s = Shower::new(
                vec![
                    BTreeSet::from([0]),
                    (1..=nu).collect(),
                    (nu + 1..=nu + n).collect(),
                ],
                nu + 1,
            );
            (g, s)
        }
        ShowerFixture::TwoJet => {
            let g = Graph::from_edges(
                8,
                &[
                    (0, 1),
                    (0, 2),
                    (0, 6),
                    (1, 3),
                    (2, 5),
                    (3, 4),
                    (4, 5),
                    (6, 7),
                    (7, 3),
                ],
            )
            .unwrap();
            let s = Shower::new(
                vec![
                    BTreeSet::from([0]),
                    BTreeSet::from([1, 2, 6]),
                    BTreeSet::from([3, 4, 5, 7]),
                ],
                4,
            );
            (g, s)
        }
    }
}

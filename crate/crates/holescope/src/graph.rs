//! Immutable simple undirected graphs with dense 0-based vertex ids,
//! graph6 / edge-list ingestion, and metric primitives (BFS distance,
//! spheres and balls, girth, induced path/cycle checks).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge list: {0}")]
    EdgeList(String),
}

/// Simple undirected graph. Adjacency is kept as sorted sets so every scan
/// over neighbors is deterministic.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<BTreeSet<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        Graph { n, adj: vec![BTreeSet::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![BTreeSet::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Edges with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Subgraph induced on `set`, with vertices relabeled 0..set.len() in
    /// ascending order of original id. Returns the subgraph and the map from
    /// new ids back to original ids.
    pub fn induced_subgraph(&self, set: &BTreeSet<usize>) -> (Graph, Vec<usize>) {
        let back: Vec<usize> = set.iter().copied().collect();
        let mut fwd = vec![usize::MAX; self.n];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let mut adj = vec![BTreeSet::new(); back.len()];
        for (i, &v) in back.iter().enumerate() {
            for &w in &self.adj[v] {
                if w < self.n && fwd[w] != usize::MAX {
                    adj[i].insert(fwd[w]);
                }
            }
        }
        (Graph { n: back.len(), adj }, back)
    }

    /// BFS distances from `v`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, v: usize) -> Vec<usize> {
        assert!(v < self.n, "vertex {v} out of range");
        let mut dist = vec![usize::MAX; self.n];
        dist[v] = 0;
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn dist(&self, u: usize, v: usize) -> Distance {
        assert!(u < self.n && v < self.n, "vertex out of range");
        match self.bfs_distances(u)[v] {
            usize::MAX => Distance::Infinite,
            d => Distance::Finite(d),
        }
    }

    /// Sphere (closed = false) or ball (closed = true) of radius `rho`
    /// around `v`, by BFS distance.
    pub fn neighborhood(&self, v: usize, rho: usize, closed: bool) -> BTreeSet<usize> {
        let dist = self.bfs_distances(v);
        (0..self.n)
            .filter(|&u| {
                if closed {
                    dist[u] <= rho
                } else {
                    dist[u] == rho
                }
            })
            .collect()
    }

    pub fn is_triangle_free(&self) -> bool {
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if v <= u {
                    continue;
                }
                if self.adj[u].intersection(&self.adj[v]).any(|&w| w > v) {
                    return false;
                }
            }
        }
        true
    }

    /// Length of a shortest cycle; infinite for forests. Per-root BFS: the
    /// minimum over all roots of (dist[u] + dist[v] + 1) over non-tree edges
    /// seen from that root equals the girth.
    pub fn girth(&self) -> Distance {
        let mut best = usize::MAX;
        for root in 0..self.n {
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] >= best {
                    break;
                }
                for &w in &self.adj[u] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Distance::Infinite
        } else {
            Distance::Finite(best)
        }
    }

    /// Connected components as sorted vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for v in 0..self.n {
            if seen[v] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut stack = vec![v];
            seen[v] = true;
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// True iff the set induces a connected subgraph. The empty set counts
    /// as disconnected only when callers say so; here empty is connected.
    pub fn is_connected_set(&self, set: &BTreeSet<usize>) -> bool {
        let Some(&start) = set.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if set.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == set.len()
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![2u8; self.n];
        for start in 0..self.n {
            if color[start] != 2 {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == 2 {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Ordered list of distinct vertices, carrier for paths and cycles.
pub type VertexSeq = Vec<usize>;

/// Shortest-path length, with disconnected pairs first-class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Infinite => write!(f, "inf"),
        }
    }
}

fn distinct(seq: &[usize]) -> bool {
    let set: BTreeSet<usize> = seq.iter().copied().collect();
    set.len() == seq.len()
}

/// True iff `seq` lists the vertices of an induced path in order: consecutive
/// members adjacent, all other pairs (including the end pair) non-adjacent.
/// Repeated vertices make this false, not an error.
pub fn is_induced_path(g: &Graph, seq: &[usize]) -> bool {
    if seq.iter().any(|&v| v >= g.n()) || !distinct(seq) {
        return false;
    }
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            let adjacent = g.has_edge(seq[i], seq[j]);
            if (j == i + 1) != adjacent {
                return false;
            }
        }
    }
    true
}

/// True iff `seq` lists an induced cycle in order: consecutive members and
/// the wrap pair adjacent, every other pair non-adjacent, length >= 3.
pub fn is_induced_cycle(g: &Graph, seq: &[usize]) -> bool {
    let k = seq.len();
    if k < 3 || seq.iter().any(|&v| v >= g.n()) || !distinct(seq) {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if consecutive != g.has_edge(seq[i], seq[j]) {
                return false;
            }
        }
    }
    true
}

const G6_MIN: u8 = 63;
const G6_MAX: u8 = 126;

/// Parse standard header-less graph6.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let bytes: Vec<u8> = text.trim().bytes().collect();
    if bytes.is_empty() {
        return Err(GraphError::Graph6("empty input".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(G6_MIN..=G6_MAX).contains(&b)) {
        return Err(GraphError::Graph6(format!("non-printable byte {b}")));
    }
    let (n, mut pos) = if bytes[0] != b'~' {
        ((bytes[0] - G6_MIN) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] != b'~' {
        if bytes.len() < 4 {
            return Err(GraphError::Graph6("truncated length header".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[1..4] {
            n = (n << 6) | (b - G6_MIN) as usize;
        }
        (n, 4)
    } else {
        if bytes.len() < 8 {
            return Err(GraphError::Graph6("truncated length header".into()));
        }
        let mut n = 0usize;
        for &b in &bytes[2..8] {
            n = (n << 6) | (b - G6_MIN) as usize;
        }
        (n, 8)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() - pos != nbytes {
        return Err(GraphError::Graph6(format!(
            "expected {} data bytes for n = {}, got {}",
            nbytes,
            n,
            bytes.len() - pos
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0usize;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit.is_multiple_of(6) {
                cur = bytes[pos] - G6_MIN;
                pos += 1;
            }
            if cur & (1 << (5 - bit % 6)) != 0 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    // padding bits must be zero
    if !bit.is_multiple_of(6) {
        let pad_mask = (1u8 << (6 - bit % 6)) - 1;
        if cur & pad_mask != 0 {
            return Err(GraphError::Graph6("nonzero trailing bits".into()));
        }
    }
    Graph::from_edges(n, &edges)
}

/// Emit standard header-less graph6; inverse of [`parse_graph6`] on adjacency.
pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(G6_MIN + n as u8);
    } else if n <= 258_047 {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(G6_MIN + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        out.push(b'~');
        out.push(b'~');
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(G6_MIN + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut cur = 0u8;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                cur |= 1 << (5 - bit % 6);
            }
            bit += 1;
            if bit.is_multiple_of(6) {
                out.push(G6_MIN + cur);
                cur = 0;
            }
        }
    }
    if !bit.is_multiple_of(6) {
        out.push(G6_MIN + cur);
    }
    String::from_utf8(out).unwrap()
}

/// Parse a whitespace edge list: lines "u v", with an optional "n <k>"
/// header fixing the vertex count. Without a header, n = max id + 1.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_id = 0usize;
    let mut any = false;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let a = it.next().unwrap();
        let b = it
            .next()
            .ok_or_else(|| GraphError::EdgeList(format!("line {}: missing field", lineno + 1)))?;
        if it.next().is_some() {
            return Err(GraphError::EdgeList(format!("line {}: extra fields", lineno + 1)));
        }
        if a == "n" {
            let k: usize = b
                .parse()
                .map_err(|_| GraphError::EdgeList(format!("line {}: bad count", lineno + 1)))?;
            n = Some(k);
            continue;
        }
        let parse = |s: &str| -> Result<usize, GraphError> {
            s.parse()
                .map_err(|_| GraphError::EdgeList(format!("line {}: bad vertex id {s:?}", lineno + 1)))
        };
        let (u, v) = (parse(a)?, parse(b)?);
        if u == v {
            return Err(GraphError::EdgeList(format!("line {}: loop {u} {u}", lineno + 1)));
        }
        max_id = max_id.max(u).max(v);
        any = true;
        edges.push((u, v));
    }
    let n = n.unwrap_or(if any { max_id + 1 } else { 0 });
    Graph::from_edges(n, &edges)
}

/// Cycle graph C_n as a convenience for fixtures.
pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Path graph P_n (n vertices).
pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

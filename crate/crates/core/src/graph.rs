//! Finite simple graphs: construction, edge-list ingestion, generators and
//! the combinatorial queries the Poincare machinery needs (vertex boundary,
//! closure, the doubled graph Γ(S), volumes, diameter, Cheeger constant).

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::hash::{DefaultHasher, Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type VertexId = usize;

/// Finite simple undirected unweighted graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    edge_count: usize,
    connected: bool,
    id: u64,
}

impl Graph {
    /// Builds a graph on `n` vertices, symmetrizing and deduplicating the
    /// given edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::OutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(adj: Vec<Vec<VertexId>>) -> Self {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let connected = is_connected(&adj);
        let mut hasher = DefaultHasher::new();
        adj.hash(&mut hasher);
        Self {
            adj,
            edge_count,
            connected,
            id: hasher.finish(),
        }
    }

    /// Parses an edge-list document: one `u v` pair per line, blank lines and
    /// `#` comments ignored. Vertex ids are compacted to `0..n` preserving
    /// their numeric order.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut raw = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: &str| Error::Parse {
                line: idx + 1,
                message: message.into(),
            };
            let mut tokens = line.split_whitespace();
            let mut next_id = || -> Result<u64> {
                let tok = tokens
                    .next()
                    .ok_or_else(|| parse_err("expected two vertex ids"))?;
                tok.parse::<u64>()
                    .map_err(|_| parse_err(&format!("invalid vertex id {tok:?}")))
            };
            let u = next_id()?;
            let v = next_id()?;
            if tokens.next().is_some() {
                return Err(parse_err("expected exactly two vertex ids"));
            }
            if u == v {
                return Err(Error::SelfLoop(u as usize));
            }
            raw.push((u, v));
        }
        if raw.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let ids: BTreeMap<u64, VertexId> = raw
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, id)| (id, i))
            .collect();
        Self::from_edges(ids.len(), raw.into_iter().map(|(u, v)| (ids[&u], ids[&v])))
    }

    pub fn generate(kind: &GraphKind) -> Result<Self> {
        match kind {
            GraphKind::Path(n) => {
                check(*n >= 2, "path needs at least 2 vertices")?;
                Self::from_edges(*n, (1..*n).map(|i| (i - 1, i)))
            }
            GraphKind::Cycle(n) => {
                check(*n >= 3, "cycle needs at least 3 vertices")?;
                Self::from_edges(*n, (0..*n).map(|i| (i, (i + 1) % n)))
            }
            GraphKind::Grid(dims) => {
                check(!dims.is_empty(), "grid needs at least one axis")?;
                check(
                    dims.iter().all(|&d| d >= 2),
                    "grid axes need length at least 2",
                )?;
                Ok(box_product(dims, false))
            }
            GraphKind::Torus(dims) => {
                check(!dims.is_empty(), "torus needs at least one axis")?;
                check(
                    dims.iter().all(|&d| d >= 3),
                    "torus axes need length at least 3",
                )?;
                Ok(box_product(dims, true))
            }
            GraphKind::Tree { q, depth } => {
                check(*q >= 2, "tree branching q must be at least 2")?;
                check(*depth >= 1, "tree depth must be at least 1")?;
                let levels = tree_level_ranges(*q, *depth);
                let n = levels.last().map_or(1, |r| r.end);
                let mut edges = Vec::with_capacity(n - 1);
                for m in 1..levels.len() {
                    let children_per = if m == 1 { q + 1 } else { *q };
                    for (k, child) in levels[m].clone().enumerate() {
                        edges.push((levels[m - 1].start + k / children_per, child));
                    }
                }
                Self::from_edges(n, edges)
            }
        }
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self> {
        check(n >= 2, "complete graph needs at least 2 vertices")?;
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// Star with center `0` and the given number of leaves.
    pub fn star(leaves: usize) -> Result<Self> {
        check(leaves >= 1, "star needs at least one leaf")?;
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    /// `d(G)`, the largest vertex degree.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Structural fingerprint used to tag signals with their host graph.
    pub fn id(&self) -> u64 {
        self.id
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Normalized edge-list document (one `u v` line per edge, `u < v`).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.connected {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.into()))
    }
}

fn is_connected(adj: &[Vec<VertexId>]) -> bool {
    if adj.is_empty() {
        return false;
    }
    bfs_distances(adj, 0).iter().all(Option::is_some)
}

fn bfs_distances(adj: &[Vec<VertexId>], source: VertexId) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Cartesian product of paths (or cycles when `wrap`). The last axis varies
/// fastest in the vertex numbering.
fn box_product(dims: &[usize], wrap: bool) -> Graph {
    let n: usize = dims.iter().product();
    let mut strides = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let mut edges = Vec::new();
    for v in 0..n {
        for (k, (&len, &stride)) in dims.iter().zip(&strides).enumerate() {
            let coord = (v / stride) % len;
            if coord + 1 < len {
                edges.push((v, v + stride));
            } else if wrap {
                edges.push((v, v - coord * strides[k]));
            }
        }
    }
    Graph::from_edges(n, edges).expect("box product edges are valid")
}

/// Vertex id ranges of each level of `tree(q, depth)` (level 0 is the root).
pub fn tree_level_ranges(q: usize, depth: usize) -> Vec<std::ops::Range<VertexId>> {
    let mut levels = Vec::with_capacity(depth + 1);
    levels.push(0..1);
    let mut size = 1;
    for m in 1..=depth {
        size = if m == 1 { q + 1 } else { size * q };
        let start = levels[m - 1].end;
        levels.push(start..start + size);
    }
    levels
}

/// Generator families; finite sections of ℤ, ℤⁿ and homogeneous trees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Path(usize),
    Cycle(usize),
    Grid(Vec<usize>),
    Torus(Vec<usize>),
    /// Root has `q + 1` children, every other internal vertex `q`.
    Tree {
        q: usize,
        depth: usize,
    },
}

impl GraphKind {
    /// Parses a kind name and its integer parameters, e.g. `("grid", [3, 3])`.
    pub fn parse(name: &str, params: &[usize]) -> Result<Self> {
        let want = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} takes {k} parameter(s)"
                )))
            }
        };
        match name {
            "path" => want(1).map(|_| Self::Path(params[0])),
            "cycle" => want(1).map(|_| Self::Cycle(params[0])),
            "grid" if !params.is_empty() => Ok(Self::Grid(params.to_vec())),
            "torus" if !params.is_empty() => Ok(Self::Torus(params.to_vec())),
            "tree" => want(2).map(|_| Self::Tree {
                q: params[0],
                depth: params[1],
            }),
            _ => Err(Error::InvalidParameter(format!(
                "unknown graph kind {name:?}"
            ))),
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |d: &[usize]| d.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        match self {
            Self::Path(n) => write!(f, "path {n}"),
            Self::Cycle(n) => write!(f, "cycle {n}"),
            Self::Grid(d) => write!(f, "grid {}", join(d)),
            Self::Torus(d) => write!(f, "torus {}", join(d)),
            Self::Tree { q, depth } => write!(f, "tree {q} {depth}"),
        }
    }
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct VertexSet(Vec<VertexId>);

impl VertexSet {
    pub fn new(mut ids: Vec<VertexId>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    /// Like [`VertexSet::new`] but rejects ids outside `g`.
    pub fn in_graph(g: &Graph, ids: Vec<VertexId>) -> Result<Self> {
        let set = Self::new(ids);
        set.check_in(g)?;
        Ok(set)
    }

    pub fn all(g: &Graph) -> Self {
        Self((0..g.n()).collect())
    }

    pub fn check_in(&self, g: &Graph) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= g.n() => Err(Error::OutOfRange {
                vertex: v,
                n: g.n(),
            }),
            _ => Ok(()),
        }
    }

    pub fn members(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.0.iter().all(|&v| !other.contains(v))
    }

    /// `V(G) \ self`.
    pub fn complement(&self, g: &Graph) -> Self {
        Self((0..g.n()).filter(|&v| !self.contains(v)).collect())
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }
}

impl From<Vec<VertexId>> for VertexSet {
    fn from(ids: Vec<VertexId>) -> Self {
        Self::new(ids)
    }
}

impl From<VertexSet> for Vec<VertexId> {
    fn from(set: VertexSet) -> Self {
        set.0
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

/// Vertex boundary `bS`: vertices outside `S` adjacent to some vertex of `S`.
pub fn boundary(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    s.check_in(g)?;
    let mask = s.mask(g.n());
    Ok(s.iter()
        .flat_map(|v| g.neighbors(v).iter().copied())
        .filter(|&u| !mask[u])
        .collect())
}

/// Closure `S ∪ bS`.
pub fn closure(g: &Graph, s: &VertexSet) -> Result<VertexSet> {
    Ok(s.union(&boundary(g, s)?))
}

/// Induced subgraph on a vertex set, with the local-to-global vertex map.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `vertices[i]` is the host vertex of local vertex `i` (ascending).
    pub vertices: Vec<VertexId>,
}

impl InducedSubgraph {
    pub fn local(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }
}

pub fn induced_subgraph(g: &Graph, w: &VertexSet) -> Result<InducedSubgraph> {
    w.check_in(g)?;
    let local: HashMap<VertexId, usize> = w.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let edges = w.iter().flat_map(|u| {
        let local = &local;
        g.neighbors(u)
            .iter()
            .filter(move |&&v| v > u)
            .filter_map(move |v| local.get(v).map(|&j| (local[&u], j)))
    });
    let graph = Graph::from_edges(w.len(), edges.collect::<Vec<_>>())?;
    Ok(InducedSubgraph {
        graph,
        vertices: w.members().to_vec(),
    })
}

/// The doubled graph Γ(S): two copies of the induced closure `S̄ = S ∪ bS`
/// glued along `bS`.
///
/// Vertex `i` of the closure (in ascending host order) maps to `map_copy1[i]`
/// and `map_copy2[i]`; the two maps agree exactly on boundary vertices.
/// Edges joining two boundary vertices are shared by both copies and appear
/// once, so the graph stays simple.
#[derive(Clone, Debug)]
pub struct GammaGraph {
    pub graph: Graph,
    pub closure: InducedSubgraph,
    /// `true` for closure positions that belong to `bS`.
    pub on_boundary: Vec<bool>,
    pub map_copy1: Vec<usize>,
    pub map_copy2: Vec<usize>,
}

pub fn gamma_double(g: &Graph, s: &VertexSet) -> Result<GammaGraph> {
    if s.is_empty() {
        return Err(Error::InvalidParameter("Γ(S) needs a non-empty set".into()));
    }
    let bs = boundary(g, s)?;
    if bs.is_empty() {
        return Err(Error::EmptyBoundary);
    }
    let closure = induced_subgraph(g, &s.union(&bs))?;
    let c = closure.vertices.len();
    let on_boundary: Vec<bool> = closure.vertices.iter().map(|&v| bs.contains(v)).collect();
    let map_copy1: Vec<usize> = (0..c).collect();
    let mut next = c;
    let map_copy2: Vec<usize> = on_boundary
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            if b {
                i
            } else {
                next += 1;
                next - 1
            }
        })
        .collect();
    let edges: Vec<_> = closure
        .graph
        .edges()
        .flat_map(|(a, b)| [(map_copy1[a], map_copy1[b]), (map_copy2[a], map_copy2[b])])
        .collect();
    let graph = Graph::from_edges(next, edges)?;
    Ok(GammaGraph {
        graph,
        closure,
        on_boundary,
        map_copy1,
        map_copy2,
    })
}

/// `vol W = Σ_{v∈W} d(v)`.
pub fn volume(g: &Graph, w: &VertexSet) -> usize {
    w.iter().map(|v| g.degree(v)).sum()
}

/// Volume of `w` with degrees measured inside the subgraph induced by
/// `host_set` (e.g. `vol_{S̄}(bS)`).
pub fn volume_in_induced(g: &Graph, host_set: &VertexSet, w: &VertexSet) -> usize {
    w.iter()
        .map(|v| {
            g.neighbors(v)
                .iter()
                .filter(|&&u| host_set.contains(u))
                .count()
        })
        .sum()
}

pub fn diameter(g: &Graph) -> Result<usize> {
    g.require_connected()?;
    Ok((0..g.n())
        .map(|s| {
            bfs_distances(&g.adj, s)
                .into_iter()
                .flatten()
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0))
}

/// Default vertex-count limit for the exhaustive Cheeger search.
pub const CHEEGER_MAX_N: usize = 20;

/// Minimizing cut of the Cheeger constant, kept as an exact ratio.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheegerCut {
    pub cut_edges: usize,
    /// `min(vol W, vol W′)`
    pub volume: usize,
    pub set: VertexSet,
}

impl CheegerCut {
    pub fn value<T: Scalar>(&self) -> T {
        T::of_usize(self.cut_edges) / T::of_usize(self.volume)
    }
}

/// Exhaustive Cheeger constant `h = min_W |E(W, W′)| / min(vol W, vol W′)`
/// over non-empty proper `W`.
pub fn cheeger_constant(g: &Graph, limit: usize) -> Result<CheegerCut> {
    let n = g.n();
    if n > limit.min(63) {
        return Err(Error::TooLarge { n, limit });
    }
    g.require_connected()?;
    if n < 2 {
        return Err(Error::InvalidParameter(
            "Cheeger constant needs two vertices".into(),
        ));
    }
    let total: usize = g.degrees().iter().sum();
    let mut in_w = vec![false; n];
    let (mut cut, mut vol) = (0usize, 0usize);
    let mut best: Option<(usize, usize, u64)> = None;
    // Gray-code walk over subsets avoiding vertex n-1; W and W′ give the same ratio.
    for i in 1u64..(1u64 << (n - 1)) {
        let v = i.trailing_zeros() as usize;
        in_w[v] = !in_w[v];
        let inside = g.neighbors(v).iter().filter(|&&u| in_w[u]).count();
        let outside = g.degree(v) - inside;
        if in_w[v] {
            cut = cut + outside - inside;
            vol += g.degree(v);
        } else {
            cut = cut + inside - outside;
            vol -= g.degree(v);
        }
        let den = vol.min(total - vol);
        let better = match best {
            None => true,
            Some((bc, bd, _)) => (cut as u128) * (bd as u128) < (bc as u128) * (den as u128),
        };
        if better {
            best = Some((cut, den, i ^ (i >> 1)));
        }
    }
    let (cut_edges, volume, mask) = best.expect("at least one proper subset");
    let set = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
    Ok(CheegerCut {
        cut_edges,
        volume,
        set,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> VertexSet {
        VertexSet::new(ids.to_vec())
    }

    #[test]
    fn edge_list_path() {
        let g = Graph::from_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.degrees(), vec![1, 2, 1]);
    }

    #[test]
    fn edge_list_dedup_and_comments() {
        let g = Graph::from_edge_list("# header\n0 1\n\n1 0\n0 1\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(
            Graph::from_edge_list("3 3"),
            Err(Error::SelfLoop(3))
        ));
        assert!(matches!(
            Graph::from_edge_list("0 x"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("0 1 2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("0 1\n2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            Graph::from_edge_list("# nothing\n"),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn edge_list_compacts_ids() {
        let g = Graph::from_edge_list("10 20\n20 30").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.to_edge_list(), "0 1\n1 2\n");
    }

    #[test]
    fn generators() {
        let c4 = Graph::generate(&GraphKind::Cycle(4)).unwrap();
        assert_eq!(c4.n(), 4);
        assert!(c4.degrees().iter().all(|&d| d == 2));

        let t = Graph::generate(&GraphKind::Tree { q: 2, depth: 2 }).unwrap();
        assert_eq!(t.n(), 1 + 3 + 6);
        assert_eq!(t.degree(0), 3);
        for v in 1..=3 {
            assert_eq!(t.degree(v), 3);
        }
        assert!((4..10).all(|v| t.degree(v) == 1));

        let torus = Graph::generate(&GraphKind::Torus(vec![4, 4])).unwrap();
        assert_eq!(torus.n(), 16);
        assert!(torus.degrees().iter().all(|&d| d == 4));

        let grid = Graph::generate(&GraphKind::Grid(vec![3, 3])).unwrap();
        assert_eq!(grid.edge_count(), 12);
        assert_eq!(grid.degree(4), 4);
    }

    #[test]
    fn generator_parameter_checks() {
        assert!(Graph::generate(&GraphKind::Path(1)).is_err());
        assert!(Graph::generate(&GraphKind::Cycle(2)).is_err());
        assert!(Graph::generate(&GraphKind::Torus(vec![4, 2])).is_err());
        assert!(Graph::generate(&GraphKind::Tree { q: 1, depth: 3 }).is_err());
        assert!(Graph::generate(&GraphKind::Tree { q: 2, depth: 0 }).is_err());
    }

    #[test]
    fn kind_parse_display_roundtrip() {
        for (name, params) in [
            ("cycle", vec![5]),
            ("grid", vec![3, 4]),
            ("tree", vec![2, 3]),
        ] {
            let kind = GraphKind::parse(name, &params).unwrap();
            let text = kind.to_string();
            let mut it = text.split(' ');
            let n = it.next().unwrap();
            let p: Vec<usize> = it.map(|x| x.parse().unwrap()).collect();
            assert_eq!(GraphKind::parse(n, &p).unwrap(), kind);
        }
        assert!(GraphKind::parse("cycle", &[3, 4]).is_err());
        assert!(GraphKind::parse("wheel", &[3]).is_err());
    }

    #[test]
    fn boundaries() {
        let p5 = Graph::generate(&GraphKind::Path(5)).unwrap();
        assert_eq!(boundary(&p5, &set(&[2])).unwrap(), set(&[1, 3]));
        let c4 = Graph::generate(&GraphKind::Cycle(4)).unwrap();
        assert!(boundary(&c4, &set(&[0, 1, 2, 3])).unwrap().is_empty());
        let grid = Graph::generate(&GraphKind::Grid(vec![3, 3])).unwrap();
        assert_eq!(boundary(&grid, &set(&[4])).unwrap(), set(&[1, 3, 5, 7]));
        assert!(matches!(
            boundary(&p5, &set(&[7])),
            Err(Error::OutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn gamma_of_interior_vertex_is_c4() {
        let p7 = Graph::generate(&GraphKind::Path(7)).unwrap();
        let gamma = gamma_double(&p7, &set(&[3])).unwrap();
        assert_eq!(gamma.graph.n(), 4);
        assert!(gamma.graph.degrees().iter().all(|&d| d == 2));
        assert!(gamma.graph.is_connected());
    }

    #[test]
    fn gamma_requires_boundary() {
        let c4 = Graph::generate(&GraphKind::Cycle(4)).unwrap();
        assert!(matches!(
            gamma_double(&c4, &set(&[0, 1, 2, 3])),
            Err(Error::EmptyBoundary)
        ));
    }

    #[test]
    fn volumes() {
        let c4 = Graph::generate(&GraphKind::Cycle(4)).unwrap();
        assert_eq!(volume(&c4, &VertexSet::all(&c4)), 8);
        let p3 = Graph::generate(&GraphKind::Path(3)).unwrap();
        assert_eq!(volume(&p3, &set(&[1])), 2);
        let p5 = Graph::generate(&GraphKind::Path(5)).unwrap();
        let s = set(&[2]);
        let closure = closure(&p5, &s).unwrap();
        let bs = boundary(&p5, &s).unwrap();
        assert_eq!(volume_in_induced(&p5, &closure, &bs), 2);
    }

    #[test]
    fn diameters() {
        let d = |k| diameter(&Graph::generate(&k).unwrap()).unwrap();
        assert_eq!(d(GraphKind::Cycle(6)), 3);
        assert_eq!(d(GraphKind::Path(5)), 4);
        assert_eq!(d(GraphKind::Grid(vec![3, 3])), 4);
        let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(diameter(&split), Err(Error::Disconnected)));
    }

    #[test]
    fn cheeger_small_graphs() {
        let c4 = Graph::generate(&GraphKind::Cycle(4)).unwrap();
        let h = cheeger_constant(&c4, CHEEGER_MAX_N).unwrap();
        assert_eq!((h.cut_edges, h.volume), (2, 4));
        assert_eq!(h.value::<f64>(), 0.5);

        // every cut of K3 separates 2 edges from a side of volume 2
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(
            cheeger_constant(&k3, CHEEGER_MAX_N).unwrap().value::<f64>(),
            1.0
        );

        let p2 = Graph::generate(&GraphKind::Path(2)).unwrap();
        assert_eq!(
            cheeger_constant(&p2, CHEEGER_MAX_N).unwrap().value::<f64>(),
            1.0
        );

        let c30 = Graph::generate(&GraphKind::Cycle(30)).unwrap();
        assert!(matches!(
            cheeger_constant(&c30, CHEEGER_MAX_N),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn vertex_set_json() {
        let s: VertexSet = serde_json::from_str("[3, 1, 3]").unwrap();
        assert_eq!(s.members(), &[1, 3]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
    }
}

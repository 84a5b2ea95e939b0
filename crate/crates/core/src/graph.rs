// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Coupling graphs, BFS all-pairs shortest paths and the metric supergraph.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::route::ActiveSet;

/// Hop distance between two vertices. Unreachable pairs hold [`UNREACHABLE`].
pub type Distance = u32;

pub const UNREACHABLE: Distance = Distance::MAX;

/// Predecessor sentinel used on the diagonal and for unreachable pairs.
pub const NO_PREDECESSOR: usize = usize::MAX;

/// Undirected, unweighted, connected graph of physical qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl CouplingGraph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates,
    /// out-of-range endpoints and disconnected vertex sets.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let g = Self::new_unchecked_connectivity(n, edges)?;
        g.check_connected()?;
        Ok(g)
    }

    /// Same validation as [`CouplingGraph::new`] except connectivity.
    pub fn new_unchecked_connectivity(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange(u, v, n));
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if adjacency[a].contains(&b) {
                return Err(Error::DuplicateEdge(a, b));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
            normalized.push((a, b));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        normalized.sort_unstable();
        Ok(Self {
            n,
            edges: normalized,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    fn check_connected(&self) -> Result<()> {
        let row = bfs_row(self, 0, None);
        match row.dist.iter().position(|&d| d == UNREACHABLE) {
            Some(v) => Err(Error::Disconnected(0, v)),
            None => Ok(()),
        }
    }

    /// Parses the text format: a header `n m`, then `m` lines `u v`.
    /// Blank lines and everything after `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (header_line, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            message: "missing 'n m' header".into(),
        })?;
        let header = parse_pair(header_line, header)?;
        let (n, m) = header;
        let mut edges = Vec::with_capacity(m);
        for (line, content) in lines {
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    message: format!("more than the declared {m} edges"),
                });
            }
            edges.push(parse_pair(line, content)?);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: 0,
                message: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Self::new(n, &edges)
    }

    /// Serializes into the text format accepted by [`CouplingGraph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn parse_pair(line: usize, content: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = content.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse {
            line,
            message: format!("expected two integers, got '{content}'"),
        });
    }
    let parse = |s: &str| {
        s.parse::<usize>().map_err(|e| Error::Parse {
            line,
            message: format!("'{s}': {e}"),
        })
    };
    Ok((parse(fields[0])?, parse(fields[1])?))
}

/// Hop distances and predecessors for every ordered vertex pair.
///
/// `predecessor(v, u)` is the vertex right before `u` on the chosen shortest
/// `v -> u` path. BFS scans neighbors in ascending order and the first
/// discovery wins, so the tables are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTables {
    n: usize,
    dist: Vec<Distance>,
    pred: Vec<usize>,
}

struct BfsRow {
    dist: Vec<Distance>,
    pred: Vec<usize>,
}

fn bfs_row(g: &CouplingGraph, source: usize, active: Option<&ActiveSet>) -> BfsRow {
    let n = g.n();
    let mut dist = vec![UNREACHABLE; n];
    let mut pred = vec![NO_PREDECESSOR; n];
    let allowed = |v: usize| active.is_none_or(|a| a.contains(v));
    if !allowed(source) {
        return BfsRow { dist, pred };
    }
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(t) = queue.pop_front() {
        for &r in g.neighbors(t) {
            if dist[r] == UNREACHABLE && allowed(r) {
                pred[r] = t;
                dist[r] = dist[t] + 1;
                queue.push_back(r);
            }
        }
    }
    BfsRow { dist, pred }
}

/// All-pairs BFS over the whole coupling graph.
pub fn shortest_paths(g: &CouplingGraph) -> Result<DistanceTables> {
    let tables = DistanceTables::build(g, None);
    for v in 0..g.n() {
        if let Some(u) = (0..g.n()).find(|&u| tables.distance(v, u) == UNREACHABLE) {
            return Err(Error::Disconnected(v, u));
        }
    }
    Ok(tables)
}

/// All-pairs BFS over the subgraph induced by `active`. Rows and columns of
/// inactive vertices stay unreachable; paths never pass through them.
pub fn shortest_paths_within(g: &CouplingGraph, active: &ActiveSet) -> Result<DistanceTables> {
    let first = active.first().ok_or(Error::EmptyActiveSet)?;
    let tables = DistanceTables::build(g, Some(active));
    if let Some(vertex) = active
        .iter()
        .find(|&u| tables.distance(first, u) == UNREACHABLE)
    {
        return Err(Error::DisconnectedActive {
            from: first,
            vertex,
        });
    }
    Ok(tables)
}

impl DistanceTables {
    fn build(g: &CouplingGraph, active: Option<&ActiveSet>) -> Self {
        let n = g.n();
        let mut dist = Vec::with_capacity(n * n);
        let mut pred = Vec::with_capacity(n * n);
        for v in 0..n {
            let row = bfs_row(g, v, active);
            dist.extend(row.dist);
            pred.extend(row.pred);
        }
        Self { n, dist, pred }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn distance(&self, v: usize, u: usize) -> Distance {
        self.dist[v * self.n + u]
    }

    /// Last vertex before `u` on the shortest `v -> u` path, or
    /// [`NO_PREDECESSOR`] when `u == v` or `u` is unreachable.
    pub fn predecessor(&self, v: usize, u: usize) -> usize {
        self.pred[v * self.n + u]
    }

    /// Simple shortest path from `v` to `u`, both endpoints included.
    pub fn get_path(&self, v: usize, u: usize) -> Walk {
        let mut path = self.get_path_no_first(v, u).vertices;
        path.insert(0, v);
        Walk::open(path)
    }

    /// [`DistanceTables::get_path`] without its first vertex; empty for `v == u`.
    pub fn get_path_no_first(&self, v: usize, u: usize) -> Walk {
        let mut path = Vec::with_capacity(self.distance(v, u) as usize);
        let mut t = u;
        while t != v {
            path.push(t);
            t = self.predecessor(v, t);
            assert!(t != NO_PREDECESSOR, "no path from {v} to {u}");
        }
        path.reverse();
        Walk::open(path)
    }
}

/// Complete weighted graph whose edge weights are coupling-graph hop distances.
#[derive(Debug, Clone)]
pub struct Supergraph {
    tables: DistanceTables,
}

impl Supergraph {
    pub fn from_tables(tables: DistanceTables) -> Self {
        Self { tables }
    }

    pub fn n(&self) -> usize {
        self.tables.n()
    }

    pub fn weight(&self, u: usize, v: usize) -> Distance {
        self.tables.distance(u, v)
    }

    pub fn tables(&self) -> &DistanceTables {
        &self.tables
    }

    /// Largest finite weight, i.e. the diameter of the underlying graph.
    pub fn max_weight(&self) -> Distance {
        self.tables
            .dist
            .iter()
            .copied()
            .filter(|&d| d != UNREACHABLE)
            .max()
            .unwrap_or(0)
    }
}

pub fn build_supergraph(g: &CouplingGraph) -> Result<Supergraph> {
    shortest_paths(g).map(Supergraph::from_tables)
}

/// Vertex sequence with possible repeats. Closed walks repeat their first
/// vertex at the end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Walk {
    pub vertices: Vec<usize>,
    pub closed: bool,
}

impl Walk {
    pub fn open(vertices: Vec<usize>) -> Self {
        Self {
            vertices,
            closed: false,
        }
    }

    pub fn closed(vertices: Vec<usize>) -> Self {
        Self {
            vertices,
            closed: true,
        }
    }

    /// Number of vertices in the sequence (the walk "length" k).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Every consecutive pair is a coupling-graph edge.
    pub fn is_valid_in(&self, g: &CouplingGraph) -> bool {
        self.vertices.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && (!self.closed || self.vertices.first() == self.vertices.last())
    }

    /// Every active vertex is visited and no inactive vertex is.
    pub fn covers(&self, active: &ActiveSet) -> bool {
        let mut seen = vec![false; active.capacity()];
        for &v in &self.vertices {
            if v >= seen.len() || !active.contains(v) {
                return false;
            }
            seen[v] = true;
        }
        active.iter().all(|v| seen[v])
    }

    /// Number of positions `j` with `walk[j] == walk[j + 2]`.
    pub fn stay_count(&self) -> usize {
        self.vertices.windows(3).filter(|w| w[0] == w[2]).count()
    }
}

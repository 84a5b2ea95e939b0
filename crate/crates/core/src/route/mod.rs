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

//! Shortest covering walks through the supergraph TSP reduction.
//!
//! A covering walk of a connected graph visits every vertex at least once.
//! The shortest one is the α-expansion of a minimum Hamiltonian path (or
//! cycle) in the supergraph, where each supergraph hop is replaced by a
//! concrete shortest path of the coupling graph.

mod exact;
mod two_opt;

use serde::Serialize;

pub use exact::{
    tsp_cycle_exact, tsp_path_exact, tsp_path_exact_fixed_start, ExactTsp, DEFAULT_EXACT_CAP,
};
pub use two_opt::{two_opt_cycle, two_opt_cycle_counted, two_opt_path, two_opt_path_counted};

use crate::error::{Error, Result};
use crate::graph::{
    shortest_paths_within, CouplingGraph, Distance, DistanceTables, Supergraph, Walk,
};

/// Membership flags over the vertices of a coupling graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveSet {
    flags: Vec<bool>,
}

impl ActiveSet {
    pub fn all(n: usize) -> Self {
        Self {
            flags: vec![true; n],
        }
    }

    pub fn none(n: usize) -> Self {
        Self {
            flags: vec![false; n],
        }
    }

    pub fn from_vertices(n: usize, vertices: &[usize]) -> Self {
        let mut set = Self::none(n);
        for &v in vertices {
            set.flags[v] = true;
        }
        set
    }

    /// Size of the underlying vertex universe.
    pub fn capacity(&self) -> usize {
        self.flags.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.flags.get(v).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, v: usize) {
        self.flags[v] = true;
    }

    pub fn remove(&mut self, v: usize) {
        self.flags[v] = false;
    }

    pub fn len(&self) -> usize {
        self.flags.iter().filter(|&&f| f).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.flags.iter().any(|&f| f)
    }

    pub fn first(&self) -> Option<usize> {
        self.flags.iter().position(|&f| f)
    }

    /// Active vertices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.flags
            .iter()
            .enumerate()
            .filter_map(|(v, &f)| f.then_some(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TourKind {
    Open,
    FixedStart(usize),
    Cycle,
}

/// Hamiltonian path or cycle over the active supergraph vertices.
///
/// `weight` sums consecutive supergraph weights; cycles include the closing
/// edge back to `order[0]`, which is not repeated in `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TspTour {
    pub order: Vec<usize>,
    pub kind: TourKind,
    pub weight: Distance,
}

impl TspTour {
    pub(crate) fn new(order: Vec<usize>, kind: TourKind, s: &Supergraph) -> Self {
        let weight = tour_weight(&order, kind == TourKind::Cycle, s);
        Self {
            order,
            kind,
            weight,
        }
    }
}

pub(crate) fn tour_weight(order: &[usize], closed: bool, s: &Supergraph) -> Distance {
    let open: Distance = order.windows(2).map(|w| s.weight(w[0], w[1])).sum();
    match (closed, order.first(), order.last()) {
        (true, Some(&first), Some(&last)) if order.len() > 1 => open + s.weight(last, first),
        _ => open,
    }
}

/// Which covering walk to look for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkMode {
    Open,
    FixedStart(usize),
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Router {
    /// Held-Karp dynamic programming, limited to `cap` active vertices.
    Exact { cap: usize },
    /// Deterministic 2-opt local search.
    TwoOpt,
}

impl Router {
    pub fn exact() -> Self {
        Router::Exact {
            cap: DEFAULT_EXACT_CAP,
        }
    }

    /// Exact routing while the graph fits under the default cap, 2-opt beyond.
    pub fn auto(n: usize) -> Self {
        if n <= DEFAULT_EXACT_CAP {
            Self::exact()
        } else {
            Router::TwoOpt
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Router::Exact { .. } => "exact",
            Router::TwoOpt => "two_opt",
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Router::Exact { .. })
    }
}

/// Replaces every supergraph hop of `tour` with a shortest coupling-graph
/// path. Cycles expand into closed walks.
pub fn alpha_expand(tour: &TspTour, tables: &DistanceTables) -> Walk {
    let Some(&first) = tour.order.first() else {
        return Walk::open(Vec::new());
    };
    let mut vertices = vec![first];
    for hop in tour.order.windows(2) {
        vertices.extend(tables.get_path_no_first(hop[0], hop[1]).vertices);
    }
    if tour.kind == TourKind::Cycle {
        let last = *tour.order.last().unwrap_or(&first);
        if tour.order.len() > 1 {
            vertices.extend(tables.get_path_no_first(last, first).vertices);
        }
        return Walk::closed(vertices);
    }
    Walk::open(vertices)
}

/// Drops the suffix of an open walk that only revisits covered vertices.
fn trim_covered_suffix(walk: &mut Walk, n: usize) {
    let mut seen = vec![false; n];
    let mut last_new = 0;
    for (i, &v) in walk.vertices.iter().enumerate() {
        if !seen[v] {
            seen[v] = true;
            last_new = i;
        }
    }
    walk.vertices.truncate(last_new + 1);
}

/// Shortest (exact router) or locally optimal (2-opt) covering walk of the
/// subgraph induced by `active`.
pub fn shortest_covering_walk(
    g: &CouplingGraph,
    active: &ActiveSet,
    mode: WalkMode,
    router: Router,
) -> Result<Walk> {
    if active.is_empty() {
        return Err(Error::EmptyActiveSet);
    }
    if let WalkMode::FixedStart(v) = mode {
        if !active.contains(v) {
            return Err(Error::InactiveStart(v));
        }
    }
    let tables = shortest_paths_within(g, active)?;
    let s = Supergraph::from_tables(tables);
    let tour = match (router, mode) {
        (Router::Exact { cap }, WalkMode::Open) => ExactTsp { cap }.path(&s, active)?,
        (Router::Exact { cap }, WalkMode::FixedStart(v)) => {
            ExactTsp { cap }.path_from(&s, active, v)?
        }
        (Router::Exact { cap }, WalkMode::Closed) => ExactTsp { cap }.cycle(&s, active)?,
        (Router::TwoOpt, WalkMode::Open) => two_opt_path(&s, active, None)?,
        (Router::TwoOpt, WalkMode::FixedStart(v)) => two_opt_path(&s, active, Some(v))?,
        (Router::TwoOpt, WalkMode::Closed) => two_opt_cycle(&s, active)?,
    };
    let mut walk = alpha_expand(&tour, s.tables());
    if !walk.closed {
        // 2-opt tours can pass through their final vertex early; the
        // exact router never produces such a suffix.
        trim_covered_suffix(&mut walk, g.n());
    }
    Ok(walk)
}

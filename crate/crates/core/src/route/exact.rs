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

//! Bellman-Held-Karp over subsets of the active vertices.
//!
//! The table is filled backwards: `cost[mask][v]` is the cheapest way to
//! finish the tour from `v` when exactly the vertices of `mask` have been
//! visited. Reading the table forwards and always taking the smallest
//! vertex that stays on an optimal completion yields the lexicographically
//! smallest optimal order.

use super::{ActiveSet, TourKind, TspTour};
use crate::error::{Error, Result};
use crate::graph::{Distance, Supergraph};

pub const DEFAULT_EXACT_CAP: usize = 20;

const INF: Distance = Distance::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactTsp {
    pub cap: usize,
}

impl Default for ExactTsp {
    fn default() -> Self {
        Self {
            cap: DEFAULT_EXACT_CAP,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Path,
    PathFrom(usize),
    Cycle,
}

impl ExactTsp {
    /// Minimum-weight Hamiltonian path with a free start.
    pub fn path(&self, s: &Supergraph, active: &ActiveSet) -> Result<TspTour> {
        self.solve(s, active, Goal::Path)
    }

    /// Minimum-weight Hamiltonian path starting at `start`.
    pub fn path_from(&self, s: &Supergraph, active: &ActiveSet, start: usize) -> Result<TspTour> {
        if !active.contains(start) {
            return Err(Error::InactiveStart(start));
        }
        self.solve(s, active, Goal::PathFrom(start))
    }

    /// Minimum-weight Hamiltonian cycle, reported from the smallest vertex.
    pub fn cycle(&self, s: &Supergraph, active: &ActiveSet) -> Result<TspTour> {
        self.solve(s, active, Goal::Cycle)
    }

    fn solve(&self, s: &Supergraph, active: &ActiveSet, goal: Goal) -> Result<TspTour> {
        let vertices: Vec<usize> = active.iter().collect();
        let m = vertices.len();
        if m == 0 {
            return Err(Error::EmptyActiveSet);
        }
        if m > self.cap {
            return Err(Error::ExactRouterInfeasible {
                active: m,
                cap: self.cap,
            });
        }
        let kind = match goal {
            Goal::Path => TourKind::Open,
            Goal::PathFrom(v) => TourKind::FixedStart(v),
            Goal::Cycle => TourKind::Cycle,
        };
        // local index of the anchored vertex, if any
        let anchor = match goal {
            Goal::Path => None,
            Goal::PathFrom(v) => vertices.iter().position(|&u| u == v),
            Goal::Cycle => Some(0),
        };

        let mut w = vec![0; m * m];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                w[i * m + j] = s.weight(u, v);
            }
        }

        let full = (1usize << m) - 1;
        let mut cost = vec![INF; (full + 1) * m];
        for v in 0..m {
            cost[full * m + v] = match goal {
                Goal::Cycle => w[v * m],
                _ => 0,
            };
        }
        for mask in (1..full).rev() {
            if anchor.is_some_and(|a| mask & (1 << a) == 0) {
                continue;
            }
            for v in (0..m).filter(|&v| mask & (1 << v) != 0) {
                let mut best = INF;
                for u in (0..m).filter(|&u| mask & (1 << u) == 0) {
                    let rest = cost[(mask | 1 << u) * m + u];
                    if rest != INF {
                        best = best.min(w[v * m + u] + rest);
                    }
                }
                cost[mask * m + v] = best;
            }
        }

        let start = match anchor {
            Some(a) => a,
            // smallest vertex among the optimal starts
            None => (0..m)
                .min_by_key(|&v| cost[(1 << v) * m + v])
                .expect("nonempty"),
        };
        let mut order = Vec::with_capacity(m);
        let (mut mask, mut v) = (1usize << start, start);
        order.push(start);
        while mask != full {
            let target = cost[mask * m + v];
            let next = (0..m)
                .find(|&u| {
                    mask & (1 << u) == 0 && {
                        let rest = cost[(mask | 1 << u) * m + u];
                        rest != INF && w[v * m + u] + rest == target
                    }
                })
                .expect("table is consistent");
            mask |= 1 << next;
            v = next;
            order.push(next);
        }
        let order: Vec<usize> = order.into_iter().map(|i| vertices[i]).collect();
        Ok(TspTour::new(order, kind, s))
    }
}

pub fn tsp_path_exact(s: &Supergraph, active: &ActiveSet) -> Result<TspTour> {
    ExactTsp::default().path(s, active)
}

pub fn tsp_path_exact_fixed_start(
    s: &Supergraph,
    active: &ActiveSet,
    start: usize,
) -> Result<TspTour> {
    ExactTsp::default().path_from(s, active, start)
}

pub fn tsp_cycle_exact(s: &Supergraph, active: &ActiveSet) -> Result<TspTour> {
    ExactTsp::default().cycle(s, active)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_supergraph, CouplingGraph};

    fn lnn(n: usize) -> Supergraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        build_supergraph(&CouplingGraph::new(n, &edges).unwrap()).unwrap()
    }

    fn star4() -> Supergraph {
        build_supergraph(&CouplingGraph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()).unwrap()
    }

    /// Every permutation of `items`, in lexicographic order.
    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.len() <= 1 {
            return vec![items.to_vec()];
        }
        let mut out = Vec::new();
        for (i, &x) in items.iter().enumerate() {
            let mut rest = items.to_vec();
            rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    fn brute(
        s: &Supergraph,
        verts: &[usize],
        closed: bool,
        start: Option<usize>,
    ) -> (Distance, Vec<usize>) {
        permutations(verts)
            .into_iter()
            .filter(|p| start.is_none_or(|v| p[0] == v) && (!closed || p[0] == verts[0]))
            .map(|p| (super::super::tour_weight(&p, closed, s), p))
            .min()
            .unwrap()
    }

    #[test]
    fn lnn_paths() {
        let s = lnn(5);
        let all = ActiveSet::all(5);
        let t = tsp_path_exact(&s, &all).unwrap();
        assert_eq!((t.weight, t.order.clone()), (4, vec![0, 1, 2, 3, 4]));
        let t = tsp_path_exact_fixed_start(&s, &all, 0).unwrap();
        assert_eq!((t.weight, t.order), (4, vec![0, 1, 2, 3, 4]));
        let t = tsp_path_exact_fixed_start(&s, &all, 2).unwrap();
        assert_eq!(t.weight, 6);
        assert_eq!(t.order[0], 2);
        assert_eq!(
            (t.weight, t.order.clone()),
            brute(&s, &[0, 1, 2, 3, 4], false, Some(2))
        );
    }

    #[test]
    fn star_paths() {
        let s = star4();
        let all = ActiveSet::all(4);
        let t = tsp_path_exact(&s, &all).unwrap();
        assert_eq!(t.weight, 4);
        assert_eq!((t.weight, t.order), brute(&s, &[0, 1, 2, 3], false, None));
        let t = tsp_path_exact_fixed_start(&s, &all, 0).unwrap();
        assert_eq!(t.weight, 5);
    }

    #[test]
    fn cycles() {
        let k3 =
            build_supergraph(&CouplingGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap()).unwrap();
        assert_eq!(tsp_cycle_exact(&k3, &ActiveSet::all(3)).unwrap().weight, 3);
        let s = lnn(4);
        let t = tsp_cycle_exact(&s, &ActiveSet::all(4)).unwrap();
        assert_eq!(t.weight, 6);
        assert_eq!((t.weight, t.order), brute(&s, &[0, 1, 2, 3], true, None));
        // two active vertices at distance 3
        let t = tsp_cycle_exact(&s, &ActiveSet::from_vertices(4, &[0, 3])).unwrap();
        assert_eq!(t.weight, 6);
    }

    #[test]
    fn single_vertex_and_errors() {
        let s = lnn(3);
        let one = ActiveSet::from_vertices(3, &[1]);
        let t = tsp_path_exact(&s, &one).unwrap();
        assert_eq!((t.weight, t.order), (0, vec![1]));
        assert_eq!(tsp_cycle_exact(&s, &one).unwrap().weight, 0);
        assert_eq!(
            tsp_path_exact_fixed_start(&s, &one, 0),
            Err(Error::InactiveStart(0))
        );
        let capped = ExactTsp { cap: 2 };
        assert_eq!(
            capped.path(&s, &ActiveSet::all(3)),
            Err(Error::ExactRouterInfeasible { active: 3, cap: 2 })
        );
    }
}

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

//! First-improvement 2-opt on the supergraph.
//!
//! Tours are plain arrays; a move reverses the segment between the two
//! exchanged edges. Candidate pairs are scanned with the first edge in the
//! outer loop and the second edge in the inner loop, and the scan restarts
//! from the beginning after every applied move.

use super::{ActiveSet, TourKind, TspTour};
use crate::error::{Error, Result};
use crate::graph::Supergraph;

/// Applies the first improving exchange, if any. `closed` adds the edge
/// from the last vertex back to `tour[0]` to the candidate set.
fn improve_once(tour: &mut [usize], closed: bool, s: &Supergraph) -> bool {
    let m = tour.len();
    let edges = if closed { m } else { m - 1 };
    let next = |i: usize| if i + 1 == m { 0 } else { i + 1 };
    for k in 0..edges {
        for j in (k + 1)..m {
            let (a, b) = (tour[k], tour[next(k)]);
            let c = tour[j];
            // an open tour has no edge after its last vertex; reversing the
            // tail then only trades (a, b) for (a, c)
            let (old_cd, new_bd) = if j < edges {
                let d = tour[next(j)];
                (s.weight(c, d), s.weight(b, d))
            } else if closed {
                continue;
            } else {
                (0, 0)
            };
            if s.weight(a, b) + old_cd > s.weight(a, c) + new_bd {
                tour[k + 1..=j].reverse();
                return true;
            }
        }
    }
    false
}

fn local_search(tour: &mut [usize], closed: bool, s: &Supergraph) -> usize {
    let mut steps = 0;
    if tour.len() < 3 {
        return steps;
    }
    while improve_once(tour, closed, s) {
        steps += 1;
    }
    steps
}

/// 2-opt cycle together with the number of improving moves applied.
pub fn two_opt_cycle_counted(s: &Supergraph, active: &ActiveSet) -> Result<(TspTour, usize)> {
    if active.is_empty() {
        return Err(Error::EmptyActiveSet);
    }
    let mut order: Vec<usize> = active.iter().collect();
    let steps = local_search(&mut order, true, s);
    Ok((TspTour::new(order, TourKind::Cycle, s), steps))
}

/// 2-opt locally optimal Hamiltonian cycle, starting from the ascending order.
pub fn two_opt_cycle(s: &Supergraph, active: &ActiveSet) -> Result<TspTour> {
    two_opt_cycle_counted(s, active).map(|(t, _)| t)
}

fn fixed_start_path(s: &Supergraph, active: &ActiveSet, start: usize) -> (TspTour, usize) {
    let mut order = Vec::with_capacity(active.len());
    order.push(start);
    order.extend(active.iter().filter(|&v| v != start));
    // position 0 is never inside a reversed segment
    let steps = local_search(&mut order, false, s);
    (TspTour::new(order, TourKind::FixedStart(start), s), steps)
}

/// 2-opt path; with no start given every active vertex is tried and the
/// lightest result wins, ties going to the lexicographically smaller order.
/// The step count is summed over all tried starts.
pub fn two_opt_path_counted(
    s: &Supergraph,
    active: &ActiveSet,
    start: Option<usize>,
) -> Result<(TspTour, usize)> {
    if active.is_empty() {
        return Err(Error::EmptyActiveSet);
    }
    match start {
        Some(v) if !active.contains(v) => Err(Error::InactiveStart(v)),
        Some(v) => Ok(fixed_start_path(s, active, v)),
        None => {
            let mut total = 0;
            let mut best: Option<TspTour> = None;
            for v in active.iter() {
                let (tour, steps) = fixed_start_path(s, active, v);
                total += steps;
                let better = best
                    .as_ref()
                    .is_none_or(|b| (tour.weight, &tour.order) < (b.weight, &b.order));
                if better {
                    best = Some(tour);
                }
            }
            let mut tour = best.expect("active set is nonempty");
            tour.kind = TourKind::Open;
            Ok((tour, total))
        }
    }
}

pub fn two_opt_path(s: &Supergraph, active: &ActiveSet, start: Option<usize>) -> Result<TspTour> {
    two_opt_path_counted(s, active, start).map(|(t, _)| t)
}

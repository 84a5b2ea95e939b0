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

//! Routed QFT as a sequence of cascades over shrinking covering walks.
//!
//! Cascade `r` puts H on logical qubit `r`, then walks it along a covering
//! walk of the remaining vertices, picking up a controlled phase from each
//! later logical qubit it meets. The vertex where it stops is removed
//! before the next cascade.
//!
//! Logical numbering is 0-based; qubit 0 is the most significant bit of
//! the input register. The circuit has no final reversal swaps, so its
//! output register is bit-reversed relative to the DFT.

use std::f64::consts::PI;

use serde::Serialize;

use crate::circuit::{decompose, Circuit, Gate, MappingTrace};
use crate::error::{Error, Result};
use crate::graph::{CouplingGraph, Walk};
use crate::route::{shortest_covering_walk, ActiveSet, Router, WalkMode};
use crate::sim::{circuit_unitary, equivalent_up_to_permutation, qft_reference, WirePermutation};

/// 0-based positions of the first occurrence of each vertex, in walk order.
pub fn get_first_indexes(walk: &Walk) -> Vec<usize> {
    let size = walk.vertices.iter().max().map_or(0, |&v| v + 1);
    let mut seen = vec![false; size];
    let mut out = Vec::new();
    for (i, &v) in walk.vertices.iter().enumerate() {
        if !seen[v] {
            seen[v] = true;
            out.push(i);
        }
    }
    out
}

/// Phase between target `r` and a later control `w`.
pub fn cascade_angle(r: usize, w: usize) -> f64 {
    PI / 2f64.powi((w - r) as i32)
}

/// Emits cascade `r` along `walk`, which must start where logical `r`
/// currently sits. `trace` follows every swap.
pub fn construct_qft_cascade(walk: &Walk, r: usize, trace: &mut MappingTrace) -> Result<Circuit> {
    let seq = &walk.vertices;
    let n = trace.placement().len();
    let k = seq.len();
    if k == 0 {
        return Err(Error::WalkTooShort { need: 1, got: 0 });
    }
    if trace.physical(r) != seq[0] {
        return Err(Error::Internal(format!(
            "cascade {r} walk starts at {} but the target is on {}",
            seq[0],
            trace.physical(r)
        )));
    }
    let mut c = Circuit::new(n);
    c.push(Gate::H { wire: seq[0] });
    let mut applied = vec![false; n];
    let mut j = 0;
    while j + 1 < k {
        let (here, ahead) = (seq[j], seq[j + 1]);
        if let Some(w) = trace.logical(ahead) {
            if w > r && !applied[w] {
                applied[w] = true;
                c.push(Gate::Cp {
                    control: ahead,
                    target: here,
                    lambda: cascade_angle(r, w),
                });
            }
        }
        if j + 2 < k && seq[j + 2] == here {
            j += 2;
        } else {
            if k != 2 {
                c.push(Gate::Swap { a: here, b: ahead });
                trace.apply_swap(here, ahead);
            }
            j += 1;
        }
    }
    Ok(c)
}

/// Walks and placements of a routed QFT.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QftPlan {
    pub initial_walk: Walk,
    pub first_indexes: Vec<usize>,
    pub cascade_walks: Vec<Walk>,
    /// Vertex removed after each cascade.
    pub deleted: Vec<usize>,
    /// Logical-to-physical placement after each cascade.
    pub placements: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QftSynthesis {
    pub plan: QftPlan,
    pub circuit: Circuit,
    pub cascade_costs: Vec<usize>,
    pub initial: MappingTrace,
    pub final_mapping: MappingTrace,
}

/// Builds the routed QFT for `g`.
pub fn construct_qft(g: &CouplingGraph, router: Router) -> Result<QftSynthesis> {
    let n = g.n();
    let mut active = ActiveSet::all(n);
    let initial_walk = shortest_covering_walk(g, &active, WalkMode::Open, router)?;
    let first_indexes = get_first_indexes(&initial_walk);
    let q: Vec<usize> = first_indexes
        .iter()
        .map(|&i| initial_walk.vertices[i])
        .collect();
    let initial = MappingTrace::from_placement(q, n)?;
    let mut trace = initial.clone();

    let mut circuit = Circuit::new(n);
    let mut plan = QftPlan {
        initial_walk: initial_walk.clone(),
        first_indexes,
        cascade_walks: Vec::with_capacity(n),
        deleted: Vec::with_capacity(n),
        placements: Vec::with_capacity(n),
    };
    let mut cascade_costs = Vec::with_capacity(n);
    for r in 0..n {
        let walk = if r == 0 {
            initial_walk.clone()
        } else {
            let start = trace.physical(r);
            shortest_covering_walk(g, &active, WalkMode::FixedStart(start), router)?
        };
        let cascade = construct_qft_cascade(&walk, r, &mut trace)?;
        cascade_costs.push(decompose(&cascade).count_cnots());
        circuit.extend(&cascade);
        let v = trace.physical(r);
        active.remove(v);
        plan.cascade_walks.push(walk);
        plan.deleted.push(v);
        plan.placements.push(trace.placement().to_vec());
    }
    Ok(QftSynthesis {
        plan,
        circuit,
        cascade_costs,
        initial,
        final_mapping: trace,
    })
}

/// Placement of the DFT output bits: the routed circuit leaves output bit
/// `l` on the wire of logical qubit `n - 1 - l`.
pub fn dft_output_placement(final_mapping: &MappingTrace) -> Vec<usize> {
    let q = final_mapping.placement();
    q.iter().rev().copied().collect()
}

/// Checks the decomposed circuit against the DFT, modulo the tracked
/// placements.
pub fn verify_qft(s: &QftSynthesis, tol: f64) -> Result<bool> {
    let n = s.circuit.n_wires;
    let u = circuit_unitary(&decompose(&s.circuit))?;
    let reference = qft_reference(n)?;
    let pin = WirePermutation::new(s.initial.placement().to_vec())?;
    let pout = WirePermutation::new(dft_output_placement(&s.final_mapping))?;
    Ok(equivalent_up_to_permutation(
        &u, &reference, &pin, &pout, tol,
    ))
}

/// The unrouted textbook circuit on `n` fully connected qubits.
pub fn textbook_qft(n: usize) -> Circuit {
    let mut c = Circuit::new(n);
    for r in 0..n {
        c.push(Gate::H { wire: r });
        for w in r + 1..n {
            c.push(Gate::Cp {
                control: w,
                target: r,
                lambda: cascade_angle(r, w),
            });
        }
    }
    c
}

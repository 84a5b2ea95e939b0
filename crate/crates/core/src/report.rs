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

//! Synthesis reports: cost, walks, placements and cost-bound checks.
//!
//! Keys serialize in field order, so the JSON layout is stable.

use serde::Serialize;

use crate::circuit::decompose;
use crate::graph::Walk;
use crate::hash::{HashStrategy, HashSynthesis};
use crate::qft::{dft_output_placement, QftSynthesis};
use crate::route::Router;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    Equal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub relation: Relation,
    pub bound: i64,
    pub measured: i64,
    pub pass: bool,
}

impl BoundCheck {
    fn at_most(name: &'static str, bound: i64, measured: usize) -> Self {
        let measured = measured as i64;
        Self {
            name,
            relation: Relation::AtMost,
            bound,
            measured,
            pass: measured <= bound,
        }
    }

    fn equal(name: &'static str, bound: i64, measured: usize) -> Self {
        let measured = measured as i64;
        Self {
            name,
            relation: Relation::Equal,
            bound,
            measured,
            pass: measured == bound,
        }
    }
}

/// Published CNOT count of another construction, for side-by-side reading.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub name: &'static str,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthesisReport {
    pub algorithm: &'static str,
    pub graph: String,
    pub n: usize,
    pub router: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hash_steps: Option<usize>,
    pub walks: Vec<Walk>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub control_vertices: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_vertex: Option<usize>,
    pub initial_mapping: Vec<usize>,
    pub final_mapping: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_mapping: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cascade_costs: Option<Vec<usize>>,
    pub gate_count: usize,
    pub cnot_cost: usize,
    pub bounds: Vec<BoundCheck>,
    pub comparisons: Vec<Comparison>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
}

impl SynthesisReport {
    pub fn bounds_pass(&self) -> bool {
        self.bounds.iter().all(|b| b.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn lnn_size(graph: &str) -> Option<usize> {
    graph.strip_prefix("lnn:")?.parse().ok()
}

/// Cost bounds for a hashing circuit of `l` steps with walk parameter `k`.
pub fn hash_bounds(
    strategy: HashStrategy,
    n: usize,
    k: usize,
    l: usize,
    cost: usize,
) -> Vec<BoundCheck> {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    // 1.5 n^2 + 1.5 n without fractions; n^2 + n is even
    let quad = 3 * (n * n + n) / 2;
    let mut out = Vec::new();
    if l == 1 {
        out.push(BoundCheck::at_most("single_step_walk", 3 * k - 2, cost));
        if strategy == HashStrategy::Path {
            out.push(BoundCheck::at_most("single_step_quadratic", quad - 2, cost));
        }
    }
    match strategy {
        HashStrategy::Path => {
            out.push(BoundCheck::at_most(
                "path_strategy_walk",
                (3 * k - 4) * l + 2,
                cost,
            ));
            out.push(BoundCheck::at_most(
                "path_strategy_quadratic",
                (quad - 4) * l + 2,
                cost,
            ));
        }
        HashStrategy::Cycle => {
            out.push(BoundCheck::at_most(
                "cycle_strategy_walk",
                (3 * k - 3) * (l + 1) + 1,
                cost,
            ));
        }
    }
    out
}

/// Cost bounds for a routed QFT. `k` is the length of the first walk.
pub fn qft_bounds(n: usize, k: usize, exact: bool, cost: usize) -> Vec<BoundCheck> {
    let (n, k) = (n as i64, k as i64);
    let mut out = vec![BoundCheck::at_most("qft_walk", 3 * k * n - 2 * n, cost)];
    if exact && n >= 2 {
        // 1.5 n^3 - 1.5 n^2 - 2n; n^3 - n^2 is even
        out.push(BoundCheck::at_most(
            "qft_cubic",
            3 * (n * n * n - n * n) / 2 - 2 * n,
            cost,
        ));
        if k == n {
            // Hamiltonian walk
            out.push(BoundCheck::equal(
                "qft_hamiltonian",
                3 * (n * n - n) / 2 - 1,
                cost,
            ));
        }
    }
    out
}

pub fn hash_report(graph: &str, router: Router, h: &HashSynthesis) -> SynthesisReport {
    let n = h.plan.n();
    let basic = decompose(&h.circuit);
    let cost = basic.count_cnots();
    let mut comparisons = Vec::new();
    if let Some(m) = lnn_size(graph) {
        let (m, l) = (m as f64, h.steps as f64);
        comparisons.push(Comparison {
            name: "lnn_specialized",
            value: 3.0 * m * l - 7.0 * l + 2.0,
        });
    }
    if h.steps == 1 {
        let target = match graph {
            "sun16" => Some(42.0),
            "twosuns27" => Some(69.0),
            _ => None,
        };
        if let Some(value) = target {
            comparisons.push(Comparison {
                name: "cycle_with_tails_specialized",
                value,
            });
        }
    }
    SynthesisReport {
        algorithm: "hash",
        graph: graph.to_string(),
        n,
        router: router.name(),
        strategy: Some(h.strategy.name()),
        hash_steps: Some(h.steps),
        walks: vec![h.plan.walk.clone()],
        control_vertices: Some(h.plan.controls.clone()),
        target_vertex: Some(h.plan.target_vertex),
        initial_mapping: h.initial.placement().to_vec(),
        final_mapping: h.final_mapping.placement().to_vec(),
        output_mapping: None,
        cascade_costs: None,
        gate_count: basic.gates.len(),
        cnot_cost: cost,
        bounds: hash_bounds(h.strategy, n, h.walk_k(), h.steps, cost),
        comparisons,
        verification: None,
    }
}

pub fn qft_report(graph: &str, router: Router, s: &QftSynthesis) -> SynthesisReport {
    let n = s.circuit.n_wires;
    let basic = decompose(&s.circuit);
    let cost = basic.count_cnots();
    let mut comparisons = Vec::new();
    if let Some(m) = lnn_size(graph) {
        comparisons.push(Comparison {
            name: "lnn_specialized",
            value: (m * m + m) as f64 - 4.0,
        });
    }
    if let Some(target) = match graph {
        "sun16" => Some(342.0),
        "twosuns27" => Some(1009.0),
        _ => None,
    } {
        comparisons.push(Comparison {
            name: "walk_method_reference",
            value: target,
        });
        comparisons.push(Comparison {
            name: "cycle_with_tails_specialized",
            value: 1.5 * (n * n) as f64,
        });
    }
    SynthesisReport {
        algorithm: "qft",
        graph: graph.to_string(),
        n,
        router: router.name(),
        strategy: None,
        hash_steps: None,
        walks: s.plan.cascade_walks.clone(),
        control_vertices: None,
        target_vertex: None,
        initial_mapping: s.initial.placement().to_vec(),
        final_mapping: s.final_mapping.placement().to_vec(),
        output_mapping: Some(dft_output_placement(&s.final_mapping)),
        cascade_costs: Some(s.cascade_costs.clone()),
        gate_count: basic.gates.len(),
        cnot_cost: cost,
        bounds: qft_bounds(n, s.plan.initial_walk.len(), router.is_exact(), cost),
        comparisons,
        verification: None,
    }
}

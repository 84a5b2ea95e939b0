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

//! Named coupling graphs and graph-spec resolution.

use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::CouplingGraph;

/// 16-qubit heavy-hex device (IBM Guadalupe coupling map): a 12-cycle
/// with four pendant qubits.
pub const SUN16_EDGES: [(usize, usize); 16] = [
    (0, 1),
    (1, 2),
    (1, 4),
    (2, 3),
    (3, 5),
    (4, 7),
    (5, 8),
    (6, 7),
    (7, 10),
    (8, 9),
    (8, 11),
    (10, 12),
    (11, 14),
    (12, 13),
    (12, 15),
    (13, 14),
];

/// 27-qubit heavy-hex device (IBM Falcon r4/r5 27-qubit coupling map): two
/// 12-cycles sharing an edge path, with pendant qubits.
pub const TWOSUNS27_EDGES: [(usize, usize); 28] = [
    (0, 1),
    (1, 2),
    (1, 4),
    (2, 3),
    (3, 5),
    (4, 7),
    (5, 8),
    (6, 7),
    (7, 10),
    (8, 9),
    (8, 11),
    (10, 12),
    (11, 14),
    (12, 13),
    (12, 15),
    (13, 14),
    (14, 16),
    (15, 18),
    (16, 19),
    (17, 18),
    (18, 21),
    (19, 20),
    (19, 22),
    (21, 23),
    (22, 25),
    (23, 24),
    (24, 25),
    (25, 26),
];

pub fn lnn(n: usize) -> Result<CouplingGraph> {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    CouplingGraph::new(n, &edges)
}

/// Vertex 0 is the center.
pub fn star(n: usize) -> Result<CouplingGraph> {
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    CouplingGraph::new(n, &edges)
}

pub fn complete(n: usize) -> Result<CouplingGraph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    CouplingGraph::new(n, &edges)
}

/// Ring on `n` vertices; for `n <= 2` this is the chain.
pub fn cycle(n: usize) -> Result<CouplingGraph> {
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    if n >= 3 {
        edges.push((n - 1, 0));
    }
    CouplingGraph::new(n, &edges)
}

pub fn sun16() -> CouplingGraph {
    CouplingGraph::new(16, &SUN16_EDGES).expect("preset is valid")
}

pub fn twosuns27() -> CouplingGraph {
    CouplingGraph::new(27, &TWOSUNS27_EDGES).expect("preset is valid")
}

fn family_size(spec: &str, arg: &str) -> Result<usize> {
    arg.parse::<usize>()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::UnknownPreset(spec.to_string()))
}

/// Resolves a preset name (`lnn:N`, `star:N`, `complete:N`, `cycle:N`,
/// `sun16`, `twosuns27`) or reads a graph file.
pub fn load_graph(spec: &str) -> Result<CouplingGraph> {
    match spec {
        "sun16" => return Ok(sun16()),
        "twosuns27" => return Ok(twosuns27()),
        _ => {}
    }
    if let Some((family, arg)) = spec.split_once(':') {
        let build = match family {
            "lnn" => lnn,
            "star" => star,
            "complete" => complete,
            "cycle" => cycle,
            _ => return Err(Error::UnknownPreset(spec.to_string())),
        };
        return build(family_size(spec, arg)?);
    }
    let path = Path::new(spec);
    if path.exists() {
        return CouplingGraph::parse(&std::fs::read_to_string(path)?);
    }
    Err(Error::UnknownPreset(spec.to_string()))
}

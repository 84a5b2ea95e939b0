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

//! Coupling-map-aware synthesis of shallow hashing and QFT circuits.
//!
//! Routing reduces to a TSP over the shortest-path metric of the coupling
//! graph; a traveling target qubit then follows the resulting covering
//! walk. A dense simulator checks the results on small registers.

pub mod circuit;
pub mod cli;
pub mod error;
pub mod graph;
pub mod hash;
pub mod presets;
pub mod qasm;
pub mod qft;
pub mod report;
pub mod route;
pub mod sim;

pub use circuit::{cnot_cost, decompose, Circuit, Form, Gate, MappingTrace};
pub use error::{Error, Result};
pub use graph::{
    build_supergraph, shortest_paths, CouplingGraph, DistanceTables, Supergraph, Walk,
};
pub use hash::{construct_hash, HashStrategy, HashSynthesis, HashingAngles, HashingPlan};
pub use presets::load_graph;
pub use qft::{construct_qft, QftSynthesis};
pub use report::SynthesisReport;
pub use route::{shortest_covering_walk, ActiveSet, Router, TspTour, WalkMode};

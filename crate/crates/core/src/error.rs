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

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected: vertex {1} is unreachable from vertex {0}")]
    Disconnected(usize, usize),
    #[error("active subgraph is disconnected: vertex {vertex} is separated from vertex {from}")]
    DisconnectedActive { from: usize, vertex: usize },
    #[error("active set is empty")]
    EmptyActiveSet,
    #[error("start vertex {0} is not active")]
    InactiveStart(usize),
    #[error("exact router infeasible for {active} active vertices (cap {cap}), use 2-opt")]
    ExactRouterInfeasible { active: usize, cap: usize },
    #[error("walk too short: need at least {need} vertices, got {got}")]
    WalkTooShort { need: usize, got: usize },
    #[error("hashing needs at least 2 qubits, graph has {0}")]
    TooFewQubits(usize),
    #[error("angle step {step} has {got} angles, expected {expected}")]
    AngleCount {
        step: usize,
        got: usize,
        expected: usize,
    },
    #[error("angle at step {step}, index {index} is not finite")]
    NonFiniteAngle { step: usize, index: usize },
    #[error("no hashing steps given")]
    NoHashSteps,
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown graph preset '{0}'")]
    UnknownPreset(String),
    #[error("simulation of {n} qubits exceeds the cap of {cap}")]
    SimulationTooLarge { n: usize, cap: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("gate on wire {wire} exceeds circuit width {width}")]
    WireOutOfRange { wire: usize, width: usize },
    #[error("internal routing invariant violated: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

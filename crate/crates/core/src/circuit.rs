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

//! Gate streams over physical wires and their lowering to {H, Ry, Rz, CNOT}.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// A gate on physical wires. Two-qubit gates list the control first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum Gate {
    H {
        wire: usize,
    },
    X {
        wire: usize,
    },
    Ry {
        wire: usize,
        theta: f64,
    },
    Rz {
        wire: usize,
        theta: f64,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    /// Controlled Ry rotation.
    Cry {
        control: usize,
        target: usize,
        theta: f64,
    },
    /// Controlled phase `diag(1, 1, 1, e^{i lambda})`.
    Cp {
        control: usize,
        target: usize,
        lambda: f64,
    },
    Swap {
        a: usize,
        b: usize,
    },
}

impl Gate {
    pub fn wires(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H { wire } | Gate::X { wire } | Gate::Ry { wire, .. } | Gate::Rz { wire, .. } => {
                (wire, None)
            }
            Gate::Cnot { control, target }
            | Gate::Cry {
                control, target, ..
            }
            | Gate::Cp {
                control, target, ..
            } => (control, Some(target)),
            Gate::Swap { a, b } => (a, Some(b)),
        }
    }

    pub fn is_basic(&self) -> bool {
        matches!(
            self,
            Gate::H { .. } | Gate::Ry { .. } | Gate::Rz { .. } | Gate::Cnot { .. }
        )
    }

    fn angle(&self) -> Option<f64> {
        match *self {
            Gate::Ry { theta, .. } | Gate::Rz { theta, .. } | Gate::Cry { theta, .. } => {
                Some(theta)
            }
            Gate::Cp { lambda, .. } => Some(lambda),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    Macro,
    Basic,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Circuit {
    pub n_wires: usize,
    pub gates: Vec<Gate>,
    pub form: Form,
}

impl Circuit {
    pub fn new(n_wires: usize) -> Self {
        Self {
            n_wires,
            gates: Vec::new(),
            form: Form::Macro,
        }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: &Circuit) {
        self.gates.extend_from_slice(&other.gates);
        if other.form == Form::Macro {
            self.form = Form::Macro;
        }
    }

    /// Checks wire ranges, distinct two-qubit operands, finite angles and,
    /// for basic-form circuits, the gate alphabet.
    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            let (a, b) = g.wires();
            for w in std::iter::once(a).chain(b) {
                if w >= self.n_wires {
                    return Err(Error::WireOutOfRange {
                        wire: w,
                        width: self.n_wires,
                    });
                }
            }
            if b == Some(a) {
                return Err(Error::Internal(format!(
                    "two-qubit gate on a single wire: {g:?}"
                )));
            }
            if g.angle().is_some_and(|t| !t.is_finite()) {
                return Err(Error::Internal(format!("non-finite angle in {g:?}")));
            }
            if self.form == Form::Basic && !g.is_basic() {
                return Err(Error::Internal(format!("{g:?} in a basic-form circuit")));
            }
        }
        Ok(())
    }

    pub fn count_cnots(&self) -> usize {
        self.gates
            .iter()
            .filter(|g| matches!(g, Gate::Cnot { .. }))
            .count()
    }
}

/// Appends a CNOT, cancelling it against an identical CNOT at the end of
/// the stream.
fn push_cnot(out: &mut Vec<Gate>, control: usize, target: usize) {
    let cnot = Gate::Cnot { control, target };
    if out.last() == Some(&cnot) {
        out.pop();
    } else {
        out.push(cnot);
    }
}

/// Lowers macro gates to {H, Ry, Rz, CNOT} and drops adjacent identical
/// CNOT pairs. Gates are never reordered.
pub fn decompose(c: &Circuit) -> Circuit {
    let mut out: Vec<Gate> = Vec::with_capacity(c.gates.len() * 4);
    for &g in &c.gates {
        match g {
            Gate::H { .. } | Gate::Ry { .. } | Gate::Rz { .. } => out.push(g),
            Gate::X { wire } => {
                // X = i Ry(pi) Rz(pi)
                out.push(Gate::Rz { wire, theta: PI });
                out.push(Gate::Ry { wire, theta: PI });
            }
            Gate::Cnot { control, target } => push_cnot(&mut out, control, target),
            Gate::Cry {
                control,
                target,
                theta,
            } => {
                out.push(Gate::Ry {
                    wire: target,
                    theta: theta / 2.0,
                });
                push_cnot(&mut out, control, target);
                out.push(Gate::Ry {
                    wire: target,
                    theta: -theta / 2.0,
                });
                push_cnot(&mut out, control, target);
            }
            Gate::Cp {
                control,
                target,
                lambda,
            } => {
                // equal to CP(lambda) up to the global phase e^{-i lambda / 4}
                out.push(Gate::Rz {
                    wire: control,
                    theta: lambda / 2.0,
                });
                out.push(Gate::Rz {
                    wire: target,
                    theta: lambda / 2.0,
                });
                push_cnot(&mut out, control, target);
                out.push(Gate::Rz {
                    wire: target,
                    theta: -lambda / 2.0,
                });
                push_cnot(&mut out, control, target);
            }
            Gate::Swap { a, b } => {
                let (u, v) = match out.last() {
                    Some(&Gate::Cnot { control, target })
                        if (control, target) == (b, a) || (control, target) == (a, b) =>
                    {
                        (control, target)
                    }
                    _ => (a, b),
                };
                push_cnot(&mut out, u, v);
                push_cnot(&mut out, v, u);
                push_cnot(&mut out, u, v);
            }
        }
    }
    Circuit {
        n_wires: c.n_wires,
        gates: out,
        form: Form::Basic,
    }
}

/// Number of CNOTs after [`decompose`].
pub fn cnot_cost(c: &Circuit) -> usize {
    decompose(c).count_cnots()
}

/// Logical-to-physical placement (`q`) and its inverse (`t`). Wires that
/// hold no logical qubit map to `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingTrace {
    q: Vec<usize>,
    t: Vec<Option<usize>>,
}

impl MappingTrace {
    pub fn identity(n: usize) -> Self {
        Self {
            q: (0..n).collect(),
            t: (0..n).map(Some).collect(),
        }
    }

    /// Builds the trace from `q[logical] = physical` over `n_wires` wires.
    pub fn from_placement(q: Vec<usize>, n_wires: usize) -> Result<Self> {
        let mut t = vec![None; n_wires];
        for (logical, &p) in q.iter().enumerate() {
            if p >= n_wires || t[p].is_some() {
                return Err(Error::NotAPermutation(q));
            }
            t[p] = Some(logical);
        }
        Ok(Self { q, t })
    }

    pub fn physical(&self, logical: usize) -> usize {
        self.q[logical]
    }

    pub fn logical(&self, physical: usize) -> Option<usize> {
        self.t[physical]
    }

    /// `q` as a slice: position `i` holds the wire of logical qubit `i`.
    pub fn placement(&self) -> &[usize] {
        &self.q
    }

    /// Records a SWAP of the contents of wires `u` and `v`.
    pub fn apply_swap(&mut self, u: usize, v: usize) {
        self.t.swap(u, v);
        if let Some(l) = self.t[u] {
            self.q[l] = u;
        }
        if let Some(l) = self.t[v] {
            self.q[l] = v;
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.q
            .iter()
            .enumerate()
            .all(|(l, &p)| self.t.get(p) == Some(&Some(l)))
            && self
                .t
                .iter()
                .enumerate()
                .all(|(p, l)| l.is_none_or(|l| self.q[l] == p))
    }
}

/// Functional form of [`MappingTrace::apply_swap`].
pub fn apply_swap_tracking(m: &MappingTrace, u: usize, v: usize) -> MappingTrace {
    let mut next = m.clone();
    next.apply_swap(u, v);
    next
}

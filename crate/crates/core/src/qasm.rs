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

//! OpenQASM 2.0 text for basic-form circuits.

use std::fmt::Write;

use crate::circuit::{decompose, Circuit, Form, Gate};

/// 17 significant digits, enough to round-trip an `f64`.
fn angle(theta: f64) -> String {
    format!("{theta:.16e}")
}

/// Emits `c` as OpenQASM 2.0. Macro-form circuits are decomposed first.
pub fn to_qasm(c: &Circuit) -> String {
    let basic;
    let c = if c.form == Form::Basic {
        c
    } else {
        basic = decompose(c);
        &basic
    };
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{}];", c.n_wires);
    for g in &c.gates {
        let _ = match *g {
            Gate::H { wire } => writeln!(out, "h q[{wire}];"),
            Gate::Ry { wire, theta } => writeln!(out, "ry({}) q[{wire}];", angle(theta)),
            Gate::Rz { wire, theta } => writeln!(out, "rz({}) q[{wire}];", angle(theta)),
            Gate::Cnot { control, target } => writeln!(out, "cx q[{control}],q[{target}];"),
            _ => unreachable!("basic form holds only h, ry, rz, cx"),
        };
    }
    out
}

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

//! Command-line driver.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::circuit::{decompose, Circuit};
use crate::error::{Error, Result};
use crate::hash::{construct_hash, verify_hash, HashStrategy, HashingAngles};
use crate::presets::load_graph;
use crate::qasm::to_qasm;
use crate::qft::{construct_qft, verify_qft};
use crate::report::{hash_report, qft_report, SynthesisReport, Verification};
use crate::route::Router;
use crate::sim::UNITARY_CAP;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

pub const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Qft,
    Hash,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouterArg {
    Exact,
    #[value(name = "two_opt")]
    TwoOpt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Path,
    Cycle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Qasm,
    Json,
    Both,
}

/// Synthesize routed hashing and QFT circuits for a coupling graph.
#[derive(Debug, Parser)]
#[command(name = "routesynth", version)]
pub struct Args {
    #[arg(long, value_enum)]
    pub algorithm: Algorithm,

    /// Graph file or preset: lnn:N, star:N, complete:N, cycle:N, sun16, twosuns27.
    #[arg(long)]
    pub graph: String,

    /// Defaults to exact for up to 20 qubits, two_opt beyond.
    #[arg(long, value_enum)]
    pub router: Option<RouterArg>,

    /// Number of hashing applications.
    #[arg(long)]
    pub hash_steps: Option<usize>,

    #[arg(long, value_enum, default_value = "path")]
    pub hash_strategy: StrategyArg,

    /// Angle file: one line per step, n-1 radians per line.
    #[arg(long)]
    pub angles: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "json")]
    pub emit: Emit,

    /// Check the circuit against the reference unitary (n <= 10).
    #[arg(long)]
    pub verify: bool,

    /// Write circuit.qasm / report.json here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

struct Outcome {
    circuit: Circuit,
    report: SynthesisReport,
}

fn hash_angles(args: &Args, n: usize) -> Result<HashingAngles> {
    let Some(path) = &args.angles else {
        return HashingAngles::default_for(n, args.hash_steps.unwrap_or(1));
    };
    let file = HashingAngles::load(path, n)?;
    match args.hash_steps {
        None => Ok(file),
        Some(l) if l == file.len() => Ok(file),
        Some(l) if file.len() == 1 => HashingAngles::repeated(n, file.step(0), l),
        Some(l) => Err(Error::Parse {
            line: 0,
            message: format!(
                "angle file has {} steps but --hash-steps is {l}",
                file.len()
            ),
        }),
    }
}

fn synthesize(args: &Args) -> Result<Outcome> {
    let g = load_graph(&args.graph)?;
    let n = g.n();
    let router = match args.router {
        Some(RouterArg::Exact) => Router::exact(),
        Some(RouterArg::TwoOpt) => Router::TwoOpt,
        None => Router::auto(n),
    };
    if args.verify && n > UNITARY_CAP {
        return Err(Error::SimulationTooLarge {
            n,
            cap: UNITARY_CAP,
        });
    }
    if args.hash_steps == Some(0) {
        return Err(Error::NoHashSteps);
    }
    match args.algorithm {
        Algorithm::Qft => {
            let s = construct_qft(&g, router)?;
            let mut report = qft_report(&args.graph, router, &s);
            if args.verify {
                report.verification = Some(Verification {
                    tolerance: VERIFY_TOLERANCE,
                    passed: verify_qft(&s, VERIFY_TOLERANCE)?,
                });
            }
            Ok(Outcome {
                circuit: s.circuit,
                report,
            })
        }
        Algorithm::Hash => {
            let angles = hash_angles(args, n)?;
            let strategy = match args.hash_strategy {
                StrategyArg::Path => HashStrategy::Path,
                StrategyArg::Cycle => HashStrategy::Cycle,
            };
            let h = construct_hash(&g, &angles, strategy, router)?;
            let mut report = hash_report(&args.graph, router, &h);
            if args.verify {
                report.verification = Some(Verification {
                    tolerance: VERIFY_TOLERANCE,
                    passed: verify_hash(&h, &angles, VERIFY_TOLERANCE)?,
                });
            }
            Ok(Outcome {
                circuit: h.circuit,
                report,
            })
        }
    }
}

fn emit(args: &Args, outcome: &Outcome, stdout: &mut dyn Write) -> Result<()> {
    let qasm =
        matches!(args.emit, Emit::Qasm | Emit::Both).then(|| to_qasm(&decompose(&outcome.circuit)));
    let json =
        matches!(args.emit, Emit::Json | Emit::Both).then(|| outcome.report.to_json() + "\n");
    match &args.out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            if let Some(q) = &qasm {
                std::fs::write(dir.join("circuit.qasm"), q)?;
            }
            if let Some(j) = &json {
                std::fs::write(dir.join("report.json"), j)?;
            }
        }
        None => {
            for text in qasm.iter().chain(json.iter()) {
                stdout.write_all(text.as_bytes())?;
            }
        }
    }
    Ok(())
}

/// Runs the tool on `argv` (program name first) and returns the exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let outcome = match synthesize(&args) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_INPUT;
        }
    };
    if let Err(e) = emit(&args, &outcome, stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INPUT;
    }
    let report = &outcome.report;
    for b in report.bounds.iter().filter(|b| !b.pass) {
        let _ = writeln!(
            stderr,
            "warning: bound {} violated: measured {} vs {}",
            b.name, b.measured, b.bound
        );
    }
    match &report.verification {
        Some(v) if !v.passed => {
            let _ = writeln!(stderr, "verification failed at tolerance {:e}", v.tolerance);
            EXIT_VERIFY
        }
        _ => EXIT_OK,
    }
}

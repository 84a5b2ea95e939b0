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

//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use common::*;
use rand::Rng;
use routesynth::hash::verify_hash;
use routesynth::qft::{dft_output_placement, verify_qft};
use routesynth::report::{hash_report, qft_report, BoundCheck, SynthesisReport};
use routesynth::route::two_opt_cycle;
use routesynth::{
    build_supergraph, construct_hash, construct_qft, decompose, load_graph, shortest_covering_walk,
    ActiveSet, Circuit, CouplingGraph, Gate, HashStrategy, HashingAngles, Router, WalkMode,
};

/// Unitary equivalence of routed circuits.
const SEMANTIC_TOL: f64 = 1e-9;
/// Gate-level decomposition identities.
const GATE_TOL: f64 = 1e-12;
/// Relative distance allowed from a published preset cost.
const PRESET_REL_TOL: f64 = 0.05;
/// Smallest acceptable differential approximation ratio.
const MIN_DIFFERENTIAL_RATIO: f64 = 0.5;
const ROUTING_SAMPLES: usize = 240;
const SEMANTIC_SAMPLES: usize = 100;

const LIMIT_LNN_HASH: Duration = Duration::from_secs(1);
const LIMIT_LNN_QFT: Duration = Duration::from_secs(5);
const LIMIT_SUN16: Duration = Duration::from_secs(30);
const LIMIT_TWOSUNS27: Duration = Duration::from_secs(10);
const LIMIT_SEMANTIC: Duration = Duration::from_secs(60);
const LIMIT_ROUTING: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Self {
            pass,
            detail,
            notes: Vec::new(),
        }
    }
}

/// Bound checks gathered from every circuit built by the suite, plus the
/// QFT floor 1.5n^2-1.5n-1, which is tracked but not enforced.
#[derive(Default)]
struct Ledger {
    checks: Vec<(String, BoundCheck)>,
    circuits: usize,
    below_qft_floor: Vec<String>,
}

impl Ledger {
    fn record(&mut self, label: &str, report: &SynthesisReport) {
        self.circuits += 1;
        for b in &report.bounds {
            self.checks.push((label.to_string(), b.clone()));
        }
        let n = report.n as i64;
        if report.algorithm == "qft" && report.router == "exact" && n >= 2 {
            let floor = 3 * (n * n - n) / 2 - 1;
            if (report.cnot_cost as i64) < floor {
                self.below_qft_floor
                    .push(format!("{label}: {} < {floor}", report.cnot_cost));
            }
        }
    }
}

fn qft(label: &str, g: &CouplingGraph, router: Router, ledger: &mut Ledger) -> SynthesisReport {
    let s = construct_qft(g, router).expect("qft synthesis");
    let r = qft_report(label, router, &s);
    ledger.record(label, &r);
    r
}

fn hash(
    label: &str,
    g: &CouplingGraph,
    angles: &HashingAngles,
    strategy: HashStrategy,
    router: Router,
    ledger: &mut Ledger,
) -> SynthesisReport {
    let h = construct_hash(g, angles, strategy, router).expect("hash synthesis");
    let r = hash_report(label, router, &h);
    ledger.record(label, &r);
    r
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn lnn_hashing(ledger: &mut Ledger) -> Outcome {
    let (misses, took) = timed(|| {
        let mut misses = Vec::new();
        for n in 3..=16 {
            let label = format!("lnn:{n}");
            let g = load_graph(&label).unwrap();
            let angles = HashingAngles::default_for(n, 1).unwrap();
            let r = hash(
                &label,
                &g,
                &angles,
                HashStrategy::Path,
                Router::exact(),
                ledger,
            );
            if r.cnot_cost != 3 * n - 5 {
                misses.push(format!("n={n}: {} != {}", r.cnot_cost, 3 * n - 5));
            }
        }
        misses
    });
    Outcome::new(
        misses.is_empty() && took < LIMIT_LNN_HASH,
        format!(
            "n=3..16 cost 3n-5, {} mismatches, {took:.2?} (limit {LIMIT_LNN_HASH:?}) {misses:?}",
            misses.len()
        ),
    )
}

fn lnn_repeated(ledger: &mut Ledger) -> Outcome {
    let mut misses = Vec::new();
    for n in 3..=10 {
        let label = format!("lnn:{n}");
        let g = load_graph(&label).unwrap();
        for l in 1..=5 {
            let angles = HashingAngles::default_for(n, l).unwrap();
            let r = hash(
                &label,
                &g,
                &angles,
                HashStrategy::Path,
                Router::exact(),
                ledger,
            );
            let want = 3 * n * l + 2 - 7 * l;
            if r.cnot_cost != want {
                misses.push(format!("n={n} l={l}: {} != {want}", r.cnot_cost));
            }
        }
    }
    Outcome::new(
        misses.is_empty(),
        format!(
            "n=3..10 l=1..5 cost 3nl-7l+2, {} mismatches {misses:?}",
            misses.len()
        ),
    )
}

fn qft_closed_form(n: usize) -> usize {
    (3 * n * n - 3 * n) / 2 - 1
}

fn lnn_qft(ledger: &mut Ledger) -> Outcome {
    let ((misses, five), took) = timed(|| {
        let mut misses = Vec::new();
        let mut five = 0;
        for n in 2..=16 {
            let label = format!("lnn:{n}");
            let r = qft(
                &label,
                &load_graph(&label).unwrap(),
                Router::exact(),
                ledger,
            );
            if n == 5 {
                five = r.cnot_cost;
            }
            if r.cnot_cost != qft_closed_form(n) {
                misses.push(format!("n={n}: {} != {}", r.cnot_cost, qft_closed_form(n)));
            }
        }
        (misses, five)
    });
    Outcome::new(
        misses.is_empty() && five == 29 && took < LIMIT_LNN_QFT,
        format!(
            "n=2..16 cost 1.5n^2-1.5n-1, n=5 gives {five}, {} mismatches, {took:.2?} (limit {LIMIT_LNN_QFT:?}) {misses:?}",
            misses.len()
        ),
    )
}

fn hamiltonian_qft(ledger: &mut Ledger) -> Outcome {
    let mut misses = Vec::new();
    let mut count = 0;
    for n in 2..=12 {
        for family in ["complete", "cycle"] {
            if family == "cycle" && n < 3 {
                continue;
            }
            let label = format!("{family}:{n}");
            let r = qft(
                &label,
                &load_graph(&label).unwrap(),
                Router::exact(),
                ledger,
            );
            count += 1;
            if r.cnot_cost != qft_closed_form(n) {
                misses.push(format!(
                    "{label}: {} != {}",
                    r.cnot_cost,
                    qft_closed_form(n)
                ));
            }
        }
    }
    Outcome::new(
        misses.is_empty(),
        format!("{count} graphs, {} mismatches {misses:?}", misses.len()),
    )
}

fn presets(ledger: &mut Ledger) -> Outcome {
    let cases = [
        ("sun16", "hash", Router::exact(), 42.0, LIMIT_SUN16),
        ("sun16", "qft", Router::exact(), 342.0, LIMIT_SUN16),
        ("twosuns27", "hash", Router::TwoOpt, 69.0, LIMIT_TWOSUNS27),
        ("twosuns27", "qft", Router::TwoOpt, 1009.0, LIMIT_TWOSUNS27),
    ];
    let mut pass = true;
    let mut notes = Vec::new();
    let mut summary = Vec::new();
    for (name, algo, router, target, limit) in cases {
        let g = load_graph(name).unwrap();
        let (r, took) = timed(|| {
            if algo == "hash" {
                let angles = HashingAngles::default_for(g.n(), 1).unwrap();
                hash(name, &g, &angles, HashStrategy::Path, router, ledger)
            } else {
                qft(name, &g, router, ledger)
            }
        });
        let rel = (r.cnot_cost as f64 - target) / target;
        let ok = rel.abs() <= PRESET_REL_TOL && r.bounds_pass() && took < limit;
        pass &= ok;
        summary.push(format!("{name}/{algo}={}", r.cnot_cost));
        notes.push(format!(
            "{name} {algo} ({}): cost {} vs {target} ({:+.1}%), bounds {}, {took:.2?} (limit {limit:?}) {}",
            router.name(),
            r.cnot_cost,
            100.0 * rel,
            if r.bounds_pass() { "ok" } else { "VIOLATED" },
            if ok { "ok" } else { "FAIL" }
        ));
        for (i, w) in r.walks.iter().enumerate().take(1) {
            notes.push(format!("  walk[{i}] {:?}", w.vertices));
        }
        notes.push(format!("  initial mapping {:?}", r.initial_mapping));
        notes.push(format!("  final mapping   {:?}", r.final_mapping));
    }
    let mut out = Outcome::new(
        pass,
        format!(
            "within {:.0}% and all bounds: {}",
            PRESET_REL_TOL * 100.0,
            summary.join(", ")
        ),
    );
    out.notes = notes;
    out
}

fn semantic_graphs() -> Vec<(String, CouplingGraph)> {
    let mut out = Vec::new();
    for (family, lo) in [("lnn", 2), ("star", 3), ("complete", 3), ("cycle", 3)] {
        for n in lo..=5 {
            let label = format!("{family}:{n}");
            out.push((label.clone(), load_graph(&label).unwrap()));
        }
    }
    let mut r = rng(2024);
    for i in 0..SEMANTIC_SAMPLES {
        let n = r.gen_range(2..=5);
        let p = r.gen_range(0.0..0.7);
        out.push((format!("random#{i}"), random_connected(&mut r, n, p)));
    }
    out
}

fn semantic(ledger: &mut Ledger) -> Outcome {
    let ((checked, failures, worst), took) = timed(|| {
        let mut r = rng(77);
        let mut failures = Vec::new();
        let mut checked = 0;
        let mut worst: f64 = 0.0;
        for (label, g) in semantic_graphs() {
            let n = g.n();
            for l in 1..=3 {
                let steps = (0..l).map(|_| random_angles(&mut r, n - 1)).collect();
                let angles = HashingAngles::new(n, steps).unwrap();
                let reference = hash_layer(n, &angles.summed());
                for strategy in [HashStrategy::Path, HashStrategy::Cycle] {
                    let h = construct_hash(&g, &angles, strategy, Router::exact()).unwrap();
                    ledger.record(&label, &hash_report(&label, Router::exact(), &h));
                    let u = columns(n, &decompose(&h.circuit).gates);
                    let d = permuted_distance(
                        &u,
                        &reference,
                        h.initial.placement(),
                        h.final_mapping.placement(),
                    );
                    worst = worst.max(d);
                    checked += 1;
                    if d > SEMANTIC_TOL || !verify_hash(&h, &angles, SEMANTIC_TOL).unwrap() {
                        failures.push(format!("{label} hash l={l} {}", strategy.name()));
                    }
                }
            }
            for router in [Router::exact(), Router::TwoOpt] {
                let s = construct_qft(&g, router).unwrap();
                ledger.record(&label, &qft_report(&label, router, &s));
                let u = columns(n, &decompose(&s.circuit).gates);
                let pout = dft_output_placement(&s.final_mapping);
                let d = permuted_distance(&u, &dft(n), s.initial.placement(), &pout);
                worst = worst.max(d);
                checked += 1;
                if d > SEMANTIC_TOL || !verify_qft(&s, SEMANTIC_TOL).unwrap() {
                    failures.push(format!("{label} qft {}", router.name()));
                }
            }
        }
        (checked, failures, worst)
    });
    Outcome::new(
        failures.is_empty() && took < LIMIT_SEMANTIC,
        format!(
            "{checked} circuits at tol {SEMANTIC_TOL:e}, worst deviation {worst:.1e}, {} failures, {took:.2?} (limit {LIMIT_SEMANTIC:?}) {failures:?}",
            failures.len()
        ),
    )
}

fn routing_sample() -> Vec<CouplingGraph> {
    let mut r = rng(0xacce);
    (0..ROUTING_SAMPLES)
        .map(|i| {
            let n = 1 + i % 8;
            let p = r.gen_range(0.0..0.6);
            random_connected(&mut r, n, p)
        })
        .collect()
}

fn routing(sample: &[CouplingGraph]) -> Outcome {
    let ((mismatches, out_of_range), took) = timed(|| {
        let (mut mismatches, mut out_of_range) = (0, 0);
        for g in sample {
            let n = g.n();
            let w = shortest_covering_walk(g, &ActiveSet::all(n), WalkMode::Open, Router::exact())
                .unwrap();
            let valid = is_walk_in(g, &w.vertices) && covers_all(n, &w.vertices);
            if !valid || w.len() != brute_open_walk(g, None) {
                mismatches += 1;
            }
            if w.len() < n || 2 * w.len() > n * n + n {
                out_of_range += 1;
            }
        }
        (mismatches, out_of_range)
    });
    Outcome::new(
        mismatches == 0 && out_of_range == 0 && sample.len() >= 200 && took < LIMIT_ROUTING,
        format!(
            "{} graphs n<=8, {mismatches} brute-force mismatches, {out_of_range} outside n..(n^2+n)/2, {took:.2?} (limit {LIMIT_ROUTING:?})",
            sample.len()
        ),
    )
}

fn two_opt_quality(sample: &[CouplingGraph]) -> Outcome {
    let mut violations = 0;
    let mut tested = 0;
    let mut min_ratio: f64 = 1.0;
    for g in sample.iter().filter(|g| g.n() >= 3) {
        let s = build_supergraph(g).unwrap();
        let (best, worst) = brute_cycle_extremes(&floyd_warshall(g));
        let h = two_opt_cycle(&s, &ActiveSet::all(g.n())).unwrap().weight;
        tested += 1;
        let ratio = if worst == best {
            if h == best {
                1.0
            } else {
                0.0
            }
        } else {
            (worst - h) as f64 / (worst - best) as f64
        };
        min_ratio = min_ratio.min(ratio);
        if ratio < MIN_DIFFERENTIAL_RATIO {
            violations += 1;
        }
    }
    Outcome::new(
        violations == 0,
        format!("{tested} cycles, min differential ratio {min_ratio:.3} (need >= {MIN_DIFFERENTIAL_RATIO}), {violations} violations"),
    )
}

fn lowering_error(n: usize, gates: &[Gate], cnots: usize) -> Option<f64> {
    let mut c = Circuit::new(n);
    for &g in gates {
        c.push(g);
    }
    let basic = decompose(&c);
    if basic.count_cnots() != cnots || !basic.gates.iter().all(Gate::is_basic) {
        return None;
    }
    let target = columns(n, gates);
    Some(
        distance(&columns(n, &basic.gates), &target)
            .max(distance(&columns(n, &naive_lowering(gates)), &target)),
    )
}

fn decompositions() -> Outcome {
    let mut r = rng(9);
    let mut worst: f64 = 0.0;
    let mut failed = Vec::new();
    for _ in 0..25 {
        let t = r.gen_range(-2.0 * PI..2.0 * PI);
        let cases: [(&str, Vec<Gate>, usize); 6] = [
            (
                "cry",
                vec![Gate::Cry {
                    control: 0,
                    target: 1,
                    theta: t,
                }],
                2,
            ),
            ("swap", vec![Gate::Swap { a: 1, b: 0 }], 3),
            (
                "cp",
                vec![Gate::Cp {
                    control: 1,
                    target: 0,
                    lambda: t,
                }],
                2,
            ),
            (
                "cry+swap",
                vec![
                    Gate::Cry {
                        control: 0,
                        target: 1,
                        theta: t,
                    },
                    Gate::Swap { a: 0, b: 1 },
                ],
                3,
            ),
            (
                "cp+swap",
                vec![
                    Gate::Cp {
                        control: 1,
                        target: 0,
                        lambda: t,
                    },
                    Gate::Swap { a: 0, b: 1 },
                ],
                3,
            ),
            (
                "cnot pair",
                vec![
                    Gate::Cry {
                        control: 2,
                        target: 1,
                        theta: t,
                    },
                    Gate::Cnot {
                        control: 2,
                        target: 1,
                    },
                    Gate::Cnot {
                        control: 2,
                        target: 1,
                    },
                    Gate::Cp {
                        control: 0,
                        target: 2,
                        lambda: -t,
                    },
                ],
                4,
            ),
        ];
        for (name, gates, cnots) in cases {
            let n = if name == "cnot pair" { 3 } else { 2 };
            match lowering_error(n, &gates, cnots) {
                Some(e) if e <= GATE_TOL => worst = worst.max(e),
                _ => failed.push(name),
            }
        }
    }
    failed.dedup();
    Outcome::new(
        failed.is_empty(),
        format!("cry, swap, cp, cry+swap, cp+swap, cancellation; worst {worst:.1e} at tol {GATE_TOL:e} {failed:?}"),
    )
}

fn bound_suite(ledger: &mut Ledger) -> Outcome {
    // cycle-strategy runs over the named families complete the coverage
    for (label, g) in semantic_graphs().into_iter().take(13) {
        for l in 1..=4 {
            let angles = HashingAngles::default_for(g.n(), l).unwrap();
            hash(
                &label,
                &g,
                &angles,
                HashStrategy::Cycle,
                Router::exact(),
                ledger,
            );
        }
    }
    let violations: Vec<String> = ledger
        .checks
        .iter()
        .filter(|(_, b)| !b.pass)
        .map(|(label, b)| format!("{label} {}: {} vs {}", b.name, b.measured, b.bound))
        .collect();
    let mut names: Vec<&str> = ledger.checks.iter().map(|(_, b)| b.name).collect();
    names.sort();
    names.dedup();
    let mut out = Outcome::new(
        violations.is_empty(),
        format!(
            "{} circuits, {} checks ({}), {} violations {violations:?}",
            ledger.circuits,
            ledger.checks.len(),
            names.join(", "),
            violations.len()
        ),
    );
    out.notes.push(format!(
        "  exact QFT below 1.5n^2-1.5n-1 (lower end not enforced): {} circuits {:?}",
        ledger.below_qft_floor.len(),
        ledger.below_qft_floor.iter().take(5).collect::<Vec<_>>()
    ));
    out
}

fn main() {
    let mut ledger = Ledger::default();
    let sample = routing_sample();
    let outcomes = [
        ("LNN hashing closed form", lnn_hashing(&mut ledger)),
        ("LNN repeated hashing", lnn_repeated(&mut ledger)),
        ("LNN QFT closed form", lnn_qft(&mut ledger)),
        ("Hamiltonian-path QFT", hamiltonian_qft(&mut ledger)),
        ("preset reproduction", presets(&mut ledger)),
        ("semantic oracle", semantic(&mut ledger)),
        ("routing oracle", routing(&sample)),
        ("2-opt quality", two_opt_quality(&sample)),
        ("decomposition identities", decompositions()),
        ("bound suite", bound_suite(&mut ledger)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in outcomes.iter().enumerate() {
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} {name}: {}", i + 1, o.detail);
        for note in &o.notes {
            println!("    {note}");
        }
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {}/{} criteria passed",
        outcomes.len() - failed,
        outcomes.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

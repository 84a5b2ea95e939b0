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

//! Routed shallow hashing circuits.
//!
//! One logical target receives a controlled Ry from every other qubit. The
//! target travels along a covering walk; at each position it is rotated by
//! the qubit sitting on the next walk vertex, then swapped forward unless
//! the walk immediately comes back (a stay-step).
//!
//! Logical numbering is 0-based: controls are `0..n-1`, the target is
//! `n-1`. Angle `steps[s][c]` belongs to control `c` in step `s`.

use std::f64::consts::PI;
use std::path::Path;

use serde::Serialize;

use crate::circuit::{decompose, Circuit, Gate, MappingTrace};
use crate::error::{Error, Result};
use crate::graph::{CouplingGraph, Walk};
use crate::route::{shortest_covering_walk, ActiveSet, Router, WalkMode};
use crate::sim::{circuit_unitary, equivalent_up_to_permutation, hash_reference, WirePermutation};

/// Rotation angles for `l` hashing steps on `n` qubits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HashingAngles {
    steps: Vec<Vec<f64>>,
}

impl HashingAngles {
    pub fn new(n: usize, steps: Vec<Vec<f64>>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::NoHashSteps);
        }
        let expected = n
            .checked_sub(1)
            .filter(|&e| e >= 1)
            .ok_or(Error::TooFewQubits(n))?;
        for (s, step) in steps.iter().enumerate() {
            if step.len() != expected {
                return Err(Error::AngleCount {
                    step: s,
                    got: step.len(),
                    expected,
                });
            }
            if let Some(index) = step.iter().position(|a| !a.is_finite()) {
                return Err(Error::NonFiniteAngle { step: s, index });
            }
        }
        Ok(Self { steps })
    }

    /// The same angles repeated for `l` steps.
    pub fn repeated(n: usize, angles: &[f64], l: usize) -> Result<Self> {
        Self::new(n, vec![angles.to_vec(); l])
    }

    /// Angles `4 pi k / m` for `k = 1..n-1` and `m = 2^n`, repeated `l` times.
    pub fn default_for(n: usize, l: usize) -> Result<Self> {
        let k: Vec<u64> = (1..n as u64).collect();
        let m = 1u64 << n.min(62);
        Self::repeated(n, &fingerprint_angles(&k, m), l)
    }

    /// Text form: one line per step, `n - 1` whitespace-separated radians.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let step = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>().map_err(|e| Error::Parse {
                        line: i + 1,
                        message: format!("bad angle {tok:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            steps.push(step);
        }
        Self::new(n, steps)
    }

    pub fn load(path: &Path, n: usize) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, n)
    }

    pub fn n(&self) -> usize {
        self.steps[0].len() + 1
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&self, s: usize) -> &[f64] {
        &self.steps[s]
    }

    pub fn steps(&self) -> &[Vec<f64>] {
        &self.steps
    }

    /// Per-control totals; the whole repeated circuit equals one step with
    /// these angles.
    pub fn summed(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n() - 1];
        for step in &self.steps {
            for (o, a) in out.iter_mut().zip(step) {
                *o += a;
            }
        }
        out
    }
}

/// Binding of logical qubits to the vertices of a covering walk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HashingPlan {
    pub walk: Walk,
    pub target_vertex: usize,
    /// `controls[c]` is the vertex that initially holds control `c`.
    pub controls: Vec<usize>,
    /// Number of stay-steps `walk[j] == walk[j + 2]`.
    pub stays: usize,
}

impl HashingPlan {
    /// Target on the second walk vertex, controls numbered by first visit.
    /// For closed walks the repeated final vertex is ignored.
    pub fn new(walk: Walk, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewQubits(n));
        }
        let seq = walk_sequence(&walk);
        if seq.len() < 2 {
            return Err(Error::WalkTooShort {
                need: 2,
                got: seq.len(),
            });
        }
        let target_vertex = seq[1];
        let mut seen = vec![false; n];
        seen[target_vertex] = true;
        let mut controls = Vec::with_capacity(n - 1);
        for &v in seq {
            if v >= n {
                return Err(Error::VertexOutOfRange(v, v, n));
            }
            if !seen[v] {
                seen[v] = true;
                controls.push(v);
            }
        }
        if controls.len() != n - 1 {
            return Err(Error::Internal(format!(
                "walk covers {} of {n} vertices",
                controls.len() + 1
            )));
        }
        let stays = walk.stay_count();
        Ok(Self {
            walk,
            target_vertex,
            controls,
            stays,
        })
    }

    pub fn n(&self) -> usize {
        self.controls.len() + 1
    }

    /// Logical control initially on `v`, `None` for the target vertex.
    pub fn control_of(&self, v: usize) -> Option<usize> {
        self.controls.iter().position(|&u| u == v)
    }

    pub fn initial_mapping(&self) -> MappingTrace {
        let mut q = self.controls.clone();
        q.push(self.target_vertex);
        let n = q.len();
        MappingTrace::from_placement(q, n).expect("plan is a bijection")
    }
}

fn walk_sequence(walk: &Walk) -> &[usize] {
    let v = &walk.vertices;
    if walk.closed && v.len() > 1 {
        &v[..v.len() - 1]
    } else {
        v
    }
}

/// The traveling target. `seq` is an open walk, or the cyclic order of a
/// closed walk when `cyclic` is set.
struct Traveler {
    seq: Vec<usize>,
    cyclic: bool,
    pos: usize,
    trace: MappingTrace,
    circuit: Circuit,
    target: usize,
}

impl Traveler {
    fn new(seq: Vec<usize>, cyclic: bool, trace: MappingTrace) -> Self {
        let n = trace.placement().len();
        Self {
            seq,
            cyclic,
            pos: 1,
            trace,
            circuit: Circuit::new(n),
            target: n - 1,
        }
    }

    fn vertex_at(&self, i: isize) -> Option<usize> {
        let k = self.seq.len() as isize;
        if self.cyclic {
            Some(self.seq[i.rem_euclid(k) as usize])
        } else if (0..k).contains(&i) {
            Some(self.seq[i as usize])
        } else {
            None
        }
    }

    fn target_vertex(&self) -> usize {
        self.trace.physical(self.target)
    }

    /// Claims the control sitting on `v` if it has not been applied in this
    /// step; returns the vertex and its angle.
    fn claim(
        &self,
        v: Option<usize>,
        angles: &[f64],
        applied: &mut [bool],
    ) -> Option<(usize, f64)> {
        let v = v?;
        let c = self.trace.logical(v)?;
        if c == self.target || applied[c] {
            return None;
        }
        applied[c] = true;
        Some((v, angles[c]))
    }

    fn last_is_pair(&self, control: usize) -> bool {
        let target = self.target_vertex();
        matches!(self.circuit.gates.last(),
            Some(&Gate::Cry { control: c, target: t, .. }) if (c, t) == (control, target))
    }

    /// Emits a controlled Ry, folding it into an identical-pair gate at the
    /// end of the stream.
    fn rotate(&mut self, control: usize, angle: f64) {
        let target = self.target_vertex();
        if let Some(Gate::Cry {
            control: c,
            target: t,
            theta,
        }) = self.circuit.gates.last_mut()
        {
            if (*c, *t) == (control, target) {
                *theta += angle;
                return;
            }
        }
        self.circuit.push(Gate::Cry {
            control,
            target,
            theta: angle,
        });
    }

    /// Step start: rotations from the qubits just behind and just ahead.
    fn open_step(&mut self, angles: &[f64], applied: &mut [bool]) {
        let p = self.pos as isize;
        let behind_v = self.vertex_at(p - 1);
        let ahead_v = self.vertex_at(p + 1).filter(|&v| Some(v) != behind_v);
        let behind = self.claim(behind_v, angles, applied);
        let ahead = self.claim(ahead_v, angles, applied);
        match (behind, ahead) {
            (Some((bv, ba)), Some((av, aa))) if self.last_is_pair(av) && !self.last_is_pair(bv) => {
                // keep the ahead rotation last so it can pair with the swap;
                // rotations onto one target commute
                let last = self.circuit.gates.pop().expect("checked");
                self.rotate(bv, ba);
                self.circuit.push(last);
                self.rotate(av, aa);
            }
            _ => {
                for (v, a) in behind.into_iter().chain(ahead) {
                    self.rotate(v, a);
                }
            }
        }
    }

    /// Moves the target one walk step: a stay when the walk returns, a
    /// swap otherwise. Then rotates by the qubit ahead if it is new.
    fn advance(&mut self, angles: &[f64], applied: &mut [bool]) {
        let p = self.pos as isize;
        let here = self.vertex_at(p).expect("target on walk");
        if self.vertex_at(p + 2) == Some(here) {
            self.pos += 2;
        } else {
            let next = self.vertex_at(p + 1).expect("walk continues");
            self.circuit.push(Gate::Swap { a: here, b: next });
            self.trace.apply_swap(here, next);
            self.pos += 1;
        }
        if self.cyclic {
            self.pos %= self.seq.len();
        }
        let ahead = self.vertex_at(self.pos as isize + 1);
        if let Some((v, a)) = self.claim(ahead, angles, applied) {
            self.rotate(v, a);
        }
    }

    /// One full pass over an open walk.
    fn open_pass(&mut self, angles: &[f64]) {
        let mut applied = vec![false; self.target + 1];
        self.open_step(angles, &mut applied);
        while self.pos + 2 < self.seq.len() {
            self.advance(angles, &mut applied);
        }
    }

    /// Travels around the cycle until every control has been applied.
    fn cyclic_pass(&mut self, angles: &[f64]) -> Result<()> {
        let mut applied = vec![false; self.target + 1];
        self.open_step(angles, &mut applied);
        let limit = 2 * self.seq.len();
        for _ in 0..limit {
            if applied[..self.target].iter().all(|&a| a) {
                return Ok(());
            }
            self.advance(angles, &mut applied);
        }
        if applied[..self.target].iter().all(|&a| a) {
            Ok(())
        } else {
            Err(Error::Internal(
                "cyclic pass did not meet every control".into(),
            ))
        }
    }

    fn reverse(&mut self) {
        self.seq.reverse();
        self.pos = self.seq.len() - 1 - self.pos;
    }
}

/// One application along the plan's walk.
pub fn construct_hash_step(plan: &HashingPlan, angles: &[f64]) -> Result<(Circuit, MappingTrace)> {
    let n = plan.n();
    if angles.len() + 1 != n {
        return Err(Error::AngleCount {
            step: 0,
            got: angles.len(),
            expected: n - 1,
        });
    }
    let mut t = Traveler::new(
        walk_sequence(&plan.walk).to_vec(),
        false,
        plan.initial_mapping(),
    );
    t.open_pass(angles);
    Ok((t.circuit, t.trace))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HashStrategy {
    /// Walk back and forth along an open walk.
    Path,
    /// Keep traveling around a closed walk.
    Cycle,
}

impl HashStrategy {
    pub fn name(&self) -> &'static str {
        match self {
            HashStrategy::Path => "path",
            HashStrategy::Cycle => "cycle",
        }
    }
}

/// A routed hashing circuit and its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct HashSynthesis {
    pub plan: HashingPlan,
    pub strategy: HashStrategy,
    pub steps: usize,
    pub circuit: Circuit,
    pub initial: MappingTrace,
    pub final_mapping: MappingTrace,
}

impl HashSynthesis {
    /// `k` of the cost bounds: open-walk length, or closed-walk length
    /// minus one.
    pub fn walk_k(&self) -> usize {
        walk_sequence(&self.plan.walk).len()
    }
}

fn check_angles(g: &CouplingGraph, angles: &HashingAngles) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::TooFewQubits(g.n()));
    }
    if angles.n() != g.n() {
        return Err(Error::AngleCount {
            step: 0,
            got: angles.n() - 1,
            expected: g.n() - 1,
        });
    }
    Ok(())
}

/// Repeated hashing, reversing the walk after every step. Where one step
/// ends and the next begins on the same pair, the two rotations become one
/// with the summed angle.
pub fn construct_hash_repeated_path(
    g: &CouplingGraph,
    angles: &HashingAngles,
    router: Router,
) -> Result<HashSynthesis> {
    check_angles(g, angles)?;
    let walk = shortest_covering_walk(g, &ActiveSet::all(g.n()), WalkMode::Open, router)?;
    let plan = HashingPlan::new(walk, g.n())?;
    Ok(hash_path_on_plan(plan, angles))
}

fn hash_path_on_plan(plan: HashingPlan, angles: &HashingAngles) -> HashSynthesis {
    let initial = plan.initial_mapping();
    let mut t = Traveler::new(walk_sequence(&plan.walk).to_vec(), false, initial.clone());
    for s in 0..angles.len() {
        if s > 0 {
            t.reverse();
        }
        t.open_pass(angles.step(s));
    }
    HashSynthesis {
        plan,
        strategy: HashStrategy::Path,
        steps: angles.len(),
        circuit: t.circuit,
        initial,
        final_mapping: t.trace,
    }
}

/// Repeated hashing around a closed covering walk. The first step is the
/// single-step construction on the opened cycle; afterwards the target
/// keeps moving forward around the cycle, crossing the closing edge with
/// ordinary swaps.
pub fn construct_hash_repeated_cycle(
    g: &CouplingGraph,
    angles: &HashingAngles,
    router: Router,
) -> Result<HashSynthesis> {
    check_angles(g, angles)?;
    let walk = shortest_covering_walk(g, &ActiveSet::all(g.n()), WalkMode::Closed, router)?;
    let plan = HashingPlan::new(walk, g.n())?;
    hash_cycle_on_plan(plan, angles)
}

fn hash_cycle_on_plan(plan: HashingPlan, angles: &HashingAngles) -> Result<HashSynthesis> {
    let initial = plan.initial_mapping();
    let mut t = Traveler::new(walk_sequence(&plan.walk).to_vec(), true, initial.clone());
    for s in 0..angles.len() {
        t.cyclic_pass(angles.step(s))?;
    }
    Ok(HashSynthesis {
        plan,
        strategy: HashStrategy::Cycle,
        steps: angles.len(),
        circuit: t.circuit,
        initial,
        final_mapping: t.trace,
    })
}

/// Repeated hashing along an explicit walk; open walks use the path
/// strategy, closed walks the cycle strategy.
pub fn construct_hash_on_walk(walk: Walk, angles: &HashingAngles) -> Result<HashSynthesis> {
    let n = angles.n();
    let plan = HashingPlan::new(walk, n)?;
    if plan.walk.closed {
        hash_cycle_on_plan(plan, angles)
    } else {
        Ok(hash_path_on_plan(plan, angles))
    }
}

pub fn construct_hash(
    g: &CouplingGraph,
    angles: &HashingAngles,
    strategy: HashStrategy,
    router: Router,
) -> Result<HashSynthesis> {
    match strategy {
        HashStrategy::Path => construct_hash_repeated_path(g, angles, router),
        HashStrategy::Cycle => construct_hash_repeated_cycle(g, angles, router),
    }
}

/// Checks the decomposed circuit against the unrouted hashing layer with
/// the summed angles, modulo the tracked placements.
pub fn verify_hash(h: &HashSynthesis, angles: &HashingAngles, tol: f64) -> Result<bool> {
    let u = circuit_unitary(&decompose(&h.circuit))?;
    let reference = hash_reference(angles.n(), &angles.summed())?;
    let pin = WirePermutation::new(h.initial.placement().to_vec())?;
    let pout = WirePermutation::new(h.final_mapping.placement().to_vec())?;
    Ok(equivalent_up_to_permutation(
        &u, &reference, &pin, &pout, tol,
    ))
}

/// Rotation angles `4 pi k / m`; after `g` applications the target
/// amplitude of parameter `k` is `cos(2 pi k g / m)`.
pub fn fingerprint_angles(k: &[u64], m: u64) -> Vec<f64> {
    k.iter()
        .map(|&k| 4.0 * PI * (k % m) as f64 / m as f64)
        .collect()
}

/// Probability that the hashed state returns to the all-zero state after
/// `g` applications: `(1/t^2) (sum_i cos(2 pi k_i g / m))^2`.
pub fn accept_probability(k: &[u64], m: u64, g: i64) -> f64 {
    assert!(
        m >= 1 && !k.is_empty(),
        "need m >= 1 and a nonempty parameter set"
    );
    let m_i = m as i128;
    let s: f64 = k
        .iter()
        .map(|&ki| {
            // exact residue keeps the cosine argument small
            let r = (ki as i128 * g as i128).rem_euclid(m_i);
            (2.0 * PI * r as f64 / m as f64).cos()
        })
        .sum();
    let t = k.len() as f64;
    ((s * s) / (t * t)).clamp(0.0, 1.0)
}

/// True iff the acceptance probability is below `eps` for every nonzero
/// residue `g` modulo `m`.
pub fn is_good_set(k: &[u64], m: u64, eps: f64) -> bool {
    assert!(m >= 2, "need m >= 2");
    (1..m as i64).all(|g| accept_probability(k, m, g) < eps)
}

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

//! Test oracles written independently of the library: random graphs,
//! brute-force routing, Floyd-Warshall, a small statevector simulator and
//! reference transforms built from their definitions.

#![allow(dead_code)]

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64 as C;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use routesynth::{CouplingGraph, Gate};

pub const INF: u32 = u32::MAX / 4;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected graph: a random tree plus each remaining pair with
/// probability `p`, under a shuffled labelling.
pub fn random_connected(r: &mut ChaCha8Rng, n: usize, p: f64) -> CouplingGraph {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(r);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = r.gen_range(0..v);
        edges.push((label[u], label[v]));
    }
    for u in 0..n {
        for v in u + 1..n {
            let present = edges
                .iter()
                .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u));
            if !present && r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    CouplingGraph::new(n, &edges).expect("tree plus extras is connected")
}

pub fn adjacency(g: &CouplingGraph) -> Vec<Vec<bool>> {
    let n = g.n();
    let mut a = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

pub fn floyd_warshall(g: &CouplingGraph) -> Vec<Vec<u32>> {
    let n = g.n();
    let a = adjacency(g);
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                d[i][j] = 0;
            } else if a[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Fewest vertices in a walk that visits every vertex; `start` pins the
/// first vertex.
pub fn brute_open_walk(g: &CouplingGraph, start: Option<usize>) -> usize {
    let n = g.n();
    let full = (1usize << n) - 1;
    let mut dist = vec![usize::MAX; n << n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if start.is_none_or(|s| s == v) {
            let st = (v << n) | (1 << v);
            dist[st] = 1;
            queue.push_back(st);
        }
    }
    while let Some(st) = queue.pop_front() {
        let (v, mask) = (st >> n, st & full);
        if mask == full {
            return dist[st];
        }
        for &u in g.neighbors(v) {
            let next = (u << n) | mask | (1 << u);
            if dist[next] == usize::MAX {
                dist[next] = dist[st] + 1;
                queue.push_back(next);
            }
        }
    }
    unreachable!("connected graph")
}

/// Fewest edges in a closed walk that visits every vertex.
pub fn brute_closed_walk_edges(g: &CouplingGraph) -> usize {
    let n = g.n();
    if n == 1 {
        return 0;
    }
    let full = (1usize << n) - 1;
    // start at 0 without loss of generality
    let mut dist = vec![usize::MAX; n << n];
    let start = 1;
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(st) = queue.pop_front() {
        let (v, mask) = (st >> n, st & full);
        if v == 0 && mask == full && dist[st] > 0 {
            return dist[st];
        }
        for &u in g.neighbors(v) {
            let next = (u << n) | mask | (1 << u);
            if dist[next] == usize::MAX {
                dist[next] = dist[st] + 1;
                queue.push_back(next);
            }
        }
    }
    unreachable!("connected graph")
}

fn permutations(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Best and worst Hamiltonian cycle weight under the metric `d`.
pub fn brute_cycle_extremes(d: &[Vec<u32>]) -> (u32, u32) {
    let n = d.len();
    if n <= 1 {
        return (0, 0);
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let (mut best, mut worst) = (u32::MAX, 0);
    permutations(&mut rest, 0, &mut |p| {
        let mut w = d[0][p[0]] + d[p[p.len() - 1]][0];
        for e in p.windows(2) {
            w += d[e[0]][e[1]];
        }
        best = best.min(w);
        worst = worst.max(w);
    });
    (best, worst)
}

/// Best and worst Hamiltonian path weight under the metric `d`.
pub fn brute_path_extremes(d: &[Vec<u32>]) -> (u32, u32) {
    let mut all: Vec<usize> = (0..d.len()).collect();
    let (mut best, mut worst) = (u32::MAX, 0);
    permutations(&mut all, 0, &mut |p| {
        let w: u32 = p.windows(2).map(|e| d[e[0]][e[1]]).sum();
        best = best.min(w);
        worst = worst.max(w);
    });
    (best, worst)
}

pub fn is_walk_in(g: &CouplingGraph, walk: &[usize]) -> bool {
    let a = adjacency(g);
    walk.windows(2).all(|w| a[w[0]][w[1]])
}

pub fn covers_all(n: usize, walk: &[usize]) -> bool {
    (0..n).all(|v| walk.contains(&v))
}

// ---- simulation -------------------------------------------------------

pub type State = Vec<C>;
pub type Matrix = Vec<State>;

fn mask(n: usize, wire: usize) -> usize {
    1 << (n - 1 - wire)
}

fn single(state: &mut State, n: usize, wire: usize, m: [[C; 2]; 2], control: Option<usize>) {
    let t = mask(n, wire);
    let c = control.map_or(0, |c| mask(n, c));
    for i in 0..state.len() {
        if i & t == 0 && i & c == c {
            let (a, b) = (state[i], state[i | t]);
            state[i] = m[0][0] * a + m[0][1] * b;
            state[i | t] = m[1][0] * a + m[1][1] * b;
        }
    }
}

fn ry(theta: f64) -> [[C; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    [
        [C::new(c, 0.0), C::new(-s, 0.0)],
        [C::new(s, 0.0), C::new(c, 0.0)],
    ]
}

fn rz(theta: f64) -> [[C; 2]; 2] {
    [
        [C::from_polar(1.0, -theta / 2.0), C::new(0.0, 0.0)],
        [C::new(0.0, 0.0), C::from_polar(1.0, theta / 2.0)],
    ]
}

pub fn apply(state: &mut State, n: usize, g: &Gate) {
    let o = C::new(0.0, 0.0);
    let l = C::new(1.0, 0.0);
    let x = [[o, l], [l, o]];
    match *g {
        Gate::H { wire } => {
            let h = C::new(0.5f64.sqrt(), 0.0);
            single(state, n, wire, [[h, h], [h, -h]], None)
        }
        Gate::X { wire } => single(state, n, wire, x, None),
        Gate::Ry { wire, theta } => single(state, n, wire, ry(theta), None),
        Gate::Rz { wire, theta } => single(state, n, wire, rz(theta), None),
        Gate::Cnot { control, target } => single(state, n, target, x, Some(control)),
        Gate::Cry {
            control,
            target,
            theta,
        } => single(state, n, target, ry(theta), Some(control)),
        Gate::Cp {
            control,
            target,
            lambda,
        } => single(
            state,
            n,
            target,
            [[l, o], [o, C::from_polar(1.0, lambda)]],
            Some(control),
        ),
        Gate::Swap { a, b } => {
            let (ma, mb) = (mask(n, a), mask(n, b));
            for i in 0..state.len() {
                if i & ma != 0 && i & mb == 0 {
                    state.swap(i, i ^ ma ^ mb);
                }
            }
        }
    }
}

pub fn run(n: usize, gates: &[Gate], input: usize) -> State {
    let mut s = vec![C::new(0.0, 0.0); 1 << n];
    s[input] = C::new(1.0, 0.0);
    for g in gates {
        apply(&mut s, n, g);
    }
    s
}

/// Columns of the unitary of `gates`.
pub fn columns(n: usize, gates: &[Gate]) -> Matrix {
    (0..1 << n).map(|j| run(n, gates, j)).collect()
}

/// Moves logical bit `l` (MSB first) to wire `wire_of[l]`.
pub fn place(index: usize, wire_of: &[usize]) -> usize {
    let n = wire_of.len();
    let mut out = 0;
    for (l, &w) in wire_of.iter().enumerate() {
        if index >> (n - 1 - l) & 1 == 1 {
            out |= 1 << (n - 1 - w);
        }
    }
    out
}

/// Largest distance between `actual` and `reference` after permuting wires
/// (`pin` on inputs, `pout` on outputs) and fixing one global phase.
pub fn permuted_distance(
    actual: &Matrix,
    reference: &Matrix,
    pin: &[usize],
    pout: &[usize],
) -> f64 {
    let dim = reference.len();
    let mut phase = None;
    let mut worst: f64 = 0.0;
    for c in 0..dim {
        let col = &actual[place(c, pin)];
        for r in 0..dim {
            let a = col[place(r, pout)];
            let b = reference[c][r];
            if phase.is_none() && b.norm() > 1e-6 {
                if a.norm() < 1e-9 {
                    return f64::INFINITY;
                }
                let p = a / b;
                phase = Some(p / p.norm());
            }
            worst = worst.max((a - phase.unwrap_or(C::new(1.0, 0.0)) * b).norm());
        }
    }
    worst
}

/// Global-phase-insensitive distance between two unitaries on the same
/// wires.
pub fn distance(a: &Matrix, b: &Matrix) -> f64 {
    let id: Vec<usize> = (0..a.len().trailing_zeros() as usize).collect();
    permuted_distance(a, b, &id, &id)
}

/// DFT columns: `|j> -> sum_k e^{2 pi i jk/N} |k> / sqrt N`.
pub fn dft(n: usize) -> Matrix {
    let dim = 1usize << n;
    let scale = 1.0 / (dim as f64).sqrt();
    (0..dim)
        .map(|j| {
            (0..dim)
                .map(|k| C::from_polar(scale, 2.0 * PI * ((j * k) % dim) as f64 / dim as f64))
                .collect()
        })
        .collect()
}

/// Shallow hashing layer: the last qubit rotates by `sum_i angles[i] x_i`.
pub fn hash_layer(n: usize, angles: &[f64]) -> Matrix {
    let dim = 1usize << n;
    (0..dim)
        .map(|j| {
            let theta: f64 = (0..n - 1)
                .filter(|&i| j >> (n - 1 - i) & 1 == 1)
                .map(|i| angles[i])
                .sum();
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let mut col = vec![C::new(0.0, 0.0); dim];
            let base = j & !1;
            if j & 1 == 0 {
                col[base] = C::new(c, 0.0);
                col[base | 1] = C::new(s, 0.0);
            } else {
                col[base] = C::new(-s, 0.0);
                col[base | 1] = C::new(c, 0.0);
            }
            col
        })
        .collect()
}

/// Textbook lowering of macro gates with no cancellation at all.
pub fn naive_lowering(gates: &[Gate]) -> Vec<Gate> {
    let mut out = Vec::new();
    for &g in gates {
        match g {
            Gate::Cry {
                control,
                target,
                theta,
            } => out.extend([
                Gate::Ry {
                    wire: target,
                    theta: theta / 2.0,
                },
                Gate::Cnot { control, target },
                Gate::Ry {
                    wire: target,
                    theta: -theta / 2.0,
                },
                Gate::Cnot { control, target },
            ]),
            Gate::Cp {
                control,
                target,
                lambda,
            } => out.extend([
                Gate::Rz {
                    wire: control,
                    theta: lambda / 2.0,
                },
                Gate::Rz {
                    wire: target,
                    theta: lambda / 2.0,
                },
                Gate::Cnot { control, target },
                Gate::Rz {
                    wire: target,
                    theta: -lambda / 2.0,
                },
                Gate::Cnot { control, target },
            ]),
            Gate::Swap { a, b } => out.extend([
                Gate::Cnot {
                    control: a,
                    target: b,
                },
                Gate::Cnot {
                    control: b,
                    target: a,
                },
                Gate::Cnot {
                    control: a,
                    target: b,
                },
            ]),
            other => out.push(other),
        }
    }
    out
}

pub fn random_angles(r: &mut ChaCha8Rng, count: usize) -> Vec<f64> {
    (0..count).map(|_| r.gen_range(-PI..PI)).collect()
}

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

//! Dense simulation for small registers, used as the correctness oracle.
//!
//! Wire 0 is the most significant bit of a basis index. Unitaries are
//! stored row-major.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

pub const UNITARY_CAP: usize = 10;
pub const STATEVECTOR_CAP: usize = 20;

/// Full unitaries are checked against `U^dagger U = I` up to this width.
const FULL_UNITARITY_CHECK: usize = 6;

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    n_qubits: usize,
    data: Vec<C>,
}

impl UnitaryMatrix {
    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = ONE;
        }
        Self { n_qubits, data }
    }

    pub fn from_rows(n_qubits: usize, data: Vec<C>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(data.len(), dim * dim));
        }
        Ok(Self { n_qubits, data })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn get(&self, row: usize, col: usize) -> C {
        self.data[row * self.dim() + col]
    }

    pub fn column(&self, col: usize) -> Vec<C> {
        (0..self.dim()).map(|r| self.get(r, col)).collect()
    }

    fn set_column(&mut self, col: usize, values: &[C]) {
        let dim = self.dim();
        for (r, &v) in values.iter().enumerate() {
            self.data[r * dim + col] = v;
        }
    }

    /// `self * rhs`.
    pub fn mul(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch(self.dim(), rhs.dim()));
        }
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.data[i * dim + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..dim {
                    data[i * dim + j] += a * rhs.data[k * dim + j];
                }
            }
        }
        Ok(UnitaryMatrix {
            n_qubits: self.n_qubits,
            data,
        })
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                data[j * dim + i] = self.data[i * dim + j].conj();
            }
        }
        UnitaryMatrix {
            n_qubits: self.n_qubits,
            data,
        }
    }

    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint()
            .mul(self)
            .is_ok_and(|p| p.max_abs_diff(&UnitaryMatrix::identity(self.n_qubits)) <= tol)
    }

    /// Columns have unit norm; a cheap necessary condition for unitarity.
    fn columns_normalized(&self, tol: f64) -> bool {
        (0..self.dim()).all(|c| {
            let norm: f64 = self.column(c).iter().map(|z| z.norm_sqr()).sum();
            (norm - 1.0).abs() <= tol
        })
    }
}

/// Bijection from logical index to physical wire.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WirePermutation {
    map: Vec<usize>,
}

impl WirePermutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; map.len()];
        for &p in &map {
            if p >= map.len() || seen[p] {
                return Err(Error::NotAPermutation(map));
            }
            seen[p] = true;
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            map: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn wire(&self, logical: usize) -> usize {
        self.map[logical]
    }

    pub fn inverse(&self) -> WirePermutation {
        let mut inv = vec![0; self.map.len()];
        for (l, &p) in self.map.iter().enumerate() {
            inv[p] = l;
        }
        WirePermutation { map: inv }
    }

    /// Sends the basis index of a logical register to the physical index
    /// holding the same bit values.
    pub fn permute_index(&self, logical_index: usize) -> usize {
        let n = self.map.len();
        let mut out = 0;
        for (l, &p) in self.map.iter().enumerate() {
            let bit = (logical_index >> (n - 1 - l)) & 1;
            out |= bit << (n - 1 - p);
        }
        out
    }

    /// Matrix `E(sigma)` of the wire relabelling.
    pub fn to_unitary(&self) -> UnitaryMatrix {
        let n = self.map.len();
        let dim = 1 << n;
        let mut data = vec![ZERO; dim * dim];
        for x in 0..dim {
            data[self.permute_index(x) * dim + x] = ONE;
        }
        UnitaryMatrix { n_qubits: n, data }
    }
}

/// Dense state of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C>,
}

impl StateVector {
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > STATEVECTOR_CAP {
            return Err(Error::SimulationTooLarge {
                n: n_qubits,
                cap: STATEVECTOR_CAP,
            });
        }
        let mut amps = vec![ZERO; 1 << n_qubits];
        amps[index] = ONE;
        Ok(Self { n_qubits, amps })
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub fn apply_circuit(&mut self, c: &Circuit) -> Result<()> {
        if c.n_wires != self.n_qubits {
            return Err(Error::DimensionMismatch(c.n_wires, self.n_qubits));
        }
        c.validate()?;
        for g in &c.gates {
            apply_gate(&mut self.amps, self.n_qubits, g);
        }
        Ok(())
    }
}

fn bit_of(n: usize, wire: usize) -> usize {
    1 << (n - 1 - wire)
}

fn apply_1q(amps: &mut [C], n: usize, wire: usize, m: [[C; 2]; 2]) {
    let mask = bit_of(n, wire);
    for i in 0..amps.len() {
        if i & mask == 0 {
            let (a0, a1) = (amps[i], amps[i | mask]);
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i | mask] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

/// Applies `m` to `target` on the subspace where `control` is 1.
fn apply_controlled(amps: &mut [C], n: usize, control: usize, target: usize, m: [[C; 2]; 2]) {
    let cmask = bit_of(n, control);
    let tmask = bit_of(n, target);
    for i in 0..amps.len() {
        if i & cmask != 0 && i & tmask == 0 {
            let (a0, a1) = (amps[i], amps[i | tmask]);
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i | tmask] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

pub fn ry_matrix(theta: f64) -> [[C; 2]; 2] {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [C::new(c, 0.0), C::new(-s, 0.0)],
        [C::new(s, 0.0), C::new(c, 0.0)],
    ]
}

pub fn rz_matrix(theta: f64) -> [[C; 2]; 2] {
    [
        [C::from_polar(1.0, -theta / 2.0), ZERO],
        [ZERO, C::from_polar(1.0, theta / 2.0)],
    ]
}

pub fn h_matrix() -> [[C; 2]; 2] {
    let h = C::new(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

fn x_matrix() -> [[C; 2]; 2] {
    [[ZERO, ONE], [ONE, ZERO]]
}

fn apply_gate(amps: &mut [C], n: usize, g: &Gate) {
    match *g {
        Gate::H { wire } => apply_1q(amps, n, wire, h_matrix()),
        Gate::X { wire } => apply_1q(amps, n, wire, x_matrix()),
        Gate::Ry { wire, theta } => apply_1q(amps, n, wire, ry_matrix(theta)),
        Gate::Rz { wire, theta } => apply_1q(amps, n, wire, rz_matrix(theta)),
        Gate::Cnot { control, target } => apply_controlled(amps, n, control, target, x_matrix()),
        Gate::Cry {
            control,
            target,
            theta,
        } => apply_controlled(amps, n, control, target, ry_matrix(theta)),
        Gate::Cp {
            control,
            target,
            lambda,
        } => {
            let phase = [[ONE, ZERO], [ZERO, C::from_polar(1.0, lambda)]];
            apply_controlled(amps, n, control, target, phase)
        }
        Gate::Swap { a, b } => {
            let (ma, mb) = (bit_of(n, a), bit_of(n, b));
            for i in 0..amps.len() {
                if i & ma != 0 && i & mb == 0 {
                    amps.swap(i, i ^ ma ^ mb);
                }
            }
        }
    }
}

/// Product of the gate matrices in stream order.
pub fn circuit_unitary(c: &Circuit) -> Result<UnitaryMatrix> {
    let n = c.n_wires;
    if n > UNITARY_CAP {
        return Err(Error::SimulationTooLarge {
            n,
            cap: UNITARY_CAP,
        });
    }
    c.validate()?;
    let mut u = UnitaryMatrix::identity(n);
    let mut col = vec![ZERO; u.dim()];
    for j in 0..u.dim() {
        col.fill(ZERO);
        col[j] = ONE;
        for g in &c.gates {
            apply_gate(&mut col, n, g);
        }
        u.set_column(j, &col);
    }
    let ok = if n <= FULL_UNITARITY_CHECK {
        u.is_unitary(1e-10)
    } else {
        u.columns_normalized(1e-10)
    };
    if !ok {
        return Err(Error::Internal("simulated circuit is not unitary".into()));
    }
    Ok(u)
}

/// One column of the DFT matrix: `e^{2 pi i j k / 2^n} / sqrt(2^n)` over `k`.
pub fn qft_column(n: usize, j: usize) -> Vec<C> {
    let dim = 1usize << n;
    let norm = 1.0 / (dim as f64).sqrt();
    (0..dim)
        .map(|k| {
            // reduce jk mod 2^n before scaling to keep the angle accurate
            let jk = ((j as u128 * k as u128) % dim as u128) as f64;
            C::from_polar(norm, 2.0 * PI * jk / dim as f64)
        })
        .collect()
}

/// The discrete Fourier transform on `n` qubits.
pub fn qft_reference(n: usize) -> Result<UnitaryMatrix> {
    if n > UNITARY_CAP {
        return Err(Error::SimulationTooLarge {
            n,
            cap: UNITARY_CAP,
        });
    }
    let mut u = UnitaryMatrix::identity(n);
    for j in 0..u.dim() {
        u.set_column(j, &qft_column(n, j));
    }
    Ok(u)
}

/// Shallow hashing layer: controlled Ry(`angles[c]`) from every logical
/// control `c` onto the last qubit, which is the target.
pub fn hash_reference(n: usize, angles: &[f64]) -> Result<UnitaryMatrix> {
    circuit_unitary(&hash_reference_circuit(n, angles)?)
}

pub fn hash_reference_circuit(n: usize, angles: &[f64]) -> Result<Circuit> {
    if angles.len() + 1 != n {
        return Err(Error::AngleCount {
            step: 0,
            got: angles.len(),
            expected: n.saturating_sub(1),
        });
    }
    let mut c = Circuit::new(n);
    for (control, &theta) in angles.iter().enumerate() {
        c.push(Gate::Cry {
            control,
            target: n - 1,
            theta,
        });
    }
    Ok(c)
}

/// Phase that maps `reference` entries onto `actual`, taken at the
/// reference's largest-magnitude entry.
fn align_phase(actual: C, reference: C) -> Option<C> {
    if actual.norm() < 1e-12 || reference.norm() < 1e-12 {
        return None;
    }
    let p = actual / reference;
    Some(p / p.norm())
}

/// True iff `u == E(pout) * reference * E(pin)^-1` up to a global phase.
pub fn equivalent_up_to_permutation(
    u: &UnitaryMatrix,
    reference: &UnitaryMatrix,
    pin: &WirePermutation,
    pout: &WirePermutation,
    tol: f64,
) -> bool {
    let n = u.n_qubits();
    if reference.n_qubits() != n || pin.len() != n || pout.len() != n {
        return false;
    }
    let dim = u.dim();
    // expected[pout(r)][pin(c)] = reference[r][c]
    let mut best = (0, 0, 0.0);
    for r in 0..dim {
        for c in 0..dim {
            let m = reference.get(r, c).norm();
            if m > best.2 {
                best = (r, c, m);
            }
        }
    }
    let (br, bc, _) = best;
    let Some(phase) = align_phase(
        u.get(pout.permute_index(br), pin.permute_index(bc)),
        reference.get(br, bc),
    ) else {
        return false;
    };
    for r in 0..dim {
        let pr = pout.permute_index(r);
        for c in 0..dim {
            let pc = pin.permute_index(c);
            if (u.get(pr, pc) - phase * reference.get(r, c)).norm() > tol {
                return false;
            }
        }
    }
    true
}

/// Statevector-mode equivalence for registers too wide for a full unitary:
/// runs the listed logical basis columns through `circuit` and compares with
/// `reference_column`, sharing one global phase across columns.
pub fn equivalent_on_columns<F>(
    circuit: &Circuit,
    reference_column: F,
    pin: &WirePermutation,
    pout: &WirePermutation,
    columns: &[usize],
    tol: f64,
) -> Result<bool>
where
    F: Fn(usize) -> Vec<C>,
{
    let n = circuit.n_wires;
    if pin.len() != n || pout.len() != n {
        return Err(Error::DimensionMismatch(pin.len(), n));
    }
    let mut phase: Option<C> = None;
    for &col in columns {
        let mut state = StateVector::basis(n, pin.permute_index(col))?;
        state.apply_circuit(circuit)?;
        let expected = reference_column(col);
        if expected.len() != state.amps.len() {
            return Err(Error::DimensionMismatch(expected.len(), state.amps.len()));
        }
        let phase = match phase {
            Some(p) => p,
            None => {
                let (r, _) = expected
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
                    .expect("nonempty column");
                let Some(p) = align_phase(state.amps[pout.permute_index(r)], expected[r]) else {
                    return Ok(false);
                };
                *phase.insert(p)
            }
        };
        for (r, &e) in expected.iter().enumerate() {
            if (state.amps[pout.permute_index(r)] - phase * e).norm() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

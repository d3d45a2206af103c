//! Clifford+T instruction vocabulary, circuit representation, and
//! circuit-to-unitary evaluation.
//!
//! Qubit ordering is big-endian throughout the crate: qubit 0 is the most
//! significant bit of a basis-state index. Later gates in a circuit's gate
//! list multiply on the left, so `unitary()` of `[g1, g2]` is `G2 · G1`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::matrix::{wrap_angle, UnitaryMatrix};
use crate::{Error, Result};

/// Tolerance for snapping R_Z angles onto exact Clifford+T multiples of pi/4.
pub const CLIFFORD_SNAP_TOL: f64 = 1e-9;

/// A single Clifford+T instruction (plus the continuous R_Z placeholder).
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    T(usize),
    Tdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Sx(usize),
    Cnot { control: usize, target: usize },
    Rz { qubit: usize, angle: f64 },
    Id(usize),
}

impl Gate {
    pub fn rz(qubit: usize, angle: f64) -> Gate {
        Gate::Rz { qubit, angle: wrap_angle(angle) }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Cnot { control, target } => vec![*control, *target],
            Gate::H(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::X(q)
            | Gate::Y(q)
            | Gate::Z(q)
            | Gate::Sx(q)
            | Gate::Rz { qubit: q, .. }
            | Gate::Id(q) => vec![*q],
        }
    }

    /// Inverse of the gate as a short word in the same vocabulary; sqrt(X)
    /// needs two gates since its adjoint is `X · sqrt(X)`.
    pub fn adjoint_word(&self) -> Vec<Gate> {
        match self {
            Gate::S(q) => vec![Gate::Sdg(*q)],
            Gate::Sdg(q) => vec![Gate::S(*q)],
            Gate::T(q) => vec![Gate::Tdg(*q)],
            Gate::Tdg(q) => vec![Gate::T(*q)],
            Gate::Rz { qubit, angle } => vec![Gate::rz(*qubit, -angle)],
            Gate::Sx(q) => vec![Gate::Sx(*q), Gate::X(*q)],
            other => vec![other.clone()],
        }
    }

    /// Phase gates are diagonal rotations about Z up to a global phase; they
    /// merge freely with one another on the same qubit.
    fn phase_angle(&self) -> Option<f64> {
        match self {
            Gate::T(_) => Some(PI / 4.0),
            Gate::Tdg(_) => Some(-PI / 4.0),
            Gate::S(_) => Some(PI / 2.0),
            Gate::Sdg(_) => Some(-PI / 2.0),
            Gate::Z(_) => Some(PI),
            Gate::Rz { angle, .. } => Some(*angle),
            _ => None,
        }
    }

    fn is_self_inverse(&self) -> bool {
        matches!(self, Gate::H(_) | Gate::X(_) | Gate::Y(_) | Gate::Z(_) | Gate::Cnot { .. })
    }

    /// 2x2 matrix for single-qubit gates.
    fn matrix_1q(&self) -> Option<[Complex64; 4]> {
        let zero = Complex64::ZERO;
        let one = Complex64::ONE;
        let i = Complex64::I;
        let h = Complex64::new(1.0 / 2.0_f64.sqrt(), 0.0);
        Some(match self {
            Gate::H(_) => [h, h, h, -h],
            Gate::S(_) => [one, zero, zero, i],
            Gate::Sdg(_) => [one, zero, zero, -i],
            Gate::T(_) => [one, zero, zero, Complex64::from_polar(1.0, PI / 4.0)],
            Gate::Tdg(_) => [one, zero, zero, Complex64::from_polar(1.0, -PI / 4.0)],
            Gate::X(_) => [zero, one, one, zero],
            Gate::Y(_) => [zero, -i, i, zero],
            Gate::Z(_) => [one, zero, zero, -one],
            Gate::Sx(_) => {
                let p = Complex64::new(0.5, 0.5);
                let m = Complex64::new(0.5, -0.5);
                [p, m, m, p]
            }
            Gate::Rz { angle, .. } => [
                Complex64::from_polar(1.0, -angle / 2.0),
                zero,
                zero,
                Complex64::from_polar(1.0, angle / 2.0),
            ],
            Gate::Id(_) => [one, zero, zero, one],
            Gate::Cnot { .. } => return None,
        })
    }

    /// Dense embedding into a register of `width` qubits.
    pub fn unitary(&self, width: usize) -> Result<UnitaryMatrix> {
        for q in self.qubits() {
            if q >= width {
                return Err(Error::InvalidQubit { index: q, width });
            }
        }
        if let Gate::Cnot { control, target } = self {
            if control == target {
                return Err(Error::InvalidQubit { index: *target, width });
            }
            let dim = 1 << width;
            let mut m = UnitaryMatrix::from_entries(dim, vec![Complex64::ZERO; dim * dim])?;
            let cbit = width - 1 - control;
            let tbit = width - 1 - target;
            for col in 0..dim {
                let row = if (col >> cbit) & 1 == 1 { col ^ (1 << tbit) } else { col };
                m.set(row, col, Complex64::ONE);
            }
            return Ok(m);
        }
        let small = self.matrix_1q().expect("single-qubit gate");
        let q = self.qubits()[0];
        let dim = 1 << width;
        let bit = width - 1 - q;
        let mut m = UnitaryMatrix::from_entries(dim, vec![Complex64::ZERO; dim * dim])?;
        for row in 0..dim {
            for col in 0..dim {
                if row & !(1 << bit) != col & !(1 << bit) {
                    continue;
                }
                let r = (row >> bit) & 1;
                let c = (col >> bit) & 1;
                m.set(row, col, small[r * 2 + c]);
            }
        }
        Ok(m)
    }
}

/// Resource tally of a circuit. T and T† land in `t_count`, R_Z gates in
/// `rz_count`, and every other non-identity gate in `clifford_count`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
pub struct ResourceCounts {
    pub t_count: usize,
    pub rz_count: usize,
    pub clifford_count: usize,
}

/// An ordered gate list on a fixed-width register; leftmost gates apply
/// first in time.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub width: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self { width, gates: Vec::new() }
    }

    pub fn from_gates(width: usize, gates: Vec<Gate>) -> Self {
        Self { width, gates }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Append `other`'s gates after this circuit's gates.
    pub fn concat(&self, other: &Circuit) -> Circuit {
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Circuit { width: self.width.max(other.width), gates }
    }

    /// Time-reversed adjoint circuit.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().flat_map(|g| g.adjoint_word()).collect(),
        }
    }

    /// Rewrite qubit indices through `mapping` (local index -> new index).
    pub fn map_qubits(&self, mapping: &[usize], new_width: usize) -> Circuit {
        let remap = |q: usize| mapping[q];
        let gates = self
            .gates
            .iter()
            .map(|g| match g {
                Gate::H(q) => Gate::H(remap(*q)),
                Gate::S(q) => Gate::S(remap(*q)),
                Gate::Sdg(q) => Gate::Sdg(remap(*q)),
                Gate::T(q) => Gate::T(remap(*q)),
                Gate::Tdg(q) => Gate::Tdg(remap(*q)),
                Gate::X(q) => Gate::X(remap(*q)),
                Gate::Y(q) => Gate::Y(remap(*q)),
                Gate::Z(q) => Gate::Z(remap(*q)),
                Gate::Sx(q) => Gate::Sx(remap(*q)),
                Gate::Cnot { control, target } => Gate::Cnot { control: remap(*control), target: remap(*target) },
                Gate::Rz { qubit, angle } => Gate::Rz { qubit: remap(*qubit), angle: *angle },
                Gate::Id(q) => Gate::Id(remap(*q)),
            })
            .collect();
        Circuit { width: new_width, gates }
    }

    /// Product of the gate embeddings, later gates multiplying on the left.
    pub fn unitary(&self) -> Result<UnitaryMatrix> {
        if self.width > 3 {
            return Err(Error::UnsupportedWidth(self.width));
        }
        self.unitary_unchecked_width()
    }

    /// Same product without the synthesis-width guard. The transpiler uses
    /// this to simulate reference circuits of up to 4-5 qubits in tests and
    /// error accounting.
    pub(crate) fn unitary_unchecked_width(&self) -> Result<UnitaryMatrix> {
        let mut u = UnitaryMatrix::identity(1 << self.width);
        for gate in &self.gates {
            u = gate.unitary(self.width)?.matmul(&u)?;
        }
        Ok(u)
    }

    pub fn resource_counts(&self) -> ResourceCounts {
        let mut counts = ResourceCounts::default();
        for gate in &self.gates {
            match gate {
                Gate::T(_) | Gate::Tdg(_) => counts.t_count += 1,
                Gate::Rz { .. } => counts.rz_count += 1,
                Gate::Id(_) => {}
                _ => counts.clifford_count += 1,
            }
        }
        counts
    }

    /// Normalize the circuit: snap Clifford-angle R_Z gates onto exact
    /// Clifford+T words, merge adjacent phase-family gates on the same
    /// qubit, and cancel adjacent self-inverse pairs. The unitary is
    /// preserved up to a global phase within the snap tolerance.
    pub fn canonicalize(&self) -> Circuit {
        let mut gates = self.gates.clone();
        for _ in 0..64 {
            let mut next = cancel_inverse_pairs(&gates);
            next = snap_pass(&next);
            if next == gates {
                break;
            }
            gates = next;
        }
        Circuit { width: self.width, gates }
    }
}

fn overlaps(a: &Gate, b: &Gate) -> bool {
    let bq = b.qubits();
    a.qubits().iter().any(|q| bq.contains(q))
}

/// One gate-cancellation sweep: drops identities, merges adjacent
/// phase-family gates on the same qubit, and cancels adjacent self-inverse
/// pairs. Gates separated only by disjoint-qubit gates count as adjacent.
pub(crate) fn cancel_inverse_pairs(gates: &[Gate]) -> Vec<Gate> {
    let mut out: Vec<Gate> = Vec::with_capacity(gates.len());
    for gate in gates {
        let mut current = gate.clone();
        if matches!(current, Gate::Id(_)) {
            continue;
        }
        loop {
            let Some(j) = out.iter().rposition(|g| overlaps(g, &current)) else {
                out.push(current);
                break;
            };
            let prev = &out[j];
            // phase-family merge on the same qubit
            if let (Some(a), Some(b)) = (prev.phase_angle(), current.phase_angle()) {
                if prev.qubits() == current.qubits() {
                    let merged = wrap_angle(a + b);
                    let qubit = current.qubits()[0];
                    out.remove(j);
                    if merged.abs() <= CLIFFORD_SNAP_TOL {
                        break;
                    }
                    current = Gate::Rz { qubit, angle: merged };
                    continue;
                }
            }
            // adjacent self-inverse pair
            if prev == &current && current.is_self_inverse() {
                out.remove(j);
                break;
            }
            // S† S and T† T style pairs are covered by the phase merge above;
            // sqrt(X) squares to X exactly
            if let (Gate::Sx(a), Gate::Sx(b)) = (prev, &current) {
                if a == b {
                    let q = *a;
                    out.remove(j);
                    current = Gate::X(q);
                    continue;
                }
            }
            out.push(current);
            break;
        }
    }
    out
}

fn snap_pass(gates: &[Gate]) -> Vec<Gate> {
    let mut out = Vec::with_capacity(gates.len());
    for gate in gates {
        match gate {
            Gate::Rz { qubit, angle } => match snap_rz_word(*qubit, *angle) {
                Some(word) => out.extend(word),
                None => out.push(gate.clone()),
            },
            other => out.push(other.clone()),
        }
    }
    out
}

/// Exact Clifford+T word for an R_Z whose angle is within the snap tolerance
/// of k·pi/4, equal up to a global phase. Returns `None` for generic angles.
pub fn snap_rz_word(qubit: usize, angle: f64) -> Option<Vec<Gate>> {
    let step = PI / 4.0;
    let k = (angle / step).round() as i64;
    if (angle - k as f64 * step).abs() > CLIFFORD_SNAP_TOL {
        return None;
    }
    let word = match k.rem_euclid(8) {
        0 => vec![],
        1 => vec![Gate::T(qubit)],
        2 => vec![Gate::S(qubit)],
        3 => vec![Gate::S(qubit), Gate::T(qubit)],
        4 => vec![Gate::Z(qubit)],
        5 => vec![Gate::Sdg(qubit), Gate::Tdg(qubit)],
        6 => vec![Gate::Sdg(qubit)],
        7 => vec![Gate::Tdg(qubit)],
        _ => unreachable!(),
    };
    Some(word)
}

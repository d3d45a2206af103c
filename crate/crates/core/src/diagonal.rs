//! Exact synthesis of diagonal unitaries as CNOT + R_Z ladders.
//!
//! A diagonal on n qubits factors into one rotation per nonempty qubit
//! subset: a CNOT chain computes the subset parity onto one wire, an R_Z
//! applies the rotation, and the chain uncomputes. The rotation angles come
//! from the Walsh-Hadamard transform of the phase vector, so at most
//! `2^n - 1` rotations are ever needed and a global phase is left over.

use std::collections::BTreeMap;

use crate::gates::{Circuit, Gate, CLIFFORD_SNAP_TOL};
use crate::matrix::wrap_angle;
use crate::rz::RzSynthesizer;
use crate::{Error, Result};

/// Default pruning tolerance for near-zero ladder rotations, aligned with
/// the Clifford snap tolerance.
pub const PRUNE_TOL: f64 = 1e-9;

/// A solved diagonal: the target phases plus the rotation angle for each
/// nonempty qubit subset (keyed by bitmask, bit q = qubit q).
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalSpec {
    n: usize,
    phases: Vec<f64>,
    angles: BTreeMap<u8, f64>,
}

impl DiagonalSpec {
    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    /// Rotation angles keyed by qubit-subset bitmask.
    pub fn angles(&self) -> &BTreeMap<u8, f64> {
        &self.angles
    }
}

/// Parity of `x & mask` where `mask` selects basis-index bits.
fn parity(x: usize, mask: usize) -> bool {
    (x & mask).count_ones() % 2 == 1
}

/// Basis-index bitmask for a qubit-subset bitmask under the big-endian
/// convention (qubit 0 is the most significant index bit).
fn basis_mask(subset: u8, n: usize) -> usize {
    let mut out = 0;
    for q in 0..n {
        if (subset >> q) & 1 == 1 {
            out |= 1 << (n - 1 - q);
        }
    }
    out
}

/// Solve the ladder angles for a target phase vector of length 2^n,
/// n in {1,2,3}: `theta_S = -2^{1-n} · Σ_x (-1)^{<x,S>} · phi_x` for each
/// nonempty subset S. Adding a constant to every phase leaves the angles
/// unchanged; that freedom is the unimplemented global phase.
pub fn solve_angles(phases: &[f64]) -> Result<DiagonalSpec> {
    let len = phases.len();
    if !(len == 2 || len == 4 || len == 8) {
        return Err(Error::UnsupportedDimension(len));
    }
    let n = len.trailing_zeros() as usize;
    let scale = -(2.0_f64.powi(1 - n as i32));
    let mut angles = BTreeMap::new();
    for subset in 1..(1u8 << n) {
        let mask = basis_mask(subset, n);
        let mut sum = 0.0;
        for (x, phi) in phases.iter().enumerate() {
            sum += if parity(x, mask) { -phi } else { *phi };
        }
        angles.insert(subset, wrap_angle(scale * sum));
    }
    Ok(DiagonalSpec { n, phases: phases.to_vec(), angles })
}

/// Emit the CNOT + R_Z ladder for a solved diagonal, skipping rotations with
/// `|angle| <= prune_tol`. Subsets are visited in binary-reflected Gray-code
/// order so adjacent parity chains share CNOTs, which a cancellation pass
/// then removes. With `prune_tol = 0` the circuit reproduces the target
/// phases exactly up to one global phase.
pub fn build_diagonal_circuit(spec: &DiagonalSpec, prune_tol: f64) -> Circuit {
    let n = spec.n;
    let mut gates = Vec::new();
    for k in 1..(1usize << n) {
        let subset = (k ^ (k >> 1)) as u8;
        let angle = spec.angles[&subset];
        if angle.abs() <= prune_tol {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|q| (subset >> q) & 1 == 1).collect();
        let target = *members.last().expect("nonempty subset");
        let chain: Vec<Gate> = members[..members.len() - 1]
            .iter()
            .map(|&q| Gate::Cnot { control: q, target })
            .collect();
        gates.extend(chain.iter().cloned());
        gates.push(Gate::rz(target, angle));
        gates.extend(chain.into_iter().rev());
    }
    Circuit::from_gates(n, crate::gates::cancel_inverse_pairs(&gates))
}

/// A diagonal rendered into pure Clifford+T, with its approximation budget.
#[derive(Debug, Clone)]
pub struct SynthesizedDiagonal {
    pub circuit: Circuit,
    /// Number of rotations that needed approximation (non-Clifford angles).
    pub approximated: usize,
    /// Upper bound on the introduced error: `approximated × rz_eps`.
    pub rz_budget: f64,
}

/// Render a solved diagonal into the Clifford+T gate set. Clifford-angle
/// rotations become exact words; every other rotation is delegated to the
/// `R_Z` synthesizer at `rz_eps` and contributes `rz_eps` to the budget.
pub fn clifford_t_diagonal(
    spec: &DiagonalSpec,
    rz_eps: f64,
    rz: &RzSynthesizer,
) -> Result<SynthesizedDiagonal> {
    if rz_eps <= 0.0 {
        return Err(Error::SynthesisFailed("rz eps must be positive".into()));
    }
    let ladder = build_diagonal_circuit(spec, PRUNE_TOL);
    let mut gates = Vec::with_capacity(ladder.len());
    let mut approximated = 0;
    for gate in &ladder.gates {
        match gate {
            Gate::Rz { qubit, angle } => {
                let nearest = (angle / (std::f64::consts::PI / 4.0)).round() * std::f64::consts::PI / 4.0;
                if (angle - nearest).abs() > CLIFFORD_SNAP_TOL {
                    approximated += 1;
                }
                let word = rz.synth_rz(*angle, rz_eps)?;
                gates.extend(word.circuit.map_qubits(&[*qubit], ladder.width).gates);
            }
            other => gates.push(other.clone()),
        }
    }
    Ok(SynthesizedDiagonal {
        circuit: Circuit::from_gates(ladder.width, gates),
        approximated,
        rz_budget: approximated as f64 * rz_eps,
    })
}

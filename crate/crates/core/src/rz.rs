//! Single-qubit `R_Z(theta)` to Clifford+T approximation.
//!
//! Three paths share one interface: exact Clifford(+T) words for angles on
//! the pi/4 lattice, a deterministic search over `<H, T>` words for desk-
//! scale tolerances, and an adapter for an external gridsynth-compatible
//! executable for arbitrary precision.
//!
//! The internal search enumerates every distinct projective unitary
//! reachable by `<H, T>` words of up to half the gate budget and then
//! completes pairs two-sidedly, so a budget of `2s` gates searches all words
//! of length up to `2s` without materializing them. States live as SU(2)
//! quaternions in a spatial hash grid.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::gates::{snap_rz_word, Circuit, Gate};
use crate::matrix::{hs_distance, wrap_angle, UnitaryMatrix};
use crate::{Error, Result};

/// Default total gate budget for the internal search (both halves of the
/// two-sided completion combined). At this depth the searched word set is
/// dense enough for targets around 1e-3..1e-4.
pub const DEFAULT_MAX_DEPTH: usize = 100;

/// Environment variable overriding the external command template.
pub const RZ_CMD_ENV: &str = "DIAGSYNTH_RZ_CMD";

/// How the synthesizer produces non-Clifford rotations.
#[derive(Debug, Clone)]
pub enum RzStrategy {
    /// Exact words where possible, internal `<H,T>` search otherwise.
    Search,
    /// Shell out to a gridsynth-compatible executable. The template may
    /// contain `{theta}` and `{digits}` placeholders; without them the
    /// invocation is `<cmd> <theta> -d <digits>`.
    External { command: String },
}

/// A synthesized approximation of one `R_Z` rotation.
#[derive(Debug, Clone)]
pub struct RzResult {
    /// Width-1 circuit over {H, S, S†, T, T†, X, Z}.
    pub circuit: Circuit,
    /// Hilbert-Schmidt distance to the requested rotation, up to phase.
    pub achieved_eps: f64,
    pub t_count: usize,
}

/// Reusable, thread-safe `R_Z` synthesizer with a per-angle memo cache.
pub struct RzSynthesizer {
    strategy: RzStrategy,
    max_depth: usize,
    cache: Mutex<HashMap<(i64, i32), RzResult>>,
}

impl Default for RzSynthesizer {
    fn default() -> Self {
        Self::searching(DEFAULT_MAX_DEPTH)
    }
}

impl RzSynthesizer {
    pub fn searching(max_depth: usize) -> Self {
        Self {
            strategy: RzStrategy::Search,
            max_depth,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn external(command: impl Into<String>) -> Self {
        Self {
            strategy: RzStrategy::External { command: command.into() },
            max_depth: DEFAULT_MAX_DEPTH,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth
    }

    /// Approximate `R_Z(theta)` to Hilbert-Schmidt distance `eps`.
    pub fn synth_rz(&self, theta: f64, eps: f64) -> Result<RzResult> {
        if eps <= 0.0 {
            return Err(Error::SynthesisFailed("rz eps must be positive".into()));
        }
        let theta = wrap_angle(theta);

        // Exact Clifford(+T) words for angles on the pi/4 lattice.
        if let Some(word) = snap_rz_word(0, theta) {
            let circuit = Circuit::from_gates(1, word);
            let achieved = hs_distance(&circuit.unitary()?, &Gate::rz(0, theta).unitary(1)?)?;
            let t_count = circuit.resource_counts().t_count;
            return Ok(RzResult { circuit, achieved_eps: achieved, t_count });
        }

        let key = (quantize_angle(theta), eps.log10().floor() as i32);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            if hit.achieved_eps <= eps {
                return Ok(hit.clone());
            }
        }

        // Negative angles synthesize the positive rotation and take the
        // adjoint word, which keeps the +/- capability exactly symmetric.
        let result = if theta < 0.0 {
            self.synth_wrapped(-theta, eps).map(|r| RzResult {
                achieved_eps: r.achieved_eps,
                t_count: r.t_count,
                circuit: r.circuit.adjoint(),
            })
        } else {
            self.synth_wrapped(theta, eps)
        }?;

        debug_assert!(result.achieved_eps <= eps);
        self.cache.lock().unwrap().insert(key, result.clone());
        Ok(result)
    }

    fn synth_wrapped(&self, theta: f64, eps: f64) -> Result<RzResult> {
        match &self.strategy {
            RzStrategy::Search => self.synth_search(theta, eps),
            RzStrategy::External { command } => {
                let command = std::env::var(RZ_CMD_ENV).unwrap_or_else(|_| command.clone());
                synth_external(&command, theta, eps)
            }
        }
    }

    fn synth_search(&self, theta: f64, eps: f64) -> Result<RzResult> {
        let side = (self.max_depth / 2).max(1);
        let db = RzDatabase::shared(side);
        let Some(found) = db.best_approximation(theta) else {
            return Err(Error::PrecisionUnreachable { max_depth: self.max_depth, best: f64::MAX });
        };
        if found.distance > eps {
            return Err(Error::PrecisionUnreachable { max_depth: self.max_depth, best: found.distance });
        }
        let circuit = found.circuit.canonicalize();
        let achieved = hs_distance(&circuit.unitary()?, &Gate::rz(0, theta).unitary(1)?)?;
        let t_count = circuit.resource_counts().t_count;
        Ok(RzResult { circuit, achieved_eps: achieved, t_count })
    }
}

fn quantize_angle(theta: f64) -> i64 {
    (theta / 1e-12).round() as i64
}

/// Parse a printed gate sequence over {T, S, H, X, Z, W, I} into a width-1
/// circuit. The leftmost character is the last gate applied; `W` (global
/// phase) and `I` are dropped.
pub fn parse_external_sequence(text: &str) -> Result<Circuit> {
    let mut reversed = Vec::new();
    for (offset, ch) in text.char_indices() {
        let gate = match ch {
            'T' => Gate::T(0),
            'S' => Gate::S(0),
            'H' => Gate::H(0),
            'X' => Gate::X(0),
            'Z' => Gate::Z(0),
            'W' | 'I' => continue,
            c if c.is_whitespace() => continue,
            c => return Err(Error::SequenceParse { byte: c, offset }),
        };
        reversed.push(gate);
    }
    reversed.reverse();
    Ok(Circuit::from_gates(1, reversed))
}

fn synth_external(command: &str, theta: f64, eps: f64) -> Result<RzResult> {
    let digits = (-eps.log10()).ceil().max(1.0) as usize;
    let mut tokens: Vec<String> = command.split_whitespace().map(str::to_string).collect();
    if tokens.is_empty() {
        return Err(Error::ExternalTool("empty command template".into()));
    }
    let mut saw_theta = false;
    let mut saw_digits = false;
    for token in &mut tokens {
        if token.contains("{theta}") {
            *token = token.replace("{theta}", &format!("{theta:.17}"));
            saw_theta = true;
        }
        if token.contains("{digits}") {
            *token = token.replace("{digits}", &digits.to_string());
            saw_digits = true;
        }
    }
    if !saw_theta {
        tokens.push(format!("{theta:.17}"));
    }
    if !saw_digits {
        tokens.push("-d".into());
        tokens.push(digits.to_string());
    }

    let output = std::process::Command::new(&tokens[0])
        .args(&tokens[1..])
        .output()
        .map_err(|e| Error::ExternalTool(format!("failed to launch {}: {e}", tokens[0])))?;
    if !output.status.success() {
        return Err(Error::ExternalTool(format!(
            "{} exited with {}: {}",
            tokens[0],
            output.status,
            String::from_utf8_lossy(&output.stderr).trim()
        )));
    }
    let text = String::from_utf8_lossy(&output.stdout);
    let circuit = parse_external_sequence(text.trim())?.canonicalize();
    let achieved = hs_distance(&circuit.unitary()?, &Gate::rz(0, theta).unitary(1)?)?;
    if achieved > eps {
        return Err(Error::ExternalTool(format!(
            "tool output is {achieved:.3e} from the target, above eps {eps:.3e}"
        )));
    }
    let t_count = circuit.resource_counts().t_count;
    Ok(RzResult { circuit, achieved_eps: achieved, t_count })
}

/// Decompose an arbitrary 2x2 unitary as
/// `RZ(theta1) · sqrt(X) · RZ(theta2) · sqrt(X) · RZ(theta3)` up to a global
/// phase. Returns `(theta1, theta2, theta3, phase)` with angles on
/// `(-pi, pi]`.
pub fn euler_zxz(u: &UnitaryMatrix) -> Result<(f64, f64, f64, f64)> {
    if u.dim() != 2 {
        return Err(Error::DimensionMismatch(u.dim(), 2));
    }
    // RZ(a)·SX·RZ(b)·SX·RZ(c) has |u00| = sin(b/2) and |u01| = cos(b/2)
    let s = u.get(0, 0).norm();
    let co = u.get(0, 1).norm();
    let b = 2.0 * s.atan2(co);
    let tol = 1e-12;
    let (sum, diff) = if s <= tol {
        // anti-diagonal target: only a-c is determined
        (0.0, wrap_angle(u.get(1, 0).arg() - u.get(0, 1).arg()))
    } else if co <= tol {
        // diagonal target: only a+c is determined
        (wrap_angle(u.get(1, 1).arg() - u.get(0, 0).arg() - PI), 0.0)
    } else {
        let sum = wrap_angle(u.get(1, 1).arg() - u.get(0, 0).arg() - PI);
        let diff = wrap_angle(u.get(1, 0).arg() - u.get(0, 1).arg());
        (sum, diff)
    };
    let mut a = wrap_angle((sum + diff) / 2.0);
    let mut c = wrap_angle((sum - diff) / 2.0);
    // wrapping sum and diff individually fixes (a, c) only up to a joint
    // pi shift, which flips the sign between diagonal and off-diagonal
    // entries; the phase of u01 disambiguates
    if s > tol && co > tol {
        let phase = u.get(0, 0).arg() + (a + c) / 2.0;
        let mismatch = wrap_angle(phase - (a - c) / 2.0 - u.get(0, 1).arg());
        if mismatch.abs() > PI / 2.0 {
            a = wrap_angle(a + PI);
            c = wrap_angle(c + PI);
        }
    }
    let phase = if s > tol {
        u.get(0, 0).arg() + (a + c) / 2.0
    } else {
        u.get(0, 1).arg() + (a - c) / 2.0
    };
    Ok((a, wrap_angle(b), c, wrap_angle(phase)))
}

/// Circuit form of [`euler_zxz`], time order `RZ(t3), SX, RZ(t2), SX, RZ(t1)`.
pub fn euler_zxz_circuit(u: &UnitaryMatrix) -> Result<Circuit> {
    let (t1, t2, t3, _) = euler_zxz(u)?;
    Ok(Circuit::from_gates(
        1,
        vec![Gate::rz(0, t3), Gate::Sx(0), Gate::rz(0, t2), Gate::Sx(0), Gate::rz(0, t1)],
    ))
}

// ---------------------------------------------------------------------------
// <H, T> word database
// ---------------------------------------------------------------------------

/// SU(2) element as (scalar, x, y, z) with `u = a·I + i(x·X + y·Y + z·Z)`.
type Quat = [f64; 4];

const QUAT_H: Quat = [0.0, -std::f64::consts::FRAC_1_SQRT_2, 0.0, -std::f64::consts::FRAC_1_SQRT_2];

fn quat_t() -> Quat {
    [(PI / 8.0).cos(), 0.0, 0.0, -(PI / 8.0).sin()]
}

fn quat_rz(theta: f64) -> Quat {
    [(theta / 2.0).cos(), 0.0, 0.0, -(theta / 2.0).sin()]
}

/// Composition in the `a·I + i(v·sigma)` parametrization:
/// `(a1, v1)(a2, v2) = (a1·a2 − v1·v2, a1·v2 + a2·v1 − v1 × v2)`.
fn quat_mul(p: &Quat, q: &Quat) -> Quat {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + q[0] * p[1] - (p[2] * q[3] - p[3] * q[2]),
        p[0] * q[2] + q[0] * p[2] - (p[3] * q[1] - p[1] * q[3]),
        p[0] * q[3] + q[0] * p[3] - (p[1] * q[2] - p[2] * q[1]),
    ]
}

fn quat_conj(q: &Quat) -> Quat {
    [q[0], -q[1], -q[2], -q[3]]
}

fn quat_dot(p: &Quat, q: &Quat) -> f64 {
    p[0] * q[0] + p[1] * q[1] + p[2] * q[2] + p[3] * q[3]
}

/// Projective Hilbert-Schmidt distance from the quaternion overlap.
fn quat_distance(p: &Quat, q: &Quat) -> f64 {
    let d = quat_dot(p, q).abs().min(1.0);
    (1.0 - d * d).sqrt()
}

/// Flip the sign so the first component of significant magnitude is positive.
fn canon_sign(q: &Quat) -> Quat {
    for c in q {
        if c.abs() > 1e-9 {
            return if *c < 0.0 { [-q[0], -q[1], -q[2], -q[3]] } else { *q };
        }
    }
    *q
}

fn dedup_key(q: &Quat) -> [i32; 4] {
    let scale = (1i64 << 26) as f64;
    [0, 1, 2, 3].map(|i| (q[i] * scale).round() as i32)
}

const GRID_CELL: f64 = 1.0 / 256.0;

fn grid_key(q: &Quat) -> u64 {
    let mut key = 0u64;
    for c in q {
        let cell = ((c + 1.0) / GRID_CELL).floor() as u64 & 0x3ff;
        key = (key << 10) | cell;
    }
    key
}

#[derive(Clone, Copy)]
struct DbEntry {
    quat: Quat,
    word: u64,
    len: u8,
}

/// A word found by the search: gate list plus its exact distance.
struct Approximation {
    circuit: Circuit,
    distance: f64,
}

/// All distinct projective `<H, T>` unitaries of word length up to
/// `side_len`, indexed for near-neighbor lookups.
pub struct RzDatabase {
    side_len: usize,
    entries: Vec<DbEntry>,
    cell_ranges: HashMap<u64, (u32, u32)>,
    cell_sorted: Vec<u32>,
    /// Bitmap over hashed cell keys; almost all probes miss, and a bitmap
    /// test is an order of magnitude cheaper than a map lookup.
    occupancy: Vec<u64>,
}

const OCCUPANCY_BITS: u32 = 27;

fn occupancy_slot(key: u64) -> (usize, u64) {
    let h = key.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> (64 - OCCUPANCY_BITS);
    ((h >> 6) as usize, 1u64 << (h & 63))
}

static SHARED_DBS: OnceLock<Mutex<BTreeMap<usize, Arc<RzDatabase>>>> = OnceLock::new();

impl RzDatabase {
    /// Process-wide shared instance per side length; building one is
    /// expensive and every synthesizer with the same budget can reuse it.
    pub fn shared(side_len: usize) -> Arc<RzDatabase> {
        let lock = SHARED_DBS.get_or_init(|| Mutex::new(BTreeMap::new()));
        if let Some(db) = lock.lock().unwrap().get(&side_len) {
            return db.clone();
        }
        let db = Arc::new(RzDatabase::build(side_len));
        lock.lock().unwrap().entry(side_len).or_insert(db).clone()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn build(side_len: usize) -> RzDatabase {
        let t = quat_t();
        let mut visited: HashSet<[i32; 4]> = HashSet::new();
        let mut entries: Vec<DbEntry> = Vec::new();
        let identity: Quat = [1.0, 0.0, 0.0, 0.0];
        visited.insert(dedup_key(&identity));
        entries.push(DbEntry { quat: identity, word: 0, len: 0 });

        let mut frontier: Vec<(Quat, u64, u8)> = vec![(identity, 0, 0)];
        for _ in 0..side_len {
            let mut next = Vec::with_capacity(frontier.len() * 2);
            for (quat, word, len) in &frontier {
                for (bit, gate_quat) in [(0u64, &QUAT_H), (1u64, &t)] {
                    let q = canon_sign(&quat_mul(gate_quat, quat));
                    if !visited.insert(dedup_key(&q)) {
                        continue;
                    }
                    let word = word | (bit << len);
                    let len = len + 1;
                    entries.push(DbEntry { quat: q, word, len });
                    next.push((q, word, len));
                }
            }
            frontier = next;
        }
        drop(visited);

        // bucket entries by grid cell for radius-bounded pair lookups
        let mut cells: Vec<(u64, u32)> = entries
            .iter()
            .enumerate()
            .map(|(i, e)| (grid_key(&e.quat), i as u32))
            .collect();
        cells.sort_unstable();
        let mut cell_ranges = HashMap::new();
        let mut cell_sorted = Vec::with_capacity(cells.len());
        let mut occupancy = vec![0u64; 1 << (OCCUPANCY_BITS - 6)];
        let mut start = 0u32;
        for (i, (key, idx)) in cells.iter().enumerate() {
            cell_sorted.push(*idx);
            let (slot, bit) = occupancy_slot(*key);
            occupancy[slot] |= bit;
            let next_differs = cells.get(i + 1).map_or(true, |(k, _)| k != key);
            if next_differs {
                cell_ranges.insert(*key, (start, (i + 1) as u32 - start));
                start = (i + 1) as u32;
            }
        }

        RzDatabase { side_len, entries, cell_ranges, cell_sorted, occupancy }
    }

    fn word_circuit(entry: &DbEntry) -> Circuit {
        let mut gates = Vec::with_capacity(entry.len as usize);
        for i in 0..entry.len {
            gates.push(if (entry.word >> i) & 1 == 0 { Gate::H(0) } else { Gate::T(0) });
        }
        Circuit::from_gates(1, gates)
    }

    /// Entry indices in the 16 grid cells around the corner nearest to `q`.
    fn probe_cells(&self, q: &Quat, out: &mut Vec<u32>) {
        let mut base = [0i64; 4];
        let mut step = [0i64; 4];
        for i in 0..4 {
            let scaled = (q[i] + 1.0) / GRID_CELL;
            let cell = scaled.floor();
            base[i] = cell as i64;
            step[i] = if scaled - cell < 0.5 { -1 } else { 1 };
        }
        for mask in 0..16u32 {
            let mut key = 0u64;
            for i in 0..4 {
                let cell = base[i] + if (mask >> i) & 1 == 1 { step[i] } else { 0 };
                key = (key << 10) | (cell as u64 & 0x3ff);
            }
            let (slot, bit) = occupancy_slot(key);
            if self.occupancy[slot] & bit == 0 {
                continue;
            }
            if let Some(&(start, len)) = self.cell_ranges.get(&key) {
                out.extend(&self.cell_sorted[start as usize..(start + len) as usize]);
            }
        }
    }

    /// Best word of length up to `2 · side_len` approximating `RZ(theta)`,
    /// combining the single-word scan with the two-sided completion. The
    /// result is deterministic: candidates are compared by exact distance,
    /// then total length, then word bits.
    fn best_approximation(&self, theta: f64) -> Option<Approximation> {
        let target = quat_rz(theta);
        let target_matrix = Gate::rz(0, theta).unitary(1).ok()?;

        // single words: scan everything, then verify the near-best exactly
        let mut best_scan = f64::MAX;
        for entry in &self.entries {
            let d = quat_distance(&entry.quat, &target);
            if d < best_scan {
                best_scan = d;
            }
        }
        let mut best: Option<(f64, usize, u64, u64, Circuit)> = None;
        let mut consider = |circuit: Circuit, len: usize, wa: u64, wb: u64| {
            let u = circuit.unitary().expect("width-1 word");
            let d = hs_distance(&u, &target_matrix).expect("same dim");
            let key = (d, len, wa, wb);
            let better = match &best {
                None => true,
                Some((bd, bl, bwa, bwb, _)) => key < (*bd, *bl, *bwa, *bwb),
            };
            if better {
                best = Some((d, len, wa, wb, circuit));
            }
        };
        for entry in &self.entries {
            let d = quat_distance(&entry.quat, &target);
            if d <= best_scan + 1e-9 {
                consider(Self::word_circuit(entry), entry.len as usize, entry.word, 0);
            }
        }

        // two-sided completion: for each left factor a, look up right
        // factors b with U_a · U_b near the target. Iterating in cell-sorted
        // order keeps consecutive lookups in nearby grid cells, which is
        // what makes the scan memory-bound instead of cache-miss-bound.
        let mut probe = Vec::new();
        for &ai in &self.cell_sorted {
            let a = &self.entries[ai as usize];
            let qa = a.quat;
            let need = quat_mul(&quat_conj(&qa), &target);
            probe.clear();
            self.probe_cells(&need, &mut probe);
            let neg = [-need[0], -need[1], -need[2], -need[3]];
            self.probe_cells(&neg, &mut probe);
            for &bi in &probe {
                let b = &self.entries[bi as usize];
                let d = quat_distance(&quat_mul(&qa, &b.quat), &target);
                if d <= GRID_CELL {
                    // circuit applies b first in time, so the product is Ua·Ub
                    let circuit = Self::word_circuit(b).concat(&Self::word_circuit(a));
                    consider(circuit, (a.len + b.len) as usize, a.word, b.word);
                }
            }
        }

        best.map(|(distance, _, _, _, circuit)| Approximation { circuit, distance })
    }

    pub fn side_len(&self) -> usize {
        self.side_len
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use crate::matrix::random_unitary;

    #[test]
    fn quat_composition_matches_matrices() {
        let gates = [Gate::H(0), Gate::T(0)];
        let quats = [QUAT_H, quat_t()];
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let mut q: Quat = [1.0, 0.0, 0.0, 0.0];
            let mut m = UnitaryMatrix::identity(2);
            for _ in 0..10 {
                let pick = rng.gen_range(0..2);
                q = quat_mul(&quats[pick], &q);
                m = gates[pick].unitary(1).unwrap().matmul(&m).unwrap();
            }
            // |Tr(m · m_q†)| agreement via the distance functions
            let tr_half = quat_dot(&q, &q).sqrt(); // sanity: unit norm
            assert_abs_diff_eq!(tr_half, 1.0, epsilon = 1e-12);
            for theta in [0.0, 0.4, -1.3] {
                let d_quat = quat_distance(&q, &quat_rz(theta));
                let d_mat = hs_distance(&m, &Gate::rz(0, theta).unitary(1).unwrap()).unwrap();
                assert_abs_diff_eq!(d_quat, d_mat, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn exact_angles_have_tiny_words() {
        let synth = RzSynthesizer::searching(16);
        for k in -7i64..=8 {
            let theta = k as f64 * PI / 4.0;
            let r = synth.synth_rz(theta, 1e-6).unwrap();
            assert!(r.achieved_eps <= 1e-9, "k={k} achieved {}", r.achieved_eps);
            assert!(r.t_count <= 1, "k={k} t_count {}", r.t_count);
        }
    }

    #[test]
    fn near_exact_angles_snap() {
        let synth = RzSynthesizer::searching(16);
        let r = synth.synth_rz(PI / 2.0 + 5e-10, 1e-6).unwrap();
        assert_eq!(r.circuit.gates, vec![Gate::S(0)]);
        assert!(r.achieved_eps <= 1e-9);
        assert_eq!(r.t_count, 0);
    }

    /// Independent breadth-first oracle over `<H,T>` words, deduplicated by
    /// phase-normalized matrices rather than quaternions.
    fn bfs_best_distance(theta: f64, max_len: usize) -> f64 {
        let target = Gate::rz(0, theta).unitary(1).unwrap();
        let key = |m: &UnitaryMatrix| -> [i64; 8] {
            let lead = m
                .entries()
                .iter()
                .find(|z| z.norm() > 1e-9)
                .copied()
                .unwrap_or(Complex64::ONE);
            let norm = lead / lead.norm();
            let mut out = [0i64; 8];
            for (i, z) in m.entries().iter().enumerate() {
                let w = z / norm;
                out[2 * i] = (w.re * 1e9).round() as i64;
                out[2 * i + 1] = (w.im * 1e9).round() as i64;
            }
            out
        };
        let h = Gate::H(0).unitary(1).unwrap();
        let t = Gate::T(0).unitary(1).unwrap();
        let mut seen = HashSet::new();
        let mut frontier = vec![UnitaryMatrix::identity(2)];
        seen.insert(key(&frontier[0]));
        let mut best = hs_distance(&frontier[0], &target).unwrap();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for m in &frontier {
                for g in [&h, &t] {
                    let u = g.matmul(m).unwrap();
                    if seen.insert(key(&u)) {
                        best = best.min(hs_distance(&u, &target).unwrap());
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        best
    }

    #[test]
    fn search_matches_bfs_oracle_at_coarse_eps() {
        // the oracle confirms a word within 1e-2 of RZ(0.1) exists at
        // length <= 20; the search must find one no worse
        let oracle = bfs_best_distance(0.1, 20);
        assert!(oracle <= 1e-2, "oracle best {oracle}");
        let synth = RzSynthesizer::searching(20);
        let r = synth.synth_rz(0.1, 1e-2).unwrap();
        assert!(r.achieved_eps <= 1e-2);
        assert!(r.achieved_eps <= oracle + 1e-12);
        let d = hs_distance(
            &r.circuit.unitary().unwrap(),
            &Gate::rz(0, 0.1).unitary(1).unwrap(),
        )
        .unwrap();
        assert_abs_diff_eq!(d, r.achieved_eps, epsilon = 1e-12);
    }

    #[test]
    fn result_alphabet_is_restricted() {
        let synth = RzSynthesizer::searching(24);
        let r = synth.synth_rz(0.37, 5e-2).unwrap();
        for g in &r.circuit.gates {
            assert!(
                matches!(
                    g,
                    Gate::H(0) | Gate::S(0) | Gate::Sdg(0) | Gate::T(0) | Gate::Tdg(0) | Gate::X(0) | Gate::Z(0)
                ),
                "unexpected gate {g:?}"
            );
        }
    }

    #[test]
    fn monotone_in_depth() {
        let mut achieved = Vec::new();
        for depth in [16usize, 20, 24, 28] {
            let synth = RzSynthesizer::searching(depth);
            match synth.synth_rz(0.1, 1e-2) {
                Ok(r) => achieved.push(Some(r.achieved_eps)),
                Err(_) => achieved.push(None),
            }
        }
        let mut last_success: Option<f64> = None;
        for a in achieved {
            if let Some(prev) = last_success {
                let now = a.expect("success must persist at larger depth");
                assert!(now <= prev + 1e-15, "{now} > {prev}");
                last_success = Some(now);
            } else {
                last_success = a;
            }
        }
        assert!(last_success.is_some());
    }

    #[test]
    fn inverse_symmetry() {
        let synth = RzSynthesizer::searching(24);
        for theta in [0.1, 0.9, 2.4] {
            let plus = synth.synth_rz(theta, 3e-2).unwrap();
            let minus = synth.synth_rz(-theta, 3e-2).unwrap();
            assert_eq!(plus.t_count, minus.t_count);
            assert_abs_diff_eq!(plus.achieved_eps, minus.achieved_eps, epsilon = 1e-12);
            let d = hs_distance(
                &minus.circuit.unitary().unwrap(),
                &Gate::rz(0, -theta).unitary(1).unwrap(),
            )
            .unwrap();
            assert!(d <= 3e-2);
        }
    }

    #[test]
    fn cache_is_safe_under_threads() {
        let synth = std::sync::Arc::new(RzSynthesizer::searching(16));
        std::thread::scope(|scope| {
            for _ in 0..4 {
                let synth = synth.clone();
                scope.spawn(move || {
                    for theta in [0.2, -0.2, 0.2, PI / 4.0] {
                        let r = synth.synth_rz(theta, 0.3).unwrap();
                        assert!(r.achieved_eps <= 0.3);
                    }
                });
            }
        });
    }

    #[test]
    fn parse_single_s() {
        let c = parse_external_sequence("S").unwrap();
        assert_eq!(c.gates, vec![Gate::S(0)]);
    }

    #[test]
    fn parse_global_phase_only() {
        let c = parse_external_sequence("WWWWWWWW").unwrap();
        assert!(c.gates.is_empty());
    }

    #[test]
    fn parse_reverses_gate_order() {
        // leftmost character is applied last: "HS" is the circuit [S, H]
        let c = parse_external_sequence("HS").unwrap();
        assert_eq!(c.gates, vec![Gate::S(0), Gate::H(0)]);
        // palindromes are order-insensitive
        let hth = parse_external_sequence("HTH").unwrap().unitary().unwrap();
        let product = Gate::H(0)
            .unitary(1)
            .unwrap()
            .matmul(&Gate::T(0).unitary(1).unwrap())
            .unwrap()
            .matmul(&Gate::H(0).unitary(1).unwrap())
            .unwrap();
        assert!(hs_distance(&hth, &product).unwrap() <= 1e-12);
    }

    #[test]
    fn parse_rejects_unknown_characters() {
        let err = parse_external_sequence("HTQ");
        assert!(matches!(err, Err(Error::SequenceParse { byte: 'Q', offset: 2 })));
    }

    #[test]
    fn euler_reconstructs_rz() {
        let u = Gate::rz(0, 0.7).unitary(1).unwrap();
        let c = euler_zxz_circuit(&u).unwrap();
        assert!(hs_distance(&c.unitary().unwrap(), &u).unwrap() <= 1e-9);
    }

    #[test]
    fn euler_reconstructs_identity_and_h() {
        for u in [UnitaryMatrix::identity(2), Gate::H(0).unitary(1).unwrap()] {
            let c = euler_zxz_circuit(&u).unwrap();
            assert!(hs_distance(&c.unitary().unwrap(), &u).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn euler_reconstructs_random_unitaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..1000 {
            let u = random_unitary(&mut rng, 2);
            let (t1, t2, t3, _) = euler_zxz(&u).unwrap();
            for t in [t1, t2, t3] {
                assert!(t > -PI - 1e-12 && t <= PI + 1e-12);
            }
            let c = euler_zxz_circuit(&u).unwrap();
            let d = hs_distance(&c.unitary().unwrap(), &u).unwrap();
            assert!(d <= 1e-9, "reconstruction distance {d}");
        }
    }
}

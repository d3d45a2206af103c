//! Two-sided simulated-annealing search for Clifford+T words that
//! diagonalize (or directly invert) a target unitary.
//!
//! The search state is the triple `(L, R, s)` with `s = L · U† · R`. Both
//! words live in fixed-length slot templates initialized to identity; a move
//! resamples one slot from the gate alphabet. In diagonalization mode the
//! cost is the diagonal distance of `s` and a terminal state is completed
//! analytically: the residual diagonal becomes a CNOT + R_Z ladder and the
//! assembled circuit is `R · D⁻¹ · L`.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagonal::{build_diagonal_circuit, clifford_t_diagonal, solve_angles, PRUNE_TOL};
use crate::gates::{Circuit, Gate, ResourceCounts};
use crate::matrix::{diagonal_distance, hs_distance, nearest_diagonal, UnitaryMatrix};
use crate::rz::RzSynthesizer;
use crate::{Error, Result};

/// Search objective: drive `s` to a diagonal, or all the way to identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum SearchMode {
    Diagonalize,
    Invert,
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchMode::Diagonalize => write!(f, "diagonalize"),
            SearchMode::Invert => write!(f, "invert"),
        }
    }
}

/// Annealing schedule and budget knobs. The schedule constants are tuned
/// starting points, not claims; everything is overridable.
#[derive(Debug, Clone)]
pub struct AnnealConfig {
    pub slots_per_side: usize,
    pub gate_alphabet: Vec<Gate>,
    pub initial_temp: f64,
    pub cooling_rate: f64,
    /// Step budget per restart.
    pub max_iters: u64,
    /// Restart early after this many steps without improving the best cost.
    pub stall_iters: u64,
    /// Total restarts across all workers.
    pub restarts: usize,
    /// Target block precision (terminal threshold on the cost).
    pub eps: f64,
    /// Precision handed to the R_Z synthesizer for ladder rotations.
    pub rz_eps: f64,
    pub mode: SearchMode,
    pub seed: u64,
    pub timeout: Option<Duration>,
    pub workers: usize,
}

impl AnnealConfig {
    /// Defaults for a given register width: 12 slots per side up to two
    /// qubits, 20 for three.
    pub fn for_width(width: usize) -> Self {
        AnnealConfig {
            slots_per_side: if width <= 2 { 12 } else { 20 },
            gate_alphabet: Self::alphabet(width),
            initial_temp: 0.15,
            cooling_rate: 0.999,
            max_iters: 100_000,
            stall_iters: 20_000,
            restarts: 64,
            eps: 1e-8,
            rz_eps: 1e-3,
            mode: SearchMode::Diagonalize,
            seed: 1,
            timeout: None,
            workers: 1,
        }
    }

    /// Every placement of the discrete vocabulary on `width` qubits, plus
    /// an identity that lets moves clear a slot.
    pub fn alphabet(width: usize) -> Vec<Gate> {
        let mut gates = vec![Gate::Id(0)];
        for q in 0..width {
            gates.extend([
                Gate::H(q),
                Gate::S(q),
                Gate::Sdg(q),
                Gate::T(q),
                Gate::Tdg(q),
                Gate::X(q),
                Gate::Y(q),
                Gate::Z(q),
                Gate::Sx(q),
            ]);
        }
        for control in 0..width {
            for target in 0..width {
                if control != target {
                    gates.push(Gate::Cnot { control, target });
                }
            }
        }
        gates
    }
}

/// Outcome of one synthesis run.
#[derive(Debug, Clone)]
pub struct SynthesisResult {
    /// Fully discrete Clifford+T circuit (ladder rotations approximated).
    pub circuit: Circuit,
    /// Same circuit with the ladder rotations kept as exact R_Z gates.
    pub exact_circuit: Circuit,
    /// Verified distance of `exact_circuit` to the target.
    pub block_eps: f64,
    /// Upper bound on the extra error from approximated rotations.
    pub rz_budget: f64,
    pub rz_approximated: usize,
    pub counts: ResourceCounts,
    pub elapsed: Duration,
    pub seed: u64,
    pub mode: SearchMode,
    pub succeeded: bool,
    /// Best cost seen, equals the terminal cost on success.
    pub best_cost: f64,
    pub iterations: u64,
    pub restarts_used: usize,
    /// Populated when a terminal state was found but completion failed
    /// (for example the R_Z synthesizer gave up).
    pub failure_reason: Option<String>,
}

impl SynthesisResult {
    /// Total reported error: block distance plus the rotation budget.
    pub fn eps_total(&self) -> f64 {
        self.block_eps + self.rz_budget
    }
}

/// Synthesize by diagonalization: search for `L, R` with `L·U†·R` nearly
/// diagonal, then implement the residual diagonal analytically.
pub fn diagonalize(target: &UnitaryMatrix, cfg: &AnnealConfig, rz: &RzSynthesizer) -> Result<SynthesisResult> {
    let cfg = AnnealConfig { mode: SearchMode::Diagonalize, ..cfg.clone() };
    run(target, &cfg, rz)
}

/// Baseline mode: search for words whose product inverts the adjoint of the
/// target directly, with no diagonal stage.
pub fn invert(target: &UnitaryMatrix, cfg: &AnnealConfig, rz: &RzSynthesizer) -> Result<SynthesisResult> {
    let cfg = AnnealConfig { mode: SearchMode::Invert, ..cfg.clone() };
    run(target, &cfg, rz)
}

fn run(target: &UnitaryMatrix, cfg: &AnnealConfig, rz: &RzSynthesizer) -> Result<SynthesisResult> {
    let width = target.qubits();
    if width > 3 {
        return Err(Error::UnsupportedWidth(width));
    }
    if !(cfg.cooling_rate > 0.0 && cfg.cooling_rate < 1.0) {
        return Err(Error::SynthesisFailed("cooling rate must be in (0, 1)".into()));
    }
    if cfg.eps <= 0.0 {
        return Err(Error::SynthesisFailed("eps must be positive".into()));
    }
    for gate in &cfg.gate_alphabet {
        for q in gate.qubits() {
            if q >= width {
                return Err(Error::InvalidQubit { index: q, width });
            }
        }
    }

    let start = Instant::now();
    let deadline = cfg.timeout.map(|t| start + t);
    let stop = AtomicBool::new(false);
    let outcomes: Mutex<Vec<(usize, Outcome)>> = Mutex::new(Vec::new());

    let workers = cfg.workers.max(1).min(cfg.restarts.max(1));
    std::thread::scope(|scope| {
        for worker in 0..workers {
            let stop = &stop;
            let outcomes = &outcomes;
            let cfg = &cfg;
            scope.spawn(move || {
                for restart in (worker..cfg.restarts.max(1)).step_by(workers) {
                    if stop.load(Ordering::Relaxed) || past_deadline(deadline) {
                        break;
                    }
                    let outcome = run_restart(target, cfg, restart as u64, deadline, stop);
                    let terminal = outcome.terminal.is_some();
                    outcomes.lock().unwrap().push((restart, outcome));
                    if terminal {
                        stop.store(true, Ordering::Relaxed);
                        break;
                    }
                }
            });
        }
    });

    let mut outcomes = outcomes.into_inner().unwrap();
    outcomes.sort_by_key(|(restart, _)| *restart);
    let iterations: u64 = outcomes.iter().map(|(_, o)| o.iterations).sum();
    let restarts_used = outcomes.len();
    let mut best_cost = f64::MAX;
    let mut terminal: Option<SearchState> = None;
    for (_, outcome) in outcomes {
        best_cost = best_cost.min(outcome.best_cost);
        if terminal.is_none() {
            terminal = outcome.terminal;
        }
    }

    let Some(state) = terminal else {
        return Ok(failed_result(width, cfg, start, best_cost, iterations, restarts_used, None));
    };

    match complete(target, &state, cfg, rz, start, iterations, restarts_used, best_cost) {
        Ok(result) => Ok(result),
        Err(err) => Ok(failed_result(
            width,
            cfg,
            start,
            best_cost,
            iterations,
            restarts_used,
            Some(err.to_string()),
        )),
    }
}

fn failed_result(
    width: usize,
    cfg: &AnnealConfig,
    start: Instant,
    best_cost: f64,
    iterations: u64,
    restarts_used: usize,
    failure_reason: Option<String>,
) -> SynthesisResult {
    SynthesisResult {
        circuit: Circuit::new(width),
        exact_circuit: Circuit::new(width),
        block_eps: best_cost,
        rz_budget: 0.0,
        rz_approximated: 0,
        counts: ResourceCounts::default(),
        elapsed: start.elapsed(),
        seed: cfg.seed,
        mode: cfg.mode,
        succeeded: false,
        best_cost,
        iterations,
        restarts_used,
        failure_reason,
    }
}

fn past_deadline(deadline: Option<Instant>) -> bool {
    deadline.is_some_and(|d| Instant::now() >= d)
}

/// Assemble the final circuit from a terminal state.
#[allow(clippy::too_many_arguments)]
fn complete(
    target: &UnitaryMatrix,
    state: &SearchState,
    cfg: &AnnealConfig,
    rz: &RzSynthesizer,
    start: Instant,
    iterations: u64,
    restarts_used: usize,
    best_cost: f64,
) -> Result<SynthesisResult> {
    let width = target.qubits();
    let left_word = state.word(Side::Left);
    let right_word = state.word(Side::Right);

    let (exact_mid, approx_mid, rz_budget, rz_approximated) = match cfg.mode {
        SearchMode::Invert => (Circuit::new(width), Circuit::new(width), 0.0, 0),
        SearchMode::Diagonalize => {
            // s ≈ D_theta, so the emitted block implements its inverse,
            // which is exactly the nearest-diagonal phase vector
            let d_inv = nearest_diagonal(&state.matrix);
            let spec = solve_angles(d_inv.phases())?;
            let ladder = build_diagonal_circuit(&spec, PRUNE_TOL);
            let rendered = clifford_t_diagonal(&spec, cfg.rz_eps, rz)?;
            (ladder, rendered.circuit, rendered.rz_budget, rendered.approximated)
        }
    };

    let exact_circuit = left_word.concat(&exact_mid).concat(&right_word);
    let circuit = left_word.concat(&approx_mid).concat(&right_word).canonicalize();
    let block_eps = hs_distance(&exact_circuit.unitary()?, target)?;
    let counts = circuit.resource_counts();

    Ok(SynthesisResult {
        circuit,
        exact_circuit,
        block_eps,
        rz_budget,
        rz_approximated,
        counts,
        elapsed: start.elapsed(),
        seed: cfg.seed,
        mode: cfg.mode,
        succeeded: true,
        best_cost,
        iterations,
        restarts_used,
        failure_reason: None,
    })
}

struct Outcome {
    terminal: Option<SearchState>,
    best_cost: f64,
    iterations: u64,
}

fn run_restart(
    target: &UnitaryMatrix,
    cfg: &AnnealConfig,
    restart: u64,
    deadline: Option<Instant>,
    stop: &AtomicBool,
) -> Outcome {
    let seed = cfg.seed.wrapping_add(restart.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = SearchState::fresh(target, cfg);
    let mut temp = cfg.initial_temp;
    let mut best = state.cost;
    let mut since_improvement = 0u64;
    let mut iterations = 0u64;

    if state.cost <= cfg.eps {
        return Outcome { terminal: Some(state), best_cost: best, iterations };
    }

    for _ in 0..cfg.max_iters {
        iterations += 1;
        state.anneal_step(temp, &mut rng);
        temp *= cfg.cooling_rate;

        if state.cost < best {
            best = state.cost;
            since_improvement = 0;
        } else {
            since_improvement += 1;
        }

        if state.cost <= cfg.eps {
            // guard against drift before declaring the state terminal
            state.refresh_from_words();
            if state.cost <= cfg.eps {
                best = best.min(state.cost);
                return Outcome { terminal: Some(state), best_cost: best, iterations };
            }
        }
        if since_improvement >= cfg.stall_iters {
            break;
        }
        if iterations % 512 == 0 && (stop.load(Ordering::Relaxed) || past_deadline(deadline)) {
            break;
        }
    }
    Outcome { terminal: None, best_cost: best, iterations }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Left,
    Right,
}

/// The annealing state `(L, R, s)` with slot templates and cached half
/// products for cheap move evaluation.
pub(crate) struct SearchState {
    width: usize,
    mode: SearchMode,
    embeddings: Vec<UnitaryMatrix>,
    alphabet: Vec<Gate>,
    target_adjoint: UnitaryMatrix,
    left: Vec<usize>,
    right: Vec<usize>,
    /// `U† · R`, refreshed when the right word changes.
    adj_right: UnitaryMatrix,
    /// `L · U†`, refreshed when the left word changes.
    left_adj: UnitaryMatrix,
    pub(crate) matrix: UnitaryMatrix,
    pub(crate) cost: f64,
}

impl SearchState {
    fn fresh(target: &UnitaryMatrix, cfg: &AnnealConfig) -> SearchState {
        let width = target.qubits();
        let embeddings = cfg
            .gate_alphabet
            .iter()
            .map(|g| g.unitary(width).expect("alphabet validated"))
            .collect::<Vec<_>>();
        let target_adjoint = target.adjoint();
        let identity_slot = cfg
            .gate_alphabet
            .iter()
            .position(|g| matches!(g, Gate::Id(_)))
            .unwrap_or(0);
        let left = vec![identity_slot; cfg.slots_per_side];
        let right = vec![identity_slot; cfg.slots_per_side];
        let mut state = SearchState {
            width,
            mode: cfg.mode,
            embeddings,
            alphabet: cfg.gate_alphabet.clone(),
            adj_right: target_adjoint.clone(),
            left_adj: target_adjoint.clone(),
            target_adjoint,
            left,
            right,
            matrix: UnitaryMatrix::identity(1 << width),
            cost: 0.0,
        };
        state.refresh_from_words();
        state
    }

    fn side_product(&self, side: Side) -> UnitaryMatrix {
        let slots = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        let mut product = UnitaryMatrix::identity(1 << self.width);
        for &slot in slots {
            product = self.embeddings[slot].matmul(&product).expect("same dim");
        }
        product
    }

    /// Recompute every cached product from the slot words.
    pub(crate) fn refresh_from_words(&mut self) {
        let left = self.side_product(Side::Left);
        let right = self.side_product(Side::Right);
        self.adj_right = self.target_adjoint.matmul(&right).expect("same dim");
        self.left_adj = left.matmul(&self.target_adjoint).expect("same dim");
        self.matrix = left.matmul(&self.adj_right).expect("same dim");
        self.cost = self.evaluate(&self.matrix);
    }

    fn evaluate(&self, m: &UnitaryMatrix) -> f64 {
        match self.mode {
            SearchMode::Diagonalize => diagonal_distance(m),
            SearchMode::Invert => {
                hs_distance(m, &UnitaryMatrix::identity(m.dim())).expect("same dim")
            }
        }
    }

    /// Matrix after replacing one slot, using the cached half products so a
    /// proposal costs one side rebuild instead of a full recomputation.
    pub(crate) fn proposal_matrix(&self, side: Side, slot: usize, gate_idx: usize) -> UnitaryMatrix {
        let slots = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        let mut product = UnitaryMatrix::identity(1 << self.width);
        for (i, &s) in slots.iter().enumerate() {
            let idx = if i == slot { gate_idx } else { s };
            product = self.embeddings[idx].matmul(&product).expect("same dim");
        }
        match side {
            Side::Left => product.matmul(&self.adj_right).expect("same dim"),
            Side::Right => self.left_adj.matmul(&product).expect("same dim"),
        }
    }

    pub(crate) fn apply(&mut self, side: Side, slot: usize, gate_idx: usize, matrix: UnitaryMatrix, cost: f64) {
        match side {
            Side::Left => {
                self.left[slot] = gate_idx;
                let left = self.side_product(Side::Left);
                self.left_adj = left.matmul(&self.target_adjoint).expect("same dim");
            }
            Side::Right => {
                self.right[slot] = gate_idx;
                let right = self.side_product(Side::Right);
                self.adj_right = self.target_adjoint.matmul(&right).expect("same dim");
            }
        }
        self.matrix = matrix;
        self.cost = cost;
    }

    /// One Metropolis move: resample a uniform slot on a uniform side and
    /// accept if the cost does not increase, otherwise with probability
    /// `exp(-dcost / temp)`.
    pub(crate) fn anneal_step<R: Rng>(&mut self, temp: f64, rng: &mut R) {
        let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
        let slot = rng.gen_range(0..self.left.len());
        let gate_idx = rng.gen_range(0..self.alphabet.len());
        let matrix = self.proposal_matrix(side, slot, gate_idx);
        let cost = self.evaluate(&matrix);
        let delta = cost - self.cost;
        let accept = delta <= 0.0 || (temp > 0.0 && rng.gen::<f64>() < (-delta / temp).exp());
        if accept {
            self.apply(side, slot, gate_idx, matrix, cost);
        }
    }

    /// Slot template as a circuit, identities dropped.
    pub(crate) fn word(&self, side: Side) -> Circuit {
        let slots = match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        };
        let gates = slots
            .iter()
            .map(|&s| self.alphabet[s].clone())
            .filter(|g| !matches!(g, Gate::Id(_)))
            .collect();
        Circuit::from_gates(self.width, gates)
    }

    #[cfg(test)]
    pub(crate) fn scratch_matrix(&self) -> UnitaryMatrix {
        let left = self.word(Side::Left).unitary().expect("valid word");
        let right = self.word(Side::Right).unitary().expect("valid word");
        left.matmul(&self.target_adjoint)
            .and_then(|m| m.matmul(&right))
            .expect("same dim")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{random_unitary, DiagonalUnitary};
    use std::f64::consts::PI;

    fn quick_cfg(width: usize, seed: u64) -> AnnealConfig {
        AnnealConfig {
            seed,
            restarts: 48,
            max_iters: 40_000,
            rz_eps: 1e-3,
            ..AnnealConfig::for_width(width)
        }
    }

    fn rz_search() -> RzSynthesizer {
        RzSynthesizer::searching(40)
    }

    #[test]
    fn already_diagonal_target_terminates_at_start() {
        let target = DiagonalUnitary::new(vec![0.0, 0.3, 1.1, -0.4]).unwrap().to_matrix();
        let cfg = quick_cfg(2, 7);
        let rz = rz_search();
        let result = diagonalize(&target, &cfg, &rz).unwrap();
        assert!(result.succeeded);
        assert_eq!(result.iterations, 0);
        assert!(result.block_eps <= cfg.eps);
        let exact = result.exact_circuit.unitary().unwrap();
        assert!(hs_distance(&exact, &target).unwrap() <= cfg.eps);
    }

    #[test]
    fn diagonalize_ccy_with_clifford_words() {
        // CCY: Y on the target qubit for the |11> control subspace
        let mut target = UnitaryMatrix::identity(8);
        target.set(6, 6, num_complex::Complex64::ZERO);
        target.set(7, 7, num_complex::Complex64::ZERO);
        target.set(6, 7, num_complex::Complex64::new(0.0, -1.0));
        target.set(7, 6, num_complex::Complex64::new(0.0, 1.0));

        let cfg = quick_cfg(3, 11);
        let rz = rz_search();
        let result = diagonalize(&target, &cfg, &rz).unwrap();
        assert!(result.succeeded, "best cost {}", result.best_cost);
        assert_eq!(result.rz_approximated, 0, "CCY diagonalizes exactly");
        assert!(result.eps_total() <= 1e-8);
        let assembled = result.circuit.unitary().unwrap();
        assert!(hs_distance(&assembled, &target).unwrap() <= 1e-8);
    }

    #[test]
    fn invert_recovers_short_clifford_words() {
        let h_tensor_i = Circuit::from_gates(2, vec![Gate::H(0)]).unitary().unwrap();
        let cfg = quick_cfg(2, 3);
        let rz = rz_search();
        let result = invert(&h_tensor_i, &cfg, &rz).unwrap();
        assert!(result.succeeded);
        let assembled = result.circuit.unitary().unwrap();
        assert!(hs_distance(&assembled, &h_tensor_i).unwrap() <= cfg.eps + 1e-9);

        let t = Circuit::from_gates(1, vec![Gate::T(0)]).unitary().unwrap();
        let cfg = quick_cfg(1, 5);
        let result = invert(&t, &cfg, &rz).unwrap();
        assert!(result.succeeded);
        assert_eq!(result.counts.t_count, 1);
    }

    #[test]
    fn incremental_update_matches_full_recomputation() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        let target = random_unitary(&mut rng, 8);
        let cfg = AnnealConfig::for_width(3);
        let mut state = SearchState::fresh(&target, &cfg);
        for step in 0..1000 {
            state.anneal_step(0.3, &mut rng);
            let scratch = state.scratch_matrix();
            let d = hs_distance(&state.matrix, &scratch).unwrap();
            assert!(d <= 1e-10, "drift {d} at step {step}");
            for r in 0..8 {
                for c in 0..8 {
                    assert!((state.matrix.get(r, c) - scratch.get(r, c)).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn metropolis_accepts_downhill_always() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        let target = random_unitary(&mut rng, 4);
        let cfg = AnnealConfig::for_width(2);
        let mut state = SearchState::fresh(&target, &cfg);
        // zero temperature: only non-increasing costs may be accepted
        let mut last = state.cost;
        for _ in 0..2000 {
            state.anneal_step(0.0, &mut rng);
            assert!(state.cost <= last + 1e-12);
            last = state.cost;
        }
    }

    #[test]
    fn reassembly_bounds_hold_for_planted_targets() {
        // targets built as A · D · B from short Clifford+T words and a
        // random diagonal, the planted-factorization recipe
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        let rz = rz_search();
        for case in 0..4u64 {
            let width = 2;
            let mut a = Circuit::new(width);
            let mut b = Circuit::new(width);
            let alphabet = AnnealConfig::alphabet(width);
            for _ in 0..4 {
                a.push(alphabet[rng.gen_range(1..alphabet.len())].clone());
                b.push(alphabet[rng.gen_range(1..alphabet.len())].clone());
            }
            let phases: Vec<f64> = (0..4).map(|_| rng.gen_range(-PI..PI)).collect();
            let d = DiagonalUnitary::new(phases).unwrap().to_matrix();
            let target = a
                .unitary()
                .unwrap()
                .matmul(&d)
                .unwrap()
                .matmul(&b.unitary().unwrap())
                .unwrap();

            let cfg = AnnealConfig {
                eps: 1e-8,
                seed: 100 + case,
                restarts: 96,
                max_iters: 60_000,
                rz_eps: 1e-3,
                ..AnnealConfig::for_width(width)
            };
            let result = diagonalize(&target, &cfg, &rz).unwrap();
            assert!(result.succeeded, "case {case}: best cost {}", result.best_cost);
            let exact = result.exact_circuit.unitary().unwrap();
            let d = hs_distance(&exact, &target).unwrap();
            assert!(d <= result.block_eps + 1e-9);
            assert!(result.rz_budget <= result.rz_approximated as f64 * cfg.rz_eps + 1e-15);
        }
    }

    #[test]
    fn same_seed_single_worker_is_deterministic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(73);
        let target = random_unitary(&mut rng, 4);
        let cfg = AnnealConfig {
            restarts: 2,
            max_iters: 5_000,
            seed: 42,
            ..AnnealConfig::for_width(2)
        };
        let rz = rz_search();
        let a = diagonalize(&target, &cfg, &rz).unwrap();
        let b = diagonalize(&target, &cfg, &rz).unwrap();
        assert_eq!(a.succeeded, b.succeeded);
        assert_eq!(a.best_cost.to_bits(), b.best_cost.to_bits());
        assert_eq!(a.circuit.gates, b.circuit.gates);
        assert_eq!(a.iterations, b.iterations);
    }
}

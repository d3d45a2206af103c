//! Dense complex-matrix arithmetic for small unitaries and the distance
//! functions used by search and verification.
//!
//! Matrices are stored dense and row-major; every dimension in the synthesis
//! path is 2, 4, or 8, so nothing fancier is warranted. All distances are
//! invariant under a global phase.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;

use crate::{Error, Result};

/// Radicand window treated as zero before taking square roots in the
/// distance functions. The raw radicand `1 - |tr|²/N²` carries cancellation
/// noise of order 1e-14 even for exactly equal unitaries, so everything
/// within ±1e-12 reads as zero; distances above the resulting 1e-6 floor
/// are unaffected.
const RADICAND_CLAMP: f64 = 1e-12;

/// Frobenius tolerance for the `U·U† = I` unitarity invariant.
pub const UNITARY_TOL: f64 = 1e-10;

/// Wrap an angle onto the canonical branch `(-pi, pi]`.
pub fn wrap_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    // rem_euclid can return exactly 2*pi when theta is a tiny negative number
    if t <= -PI {
        t += 2.0 * PI;
    }
    t
}

/// Dense square complex matrix of dimension 2^n, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl UnitaryMatrix {
    /// Build a matrix from row-major entries. The dimension must be a power
    /// of two; unitarity is the caller's responsibility (see
    /// [`UnitaryMatrix::checked`] for validated input).
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::UnsupportedDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(entries.len(), dim * dim));
        }
        Ok(Self { dim, entries })
    }

    /// Build and validate a unitary from external input.
    pub fn checked(dim: usize, entries: Vec<Complex64>, tol: f64) -> Result<Self> {
        let m = Self::from_entries(dim, entries)?;
        let residual = m.unitarity_residual();
        if residual > tol {
            return Err(Error::NotUnitary(residual));
        }
        Ok(m)
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![Complex64::ZERO; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Complex64::ONE;
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits, i.e. log2 of the dimension.
    pub fn qubits(&self) -> usize {
        self.dim.trailing_zeros() as usize
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Matrix product `self · rhs`.
    pub fn matmul(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch(self.dim, rhs.dim));
        }
        let n = self.dim;
        let mut out = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        Ok(UnitaryMatrix { dim: n, entries: out })
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> UnitaryMatrix {
        let n = self.dim;
        let mut out = vec![Complex64::ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                out[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        UnitaryMatrix { dim: n, entries: out }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.entries[i * self.dim + i]).sum()
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &UnitaryMatrix) -> UnitaryMatrix {
        let (a, b) = (self.dim, rhs.dim);
        let n = a * b;
        let mut out = vec![Complex64::ZERO; n * n];
        for i in 0..a {
            for j in 0..a {
                let factor = self.entries[i * a + j];
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out[(i * b + k) * n + (j * b + l)] = factor * rhs.entries[k * b + l];
                    }
                }
            }
        }
        UnitaryMatrix { dim: n, entries: out }
    }

    /// Multiply every entry by a scalar (used for global phases in tests).
    pub fn scaled(&self, factor: Complex64) -> UnitaryMatrix {
        UnitaryMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    /// Frobenius norm of `U·U† − I`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut dot = Complex64::ZERO;
                for k in 0..n {
                    dot += self.entries[i * n + k] * self.entries[j * n + k].conj();
                }
                if i == j {
                    dot -= Complex64::ONE;
                }
                acc += dot.norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_residual() <= tol
    }
}

/// Hilbert-Schmidt distance `sqrt(1 - |Tr(a·b†)|² / dim²)`.
///
/// Global-phase invariant and symmetric in its arguments; ranges over
/// `[0, 1]`. Tiny negative radicands from float noise are clamped to zero.
pub fn hs_distance(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim, b.dim));
    }
    let n = a.dim;
    let mut tr = Complex64::ZERO;
    for i in 0..n {
        for k in 0..n {
            tr += a.entries[i * n + k] * b.entries[i * n + k].conj();
        }
    }
    let radicand = 1.0 - tr.norm_sqr() / ((n * n) as f64);
    Ok(clamped_sqrt(radicand))
}

/// Exact minimum of `hs_distance(s, D)` over all diagonal unitaries `D`:
/// `sqrt(1 - (Σ_i |s_ii|)² / dim²)`. Zero exactly when `s` is diagonal up to
/// per-row phases.
pub fn diagonal_distance(s: &UnitaryMatrix) -> f64 {
    let n = s.dim;
    let sum: f64 = (0..n).map(|i| s.entries[i * n + i].norm()).sum();
    clamped_sqrt(1.0 - sum * sum / ((n * n) as f64))
}

/// The diagonal unitary closest to inverting the row phases of `s`: phase
/// `i` is `-arg(s_ii)` so that `D·s` has a nonnegative real diagonal. Zero
/// diagonal entries pick phase 0.
pub fn nearest_diagonal(s: &UnitaryMatrix) -> DiagonalUnitary {
    let n = s.dim;
    let phases = (0..n)
        .map(|i| {
            let d = s.entries[i * n + i];
            if d.norm_sqr() == 0.0 {
                0.0
            } else {
                wrap_angle(-d.arg())
            }
        })
        .collect();
    DiagonalUnitary { phases }
}

/// Row criterion `max_i sqrt(Σ_{j≠i} |s_ij|²) ≤ eps`. When it holds, some
/// diagonal unitary brings `s` within `eps` of the identity.
pub fn row_offdiagonal_criterion(s: &UnitaryMatrix, eps: f64) -> bool {
    let n = s.dim;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let mut acc = 0.0;
        for j in 0..n {
            if j != i {
                acc += s.entries[i * n + j].norm_sqr();
            }
        }
        worst = worst.max(acc.sqrt());
    }
    worst <= eps
}

fn clamped_sqrt(radicand: f64) -> f64 {
    if radicand <= RADICAND_CLAMP {
        debug_assert!(radicand >= -1e-9, "radicand {radicand} far below zero");
        0.0
    } else {
        radicand.sqrt()
    }
}

/// Diagonal unitary stored as its phase vector: entry `k` represents
/// `e^{i·phases[k]}`. Phases live on the branch `(-pi, pi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalUnitary {
    phases: Vec<f64>,
}

impl DiagonalUnitary {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        if phases.is_empty() || !phases.len().is_power_of_two() {
            return Err(Error::UnsupportedDimension(phases.len()));
        }
        Ok(Self {
            phases: phases.into_iter().map(wrap_angle).collect(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self { phases: vec![0.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.phases.len()
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    pub fn adjoint(&self) -> DiagonalUnitary {
        DiagonalUnitary {
            phases: self.phases.iter().map(|p| wrap_angle(-p)).collect(),
        }
    }

    pub fn to_matrix(&self) -> UnitaryMatrix {
        let n = self.phases.len();
        let mut m = UnitaryMatrix::identity(n);
        for (i, phase) in self.phases.iter().enumerate() {
            m.set(i, i, Complex64::from_polar(1.0, *phase));
        }
        m
    }
}

/// Haar-like random unitary: QR of a complex Gaussian matrix with the R
/// diagonal phases normalized out.
pub fn random_unitary<R: Rng>(rng: &mut R, dim: usize) -> UnitaryMatrix {
    use rand_distr::StandardNormal;
    let mut cols: Vec<Vec<Complex64>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re, im)
                })
                .collect()
        })
        .collect();

    // Modified Gram-Schmidt, one column at a time.
    for j in 0..dim {
        for k in 0..j {
            let proj: Complex64 = (0..dim).map(|i| cols[k][i].conj() * cols[j][i]).sum();
            for i in 0..dim {
                let sub = proj * cols[k][i];
                cols[j][i] -= sub;
            }
        }
        let norm: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..dim {
            cols[j][i] /= norm;
        }
        // fix the phase so the distribution does not favor R's diagonal
        let phase = cols[j].iter().find(|z| z.norm() > 1e-12).map_or(1.0, |z| z.arg());
        let rot = Complex64::from_polar(1.0, rng.gen_range(0.0..2.0 * PI) - phase);
        for i in 0..dim {
            cols[j][i] *= rot;
        }
    }

    let mut entries = vec![Complex64::ZERO; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            entries[i * dim + j] = cols[j][i];
        }
    }
    UnitaryMatrix { dim, entries }
}

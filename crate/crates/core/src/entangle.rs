//! Bipartite entanglement diagnostics for pure and mixed qubit states.
//!
//! Qubit subsets are 1-based, matching the tensor-factor positions used
//! everywhere else.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{phase_equivalent, ComplexMatrix, PhaseMode, StateVector, C64, ONE, ZERO};

/// Jacobi sweeps stop once the off-diagonal Frobenius mass drops below this.
pub const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues below this contribute nothing to the entropy.
pub const EIGEN_CUTOFF: f64 = 1e-12;

/// Singular values at or below this do not count towards the Schmidt rank.
pub const SCHMIDT_TOL: f64 = 1e-6;

const DENSITY_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
/// sorted ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    let residual = m.hermiticity_residual();
    if residual > DENSITY_TOL.max(1e-12 * m.max_abs()) {
        return Err(Error::NotHermitian { residual });
    }
    let n = m.rows();
    let mut a: Vec<C64> = m.entries().to_vec();
    let scale = m.max_abs().max(f64::MIN_POSITIVE);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i].re).collect();
    eig.sort_by(f64::total_cmp);
    Ok(eig)
}

/// Annihilates `a[p][q]` with `G = diag-phase * real rotation`, `a <- G^dagger a G`.
fn rotate(a: &mut [C64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let w = apq / r; // e^{i alpha}
    let (x, y) = (a[p * n + p].re, a[q * n + q].re);
    let angle = 0.5 * (2.0 * r).atan2(y - x);
    let (s, cs) = angle.sin_cos();
    // G = [[cs, s], [-s w*, cs w*]] on the (p, q) plane
    let g_pp = C64::new(cs, 0.0);
    let g_pq = C64::new(s, 0.0);
    let g_qp = -w.conj() * s;
    let g_qq = w.conj() * cs;
    for i in 0..n {
        let (aip, aiq) = (a[i * n + p], a[i * n + q]);
        a[i * n + p] = aip * g_pp + aiq * g_qp;
        a[i * n + q] = aip * g_pq + aiq * g_qq;
    }
    for j in 0..n {
        let (apj, aqj) = (a[p * n + j], a[q * n + j]);
        a[p * n + j] = g_pp.conj() * apj + g_qp.conj() * aqj;
        a[q * n + j] = g_pq.conj() * apj + g_qq.conj() * aqj;
    }
    a[p * n + q] = ZERO;
    a[q * n + p] = ZERO;
}

/// A validated density operator on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(n_qubits: usize, matrix: ComplexMatrix) -> Result<Self> {
        if matrix.shape() != (1 << n_qubits, 1 << n_qubits) {
            return Err(Error::InvalidDensity(format!(
                "{:?} matrix for {n_qubits} qubits",
                matrix.shape()
            )));
        }
        let herm = matrix.hermiticity_residual();
        if herm > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (residual {herm:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - ONE).norm() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr}")));
        }
        let lowest = hermitian_eigenvalues(&matrix)?[0];
        if lowest < -PSD_TOL {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self { n_qubits, matrix })
    }

    /// `|v><v| / <v|v>`.
    pub fn from_pure(v: &StateVector) -> Result<Self> {
        let norm = v.norm_sqr();
        if norm == 0.0 {
            return Err(Error::InvalidDensity("zero vector".into()));
        }
        let amps = v.amplitudes();
        let dim = amps.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for x in amps {
            entries.extend(amps.iter().map(|y| x * y.conj() / norm));
        }
        Ok(Self {
            n_qubits: v.n_qubits(),
            matrix: ComplexMatrix::new(dim, dim, entries)?,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }
}

fn validate_subset(n: usize, subset: &[usize], allow_full: bool) -> Result<Vec<usize>> {
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() {
        return Err(Error::InvalidSubset(format!("duplicates in {subset:?}")));
    }
    if sorted.is_empty() {
        return Err(Error::InvalidSubset("empty subset".into()));
    }
    if sorted.iter().any(|&q| q == 0 || q > n) {
        return Err(Error::InvalidSubset(format!("{subset:?} on {n} qubits")));
    }
    if !allow_full && sorted.len() == n {
        return Err(Error::InvalidSubset(format!(
            "{subset:?} is not a proper subset"
        )));
    }
    Ok(sorted)
}

/// Extracts the bits of `index` at the given qubit positions, first qubit most significant.
fn gather_bits(n: usize, index: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .fold(0, |acc, &q| (acc << 1) | ((index >> (n - q)) & 1))
}

fn complement(n: usize, subset: &[usize]) -> Vec<usize> {
    (1..=n).filter(|q| !subset.contains(q)).collect()
}

/// Reduced density matrix over `keep`, summing out the other qubits.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let n = rho.n_qubits;
    let keep = validate_subset(n, keep, false)?;
    let traced = complement(n, &keep);
    let dk = 1usize << keep.len();
    let dim = 1usize << n;
    let mut entries = vec![ZERO; dk * dk];
    for row in 0..dim {
        let row_env = gather_bits(n, row, &traced);
        let row_keep = gather_bits(n, row, &keep);
        for col in 0..dim {
            if gather_bits(n, col, &traced) != row_env {
                continue;
            }
            entries[row_keep * dk + gather_bits(n, col, &keep)] += rho.matrix.get(row, col);
        }
    }
    Ok(DensityMatrix {
        n_qubits: keep.len(),
        matrix: ComplexMatrix::new(dk, dk, entries)?,
    })
}

/// Amplitudes reshaped to a `2^|part| x 2^(n-|part|)` matrix.
fn reshape(v: &StateVector, part: &[usize]) -> Vec<Vec<C64>> {
    let n = v.n_qubits();
    let rest = complement(n, part);
    let mut m = vec![vec![ZERO; 1 << rest.len()]; 1 << part.len()];
    for (idx, &amp) in v.amplitudes().iter().enumerate() {
        m[gather_bits(n, idx, part)][gather_bits(n, idx, &rest)] = amp;
    }
    m
}

/// Reduced density of a pure state on `keep`, computed as `M M^dagger`
/// from the reshaped amplitudes without forming `|v><v|`.
pub fn reduced_density(v: &StateVector, keep: &[usize]) -> Result<DensityMatrix> {
    let keep = validate_subset(v.n_qubits(), keep, false)?;
    let norm = v.norm_sqr();
    if norm == 0.0 {
        return Err(Error::InvalidDensity("zero vector".into()));
    }
    let m = reshape(v, &keep);
    let dk = m.len();
    let mut entries = vec![ZERO; dk * dk];
    for i in 0..dk {
        for j in i..dk {
            let z: C64 = m[i]
                .iter()
                .zip(&m[j])
                .map(|(x, y)| x * y.conj())
                .sum::<C64>()
                / norm;
            entries[i * dk + j] = z;
            entries[j * dk + i] = z.conj();
        }
    }
    Ok(DensityMatrix {
        n_qubits: keep.len(),
        matrix: ComplexMatrix::new(dk, dk, entries)?,
    })
}

fn entropy_of(eigenvalues: &[f64]) -> f64 {
    let s: f64 = eigenvalues
        .iter()
        .filter(|&&l| l >= EIGEN_CUTOFF)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// Von Neumann entropy in bits.
pub fn vn_entropy(rho: &DensityMatrix) -> Result<f64> {
    vn_entropy_of_matrix(&rho.matrix)
}

/// Entropy of an arbitrary matrix that is expected to be a density operator.
pub fn vn_entropy_of_matrix(m: &ComplexMatrix) -> Result<f64> {
    Ok(entropy_of(&hermitian_eigenvalues(m)?))
}

/// Schmidt coefficients (singular values of the reshaped amplitudes), descending.
pub fn schmidt_coefficients(v: &StateVector, part: &[usize]) -> Result<Vec<f64>> {
    let n = v.n_qubits();
    let part = validate_subset(n, part, false)?;
    // Gram matrix on the smaller side has the same nonzero spectrum.
    let side = if part.len() * 2 <= n {
        part
    } else {
        complement(n, &part)
    };
    let m = reshape(v, &side);
    let dk = m.len();
    let mut entries = vec![ZERO; dk * dk];
    for i in 0..dk {
        for j in i..dk {
            let z: C64 = m[i].iter().zip(&m[j]).map(|(x, y)| x * y.conj()).sum();
            entries[i * dk + j] = z;
            entries[j * dk + i] = z.conj();
        }
    }
    let mut sv: Vec<f64> = hermitian_eigenvalues(&ComplexMatrix::new(dk, dk, entries)?)?
        .into_iter()
        .map(|l| l.max(0.0).sqrt())
        .collect();
    sv.reverse();
    Ok(sv)
}

pub fn schmidt_rank(v: &StateVector, part: &[usize], tol: f64) -> Result<usize> {
    Ok(schmidt_coefficients(v, part)?
        .iter()
        .filter(|&&s| s > tol)
        .count())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub bipartition: Vec<usize>,
    pub entropy_bits: f64,
    pub schmidt_rank: usize,
    pub is_product: bool,
}

/// Entropy and Schmidt rank of a pure state across `part | rest`.
pub fn entanglement_report(v: &StateVector, part: &[usize]) -> Result<EntanglementReport> {
    let coefficients = schmidt_coefficients(v, part)?;
    let norm: f64 = coefficients.iter().map(|s| s * s).sum();
    let probabilities: Vec<f64> = coefficients.iter().map(|s| s * s / norm).collect();
    let schmidt_rank = coefficients
        .iter()
        .filter(|&&s| s > SCHMIDT_TOL)
        .count()
        .max(1);
    let mut bipartition = part.to_vec();
    bipartition.sort_unstable();
    Ok(EntanglementReport {
        bipartition,
        entropy_bits: entropy_of(&probabilities),
        schmidt_rank,
        is_product: schmidt_rank == 1,
    })
}

/// Born probability of `outcome` on `qubit` and the renormalized state of the other qubits.
pub fn measure_qubit(v: &StateVector, qubit: usize, outcome: u8) -> Result<(f64, StateVector)> {
    let n = v.n_qubits();
    if qubit == 0 || qubit > n {
        return Err(Error::InvalidSubset(format!("qubit {qubit} of {n}")));
    }
    if outcome > 1 {
        return Err(Error::InvalidSubset(format!("outcome {outcome}")));
    }
    let total = v.norm_sqr();
    let shift = n - qubit;
    let low_mask = (1usize << shift) - 1;
    let kept: Vec<C64> = (0..1usize << (n - 1))
        .map(|r| {
            let idx = ((r & !low_mask) << 1) | ((outcome as usize) << shift) | (r & low_mask);
            v.amplitude(idx)
        })
        .collect();
    let weight: f64 = kept.iter().map(|z| z.norm_sqr()).sum();
    let probability = if total == 0.0 { 0.0 } else { weight / total };
    if probability <= 1e-12 {
        return Err(Error::ZeroProbability {
            qubit,
            outcome,
            probability,
        });
    }
    let scale = weight.sqrt();
    let post = StateVector::new(n - 1, kept.into_iter().map(|z| z / scale).collect())?;
    Ok((probability, post))
}

/// Is `(U_1 x ... x U_n) v = u` up to a global phase?
pub fn lu_equivalence_check(
    u: &StateVector,
    v: &StateVector,
    locals: &[ComplexMatrix],
) -> Result<bool> {
    if u.n_qubits() != v.n_qubits() || locals.len() != v.n_qubits() {
        return Err(Error::DimensionMismatch {
            op: "lu_equivalence_check",
            left: (u.dim(), 1),
            right: (v.dim(), locals.len()),
        });
    }
    let mut w = v.clone();
    for (j, m) in locals.iter().enumerate() {
        w = w.apply_single_qubit(j + 1, m)?;
    }
    phase_equivalent(u, &w, PhaseMode::Global, 1e-10)
}

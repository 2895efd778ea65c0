//! Dense complex linear algebra: matrices, qubit registers, tensor products
//! and phase-insensitive comparison.
//!
//! Storage is row-major double precision. Qubit 1 is the leftmost tensor
//! factor and the most significant bit of an amplitude index, so
//! `|a1 a2 ... an>` lives at index `sum_j a_j 2^(n-j)`.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Largest dense matrix dimension (rows or columns) that may be built.
pub const DENSE_DIM_CAP: usize = 1 << 12;

/// Tolerance for identities between directly constructed matrices.
pub const TOL_EXACT: f64 = 1e-12;
/// Tolerance used in verification reports.
pub const TOL_REPORT: f64 = 1e-10;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn check_finite(values: &[C64]) -> Result<()> {
    match values
        .iter()
        .position(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        Some(pos) => Err(Error::NonFinite(pos)),
        None => Ok(()),
    }
}

fn check_cap(rows: usize, cols: usize) -> Result<()> {
    let requested = rows.max(cols);
    if requested > DENSE_DIM_CAP {
        return Err(Error::Capacity {
            requested,
            cap: DENSE_DIM_CAP,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidShape(format!("{rows}x{cols} matrix")));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidShape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        check_finite(&entries)?;
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.as_ref().len() != cols {
                return Err(Error::InvalidShape("ragged rows".into()));
            }
            entries.extend_from_slice(row.as_ref());
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Self {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ONE;
        }
        m
    }

    pub fn diagonal(diag: &[C64]) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::InvalidShape("empty diagonal".into()));
        }
        check_finite(diag)?;
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &z) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = z;
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                out.push(self.get(i, j).conj());
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries: out,
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    fn zip_with(
        &self,
        other: &Self,
        op: &'static str,
        f: impl Fn(C64, C64) -> C64,
    ) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&x, &y)| f(x, y))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "add", |x, y| x + y)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, "sub", |x, y| x - y)
    }

    /// `self + factor * I`.
    pub fn add_identity(&self, factor: C64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::InvalidShape(
                "add_identity needs a square matrix".into(),
            ));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            out.entries[i * self.cols + i] += factor;
        }
        Ok(out)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op: "max_abs_diff",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Max-norm of `self - self^dagger`; infinite for non-square input.
    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|z| **z != ZERO).count()
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|z| format_complex(*z, 6)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Kronecker product; the left factor indexes the most significant block.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    check_cap(rows, cols)?;
    let mut entries = vec![ZERO; rows * cols];
    for ia in 0..a.rows {
        for ja in 0..a.cols {
            let x = a.get(ia, ja);
            if x == ZERO {
                continue;
            }
            for ib in 0..b.rows {
                let base = (ia * b.rows + ib) * cols + ja * b.cols;
                for (jb, &y) in b.row(ib).iter().enumerate() {
                    entries[base + jb] = x * y;
                }
            }
        }
    }
    Ok(ComplexMatrix {
        rows,
        cols,
        entries,
    })
}

/// Kronecker product of a non-empty list of factors, left to right.
pub fn kron_all<'a, I>(factors: I) -> Result<ComplexMatrix>
where
    I: IntoIterator<Item = &'a ComplexMatrix>,
{
    let mut iter = factors.into_iter();
    let first = iter
        .next()
        .ok_or_else(|| Error::InvalidShape("empty tensor product".into()))?;
    iter.try_fold(first.clone(), |acc, m| kron(&acc, m))
}

/// Matrix product. Zero entries are skipped on both sides, which makes the
/// many diagonal and permutation-like operators in this crate cheap.
pub fn matmul(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            op: "matmul",
            left: a.shape(),
            right: b.shape(),
        });
    }
    let (rows, inner, cols) = (a.rows, a.cols, b.cols);
    let b_nonzero: Vec<Vec<(usize, C64)>> = (0..inner)
        .map(|k| {
            b.row(k)
                .iter()
                .enumerate()
                .filter(|(_, z)| **z != ZERO)
                .map(|(j, z)| (j, *z))
                .collect()
        })
        .collect();
    let mut entries = vec![ZERO; rows * cols];
    for i in 0..rows {
        let out = &mut entries[i * cols..(i + 1) * cols];
        for (k, &x) in a.row(i).iter().enumerate() {
            if x == ZERO {
                continue;
            }
            for &(j, y) in &b_nonzero[k] {
                out[j] += x * y;
            }
        }
    }
    Ok(ComplexMatrix {
        rows,
        cols,
        entries,
    })
}

/// Product of a non-empty chain of matrices, left to right.
pub fn matmul_chain(factors: &[&ComplexMatrix]) -> Result<ComplexMatrix> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidShape("empty product".into()))?;
    rest.iter()
        .try_fold((*first).clone(), |acc, m| matmul(&acc, m))
}

/// `m^exp` by repeated squaring.
pub fn matpow(m: &ComplexMatrix, exp: u64) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::InvalidShape("matpow needs a square matrix".into()));
    }
    let mut result = ComplexMatrix::identity(m.rows);
    let mut base = m.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = matmul(&result, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = matmul(&base, &base)?;
        }
    }
    Ok(result)
}

/// Max-norm of `m^dagger m - I`; infinite for non-square input.
pub fn unitarity_residual(m: &ComplexMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    match matmul(&m.adjoint(), m).and_then(|p| p.add_identity(-ONE)) {
        Ok(diff) => diff.max_abs(),
        Err(_) => f64::INFINITY,
    }
}

pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> bool {
    unitarity_residual(m) <= tol
}

/// Determinant by LU factorization with partial pivoting.
pub fn det(m: &ComplexMatrix) -> Result<C64> {
    if !m.is_square() {
        return Err(Error::InvalidShape("det needs a square matrix".into()));
    }
    let n = m.rows;
    let mut a = m.entries.clone();
    let mut det = ONE;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
            .unwrap_or(col);
        if a[pivot * n + col] == ZERO {
            return Ok(ZERO);
        }
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for r in col + 1..n {
            let factor = a[r * n + col] / p;
            if factor == ZERO {
                continue;
            }
            for j in col..n {
                let v = a[col * n + j];
                a[r * n + j] -= factor * v;
            }
        }
    }
    Ok(det)
}

/// Register of `n` qubits holding `2^n` amplitudes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<C64>,
    normalized: bool,
}

/// Largest register that may be allocated.
pub const MAX_QUBITS: usize = 26;

impl StateVector {
    pub fn new(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: n_qubits,
                cap: MAX_QUBITS,
            });
        }
        if amplitudes.len() != 1usize << n_qubits {
            return Err(Error::InvalidShape(format!(
                "{} amplitudes for {n_qubits} qubits",
                amplitudes.len()
            )));
        }
        check_finite(&amplitudes)?;
        Ok(Self::from_parts(n_qubits, amplitudes))
    }

    /// Infers the qubit count from the amplitude count.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(Error::InvalidShape(format!(
                "{len} amplitudes is not a power of two"
            )));
        }
        Self::new(len.trailing_zeros() as usize, amplitudes)
    }

    pub(crate) fn from_parts(n_qubits: usize, amplitudes: Vec<C64>) -> Self {
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        Self {
            n_qubits,
            amplitudes,
            normalized: (norm_sqr - 1.0).abs() <= TOL_EXACT,
        }
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: n_qubits,
                cap: MAX_QUBITS,
            });
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidShape(format!("basis index {index} >= {dim}")));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self::from_parts(n_qubits, amplitudes))
    }

    /// Uniformly drawn components, normalized.
    pub fn random<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Self {
        let amplitudes: Vec<C64> = (0..1usize << n_qubits)
            .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        Self::from_parts(n_qubits, amplitudes).normalized()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn normalized(&self) -> Self {
        let norm = self.norm();
        if norm == 0.0 {
            return self.clone();
        }
        Self::from_parts(
            self.n_qubits,
            self.amplitudes.iter().map(|z| z / norm).collect(),
        )
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self::from_parts(
            self.n_qubits,
            self.amplitudes.iter().map(|z| z * factor).collect(),
        )
    }

    fn check_same(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.dim(), 1),
                right: (other.dim(), 1),
            });
        }
        Ok(())
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.check_same(other, "inner")?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    /// `|<self|other>|^2 / (|self|^2 |other|^2)`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        let overlap = self.inner(other)?.norm_sqr();
        let denom = self.norm_sqr() * other.norm_sqr();
        Ok(if denom == 0.0 { 0.0 } else { overlap / denom })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same(other, "max_abs_diff")?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        if n > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: n,
                cap: MAX_QUBITS,
            });
        }
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for x in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|y| x * y));
        }
        Ok(Self::from_parts(n, amplitudes))
    }

    /// Applies a 2x2 operator to qubit `qubit` (1-based).
    pub fn apply_single_qubit(&self, qubit: usize, op: &ComplexMatrix) -> Result<Self> {
        if op.shape() != (2, 2) {
            return Err(Error::DimensionMismatch {
                op: "apply_single_qubit",
                left: op.shape(),
                right: (2, 2),
            });
        }
        if qubit == 0 || qubit > self.n_qubits {
            return Err(Error::InvalidSubset(format!(
                "qubit {qubit} of a {}-qubit register",
                self.n_qubits
            )));
        }
        let mask = 1usize << (self.n_qubits - qubit);
        let (m00, m01, m10, m11) = (op.get(0, 0), op.get(0, 1), op.get(1, 0), op.get(1, 1));
        let mut out = self.amplitudes.clone();
        for i0 in (0..self.dim()).filter(|i| i & mask == 0) {
            let i1 = i0 | mask;
            let (x0, x1) = (self.amplitudes[i0], self.amplitudes[i1]);
            out[i0] = m00 * x0 + m01 * x1;
            out[i1] = m10 * x0 + m11 * x1;
        }
        Ok(Self::from_parts(self.n_qubits, out))
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, z) in self.amplitudes.iter().enumerate() {
            if z.norm() <= 1e-15 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(
                f,
                "({})|{:0width$b}>",
                format_complex(*z, 12),
                i,
                width = self.n_qubits.max(1)
            )?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Matrix-vector product.
pub fn apply(m: &ComplexMatrix, v: &StateVector) -> Result<StateVector> {
    if m.cols != v.dim() || m.rows != v.dim() {
        return Err(Error::DimensionMismatch {
            op: "apply",
            left: m.shape(),
            right: (v.dim(), 1),
        });
    }
    let amplitudes = (0..m.rows)
        .map(|i| {
            m.row(i)
                .iter()
                .zip(&v.amplitudes)
                .filter(|(x, _)| **x != ZERO)
                .map(|(x, y)| x * y)
                .sum()
        })
        .collect();
    Ok(StateVector::from_parts(v.n_qubits, amplitudes))
}

/// How much phase freedom a comparison allows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PhaseMode {
    /// One unit scalar for the whole object.
    Global,
    /// An independent unit scalar per column.
    Columnwise,
}

/// Objects that can be compared as matrices column by column.
pub trait PhaseComparable {
    fn shape(&self) -> (usize, usize);
    fn column_vec(&self, j: usize) -> Vec<C64>;
}

impl PhaseComparable for ComplexMatrix {
    fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn column_vec(&self, j: usize) -> Vec<C64> {
        self.column(j)
    }
}

impl PhaseComparable for StateVector {
    fn shape(&self) -> (usize, usize) {
        (self.dim(), 1)
    }

    fn column_vec(&self, _j: usize) -> Vec<C64> {
        self.amplitudes.clone()
    }
}

/// Is there a unit scalar `c` with `u = c v` within `tol`?
fn column_phase_equivalent(u: &[C64], v: &[C64], tol: f64) -> bool {
    let pivot = (0..v.len()).max_by(|&x, &y| v[x].norm().total_cmp(&v[y].norm()));
    let Some(p) = pivot else { return true };
    if v[p].norm() <= tol {
        return u.iter().all(|z| z.norm() <= tol);
    }
    let phase = u[p] / v[p];
    if (phase.norm() - 1.0).abs() > tol {
        return false;
    }
    let phase = phase / phase.norm();
    u.iter().zip(v).all(|(x, y)| (x - phase * y).norm() <= tol)
}

fn vector_phase_equivalent(u: &[C64], v: &[C64], tol: f64) -> bool {
    let nu = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let overlap: C64 = u.iter().zip(v).map(|(x, y)| x.conj() * y).sum();
    (nu - nv).abs() <= tol && (nu * nv - overlap.norm()).abs() <= tol
}

pub fn phase_equivalent<T: PhaseComparable>(
    u: &T,
    v: &T,
    mode: PhaseMode,
    tol: f64,
) -> Result<bool> {
    let (rows, cols) = u.shape();
    if (rows, cols) != v.shape() {
        return Err(Error::DimensionMismatch {
            op: "phase_equivalent",
            left: u.shape(),
            right: v.shape(),
        });
    }
    let ucols: Vec<Vec<C64>> = (0..cols).map(|j| u.column_vec(j)).collect();
    let vcols: Vec<Vec<C64>> = (0..cols).map(|j| v.column_vec(j)).collect();
    Ok(match mode {
        PhaseMode::Columnwise => ucols
            .iter()
            .zip(&vcols)
            .all(|(x, y)| column_phase_equivalent(x, y, tol)),
        PhaseMode::Global if cols == 1 => vector_phase_equivalent(&ucols[0], &vcols[0], tol),
        PhaseMode::Global => {
            let flat_u: Vec<C64> = ucols.concat();
            let flat_v: Vec<C64> = vcols.concat();
            column_phase_equivalent(&flat_u, &flat_v, tol)
        }
    })
}

/// Formats a real number with `digits` significant digits, `%g` style.
pub fn format_real(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let exp = x.abs().log10().floor() as i32;
    if exp < -5 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, x);
        let (mantissa, e) = s.split_once('e').unwrap_or((&s, "0"));
        let mantissa = if mantissa.contains('.') {
            mantissa.trim_end_matches('0').trim_end_matches('.')
        } else {
            mantissa
        };
        format!("{mantissa}e{e}")
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{:.*}", decimals, x);
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

/// Formats as `a+bi` with `digits` significant digits per component.
pub fn format_complex(z: C64, digits: usize) -> String {
    let re = format_real(z.re, digits);
    let im = format_real(z.im.abs(), digits);
    let sign = if z.im.is_sign_negative() && z.im != 0.0 {
        '-'
    } else {
        '+'
    };
    format!("{re}{sign}{im}i")
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

impl TryFrom<MatrixRepr> for ComplexMatrix {
    type Error = Error;

    fn try_from(repr: MatrixRepr) -> Result<Self> {
        let entries = repr.entries.into_iter().map(|[re, im]| c(re, im)).collect();
        ComplexMatrix::new(repr.rows, repr.cols, entries)
    }
}

impl From<ComplexMatrix> for MatrixRepr {
    fn from(m: ComplexMatrix) -> Self {
        MatrixRepr {
            rows: m.rows,
            cols: m.cols,
            entries: m.entries.into_iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    n_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

impl TryFrom<StateRepr> for StateVector {
    type Error = Error;

    fn try_from(repr: StateRepr) -> Result<Self> {
        let amplitudes = repr
            .amplitudes
            .into_iter()
            .map(|[re, im]| c(re, im))
            .collect();
        StateVector::new(repr.n_qubits, amplitudes)
    }
}

impl From<StateVector> for StateRepr {
    fn from(v: StateVector) -> Self {
        StateRepr {
            n_qubits: v.n_qubits,
            amplitudes: v.amplitudes.into_iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

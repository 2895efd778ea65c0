//! Basis states and the braiding operator `B(n,k) = b1 b2` applied in
//! `O(2^n)` without building its matrix.
//!
//! The product of the two Jones generators splits into a part local to qubit
//! `k` and a coupling term:
//!
//! ```text
//! B(n,k) = I.. x diag(d a^2, d b^2 + A^-2) x ..I
//!        + s_1 x .. x [[0, -e^{-i phi} A^4 d a b], [e^{i phi} d a b, 0]] x .. x s_n
//! ```
//!
//! so each basis state is superposed on one partner state obtained by
//! flipping qubit `k` and letting every `s_j` act on its own qubit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    c, kron_all, ComplexMatrix, StateVector, C64, DENSE_DIM_CAP, MAX_QUBITS, ONE, ZERO,
};
use crate::tla::{Involution, InvolutionSpec, RepShape, TLParams};

/// `|a1 ... an>` as a list of bits, qubit 1 first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct BitString {
    bits: Vec<u8>,
}

impl BitString {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() || bits.len() > MAX_QUBITS || bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidBitString(format!("{bits:?}")));
        }
        Ok(Self { bits })
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(vec![0; n])
    }

    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS || index >> n != 0 {
            return Err(Error::InvalidBitString(format!(
                "index {index} on {n} qubits"
            )));
        }
        Ok(Self {
            bits: (1..=n).map(|j| ((index >> (n - j)) & 1) as u8).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Amplitude index; qubit 1 is the most significant bit.
    pub fn index(&self) -> usize {
        self.bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .trim()
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidBitString(s.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(bits).map_err(|_| Error::InvalidBitString(s.to_string()))
    }
}

impl TryFrom<String> for BitString {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<BitString> for String {
    fn from(b: BitString) -> String {
        b.to_string()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

pub fn basis_state(bits: &BitString) -> StateVector {
    StateVector::basis(bits.len(), bits.index()).expect("bit string length is capped")
}

/// Flips every bit.
pub fn conjugate(bits: &BitString) -> BitString {
    BitString {
        bits: bits.bits.iter().map(|b| 1 - b).collect(),
    }
}

/// `B(n,k)` in its two-term form.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuredB {
    shape: RepShape,
    params: TLParams,
    spec: InvolutionSpec,
    /// `(d a^2, d b^2 + A^-2)`
    diag: [C64; 2],
    /// `(B_01, B_10) = (-e^{-i phi} A^4 d a b, e^{i phi} d a b)`
    offdiag: [C64; 2],
}

pub fn build_structured_b(
    shape: RepShape,
    params: &TLParams,
    spec: &InvolutionSpec,
) -> Result<StructuredB> {
    if spec.slots().len() != shape.n() - 1 {
        return Err(Error::InvalidShape(
            "involution count does not match n - 1".into(),
        ));
    }
    let a = params.a_coef();
    let d = params.d();
    let (aa, bb) = (params.a(), params.b());
    let dab = d * aa * bb;
    let diag = [c(d * aa * aa, 0.0), c(d * bb * bb, 0.0) + (a * a).inv()];
    let offdiag = [
        -C64::from_polar(1.0, -params.phi()) * a.powu(4) * dab,
        C64::from_polar(dab, params.phi()),
    ];
    Ok(StructuredB {
        shape,
        params: *params,
        spec: spec.clone(),
        diag,
        offdiag,
    })
}

/// `B(n,k)` with `s_j = I` for `j < k` and `sigma_1` for `j > k`.
pub fn standard_b(n: usize, k: usize, params: &TLParams) -> Result<StructuredB> {
    let shape = RepShape::new(n, k)?;
    build_structured_b(shape, params, &InvolutionSpec::standard(shape))
}

impl StructuredB {
    pub fn shape(&self) -> RepShape {
        self.shape
    }

    pub fn params(&self) -> &TLParams {
        &self.params
    }

    pub fn spec(&self) -> &InvolutionSpec {
        &self.spec
    }

    pub fn diag_block(&self) -> [C64; 2] {
        self.diag
    }

    pub fn offdiag_block(&self) -> [C64; 2] {
        self.offdiag
    }

    /// `|d a^2|^2 + |d a b|^2 - 1` and `|d b^2 + A^-2|^2 + |A^4 d a b|^2 - 1`.
    /// Both vanish since each basis state maps to a unit vector.
    pub fn normalization_residuals(&self) -> [f64; 2] {
        [
            (self.diag[0].norm_sqr() + self.offdiag[1].norm_sqr() - 1.0).abs(),
            (self.diag[1].norm_sqr() + self.offdiag[0].norm_sqr() - 1.0).abs(),
        ]
    }

    fn blocks(&self, inverse: bool) -> ([C64; 2], [C64; 2]) {
        if inverse {
            (
                [self.diag[0].conj(), self.diag[1].conj()],
                [self.offdiag[1].conj(), self.offdiag[0].conj()],
            )
        } else {
            (self.diag, self.offdiag)
        }
    }

    /// Dense matrix assembled from the two-term form.
    pub fn dense(&self, inverse: bool) -> Result<ComplexMatrix> {
        if self.shape.dim() > DENSE_DIM_CAP {
            return Err(Error::Capacity {
                requested: self.shape.dim(),
                cap: DENSE_DIM_CAP,
            });
        }
        let (diag, off) = self.blocks(inverse);
        let (n, k) = (self.shape.n(), self.shape.k());
        let left = ComplexMatrix::identity(1 << (k - 1));
        let right = ComplexMatrix::identity(1 << (n - k));
        let local = kron_all([&left, &ComplexMatrix::diagonal(&diag)?, &right])?;
        let mut factors: Vec<ComplexMatrix> =
            self.spec.slots().iter().map(Involution::matrix).collect();
        factors.insert(
            k - 1,
            ComplexMatrix::from_rows(&[[ZERO, off[0]], [off[1], ZERO]])?,
        );
        local.add(&kron_all(factors.iter())?)
    }

    /// Applies `B(n,k)`, or its adjoint `B^-1` when `inverse` is set.
    pub fn apply(&self, v: &StateVector, inverse: bool) -> Result<StateVector> {
        if v.n_qubits() != self.shape.n() {
            return Err(Error::DimensionMismatch {
                op: "apply_structured",
                left: (self.shape.dim(), self.shape.dim()),
                right: (v.dim(), 1),
            });
        }
        let monomials: Option<Vec<(usize, bool, [C64; 2])>> = self
            .spec
            .positioned(self.shape)
            .map(|(j, s)| s.monomial().map(|(flip, coef)| (j, flip, coef)))
            .collect();
        Ok(match monomials {
            Some(slots) => self.apply_monomial(v, inverse, &slots),
            None => self.apply_general(v, inverse)?,
        })
    }

    /// Every `s_j` permutes basis states up to a phase, so the coupling term
    /// is a single gather `out[x] += coef(y) v[y]` with `y = x xor mask`.
    fn apply_monomial(
        &self,
        v: &StateVector,
        inverse: bool,
        slots: &[(usize, bool, [C64; 2])],
    ) -> StateVector {
        let n = self.shape.n();
        let kbit = 1usize << (n - self.shape.k());
        let (diag, off) = self.blocks(inverse);
        // O|0> = off[1]|1>, O|1> = off[0]|0>
        let from_bit = [off[1], off[0]];

        let mut mask = kbit;
        // (bit value, c0, c1/c0) per amplitude bit position; position k stays neutral.
        let mut base = ONE;
        let mut ratio = vec![ONE; n];
        for &(j, flip, coef) in slots {
            let pos = n - j;
            if flip {
                mask |= 1 << pos;
            }
            base *= coef[0];
            ratio[pos] = coef[1] / coef[0];
        }
        let low_bits = n / 2;
        let phase_table = |offset: usize, width: usize| -> Vec<C64> {
            let mut table = vec![ONE; 1 << width];
            for t in 1..table.len() {
                let p = t.trailing_zeros() as usize;
                table[t] = table[t & (t - 1)] * ratio[offset + p];
            }
            table
        };
        let low = phase_table(0, low_bits);
        let high = phase_table(low_bits, n - low_bits);
        let low_mask = (1usize << low_bits) - 1;

        let amps = v.amplitudes();
        let out: Vec<C64> = (0..amps.len())
            .map(|x| {
                let y = x ^ mask;
                let kx = usize::from(x & kbit != 0);
                let ky = 1 - kx;
                let phase = base * low[y & low_mask] * high[y >> low_bits];
                diag[kx] * amps[x] + from_bit[ky] * phase * amps[y]
            })
            .collect();
        StateVector::from_parts(n, out)
    }

    /// Generic involutions: apply each `s_j` and the off-diagonal block qubit by qubit.
    fn apply_general(&self, v: &StateVector, inverse: bool) -> Result<StateVector> {
        let n = self.shape.n();
        let k = self.shape.k();
        let (diag, off) = self.blocks(inverse);
        let mut coupled = v.clone();
        for (j, s) in self.spec.positioned(self.shape) {
            if !s.is_identity() {
                coupled = coupled.apply_single_qubit(j, &s.matrix())?;
            }
        }
        coupled = coupled.apply_single_qubit(
            k,
            &ComplexMatrix::from_rows(&[[ZERO, off[0]], [off[1], ZERO]])?,
        )?;
        let kbit = 1usize << (n - k);
        let out: Vec<C64> = v
            .amplitudes()
            .iter()
            .zip(coupled.amplitudes())
            .enumerate()
            .map(|(x, (&a, &b))| diag[usize::from(x & kbit != 0)] * a + b)
            .collect();
        Ok(StateVector::from_parts(n, out))
    }
}

pub fn apply_structured(bop: &StructuredB, v: &StateVector, inverse: bool) -> Result<StateVector> {
    bop.apply(v, inverse)
}

/// `B(n,1)|0...0>` or, with `use_inverse`, `B^-1(n,1)|0...0>`.
pub fn ghz_state(n: usize, params: &TLParams, use_inverse: bool) -> Result<StateVector> {
    let bop = standard_b(n, 1, params)?;
    bop.apply(&basis_state(&BitString::zeros(n)?), use_inverse)
}

/// `B(n,k) B^-1(n,1)|0...0>`.
pub fn cluster_like_state(n: usize, k: usize, params: &TLParams) -> Result<StateVector> {
    let ghz = ghz_state(n, params, true)?;
    standard_b(n, k, params)?.apply(&ghz, false)
}

/// `B(n,k) B^-1(n,1)` applied to each of the `2^n` basis states, in index order.
pub fn cluster_family(n: usize, k: usize, params: &TLParams) -> Result<Vec<StateVector>> {
    let cap = DENSE_DIM_CAP.trailing_zeros() as usize;
    if n > cap {
        return Err(Error::Capacity { requested: n, cap });
    }
    let first = standard_b(n, 1, params)?;
    let second = standard_b(n, k, params)?;
    (0..1usize << n)
        .map(|idx| {
            let v = StateVector::basis(n, idx)?;
            second.apply(&first.apply(&v, true)?, false)
        })
        .collect()
}

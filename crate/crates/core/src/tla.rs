//! Temperley-Lieb parameters and the projector realizations `E1`, `E2` on
//! `n` qubits.
//!
//! With `A = e^{i theta}` and `d = -A^2 - A^-2 = -2 cos 2theta`, the matrices
//! `h_i = d E_i` generate `TL_3(d)` whenever `E1`, `E2` are projectors with
//! `E1 E2 E1 = a^2 E1`, `E2 E1 E2 = a^2 E2` and `a^2 = d^-2`. Hermiticity of
//! the `h_i` needs `b^2 = 1 - d^-2 >= 0`, which confines `theta` (mod `pi`)
//! to within `pi/6` of `0` or of `pi/2`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    c, kron_all, matmul, matmul_chain, ComplexMatrix, C64, DENSE_DIM_CAP, I, ONE, ZERO,
};
use crate::report::RelationReport;

/// Default deformation angle, `pi/8`, where `d = -sqrt 2`.
pub const DEFAULT_THETA: f64 = PI / 8.0;

/// Slack allowed on `d^2 >= 1` so that the boundary `theta = pi/6` survives rounding.
const DOMAIN_SLACK: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[default]
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "+1" | "1" => Ok(Sign::Plus),
            "-" | "-1" => Ok(Sign::Minus),
            other => Err(Error::InvalidShape(format!("sign {other:?}"))),
        }
    }
}

/// Scalar parameters of the representation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TLParams {
    theta: f64,
    phi: f64,
    #[serde(skip)]
    a_coef: C64,
    d: f64,
    a: f64,
    b: f64,
    a_sign: Sign,
    b_sign: Sign,
}

/// Builds the parameter bundle, rejecting `theta` outside the hermiticity domain.
pub fn tl_params(theta: f64, phi: f64, a_sign: Sign, b_sign: Sign) -> Result<TLParams> {
    if !theta.is_finite() || !phi.is_finite() {
        return Err(Error::NonFinite(0));
    }
    let d = -2.0 * (2.0 * theta).cos();
    if d * d < 1.0 - DOMAIN_SLACK {
        return Err(Error::Domain { theta, d });
    }
    let inv_d2 = 1.0 / (d * d);
    let a = a_sign.value() * inv_d2.sqrt();
    let b = b_sign.value() * (1.0 - inv_d2).max(0.0).sqrt();
    Ok(TLParams {
        theta,
        phi,
        a_coef: C64::from_polar(1.0, theta),
        d,
        a,
        b,
        a_sign,
        b_sign,
    })
}

impl TLParams {
    /// Positive signs for `a` and `b`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        tl_params(theta, phi, Sign::Plus, Sign::Plus)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `A = e^{i theta}`.
    pub fn a_coef(&self) -> C64 {
        self.a_coef
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn a_sign(&self) -> Sign {
        self.a_sign
    }

    pub fn b_sign(&self) -> Sign {
        self.b_sign
    }

    pub fn with_phi(&self, phi: f64) -> Self {
        Self { phi, ..*self }
    }
}

impl Default for TLParams {
    fn default() -> Self {
        Self::new(DEFAULT_THETA, 0.0).expect("pi/8 is admissible")
    }
}

/// A Hermitian 2x2 operator squaring to the identity.
#[derive(Clone, Debug, PartialEq)]
pub enum Involution {
    Identity,
    PauliX,
    PauliY,
    PauliZ,
    Hadamard,
    Custom(ComplexMatrix),
}

const INVOLUTION_TOL: f64 = 1e-14;

impl Involution {
    pub fn custom(m: ComplexMatrix) -> Result<Self> {
        if m.shape() != (2, 2) {
            return Err(Error::InvalidInvolution(format!("shape {:?}", m.shape())));
        }
        let herm = m.hermiticity_residual();
        if herm > INVOLUTION_TOL {
            return Err(Error::InvalidInvolution(format!(
                "not Hermitian (residual {herm:e})"
            )));
        }
        let sq = matmul(&m, &m)?.max_abs_diff(&ComplexMatrix::identity(2))?;
        if sq > INVOLUTION_TOL {
            return Err(Error::InvalidInvolution(format!(
                "s^2 != I (residual {sq:e})"
            )));
        }
        Ok(Involution::Custom(m))
    }

    pub fn matrix(&self) -> ComplexMatrix {
        let h = c(FRAC_1_SQRT_2, 0.0);
        let rows: [[C64; 2]; 2] = match self {
            Involution::Identity => [[ONE, ZERO], [ZERO, ONE]],
            Involution::PauliX => [[ZERO, ONE], [ONE, ZERO]],
            Involution::PauliY => [[ZERO, -I], [I, ZERO]],
            Involution::PauliZ => [[ONE, ZERO], [ZERO, -ONE]],
            Involution::Hadamard => [[h, h], [h, -h]],
            Involution::Custom(m) => return m.clone(),
        };
        ComplexMatrix::from_rows(&rows).expect("2x2 constant")
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Involution::Identity => true,
            Involution::Custom(m) => *m == ComplexMatrix::identity(2),
            _ => false,
        }
    }

    /// For operators with one nonzero per column: `(flip, [c0, c1])` with
    /// `s|x> = c_x |x xor flip>`.
    pub fn monomial(&self) -> Option<(bool, [C64; 2])> {
        let m = self.matrix();
        let (m00, m01, m10, m11) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
        if m01 == ZERO && m10 == ZERO {
            Some((false, [m00, m11]))
        } else if m00 == ZERO && m11 == ZERO {
            Some((true, [m10, m01]))
        } else {
            None
        }
    }

    pub fn label(&self) -> String {
        match self {
            Involution::Identity => "I".into(),
            Involution::PauliX => "X".into(),
            Involution::PauliY => "Y".into(),
            Involution::PauliZ => "Z".into(),
            Involution::Hadamard => "H".into(),
            Involution::Custom(_) => "custom".into(),
        }
    }

    /// The five named involutions used by the verification grids.
    pub fn named() -> [Involution; 5] {
        [
            Involution::Identity,
            Involution::PauliX,
            Involution::PauliY,
            Involution::PauliZ,
            Involution::Hadamard,
        ]
    }
}

impl FromStr for Involution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" | "1" | "id" => Ok(Involution::Identity),
            "X" | "x" | "sigma1" => Ok(Involution::PauliX),
            "Y" | "y" | "sigma2" => Ok(Involution::PauliY),
            "Z" | "z" | "sigma3" => Ok(Involution::PauliZ),
            "H" | "h" => Ok(Involution::Hadamard),
            other => Err(Error::InvalidInvolution(format!("unknown name {other:?}"))),
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Qubit count `n` and the slot `k` carrying `e1, e2, e3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepShape {
    n: usize,
    k: usize,
}

impl RepShape {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 || k > n {
            return Err(Error::InvalidShape(format!(
                "need 1 <= k <= n, got n={n}, k={k}"
            )));
        }
        Ok(Self { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }
}

/// Involutions for every position except `k`, ordered by position.
#[derive(Clone, Debug, PartialEq)]
pub struct InvolutionSpec {
    slots: Vec<Involution>,
}

impl InvolutionSpec {
    pub fn new(shape: RepShape, slots: Vec<Involution>) -> Result<Self> {
        if slots.len() != shape.n - 1 {
            return Err(Error::InvalidShape(format!(
                "{} involutions for n={} (need n-1)",
                slots.len(),
                shape.n
            )));
        }
        Ok(Self { slots })
    }

    /// `I` below `k`, `sigma_1` above `k`.
    pub fn standard(shape: RepShape) -> Self {
        let slots = (1..=shape.n)
            .filter(|&j| j != shape.k)
            .map(|j| {
                if j < shape.k {
                    Involution::Identity
                } else {
                    Involution::PauliX
                }
            })
            .collect();
        Self { slots }
    }

    pub fn uniform(shape: RepShape, s: Involution) -> Self {
        Self {
            slots: vec![s; shape.n - 1],
        }
    }

    pub fn slots(&self) -> &[Involution] {
        &self.slots
    }

    /// `(position, involution)` pairs for positions `1..=n` except `k`.
    pub fn positioned(&self, shape: RepShape) -> impl Iterator<Item = (usize, &Involution)> + '_ {
        let k = shape.k;
        self.slots
            .iter()
            .enumerate()
            .map(move |(idx, s)| (if idx + 1 < k { idx + 1 } else { idx + 2 }, s))
    }

    pub fn all_identity(&self) -> bool {
        self.slots.iter().all(Involution::is_identity)
    }

    /// Per-slot involution list, e.g. `"I,X,X"`; `n - 1` names, or `n`
    /// names with `"-"` at position `k`.
    pub fn parse(shape: RepShape, text: &str) -> Result<Self> {
        let names: Vec<&str> = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let names: Vec<&str> = if names.len() == shape.n {
            if !matches!(names[shape.k - 1], "-" | "_" | "e") {
                return Err(Error::InvalidShape(format!(
                    "slot {} is the e-slot; write '-' there or list n-1 names",
                    shape.k
                )));
            }
            names
                .iter()
                .enumerate()
                .filter(|(i, _)| i + 1 != shape.k)
                .map(|(_, s)| *s)
                .collect()
        } else {
            names
        };
        let slots = names
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<_>>>()?;
        Self::new(shape, slots)
    }

    pub fn render(&self) -> String {
        self.slots
            .iter()
            .map(Involution::label)
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// The single-qubit building blocks `e1`, `e2`, `e3`.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseE {
    pub e1: ComplexMatrix,
    pub e2: ComplexMatrix,
    pub e3: ComplexMatrix,
}

pub fn base_e_matrices(p: &TLParams) -> BaseE {
    let (a2, b2) = (p.a * p.a, p.b * p.b);
    let e1 = ComplexMatrix::diagonal(&[ONE, ZERO]).expect("finite");
    let e2 = ComplexMatrix::diagonal(&[c(a2, 0.0), c(b2, 0.0)]).expect("finite");
    let e3 = ComplexMatrix::from_rows(&[
        [ZERO, C64::from_polar(1.0, -p.phi)],
        [C64::from_polar(1.0, p.phi), ZERO],
    ])
    .expect("finite");
    BaseE { e1, e2, e3 }
}

/// The projector pair `(E1, E2)` on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct EPair {
    pub e1: ComplexMatrix,
    pub e2: ComplexMatrix,
}

/// `I^(k-1) x m x I^(n-k)`.
fn embed_local(shape: RepShape, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let left = ComplexMatrix::identity(1 << (shape.k - 1));
    let right = ComplexMatrix::identity(1 << (shape.n - shape.k));
    kron_all([&left, m, &right])
}

pub fn build_e(shape: RepShape, p: &TLParams, s: &InvolutionSpec) -> Result<EPair> {
    if shape.dim() > DENSE_DIM_CAP {
        return Err(Error::Capacity {
            requested: shape.dim(),
            cap: DENSE_DIM_CAP,
        });
    }
    if s.slots.len() != shape.n - 1 {
        return Err(Error::InvalidShape(
            "involution count does not match n - 1".into(),
        ));
    }
    let base = base_e_matrices(p);
    let e1 = embed_local(shape, &base.e1)?;
    let local = embed_local(shape, &base.e2)?;

    let mut factors: Vec<ComplexMatrix> = s.slots.iter().map(Involution::matrix).collect();
    factors.insert(shape.k - 1, base.e3.clone());
    let coupling = kron_all(factors.iter())?.scale(c(p.a * p.b, 0.0));
    let e2 = local.add(&coupling)?;
    Ok(EPair { e1, e2 })
}

/// Residuals of the projector relations and of the `TL_3(d)` relations for `h_i = d E_i`.
pub fn check_tl_relations(
    e1: &ComplexMatrix,
    e2: &ComplexMatrix,
    p: &TLParams,
    tol: f64,
) -> Result<RelationReport> {
    if e1.shape() != e2.shape() || !e1.is_square() {
        return Err(Error::DimensionMismatch {
            op: "check_tl_relations",
            left: e1.shape(),
            right: e2.shape(),
        });
    }
    let a2 = c(p.a * p.a, 0.0);
    let d = c(p.d, 0.0);
    let mut report = RelationReport::new();

    report.record("E1^2 = E1", matmul(e1, e1)?.max_abs_diff(e1)?, tol);
    report.record("E2^2 = E2", matmul(e2, e2)?.max_abs_diff(e2)?, tol);
    report.record(
        "E1 E2 E1 = a^2 E1",
        matmul_chain(&[e1, e2, e1])?.max_abs_diff(&e1.scale(a2))?,
        tol,
    );
    report.record(
        "E2 E1 E2 = a^2 E2",
        matmul_chain(&[e2, e1, e2])?.max_abs_diff(&e2.scale(a2))?,
        tol,
    );

    let h1 = e1.scale(d);
    let h2 = e2.scale(d);
    report.record(
        "h1^2 = d h1",
        matmul(&h1, &h1)?.max_abs_diff(&h1.scale(d))?,
        tol,
    );
    report.record(
        "h2^2 = d h2",
        matmul(&h2, &h2)?.max_abs_diff(&h2.scale(d))?,
        tol,
    );
    report.record(
        "h1 h2 h1 = h1",
        matmul_chain(&[&h1, &h2, &h1])?.max_abs_diff(&h1)?,
        tol,
    );
    report.record(
        "h2 h1 h2 = h2",
        matmul_chain(&[&h2, &h1, &h2])?.max_abs_diff(&h2)?,
        tol,
    );
    report.record("h1 Hermitian", h1.hermiticity_residual(), tol);
    report.record("h2 Hermitian", h2.hermiticity_residual(), tol);
    Ok(report)
}

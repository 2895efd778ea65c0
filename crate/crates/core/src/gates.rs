//! Named gate constants and the CNOT decomposition through `B(2,1)`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::braidrep::bell_representation;
use crate::error::{Error, Result};
use crate::linalg::{
    apply, c, kron, kron_all, matmul_chain, ComplexMatrix, StateVector, C64, I, ONE, ZERO,
};
use crate::report::RelationReport;
use crate::states::standard_b;
use crate::tla::TLParams;

/// The decomposition is exact, so only rounding is tolerated.
pub const CNOT_TOL: f64 = 1e-12;

fn scaled(rows: [[C64; 2]; 2], factor: f64) -> ComplexMatrix {
    ComplexMatrix::from_rows(&rows)
        .expect("constant")
        .scale(c(factor, 0.0))
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateSet {
    pub h: ComplexMatrix,
    pub sigma1: ComplexMatrix,
    pub sigma2: ComplexMatrix,
    pub sigma3: ComplexMatrix,
    /// Control on qubit 1, target on qubit 2.
    pub cnot: ComplexMatrix,
    pub alpha: ComplexMatrix,
    pub beta: ComplexMatrix,
    pub gamma: ComplexMatrix,
    pub delta: ComplexMatrix,
}

impl GateSet {
    pub fn standard() -> Self {
        let s = FRAC_1_SQRT_2;
        let (o, l) = (ZERO, ONE);
        Self {
            h: scaled([[l, l], [l, -l]], s),
            sigma1: scaled([[o, l], [l, o]], 1.0),
            sigma2: scaled([[o, -I], [I, o]], 1.0),
            sigma3: scaled([[l, o], [o, -l]], 1.0),
            cnot: ComplexMatrix::from_rows(&[
                [l, o, o, o],
                [o, l, o, o],
                [o, o, o, l],
                [o, o, l, o],
            ])
            .expect("constant"),
            alpha: scaled([[l, I], [l, -I]], s),
            beta: scaled([[l, -I], [I, -l]], s),
            gamma: scaled([[-l, I], [l, I]], s),
            delta: scaled([[l, o], [o, -l]], 1.0),
        }
    }
}

/// Looks up a gate by name (case-insensitive).
pub fn gate(name: &str) -> Result<ComplexMatrix> {
    let g = GateSet::standard();
    Ok(match name.to_ascii_lowercase().as_str() {
        "i" | "id" => ComplexMatrix::identity(2),
        "h" | "hadamard" => g.h,
        "x" | "sigma1" => g.sigma1,
        "y" | "sigma2" => g.sigma2,
        "z" | "sigma3" => g.sigma3,
        "cnot" | "cx" => g.cnot,
        "alpha" => g.alpha,
        "beta" => g.beta,
        "gamma" => g.gamma,
        "delta" => g.delta,
        "r" | "bell" => crate::braidrep::bell_matrix(),
        _ => return Err(Error::UnknownGate(name.to_string())),
    })
}

/// Max-norm of `CNOT - (alpha x beta) B (gamma x delta)`.
pub fn cnot_decomposition_residual(
    alpha: &ComplexMatrix,
    beta: &ComplexMatrix,
    b21: &ComplexMatrix,
    gamma: &ComplexMatrix,
    delta: &ComplexMatrix,
) -> Result<f64> {
    let product = matmul_chain(&[&kron(alpha, beta)?, b21, &kron(gamma, delta)?])?;
    product.max_abs_diff(&GateSet::standard().cnot)
}

pub fn verify_cnot_decomposition(params: &TLParams) -> Result<RelationReport> {
    let g = GateSet::standard();
    let b21 = standard_b(2, 1, params)?.dense(false)?;
    let residual = cnot_decomposition_residual(&g.alpha, &g.beta, &b21, &g.gamma, &g.delta)?;
    let mut report = RelationReport::new();
    report.record(
        "CNOT = (alpha x beta) B(2,1) (gamma x delta)",
        residual,
        CNOT_TOL,
    );
    Ok(report)
}

/// `(|0...0> + |1...1>)/sqrt 2`.
pub fn ghz_reference(n: usize) -> Result<StateVector> {
    let mut amps = vec![ZERO; 1 << n];
    amps[0] = c(FRAC_1_SQRT_2, 0.0);
    amps[(1 << n) - 1] = c(FRAC_1_SQRT_2, 0.0);
    StateVector::new(n, amps)
}

/// `b1 b2 |000>` in the Bell representation.
pub fn bell_psi() -> Result<StateVector> {
    let rep = bell_representation(3)?;
    let b1b2 = matmul_chain(&[&rep.generators()[0], &rep.generators()[1]])?;
    apply(&b1b2, &StateVector::basis(3, 0)?)
}

/// Max-norm of `b1 b2|000> - (H x H x H) target`.
pub fn psi_ghz_residual(target: &StateVector) -> Result<f64> {
    let h = GateSet::standard().h;
    let hhh = kron_all([&h, &h, &h])?;
    bell_psi()?.max_abs_diff(&apply(&hhh, target)?)
}

pub fn verify_psi_ghz_relation() -> Result<RelationReport> {
    let mut report = RelationReport::new();
    report.record(
        "b1 b2|000> = (H x H x H)|GHZ>",
        psi_ghz_residual(&ghz_reference(3)?)?,
        CNOT_TOL,
    );
    Ok(report)
}

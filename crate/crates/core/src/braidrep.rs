//! Unitary braid group representations and checks of the braid relations,
//! the Yang-Baxter equation and the finite-order identities of generators.

use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    c, det, kron_all, matmul, matmul_chain, matpow, unitarity_residual, ComplexMatrix, C64,
    DENSE_DIM_CAP, ONE, ZERO,
};
use crate::report::RelationReport;
use crate::tla::{build_e, InvolutionSpec, RepShape, TLParams};

/// Generators and inverses must reproduce the identity this closely.
pub const GENERATOR_TOL: f64 = 1e-12;

/// Largest order searched when testing whether `A` is a root of unity.
pub const MAX_ROOT_ORDER: u32 = 1024;
const ROOT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    JonesTL,
    BellTensor,
}

#[derive(Clone, Debug, PartialEq)]
pub enum RepContext {
    Jones {
        params: TLParams,
        shape: RepShape,
        spec: InvolutionSpec,
    },
    Bell {
        qubits: usize,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct BraidRepresentation {
    strands: usize,
    generators: Vec<ComplexMatrix>,
    inverses: Vec<ComplexMatrix>,
    context: RepContext,
}

impl BraidRepresentation {
    fn validated(
        strands: usize,
        generators: Vec<ComplexMatrix>,
        inverses: Vec<ComplexMatrix>,
        context: RepContext,
    ) -> Result<Self> {
        for (g, inv) in generators.iter().zip(&inverses) {
            let residual = unitarity_residual(g);
            if residual > GENERATOR_TOL {
                return Err(Error::NotUnitary { residual });
            }
            let id = ComplexMatrix::identity(g.rows());
            let residual = matmul(g, inv)?.max_abs_diff(&id)?;
            if residual > GENERATOR_TOL {
                return Err(Error::NotUnitary { residual });
            }
        }
        Ok(Self {
            strands,
            generators,
            inverses,
            context,
        })
    }

    pub fn family(&self) -> Family {
        match self.context {
            RepContext::Jones { .. } => Family::JonesTL,
            RepContext::Bell { .. } => Family::BellTensor,
        }
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// Dimension of the matrices.
    pub fn dim(&self) -> usize {
        self.generators[0].rows()
    }

    pub fn qubits(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn context(&self) -> &RepContext {
        &self.context
    }

    pub fn generators(&self) -> &[ComplexMatrix] {
        &self.generators
    }

    pub fn inverses(&self) -> &[ComplexMatrix] {
        &self.inverses
    }

    /// `b_i` for 1-based `i`.
    pub fn generator(&self, i: usize) -> Option<&ComplexMatrix> {
        i.checked_sub(1).and_then(|idx| self.generators.get(idx))
    }

    pub fn inverse(&self, i: usize) -> Option<&ComplexMatrix> {
        i.checked_sub(1).and_then(|idx| self.inverses.get(idx))
    }
}

/// `b_i = A h_i + A^-1 I` and `b_i^-1 = A^-1 h_i + A I` with `h_i = d E_i` on three strands.
pub fn jones_representation(
    p: &TLParams,
    shape: RepShape,
    s: &InvolutionSpec,
) -> Result<BraidRepresentation> {
    let pair = build_e(shape, p, s)?;
    let a = p.a_coef();
    let a_inv = a.inv();
    let d = c(p.d(), 0.0);
    let mut generators = Vec::with_capacity(2);
    let mut inverses = Vec::with_capacity(2);
    for e in [&pair.e1, &pair.e2] {
        let h = e.scale(d);
        generators.push(h.scale(a).add_identity(a_inv)?);
        inverses.push(h.scale(a_inv).add_identity(a)?);
    }
    BraidRepresentation::validated(
        3,
        generators,
        inverses,
        RepContext::Jones {
            params: *p,
            shape,
            spec: s.clone(),
        },
    )
}

/// The 4x4 Bell matrix, a unitary solution of the Yang-Baxter equation.
pub fn bell_matrix() -> ComplexMatrix {
    let s = c(FRAC_1_SQRT_2, 0.0);
    let (p, m, o) = (s, -s, ZERO);
    ComplexMatrix::from_rows(&[[p, o, o, m], [o, p, m, o], [o, p, p, o], [p, o, o, p]])
        .expect("constant")
}

/// `b_i = I^(i-1) x R x I^(m-i-1)` on `m` qubits.
pub fn bell_representation(m: usize) -> Result<BraidRepresentation> {
    if m < 2 {
        return Err(Error::InvalidShape(format!(
            "Bell representation needs m >= 2, got {m}"
        )));
    }
    let cap = DENSE_DIM_CAP.trailing_zeros() as usize;
    if m > cap {
        return Err(Error::Capacity {
            requested: 1 << m.min(usize::BITS as usize - 1),
            cap: DENSE_DIM_CAP,
        });
    }
    let r = bell_matrix();
    let r_inv = r.adjoint();
    let mut generators = Vec::with_capacity(m - 1);
    let mut inverses = Vec::with_capacity(m - 1);
    for i in 1..m {
        let left = ComplexMatrix::identity(1 << (i - 1));
        let right = ComplexMatrix::identity(1 << (m - i - 1));
        generators.push(kron_all([&left, &r, &right])?);
        inverses.push(kron_all([&left, &r_inv, &right])?);
    }
    BraidRepresentation::validated(m, generators, inverses, RepContext::Bell { qubits: m })
}

/// Far-commutation for `|i - j| > 1` and `b_i b_{i+1} b_i = b_{i+1} b_i b_{i+1}`.
pub fn check_braid_relations(rep: &BraidRepresentation, tol: f64) -> Result<RelationReport> {
    let gens = rep.generators();
    let mut report = RelationReport::new();
    for i in 0..gens.len() {
        for j in i + 2..gens.len() {
            let lhs = matmul(&gens[i], &gens[j])?;
            let rhs = matmul(&gens[j], &gens[i])?;
            report.record(
                format!("b{} b{} = b{} b{}", i + 1, j + 1, j + 1, i + 1),
                lhs.max_abs_diff(&rhs)?,
                tol,
            );
        }
    }
    for i in 0..gens.len().saturating_sub(1) {
        let (x, y) = (&gens[i], &gens[i + 1]);
        let lhs = matmul_chain(&[x, y, x])?;
        let rhs = matmul_chain(&[y, x, y])?;
        report.record(
            format!("b{0} b{1} b{0} = b{1} b{0} b{1}", i + 1, i + 2),
            lhs.max_abs_diff(&rhs)?,
            tol,
        );
    }
    Ok(report)
}

/// Unitarity of every generator and `b_i b_i^-1 = I`.
pub fn check_unitarity(rep: &BraidRepresentation, tol: f64) -> Result<RelationReport> {
    let mut report = RelationReport::new();
    for (idx, (g, inv)) in rep.generators().iter().zip(rep.inverses()).enumerate() {
        let i = idx + 1;
        report.record(format!("b{i} unitary"), unitarity_residual(g), tol);
        let id = ComplexMatrix::identity(g.rows());
        report.record(
            format!("b{i} b{i}^-1 = I"),
            matmul(g, inv)?.max_abs_diff(&id)?,
            tol,
        );
        report.record(format!("|det b{i}| = 1"), (det(g)?.norm() - 1.0).abs(), tol);
    }
    Ok(report)
}

/// Residual of `(R x I)(I x R)(R x I) = (I x R)(R x I)(I x R)`.
pub fn check_ybe(r: &ComplexMatrix, tol: f64) -> Result<RelationReport> {
    if r.shape() != (4, 4) {
        return Err(Error::DimensionMismatch {
            op: "check_ybe",
            left: r.shape(),
            right: (4, 4),
        });
    }
    let id = ComplexMatrix::identity(2);
    let r_left = kron_all([r, &id])?;
    let r_right = kron_all([&id, r])?;
    let lhs = matmul_chain(&[&r_left, &r_right, &r_left])?;
    let rhs = matmul_chain(&[&r_right, &r_left, &r_right])?;
    let mut report = RelationReport::new();
    report.record(
        "(R x I)(I x R)(R x I) = (I x R)(R x I)(I x R)",
        lhs.max_abs_diff(&rhs)?,
        tol,
    );
    Ok(report)
}

/// Least `m` in `1..=MAX_ROOT_ORDER` with `|z^m - 1| <= 1e-9`.
pub fn root_of_unity_order(z: C64) -> Option<u32> {
    let mut power = ONE;
    for m in 1..=MAX_ROOT_ORDER {
        power *= z;
        if (power - ONE).norm() <= ROOT_TOL {
            return Some(m);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PowerIdentity {
    Applicable {
        /// Least `m` with `A^m = 1` (Jones), or 8 for the Bell family.
        order: u32,
        report: RelationReport,
    },
    NotApplicable {
        reason: String,
    },
}

impl PowerIdentity {
    pub fn pass(&self) -> bool {
        matches!(self, PowerIdentity::Applicable { report, .. } if report.pass)
    }

    pub fn report(&self) -> Option<&RelationReport> {
        match self {
            PowerIdentity::Applicable { report, .. } => Some(report),
            PowerIdentity::NotApplicable { .. } => None,
        }
    }
}

/// Finite-order identities of the generators.
///
/// Jones family: if `m` is the least order of `A`, then
/// `b_i^m = ((-1)^m - 1)/d h_i + I`, so `b_i^m = I` for even `m` and
/// `b_i^{2m} = I` for odd `m`. Bell family: `R^8 = I` and hence `b_i^8 = I`.
pub fn generator_power_identity(rep: &BraidRepresentation, tol: f64) -> Result<PowerIdentity> {
    let mut report = RelationReport::new();
    match rep.context() {
        RepContext::Bell { .. } => {
            let r8 = matpow(&bell_matrix(), 8)?;
            report.record(
                "R^8 = I",
                r8.max_abs_diff(&ComplexMatrix::identity(4))?,
                tol,
            );
            for (idx, g) in rep.generators().iter().enumerate() {
                let id = ComplexMatrix::identity(g.rows());
                report.record(
                    format!("b{}^8 = I", idx + 1),
                    matpow(g, 8)?.max_abs_diff(&id)?,
                    tol,
                );
            }
            Ok(PowerIdentity::Applicable { order: 8, report })
        }
        RepContext::Jones {
            params,
            shape,
            spec,
        } => {
            let Some(m) = root_of_unity_order(params.a_coef()) else {
                return Ok(PowerIdentity::NotApplicable {
                    reason: format!(
                        "A = e^(i {}) is not a root of unity of order <= {MAX_ROOT_ORDER}",
                        params.theta()
                    ),
                });
            };
            let pair = build_e(*shape, params, spec)?;
            let d = params.d();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let coef = c((sign - 1.0) / d, 0.0);
            for (idx, (g, e)) in rep
                .generators()
                .iter()
                .zip([&pair.e1, &pair.e2])
                .enumerate()
            {
                let i = idx + 1;
                let id = ComplexMatrix::identity(g.rows());
                let bm = matpow(g, m as u64)?;
                let h = e.scale(c(d, 0.0));
                let predicted = h.scale(coef).add_identity(ONE)?;
                report.record(
                    format!("b{i}^{m} = ((-1)^{m} - 1)/d h{i} + I"),
                    bm.max_abs_diff(&predicted)?,
                    tol,
                );
                if m % 2 == 0 {
                    report.record(format!("b{i}^{m} = I"), bm.max_abs_diff(&id)?, tol);
                } else {
                    let b2m = matmul(&bm, &bm)?;
                    report.record(format!("b{i}^{} = I", 2 * m), b2m.max_abs_diff(&id)?, tol);
                }
            }
            Ok(PowerIdentity::Applicable { order: m, report })
        }
    }
}

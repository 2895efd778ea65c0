//! Unitary braid group representations built from a Temperley-Lieb
//! realization on `n` qubits, with the tools to verify them and to study
//! the entangled states they generate.
//!
//! * [`linalg`]: dense complex matrices and qubit registers.
//! * [`tla`]: parameters `(theta, phi, A, d, a, b)` and the projectors `E1`, `E2`.
//! * [`braidrep`]: Jones and Bell-matrix representations and their relation checks.
//! * [`states`]: the braiding operator `B(n,k)` applied in linear time; GHZ and cluster-like states.
//! * [`entangle`]: partial traces, entropies, Schmidt ranks and measurements.
//! * [`gates`]: named gates and the CNOT decomposition.
//! * [`grid`]: parameter grids for verification sweeps.
//! * [`braidlang`]: a parser and evaluator for braid words.

pub mod braidlang;
pub mod braidrep;
pub mod entangle;
pub mod error;
pub mod gates;
pub mod grid;
pub mod linalg;
pub mod report;
pub mod states;
pub mod tla;

pub use braidlang::{parse, BraidWord};
pub use braidrep::{BraidRepresentation, Family, PowerIdentity};
pub use entangle::{DensityMatrix, EntanglementReport};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, PhaseMode, StateVector, C64};
pub use report::{RelationCheck, RelationReport};
pub use states::{BitString, StructuredB};
pub use tla::{Involution, InvolutionSpec, RepShape, Sign, TLParams};

//! Exact homology of finite racks and quandles.
//!
//! The crate builds the rack, degenerate, quandle and multi-term chain
//! complexes of a finite quandle in the tuple basis, computes integral
//! homology through Smith normal form over arbitrary-precision integers, and
//! evaluates the chain homotopies showing that `|Q|` kills the torsion of
//! rack homology when `Q` is a finite quasigroup (Latin) quandle.
//!
//! Module map:
//!
//! * [`algebra`]: operation tables, axiom checks, the quandle catalog, orbits
//!   and inner automorphism groups.
//! * [`chains`]: tuple bases, formal chains, face maps, boundary operators and
//!   boundary matrices for every supported complex.
//! * [`matrix`]: sparse exact integer matrices and their triplet text format.
//! * [`homology`]: Smith normal form and homology groups.
//! * [`homotopy`]: the repeater/symmetrizer maps, the `D`/`F` homotopies and
//!   the verifiers for every identity they satisfy.

pub mod algebra;
pub mod chains;
pub mod error;
pub mod homology;
pub mod homotopy;
pub mod matrix;
pub mod serde_int;

pub use algebra::{
    AxiomReport, DistributiveSet, Element, FiniteBinaryOp, FiniteQuandle,
};
pub use chains::{BasisTuple, Chain, ChainComplex, ComplexTheory, MultiTermSpec};
pub use error::{Error, Result};
pub use homology::{HomologyGroup, SmithDecomposition};
pub use matrix::SparseIntMatrix;

/// Version string baked into cached results.
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

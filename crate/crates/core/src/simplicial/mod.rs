//! Simplicial complexes, integral homology, barycentric subdivision, and
//! certified upper bounds for the l1-seminorm of fundamental classes.

pub mod combinatorial;
pub mod complex;
pub mod fixtures;
pub mod fundamental;
pub mod homology;
mod matrix;
pub mod search;
mod snf;
pub mod stream;
pub mod subdivision;

pub use combinatorial::{
    verify_witness, CertificationContext, Certificates, CombinatorialSimplex, Witness,
    WitnessRejection, WitnessTerm,
};
pub use search::{semi_decide, SearchError, SearchOutcome};
pub use complex::{ComplexError, ComplexFile, SimplicialChain, SimplicialComplex};
pub use fundamental::{fundamental_cycle, ManifoldError};
pub use homology::{betti_rational, homology, HomologyGroup};
pub use stream::{CellAddress, CellOutcome, SimvolStream, SkipReason, StreamStep};

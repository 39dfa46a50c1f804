//! Gentle algebras, their generalized strings and bands, the projective
//! complexes these index in the bounded derived category, and exact
//! cohomology computations on them.

pub mod cohomology;
pub mod complexes;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod nogaps;
pub mod quiver;
pub mod scalar;
pub mod walks;

pub use cohomology::{beta_cohomology, beta_window, cohomology_dims, node_contributions, witness_cohomology, CohVector};
pub use complexes::{band_complex, brutal_truncate, shift, stalk_complex, string_complex, ProjComplex};
pub use error::{Error, Result};
pub use quiver::{parse_presentation, validate_gentle, Algebra, ArrowId, GentleReport, Path, Presentation, VertexId};
pub use walks::{classify_walk, parse_and_classify, GenWalk, Letter, WalkKind, Witness};
pub use nogaps::{
    hl_spectrum, reduce_band, reduce_beta, reduce_string, reduce_witness, verify_counterexample_a0, CaseTag,
    ReductionTrace, SpectrumOptions, SpectrumReport,
};

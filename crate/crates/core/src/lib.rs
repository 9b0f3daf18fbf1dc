//! Exact cohomology computations for symplectic Lie algebras: de Rham,
//! symplectically harmonic, coeffective and filtered cohomology dimensions,
//! plus the identities relating them.

pub mod catalog;
pub mod coeffective;
pub mod derham;
pub mod error;
pub mod exterior;
pub mod filtered;
pub mod flexibility;
pub mod harmonic;
pub mod lie;
pub mod linalg;
pub mod notation;
pub mod poly;
pub mod relations;
pub mod symplectic;

pub use error::{Error, Result};
pub use exterior::{ExteriorBasis, ExteriorForm};
pub use lie::{AlgebraFlags, LieAlgebraSpec, Source};
pub use linalg::{Matrix, Scalar, Subspace};
pub use symplectic::{is_symplectic, SymplecticForm};
pub use derham::{betti_numbers, cohomology_basis, CohomologySpace, DeRham, SymplecticContext};
pub use flexibility::{
    closed_two_form_space, profile, scan, CohomologyReport, FlexibilityVerdict, Provenance, ScanConfig,
};
pub use relations::{verify_relations, RelationCheck, RelationStatus, RelationSuiteResult};
pub use catalog::{auxiliary, catalog, run_table1, CatalogEntry, Table1Summary};

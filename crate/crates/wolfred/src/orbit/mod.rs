//! Classification of adjoint orbits of so(3,4) (and the elementary compact
//! counterpart for so(7)): Jordan-Chevalley decomposition, decomposition
//! into decorated indecomposable types, family naming against the 24-row
//! table, canonical representative synthesis, and properness/freeness
//! predicates for the induced one-dimensional reductions.

pub mod classify;
pub mod compact;
pub mod exact;
pub mod exactnum;
pub mod family;
pub mod jc;
pub mod proper;
pub mod represent;
pub mod spectral;
pub mod types;

pub use classify::{classify, DEFAULT_TOL};
pub use compact::classify_compact;
pub use exactnum::{ParamVal, QuadExt};
pub use exact::{classify_exact, qmat_from_f64, QMat};
pub use family::family_label;
pub use proper::{is_proper_free, Properness};
pub use represent::{canonical_representative, family_representative, family_representative_sum};
pub use jc::{jordan_chevalley, SemisimpleNilpotentPair};
pub use types::{FamilyLabel, FamilyName, IndecomposableType, Kind, SignTag, TypeSum};

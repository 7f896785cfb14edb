//! Computational pipeline for quaternionic-Kaehler reductions of the
//! Grassmannian Wolf spaces SO(7)/SO(3)xSO(4) and SO0(3,4)/SO(3)xSO(4):
//! octonion and split-octonion arithmetic, G2 structure tests, the
//! group-level moment map with its zero locus and curvature diagnostics,
//! energy gradient flow, and the Burgoyne-Cushman classification of adjoint
//! orbits of so(3,4) with properness and freeness predicates for the induced
//! one-dimensional reductions.

pub mod algebra;
pub mod moment;
pub mod orbit;
pub mod error;
pub mod json;
pub mod lie;
pub mod linalg;
pub mod scalar;

pub use error::{AlgebraError, LieError, MomentError, OrbitError};

// Keep the guide's code in sync with the crate: every fenced Rust block in
// book/src runs as a doc-test.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            pub struct $name;
        };
    }
    chapter!(Introduction, "../../../book/src/introduction.md");
    chapter!(Octonions, "../../../book/src/octonions.md");
    chapter!(G2, "../../../book/src/g2.md");
    chapter!(LieLayer, "../../../book/src/lie-layer.md");
    chapter!(MomentMap, "../../../book/src/moment-map.md");
    chapter!(GradientFlow, "../../../book/src/gradient-flow.md");
    chapter!(OrbitTypes, "../../../book/src/orbit-types.md");
    chapter!(Properness, "../../../book/src/properness.md");
}

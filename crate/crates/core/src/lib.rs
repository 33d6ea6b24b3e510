//! Exact Schubert calculus for points, lines and planes in ℙ³.
//!
//! The crate is layered bottom-up:
//!
//! * [`poly`] and [`lattice`]: integer polynomials and integer row reduction.
//! * [`graded_ring`]: finitely presented graded rings with canonical normal forms.
//! * [`chern_segre`]: truncated total Chern/Segre class calculus.
//! * [`spaces`]: ℙ³, its dual, the Grassmannian of lines and the point-line flag
//!   space, with their condition symbols and the classical formula suites.
//! * [`coincidence`]: the blow-up of ℙ³×ℙ³ along the diagonal, the coincidence
//!   formula and the tangent/bitangent counts.
//! * [`oracle`]: exact-geometry cross-checks (Plücker line solving, pencil
//!   tangency via discriminants).
//! * [`dsl`] and [`cli`]: the condition-expression language and command line.

pub mod chern_segre;
pub mod cli;
pub mod coincidence;
pub mod dsl;
pub mod graded_ring;
pub mod lattice;
pub mod oracle;
pub mod poly;
pub mod spaces;

pub use graded_ring::{
    present_ring, GeneratorSpec, GradedBasis, GradedRingPresentation, RingElement, RingError,
    RingHandle,
};
pub use poly::{Monomial, Polynomial};

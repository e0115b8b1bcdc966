//! Graded modules over S = k[x_0..x_r], their resolutions, Hilbert
//! polynomials and the cohomology of the associated sheaves on P^r.

pub mod cohomology;
pub mod form;
pub mod hilbert;
pub mod monomial;
pub mod piece;
pub mod resolution;
pub mod sections;

pub use form::{Form, FreeModule, GradedMap, Presentation};
pub use hilbert::{dim_and_multiplicity, polcmp_lex, polcmp_rudakov, HilbPoly};
pub use monomial::monomial_basis;
pub use piece::Piece;
pub use resolution::{free_resolution, kernel_generators, kernel_presentation, Resolution};
pub use sections::SectionSpace;

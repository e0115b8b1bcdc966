//! Kronecker modules α: V ⊗ H → W, their (semi)stability, S-equivalence
//! and determinantal theta functions.

pub mod filtration;
pub mod hom;
pub mod module;
pub mod stability;
pub mod theta;

pub use filtration::{gr, s_filtration, SFiltration};
pub use hom::{hom_space, is_isomorphic, s_equivalent, Morphism};
pub use module::{slope_cmp, KroneckerModule, Submodule};
pub use stability::{is_semistable, is_stable, semistable_by_definition, Route, SsOutcome, StabilityOptions, Verdict};
pub use theta::{detect_ss_theta, theta_gamma, theta_matrix, weight_shape, Detection, ThetaShape};

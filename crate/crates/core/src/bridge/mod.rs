//! The functor Φ_{n,m} = Hom(O(-n) ⊕ O(-m), -) from sheaves on P^r to
//! Kronecker modules, its adjoint, and the comparison of semistability,
//! S-equivalence and theta functions on both sides.

pub mod conditions;
pub mod context;
pub mod delta;
pub mod faltings;
pub mod functor;
pub mod semistable;
pub mod separation;

pub use conditions::{check_conditions, tight_closure, tight_correspondence, tight_pair, ConditionsReport, CorrespondenceReport, TightPair};
pub use context::BridgeContext;
pub use delta::{delta_from_gamma, gamma_from_delta, theta_delta, theta_delta_matrix, DeltaMap};
pub use faltings::{faltings_check, FaltingsOutcome};
pub use functor::{counit_is_iso, in_regular_image, phi, phi_data, phi_dual, syzygy, unit_is_iso, CounitReport, PhiData};
pub use semistable::{
    generated_subsheaf, mss_to_ess, p1_semistable_oracle, sheaf_semistable, transport_gr, MssReport, P1Verdict,
    SheafReport, SheafVerdict, SheafWitness, TransportReport,
};
pub use separation::{separation_experiment, PairOutcome, PairReport, SeparationReport};

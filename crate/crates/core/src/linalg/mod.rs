//! Exact algebra of `V ⊕ V*` with its neutral pairing.

pub mod basis;
pub mod element;
pub mod example5;
pub mod fibre;
pub mod structure;

pub use basis::{
    adapted_orthonormal_basis, lemma1_projection_check, lemma2_orientation, random_orthonormal_basis, skew_generator,
    Lemma1Report, Lemma2Report, OrthonormalBasis, SkewFrame, WordSpec,
};
pub use element::{fibre_pairing, neutral_pairing, pairing_adjoint, GElement};
pub use example5::{hyperboloid_chart_inverse, hyperboloid_coords, Classification, Example5};
pub use fibre::{fiber_kahler_s, vertical_complex_action, vertical_projection, FibreKahler, VerticalSpace};
pub use structure::{
    b_transform, beta_transform, commute_check, direct_sum, from_complex, from_symplectic, gl_action,
    orientation_sign, GcStructure,
};

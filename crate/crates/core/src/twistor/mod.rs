//! The twistor space `𝒢` over an affine chart: connections and curvature,
//! horizontal lifts, the structures `𝒥_α` and `𝓘_α`, closed-form Nijenhuis
//! tensors, the `μ`-curvature argument, and the `n = 1` direct oracle.

pub mod connection;
pub mod kahler;
pub mod lift;
pub mod mu;
pub mod oracle;
pub mod point;
pub mod prop1;
pub mod sample;

pub use connection::{curvature, Connection, CurvatureAt, CurvatureValue};
pub use kahler::{i_alpha_nijenhuis_h, kahler_j};
pub use lift::{eq32_check, horizontal_lift, Eq32Residual, LiftCoords, VectorField};
pub use mu::{
    ahs_residual, curvature_from_mu, family_structure, mu_commutator_check, mu_forced_zero_check, proof_family, proof_frames, MuForm, MuSystemReport,
};
pub use oracle::{
    chart_identities, chart_point, kahler_mixed_direct, oracle_direct_nijenhuis_n1, oracle_probes, oracle_run,
    N1Chart, OracleSample, OracleStructure,
};
pub use point::{probe_tangents, tangent_pairing, twistor_j, TwistorPoint, TwistorTangent};
pub use prop1::{
    nijenhuis_closed_form, nijenhuis_closed_form_pairs, nijenhuis_closed_form_variant, prop1_hcoform, prop1_horizontal, prop1_mixed,
    prop1_vertical, ClosedFormVariant, HorizontalPart,
};
pub use sample::{sample_fibre_points, sample_n1_points, sample_points};

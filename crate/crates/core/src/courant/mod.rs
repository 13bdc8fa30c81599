//! Sections of `TM ⊕ T*M` over an affine chart, the Courant bracket and
//! the generalized Nijenhuis tensor.

pub mod bracket;
pub mod scan;
pub mod section;

pub use bracket::{
    apply_b_field, b_automorphism_defect, courant_bracket, lie_bracket, nijenhuis, nijenhuis_at, TwoFormField,
};
pub use scan::{default_probes, integrability_scan, ScanReport, ScanWitness};
pub use section::{apply_field, value_of, GacField, Jet1, JetSection, SectionJet};

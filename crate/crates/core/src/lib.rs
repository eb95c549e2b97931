//! Differential and boomerang spectra of power maps `x^d` over F_{p^n}:
//! exhaustive enumeration, closed forms for d = s(p^m - 1) over F_{p^(2m)},
//! per-b predictions, point counts on diagonal curves and the coset cells
//! used to derive them.

pub mod arith;
pub mod closed_form;
pub mod coset;
pub mod curve;
pub mod engine;
pub mod field;
mod poly;
pub mod spectrum;

pub use closed_form::{case_flags, closed_form_bs, closed_form_ds, Branch, CaseFlags, ClosedForm, ClosedFormError};
pub use engine::{
    beta, boomerang_spectrum, delta, differential_spectrum, is_locally_apn, EngineConfig, EngineError, PowerMapSpec,
};
pub use field::{build_field, FieldElement, FieldError, FieldOptions, FieldSpec};
pub use spectrum::{differential_uniformity, verify_identities, Spectrum, SpectrumKind};

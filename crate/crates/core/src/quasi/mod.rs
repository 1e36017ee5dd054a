//! Characteristic functions and s-parametrized quasiprobability distributions.

pub mod charfn;
pub mod closed;
pub mod field;
pub mod fock;
pub mod gaussian;
pub mod polynomials;
pub mod printed;
pub mod transform;

pub use charfn::char_fn;
pub use closed::{p_representable, quasi_closed_field, quasi_closed_form, ClosedForm, PRepresentability};
pub use field::{moments_from_field, FieldMeta, Method, ModeGrid, PhaseSpaceGrid, QuasiField};
pub use transform::{quasi_transform, quasi_transform_with, TransformOptions};

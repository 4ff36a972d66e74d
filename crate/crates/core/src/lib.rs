//! Exact invariants of alternating 3-forms: rank, stabilizers, stability,
//! the induced products and bilinear forms, and classification of the
//! stable orbits on `R^6`, `R^7` and `R^8`.

pub mod classify;
pub mod error;
pub mod expr;
pub mod exterior;
pub mod field;
pub mod invariants;

pub use classify::{classify, ClassificationReport, Discriminant, FormType, Registry};
pub use error::{Error, Result};
pub use expr::{parse_form, render_form};
pub use exterior::{KForm, LinMap, VectorN};
pub use field::{FieldDesc, Inertia, Matrix, Scalar};

//! Exact arithmetic for rational twisted power series over a field with an
//! endomorphism σ.

pub mod error;
pub mod fields;
pub mod linalg;
pub mod linrep;
pub mod ore_poly;
pub mod rational;
pub mod text;
pub mod tseries;

pub use error::{Error, Result};
pub use fields::{apply_endo, make_context, Field, FieldCtx};
pub use linrep::LinRep;
pub use ore_poly::{OreFraction, OrePoly, Side};
pub use tseries::{expand_fraction, module_action, recurrence_extend, Recurrence, RecurrenceKind, TwistedSeries};

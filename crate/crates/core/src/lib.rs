pub mod checks;
pub mod cpoly;
pub mod error;
pub mod hp;
pub mod linalg;
pub mod maxmod_algebra;
pub mod perron;
pub mod quad;
pub mod ratio_measure;
pub mod recurrence;
pub mod symbolfield;

pub use cpoly::{ComplexPoly, C64};
pub use error::{Error, Result};

pub mod cochain;
pub mod configspace;
pub mod coxeter;
pub mod error;
pub mod exactfield;
pub mod par;
pub mod report;
pub mod representations;
pub mod theorems;
pub mod tor;

pub use error::{Error, Result};

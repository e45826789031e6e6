pub mod affine_weyl;
pub mod cli;
pub mod error;
pub mod hecke;
pub mod kl;
pub mod nearby;
pub mod ring;
pub mod root_datum;

pub use affine_weyl::{AffineRoot, AffineWeylElt, AffineWeylGroup, SimpleReflectionSet};
pub use cli::expr;
pub use error::{Error, Result};
pub use hecke::HeckeElt;
pub use kl::KlTable;
pub use nearby::{MultiplicityFunction, TraceFunction, VerificationReport};
pub use ring::{QDegree, RingElt};
pub use root_datum::{Coweight, DatumConfig, FiniteWeylElt, Preset, RootDatum};

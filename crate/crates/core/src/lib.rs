//! p-adic L-functions of Hilbert-style modular forms via overconvergent
//! modular symbols.

pub mod coeffs;
pub mod error;
pub mod field;
pub mod hecke;
pub mod lfun;
pub mod lift;
pub mod padic;
pub mod persist;
pub mod qlinalg;
pub mod ray_class;
pub mod symbols;
pub mod zpk;
pub mod zsolve;

pub use error::{Error, Result};
pub use hecke::{CharacterSpec, HeckeCharacter};
pub use field::{LocalPrime, NumberFieldData, OFpElement};
pub use padic::{ContextSpec, Ctx, PAdicContext, PAdicElement, PAdicPolynomial};

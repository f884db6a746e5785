//! Modular symbols for Γ₀(N) over Q with classical and overconvergent
//! coefficients.

pub mod classical;
pub mod eigen;
pub mod manin;
pub mod p1;
pub mod padic;
pub mod slope;

pub use classical::{rational_table, ClassicalSpace};
pub use eigen::{eigensymbol, EigenSpec, Eigensymbol};
pub use manin::{Formula, ManinData, Term};
pub use p1::{Cusp, IntMat, P1};
pub use padic::{CompiledOp, PSymbol, SymbolRecord};
pub use slope::{is_small_slope, slope_le_subspace};

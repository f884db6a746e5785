//! Fixed-precision arithmetic in finite extensions of Q_p.

pub mod context;
pub mod element;
pub mod linalg;
pub mod poly;
pub mod roots;

pub use context::{ContextSpec, Ctx, PAdicContext};
pub use element::{teichmuller, teichmuller_of, ElementRecord, PAdicElement};
pub use poly::{newton_polygon, slope_le_factor, PAdicPolynomial};
pub use roots::{cyclotomic_level, root_of_unity, trace_scaled};

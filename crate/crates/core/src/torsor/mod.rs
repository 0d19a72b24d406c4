//! `mu_n`-lines, determinant lines and their canonical isomorphisms.

mod det;
mod line;

pub use det::{fiber_iso, DetCtx, DEFAULT_BOUND};
pub use line::{duality_contract, elem_tensor, line_dual, line_tensor, MuLine, TorsorElem};

//! Relative determinants of lattices and the central extension of `GL_m(K)`
//! by `mu_n` they define.

mod cocycle;
mod reldet;

pub use cocycle::{
    cocycle, comm_symbol, comm_symbol_scalar, corrected_symbol, ext_inverse, ext_mul,
    rel_dim_scalar, ExtElem,
};
pub use reldet::{kappa, kappa_ascending, kappa_descending, kappa_general, reldet, rho, RelDet};

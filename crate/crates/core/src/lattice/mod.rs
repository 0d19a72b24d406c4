//! Full-rank `O`-lattices in `K^m`, their finite quotients and relative
//! dimensions.

pub mod hnf;
pub mod matrix;
pub mod module;
pub mod quotient;
pub mod snf;

pub use hnf::{lat_apply, lat_contains, lat_includes, lat_intersect, lat_sum, Lattice, LatticeJson};
pub use matrix::KMatrix;
pub use module::{FiniteModule, ModElem, ModMap};
pub use quotient::{
    inclusion_map, induced_map, orbit_count, quotient_struct, rel_dim, rel_lengths, Quotient,
};
pub use snf::{smith, Smith};
